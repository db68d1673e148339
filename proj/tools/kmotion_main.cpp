// kmotion: k-quantum motional dynamics of a single trapped atom.
//
// Subcommands:
//   simulate   -- integrate the Schroedinger dynamics, write a trajectory CSV
//   bounds     -- lower/upper comparison trajectories and divergence-time report
//   qfunction  -- Husimi Q snapshots on a phase-space grid (CSV, optional PGM)

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "kmotion/bounds.hpp"
#include "kmotion/dynamics.hpp"
#include "kmotion/io.hpp"
#include "kmotion/phasespace.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitBreach = 3;
constexpr int kExitIo = 4;

using kmotion::io::format_g17;
using Provenance = kmotion::io::Provenance;

struct CommonOptions {
    int k = 3;
    double eta = 0.2;
    std::string mode = "exact";
    double kappa_phase = 0.0;
    int nmax = 0;       // 0: mode-dependent default
    double dtau = 0.0;  // 0: default, clamped to the enforced bound
    double tail_threshold = 1e-8;
    std::string initial = "fock:0";
    std::string out;
};

void add_model_flags(CLI::App* cmd, CommonOptions& o, bool with_mode = true) {
    cmd->add_option("--k", o.k, "process order (quanta per elementary exchange)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--eta", o.eta, "Lamb-Dicke parameter");
    if (with_mode)
        cmd->add_option("--mode", o.mode, "coupling mode")
            ->check(CLI::IsMember({"exact", "lamb-dicke"}));
    cmd->add_option("--kappa-phase", o.kappa_phase, "drive phase arg(kappa), radians");
}

kmotion::ModelConfig make_config(const CommonOptions& o) {
    kmotion::ModelConfig cfg;
    cfg.order = o.k;
    cfg.eta = o.eta;
    cfg.mode = o.mode == "exact" ? kmotion::CouplingMode::Exact
                                 : kmotion::CouplingMode::LambDicke;
    cfg.kappa_phase = o.kappa_phase;
    return cfg;
}

int default_nmax(const kmotion::ModelConfig& cfg) {
    return cfg.mode == kmotion::CouplingMode::Exact ? 256 : 2048;
}

// Default dtau = 1e-3, clamped to the enforced step bound so the default is
// always usable; an explicit --dtau is validated strictly instead.
double effective_dtau(const CommonOptions& o, const kmotion::CouplingTables& tables) {
    if (o.dtau > 0.0) return o.dtau;
    return std::min(1e-3, tables.max_step());
}

kmotion::MotionalState parse_initial(const std::string& text, int nmax) {
    if (text.rfind("fock:", 0) == 0) {
        const int n = std::stoi(text.substr(5));
        return kmotion::fock_state(nmax, n);
    }
    if (text.rfind("coherent:", 0) == 0) {
        const std::string body = text.substr(9);
        const auto comma = body.find(',');
        if (comma == std::string::npos)
            throw CLI::ValidationError("--initial", "coherent:<re>,<im> expected");
        const double re = std::stod(body.substr(0, comma));
        const double im = std::stod(body.substr(comma + 1));
        return kmotion::coherent_state(nmax, {re, im});
    }
    throw CLI::ValidationError("--initial", "expected fock:<n> or coherent:<re>,<im>");
}

Provenance base_provenance(const CommonOptions& o, int nmax, double dtau) {
    Provenance meta;
    meta.emplace_back("generator", "kmotion");
    meta.emplace_back("k", std::to_string(o.k));
    meta.emplace_back("eta", format_g17(o.eta));
    meta.emplace_back("mode", o.mode);
    meta.emplace_back("kappa_phase", format_g17(o.kappa_phase));
    meta.emplace_back("nmax", std::to_string(nmax));
    meta.emplace_back("dtau", format_g17(dtau));
    meta.emplace_back("tail_threshold", format_g17(o.tail_threshold));
    meta.emplace_back("initial", o.initial);
    return meta;
}

int run_simulate(const CommonOptions& o, double tau_end, int sample_every) {
    const auto cfg = make_config(o);
    const int nmax = o.nmax > 0 ? o.nmax : default_nmax(cfg);
    const auto tables = kmotion::build_tables(cfg, nmax);
    const auto initial = parse_initial(o.initial, nmax);

    kmotion::EvolveOptions opt;
    opt.dtau = effective_dtau(o, tables);
    opt.sample_every = sample_every;
    opt.tail_threshold = o.tail_threshold;

    const auto res = kmotion::evolve(initial, tables, tau_end, opt);

    auto meta = base_provenance(o, nmax, opt.dtau);
    meta.emplace_back("tau_end", format_g17(tau_end));
    meta.emplace_back("sample_every", std::to_string(sample_every));
    const bool breached = res.stop == kmotion::StopReason::TruncationBreach;
    meta.emplace_back("truncation_breach", breached ? "1" : "0");
    if (breached) meta.emplace_back("breach_tau", format_g17(res.breach_tau));

    kmotion::io::write_trajectory_csv(o.out, meta, res.trajectory);
    if (breached) {
        std::cerr << "truncation breach at tau = " << res.breach_tau
                  << " (basis too small for this run)\n";
        return kExitBreach;
    }
    return kExitOk;
}

int run_bounds(const CommonOptions& o, double tau_end, double tau1_opt, double dtau0) {
    const auto problem = kmotion::bounds::ground_state_problem(o.k);
    const auto lb = kmotion::bounds::solve_lower_bound(problem, tau_end, dtau0);

    kmotion::bounds::UpperBound ub{0.0, 0.0, 0.0};
    std::string ck_text = "n/a";
    if (o.eta > 0.0) {
        ub = kmotion::bounds::solve_upper_bound(0.0, 0.0, o.k, o.eta);
        ck_text = format_g17(ub.c);
    }

    Provenance meta;
    meta.emplace_back("generator", "kmotion");
    meta.emplace_back("k", std::to_string(o.k));
    meta.emplace_back("eta", format_g17(o.eta));
    meta.emplace_back("kappa_phase", format_g17(o.kappa_phase));
    meta.emplace_back("dtau", format_g17(dtau0));
    meta.emplace_back("tau_end", format_g17(tau_end));
    meta.emplace_back("blow_up", lb.blew_up ? "1" : "0");
    if (lb.blew_up) meta.emplace_back("blowup_tau", format_g17(lb.blowup_tau));

    const double tau1 =
        tau1_opt > 0.0 ? tau1_opt : kmotion::bounds::default_probe_time(problem);
    const auto est = kmotion::bounds::divergence_time(problem, tau1);
    meta.emplace_back("tau1", format_g17(est.tau1));
    meta.emplace_back("n_at_tau1", format_g17(est.n_at_tau1));
    meta.emplace_back("dtau_inf_upper", std::isinf(est.dtau_inf_upper)
                                            ? "inf"
                                            : format_g17(est.dtau_inf_upper));
    meta.emplace_back("dtau_inf_quadrature", std::isinf(est.dtau_inf_quadrature)
                                                 ? "inf"
                                                 : format_g17(est.dtau_inf_quadrature));
    meta.emplace_back("C_k", ck_text);

    kmotion::io::write_bounds_csv(o.out, meta, lb, ub);
    return kExitOk;
}

int run_qfunction(const CommonOptions& o, std::vector<double> snapshots,
                  const std::vector<double>& grid_spec, bool with_pgm) {
    const auto cfg = make_config(o);
    const int nmax = o.nmax > 0 ? o.nmax : default_nmax(cfg);
    const auto tables = kmotion::build_tables(cfg, nmax);

    double re_min = -6.0, re_max = 6.0, im_min = -6.0, im_max = 6.0;
    int n_re = 201, n_im = 201;
    if (!grid_spec.empty()) {
        if (grid_spec.size() != 6)
            throw CLI::ValidationError("--grid",
                                       "expected re_min,re_max,im_min,im_max,n_re,n_im");
        re_min = grid_spec[0];
        re_max = grid_spec[1];
        im_min = grid_spec[2];
        im_max = grid_spec[3];
        n_re = int(grid_spec[4]);
        n_im = int(grid_spec[5]);
    }

    std::sort(snapshots.begin(), snapshots.end());
    for (double s : snapshots)
        if (s < 0.0) throw CLI::ValidationError("--snapshots", "times must be >= 0");

    kmotion::EvolveOptions opt;
    opt.dtau = effective_dtau(o, tables);
    opt.sample_every = 1 << 30;  // snapshot stepping only
    opt.tail_threshold = o.tail_threshold;

    auto state = parse_initial(o.initial, nmax);
    for (size_t i = 0; i < snapshots.size(); ++i) {
        const double span = snapshots[i] - state.tau;
        if (span > 0.0) {
            const auto res = kmotion::evolve(state, tables, span, opt);
            state = res.final_state;
            state.tau = snapshots[i];
            if (res.stop == kmotion::StopReason::TruncationBreach) {
                std::cerr << "truncation breach at tau = " << res.breach_tau
                          << " before snapshot " << snapshots[i] << "\n";
                return kExitBreach;
            }
        }
        const auto grid =
            kmotion::phasespace::q_on_grid(state, re_min, re_max, im_min, im_max, n_re, n_im);

        auto meta = base_provenance(o, nmax, opt.dtau);
        meta.emplace_back("tau", format_g17(snapshots[i]));
        meta.emplace_back("norm_estimate", format_g17(grid.norm_estimate));
        meta.emplace_back("norm_ok", grid.norm_ok ? "1" : "0");
        if (!grid.norm_ok)
            std::cerr << "warning: grid normalization " << grid.norm_estimate
                      << " at tau = " << snapshots[i] << " (grid may clip the state)\n";

        char suffix[32];
        std::snprintf(suffix, sizeof(suffix), "_snap%02zu.csv", i);
        kmotion::io::write_qgrid_csv(o.out + suffix, meta, grid);
        if (with_pgm) {
            std::snprintf(suffix, sizeof(suffix), "_snap%02zu.pgm", i);
            kmotion::io::write_qgrid_pgm(o.out + suffix, grid);
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-quantum motional dynamics of a trapped atom"};
    app.require_subcommand(1);

    CommonOptions sim_o, bnd_o, q_o;
    double tau_end = 7.0;
    int sample_every = 100;

    auto* sim = app.add_subcommand("simulate", "integrate and write a trajectory CSV");
    sim->set_config("--config", "", "optional key = value config file");
    add_model_flags(sim, sim_o);
    sim->add_option("--tau-end", tau_end, "end of the scaled-time window");
    sim->add_option("--dtau", sim_o.dtau, "RK4 step (default 1e-3, capped by 0.1/max|g|)");
    sim->add_option("--nmax", sim_o.nmax, "Fock basis size");
    sim->add_option("--sample-every", sample_every, "steps between samples")
        ->check(CLI::PositiveNumber);
    sim->add_option("--tail-threshold", sim_o.tail_threshold,
                    "truncation monitor threshold on the top 2k populations");
    sim->add_option("--initial", sim_o.initial, "fock:<n> or coherent:<re>,<im>");
    sim->add_option("--out", sim_o.out, "output CSV path")->required();

    double bounds_tau_end = 6.0, tau1 = 0.0, dtau0 = 1e-4;
    auto* bnd = app.add_subcommand("bounds", "divergence bounds for the Lamb-Dicke model");
    bnd->set_config("--config", "", "optional key = value config file");
    add_model_flags(bnd, bnd_o, false);
    bnd->add_option("--tau-end", bounds_tau_end, "how far to integrate the lower bound");
    bnd->add_option("--tau1", tau1, "probe time (default: earliest N >= 0.1)");
    bnd->add_option("--dtau", dtau0, "initial ODE step");
    bnd->add_option("--out", bnd_o.out, "output CSV path")->required();

    std::vector<double> snapshots{0.0, 1.14, 2.29, 3.44, 4.59, 5.74};
    std::vector<double> grid_spec;
    bool with_pgm = false;
    auto* qf = app.add_subcommand("qfunction", "Husimi Q snapshots on a grid");
    qf->set_config("--config", "", "optional key = value config file");
    add_model_flags(qf, q_o);
    qf->add_option("--dtau", q_o.dtau, "RK4 step (default 1e-3, capped by 0.1/max|g|)");
    qf->add_option("--nmax", q_o.nmax, "Fock basis size");
    qf->add_option("--tail-threshold", q_o.tail_threshold, "truncation monitor threshold");
    qf->add_option("--initial", q_o.initial, "fock:<n> or coherent:<re>,<im>");
    qf->add_option("--snapshots", snapshots, "comma list of snapshot times")
        ->delimiter(',');
    qf->add_option("--grid", grid_spec, "re_min,re_max,im_min,im_max,n_re,n_im")
        ->delimiter(',');
    qf->add_flag("--pgm", with_pgm, "also write a plain PGM image per snapshot");
    qf->add_option("--out", q_o.out, "output path prefix")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (sim->parsed()) return run_simulate(sim_o, tau_end, sample_every);
        if (bnd->parsed()) return run_bounds(bnd_o, bounds_tau_end, tau1, dtau0);
        if (qf->parsed()) return run_qfunction(q_o, snapshots, grid_spec, with_pgm);
    } catch (const kmotion::io::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
