#include "kmotion/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace kmotion {

namespace {

using cplx = std::complex<double>;

void check_dims(const MotionalState& state, const CouplingTables& tables) {
    if (state.nmax() != tables.nmax)
        throw std::invalid_argument("state and coupling tables have different basis sizes");
}

// Raw kernel: out[n] = -i (g[n] psi[n+k] + conj(g[n-k]) psi[n-k]).
void apply_kernel(const cplx* psi, const CouplingTables& t, cplx* out) {
    const int nmax = t.nmax;
    const int k = t.cfg.order;
    const cplx mi(0.0, -1.0);
    for (int n = 0; n < nmax; ++n) {
        cplx acc(0.0, 0.0);
        if (n + k < nmax) acc += t.g[n] * psi[n + k];
        if (n - k >= 0) acc += std::conj(t.g[n - k]) * psi[n - k];
        out[n] = mi * acc;
    }
}

struct Rk4Workspace {
    std::vector<cplx> k1, k2, k3, k4, tmp;
    void resize(size_t n) {
        k1.resize(n);
        k2.resize(n);
        k3.resize(n);
        k4.resize(n);
        tmp.resize(n);
    }
};

void rk4_step(MotionalState& state, const CouplingTables& t, double dtau, Rk4Workspace& ws) {
    const size_t n = state.amps.size();
    ws.resize(n);
    cplx* psi = state.amps.data();

    apply_kernel(psi, t, ws.k1.data());
    for (size_t i = 0; i < n; ++i) ws.tmp[i] = psi[i] + 0.5 * dtau * ws.k1[i];
    apply_kernel(ws.tmp.data(), t, ws.k2.data());
    for (size_t i = 0; i < n; ++i) ws.tmp[i] = psi[i] + 0.5 * dtau * ws.k2[i];
    apply_kernel(ws.tmp.data(), t, ws.k3.data());
    for (size_t i = 0; i < n; ++i) ws.tmp[i] = psi[i] + dtau * ws.k3[i];
    apply_kernel(ws.tmp.data(), t, ws.k4.data());

    const double w = dtau / 6.0;
    for (size_t i = 0; i < n; ++i)
        psi[i] += w * (ws.k1[i] + 2.0 * ws.k2[i] + 2.0 * ws.k3[i] + ws.k4[i]);
}

void check_step(const CouplingTables& t, double dtau) {
    if (!(dtau >= 0.0) || !std::isfinite(dtau))
        throw std::invalid_argument("step size must be finite and >= 0");
    if (dtau > t.max_step())
        throw std::invalid_argument("step size exceeds the enforced bound 0.1/max|g|");
}

TrajectorySample sample_state(const MotionalState& s, const CouplingTables& t) {
    return {s.tau, mean_n(s), s.norm(), energy(s, t), tail_population(s, t.cfg.order)};
}

}  // namespace

void apply_hamiltonian(const MotionalState& state, const CouplingTables& tables, cplx* out) {
    check_dims(state, tables);
    apply_kernel(state.amps.data(), tables, out);
}

std::vector<cplx> derivative(const MotionalState& state, const CouplingTables& tables) {
    std::vector<cplx> out(state.amps.size());
    apply_hamiltonian(state, tables, out.data());
    return out;
}

void step_rk4(MotionalState& state, const CouplingTables& tables, double dtau) {
    check_dims(state, tables);
    check_step(tables, dtau);
    Rk4Workspace ws;
    rk4_step(state, tables, dtau, ws);
    state.tau += dtau;
}

EvolveResult evolve(const MotionalState& initial, const CouplingTables& tables,
                    double tau_end, const EvolveOptions& opt) {
    check_dims(initial, tables);
    if (!(tau_end >= 0.0) || !std::isfinite(tau_end))
        throw std::invalid_argument("evolve: tau_end must be finite and >= 0");
    if (!(opt.dtau > 0.0)) throw std::invalid_argument("evolve: dtau must be > 0");
    check_step(tables, opt.dtau);
    if (opt.sample_every < 1)
        throw std::invalid_argument("evolve: sample_every must be >= 1");
    if (!(opt.tail_threshold > 0.0))
        throw std::invalid_argument("evolve: tail_threshold must be > 0");

    EvolveResult res;
    res.final_state = initial;
    MotionalState& st = res.final_state;
    const double tau0 = st.tau;

    res.trajectory.samples.push_back(sample_state(st, tables));
    if (tau_end == 0.0) return res;

    const long full_steps = static_cast<long>(std::floor(tau_end / opt.dtau));
    const double remainder = tau_end - full_steps * opt.dtau;

    Rk4Workspace ws;
    const int tail_lo = tables.nmax - 2 * tables.cfg.order;
    auto tail = [&]() {
        double s = 0.0;
        for (int n = std::max(tail_lo, 0); n < tables.nmax; ++n) s += std::norm(st.amps[n]);
        return s;
    };

    long step = 0;
    bool sampled = true;
    auto advance = [&](double h) {
        rk4_step(st, tables, h, ws);
        ++step;
        st.tau = tau0 + ((step <= full_steps) ? step * opt.dtau
                                              : full_steps * opt.dtau + remainder);
        sampled = false;
        if (tail() > opt.tail_threshold) {
            res.stop = StopReason::TruncationBreach;
            res.breach_tau = st.tau;
            res.trajectory.samples.push_back(sample_state(st, tables));
            sampled = true;
            return false;
        }
        if (step % opt.sample_every == 0) {
            res.trajectory.samples.push_back(sample_state(st, tables));
            sampled = true;
        }
        return true;
    };

    for (long i = 0; i < full_steps; ++i)
        if (!advance(opt.dtau)) return res;
    if (remainder > 0.0)
        if (!advance(remainder)) return res;
    if (!sampled) res.trajectory.samples.push_back(sample_state(st, tables));
    return res;
}

double mean_n(const MotionalState& state) {
    double s = 0.0;
    for (int n = 0; n < state.nmax(); ++n) s += n * std::norm(state.amps[n]);
    return s;
}

double mean_n_accel(const MotionalState& state, const CouplingTables& tables) {
    check_dims(state, tables);
    double s = 0.0;
    for (int n = 0; n < state.nmax(); ++n) s += tables.accel[n] * std::norm(state.amps[n]);
    return s;
}

double energy(const MotionalState& state, const CouplingTables& tables) {
    check_dims(state, tables);
    const int k = tables.cfg.order;
    double s = 0.0;
    for (int n = 0; n + k < tables.nmax; ++n)
        s += 2.0 * std::real(tables.g[n] * std::conj(state.amps[n]) * state.amps[n + k]);
    return s;
}

double tail_population(const MotionalState& state, int order) {
    const int lo = std::max(state.nmax() - 2 * order, 0);
    double s = 0.0;
    for (int n = lo; n < state.nmax(); ++n) s += std::norm(state.amps[n]);
    return s;
}

MotionalState spectral_oracle(const MotionalState& initial, const CouplingTables& tables,
                              double tau) {
    check_dims(initial, tables);
    if (tables.nmax > 512)
        throw std::invalid_argument("spectral_oracle: basis too large for the dense path");

    const int nmax = tables.nmax;
    const int k = tables.cfg.order;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(nmax, nmax);
    for (int n = 0; n + k < nmax; ++n) {
        h(n, n + k) = tables.g[n];
        h(n + k, n) = std::conj(tables.g[n]);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("spectral_oracle: eigendecomposition failed");

    Eigen::VectorXcd psi(nmax);
    for (int n = 0; n < nmax; ++n) psi(n) = initial.amps[n];
    Eigen::VectorXcd coef = solver.eigenvectors().adjoint() * psi;
    for (int j = 0; j < nmax; ++j)
        coef(j) *= std::polar(1.0, -solver.eigenvalues()(j) * tau);
    psi = solver.eigenvectors() * coef;

    MotionalState out;
    out.amps.resize(nmax);
    for (int n = 0; n < nmax; ++n) out.amps[n] = psi(n);
    out.tau = initial.tau + tau;
    return out;
}

}  // namespace kmotion
