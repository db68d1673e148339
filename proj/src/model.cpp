#include "kmotion/model.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "kmotion/specfun.hpp"

namespace kmotion {

void ModelConfig::validate() const {
    if (order < 1) throw std::invalid_argument("ModelConfig: order must be >= 1");
    if (!std::isfinite(eta) || eta < 0.0 || eta > 5.0)
        throw std::invalid_argument("ModelConfig: eta must be finite and in [0, 5]");
    if (mode == CouplingMode::Exact && eta == 0.0)
        throw std::invalid_argument("ModelConfig: exact mode requires eta > 0");
    if (!std::isfinite(kappa_phase))
        throw std::invalid_argument("ModelConfig: kappa_phase must be finite");
}

double CouplingTables::max_step() const {
    return g_max > 0.0 ? 0.1 / g_max : std::numeric_limits<double>::infinity();
}

CouplingTables build_tables(const ModelConfig& cfg, int nmax) {
    cfg.validate();
    if (nmax < cfg.order + 1)
        throw std::invalid_argument("build_tables: nmax must be at least order + 1");

    const int k = cfg.order;
    // i^k e^{i arg(kappa)}: the only place the drive phase enters.
    double phase = std::fmod(cfg.kappa_phase, 2.0 * std::numbers::pi);
    if (phase < 0.0) phase += 2.0 * std::numbers::pi;
    const std::complex<double> unit =
        std::polar(1.0, phase + 0.5 * std::numbers::pi * k);

    CouplingTables t;
    t.cfg = cfg;
    t.cfg.kappa_phase = phase;
    t.nmax = nmax;
    t.g.assign(nmax, {0.0, 0.0});
    t.g_abs.assign(nmax, 0.0);
    t.accel.assign(nmax, 0.0);

    const bool exact = cfg.mode == CouplingMode::Exact;
    for (int n = 0; n < nmax; ++n) {
        if (n + k < nmax) {
            const double s = exact ? specfun::scaled_coupling(n, k, cfg.eta)
                                   : specfun::scaled_coupling_ld(n, k);
            t.g[n] = unit * s;
            t.g_abs[n] = std::abs(s);
            t.g_max = std::max(t.g_max, t.g_abs[n]);
        }
        t.accel[n] = specfun::accel_coefficient(n, k, exact ? cfg.eta : 0.0);
    }
    return t;
}

double MotionalState::norm() const {
    double s = 0.0;
    for (const auto& a : amps) s += std::norm(a);
    return s;
}

MotionalState fock_state(int nmax, int n) {
    if (nmax < 1 || n < 0 || n >= nmax)
        throw std::invalid_argument("fock_state: need 0 <= n < nmax");
    MotionalState st;
    st.amps.assign(nmax, {0.0, 0.0});
    st.amps[n] = 1.0;
    return st;
}

MotionalState coherent_state(int nmax, std::complex<double> alpha) {
    if (nmax < 1) throw std::invalid_argument("coherent_state: nmax must be >= 1");
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
        throw std::invalid_argument("coherent_state: alpha must be finite");
    MotionalState st;
    st.amps.resize(nmax);
    // psi_n = alpha^n/sqrt(n!) e^{-|alpha|^2/2}, accumulated multiplicatively.
    std::complex<double> term = std::exp(-0.5 * std::norm(alpha));
    st.amps[0] = term;
    for (int n = 1; n < nmax; ++n) {
        term *= alpha / std::sqrt(double(n));
        st.amps[n] = term;
    }
    const double total = st.norm();
    if (total <= 0.0)
        throw std::invalid_argument("coherent_state: alpha too large for this basis");
    const double scale = 1.0 / std::sqrt(total);
    for (auto& a : st.amps) a *= scale;
    return st;
}

}  // namespace kmotion
