#pragma once

#include <complex>
#include <vector>

namespace kmotion {

enum class CouplingMode { Exact, LambDicke };

/// Hamiltonian instance: process order k, Lamb-Dicke parameter, coupling mode
/// and the phase of the drive kappa.  |kappa| and eta^k are absorbed into the
/// scaled time, so they never appear here.
struct ModelConfig {
    int order = 1;
    double eta = 0.2;
    CouplingMode mode = CouplingMode::Exact;
    double kappa_phase = 0.0;  // radians, wrapped into [0, 2pi)

    void validate() const;  // throws std::invalid_argument
};

/// Precomputed immutable coupling data over a truncated Fock basis.
/// g[n] couples |n> and |n+k> in scaled time; couplings reaching past the
/// basis edge are zero.  accel[n] holds F_k(n;eta) (F_k(n;0) in LD mode).
struct CouplingTables {
    ModelConfig cfg;
    int nmax = 0;
    std::vector<std::complex<double>> g;
    std::vector<double> g_abs;
    std::vector<double> accel;
    double g_max = 0.0;

    /// Enforced RK4 step bound dtau <= 0.1/max|g|.
    double max_step() const;
};

CouplingTables build_tables(const ModelConfig& cfg, int nmax);

/// Motional state over the truncated Fock basis at scaled time tau.
struct MotionalState {
    std::vector<std::complex<double>> amps;
    double tau = 0.0;

    int nmax() const { return static_cast<int>(amps.size()); }
    /// Total population sum |psi_n|^2.
    double norm() const;
};

MotionalState fock_state(int nmax, int n);
/// Coherent |alpha>, renormalized after truncation.
MotionalState coherent_state(int nmax, std::complex<double> alpha);

}  // namespace kmotion
