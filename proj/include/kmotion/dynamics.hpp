#pragma once

#include <complex>
#include <vector>

#include "kmotion/model.hpp"

namespace kmotion {

struct TrajectorySample {
    double tau = 0.0;
    double mean_n = 0.0;
    double norm = 0.0;
    double energy = 0.0;
    double tail_pop = 0.0;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
};

enum class StopReason { Completed, TruncationBreach };

struct EvolveResult {
    Trajectory trajectory;
    StopReason stop = StopReason::Completed;
    double breach_tau = 0.0;  // meaningful only on TruncationBreach
    MotionalState final_state;
};

struct EvolveOptions {
    double dtau = 1e-3;
    int sample_every = 100;
    double tail_threshold = 1e-8;
};

/// dpsi/dtau at fixed tau: out[n] = -i (g[n] psi[n+k] + conj(g[n-k]) psi[n-k]).
/// Throws on state/table dimension mismatch.
void apply_hamiltonian(const MotionalState& state, const CouplingTables& tables,
                       std::complex<double>* out);
std::vector<std::complex<double>> derivative(const MotionalState& state,
                                             const CouplingTables& tables);

/// One classical RK4 step; tau advances by dtau.  dtau must satisfy
/// 0 <= dtau <= tables.max_step().
void step_rk4(MotionalState& state, const CouplingTables& tables, double dtau);

/// Fixed-step RK4 evolution with periodic sampling and a tail monitor on the
/// top 2k levels.  A tail above the threshold aborts with TruncationBreach
/// (the breach sample is recorded).  tau_end == 0 yields the single initial
/// sample.
EvolveResult evolve(const MotionalState& initial, const CouplingTables& tables,
                    double tau_end, const EvolveOptions& opt);

double mean_n(const MotionalState& state);
/// Sum_n F_k(n;eta) P_n -- the second derivative of mean_n in scaled time.
double mean_n_accel(const MotionalState& state, const CouplingTables& tables);
/// <psi|H~|psi> with H~ the scaled coupling Hamiltonian (real by Hermiticity).
double energy(const MotionalState& state, const CouplingTables& tables);
/// Population of the top 2k basis levels.
double tail_population(const MotionalState& state, int order);

/// Dense eigendecomposition propagator, usable as an integrator cross-check.
/// Requires nmax <= 512.
MotionalState spectral_oracle(const MotionalState& initial, const CouplingTables& tables,
                              double tau);

}  // namespace kmotion
