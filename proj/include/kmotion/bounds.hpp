#pragma once

#include <vector>

#include "kmotion/specfun.hpp"

namespace kmotion::bounds {

/// Scalar comparison problem for the mean excitation in the Lamb-Dicke limit:
/// d^2 N/dtau^2 = sum_l a_l N^l with N(0) = n0, N'(0) = n0p.
struct BoundProblem {
    int order = 3;
    specfun::AccelPoly poly;
    double n0 = 0.0;
    double n0p = 0.0;
};

BoundProblem ground_state_problem(int k);

struct LowerBoundPoint {
    double tau = 0.0;
    double value = 0.0;
    double velocity = 0.0;
};

struct LowerBoundTrajectory {
    std::vector<LowerBoundPoint> points;
    bool blew_up = false;
    double blowup_tau = 0.0;  // tau at which the 1e12 witness threshold was crossed
};

/// RK4 integration of the lower-bound ODE.  Halts at tau_end or when the
/// solution exceeds 1e12 (numerical blow-up witness).  The step is halved
/// whenever the solution grows by more than 10% in one step.
LowerBoundTrajectory solve_lower_bound(const BoundProblem& problem, double tau_end,
                                       double dtau0 = 1e-4);

/// Maximum residual of the first integral
/// v^2 = n0p^2 + sum_l b_l (N^l - n0^l) along the trajectory, relative to the
/// largest participating term.
double first_integral_residual(const BoundProblem& problem,
                               const LowerBoundTrajectory& traj);

/// Earliest tau with N(tau) >= threshold (default probe point for the
/// divergence-time estimate).
double default_probe_time(const BoundProblem& problem, double threshold = 0.1);

struct DivergenceEstimate {
    double tau1 = 0.0;
    double n_at_tau1 = 0.0;
    double dtau_inf_upper = 0.0;       // +inf for k = 1, 2
    double dtau_inf_quadrature = 0.0;  // +inf for k = 1, 2
};

/// Finite-divergence-time estimate: the closed-form upper bound
/// (2/(k-2)) [b_k N(tau1)^{k-2}]^{-1/2} and the full improper quadrature
/// over dn / sqrt(sum_l b_l n^l), with the tail beyond 1e6 handled
/// analytically via the leading term.
DivergenceEstimate divergence_time(const BoundProblem& problem, double tau1);

/// Quadratic upper-bound trajectory n0 + n0p tau + C_k(eta) tau^2 / 2 for the
/// exact model.
struct UpperBound {
    double n0 = 0.0;
    double n0p = 0.0;
    double c = 0.0;  // envelope constant C_k(eta)

    double operator()(double tau) const { return n0 + n0p * tau + 0.5 * c * tau * tau; }
};

UpperBound solve_upper_bound(double n0, double n0p, int order, double eta);

}  // namespace kmotion::bounds
