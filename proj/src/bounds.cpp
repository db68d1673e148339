#include "kmotion/bounds.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace kmotion::bounds {

namespace {

constexpr double kBlowupWitness = 1e12;
constexpr double kTailSplit = 1e6;  // analytic tail of the improper integral

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

struct Deriv {
    double dv;  // dN/dtau
    double da;  // dV/dtau
};

Deriv rhs(const BoundProblem& p, double value, double velocity) {
    return {velocity, p.poly.eval_accel(value)};
}

// One RK4 step on (N, V).
void rk4(const BoundProblem& p, double& value, double& velocity, double h) {
    const Deriv d1 = rhs(p, value, velocity);
    const Deriv d2 = rhs(p, value + 0.5 * h * d1.dv, velocity + 0.5 * h * d1.da);
    const Deriv d3 = rhs(p, value + 0.5 * h * d2.dv, velocity + 0.5 * h * d2.da);
    const Deriv d4 = rhs(p, value + h * d3.dv, velocity + h * d3.da);
    value += h / 6.0 * (d1.dv + 2.0 * d2.dv + 2.0 * d3.dv + d4.dv);
    velocity += h / 6.0 * (d1.da + 2.0 * d2.da + 2.0 * d3.da + d4.da);
}

void check_problem(const BoundProblem& p) {
    require(p.order >= 1, "bound problem: order must be >= 1");
    require(p.poly.order == p.order && static_cast<int>(p.poly.a.size()) == p.order,
            "bound problem: coefficients do not match the order");
    require(p.n0 >= 0.0, "bound problem: n0 must be >= 0");
    require(std::isfinite(p.n0) && std::isfinite(p.n0p), "bound problem: non-finite data");
}

}  // namespace

BoundProblem ground_state_problem(int k) {
    BoundProblem p;
    p.order = k;
    p.poly = specfun::ld_accel_poly(k);
    return p;
}

LowerBoundTrajectory solve_lower_bound(const BoundProblem& problem, double tau_end,
                                       double dtau0) {
    check_problem(problem);
    require(tau_end > 0.0 && std::isfinite(tau_end), "solve_lower_bound: bad tau_end");
    require(dtau0 > 0.0, "solve_lower_bound: bad initial step");

    LowerBoundTrajectory traj;
    double value = problem.n0;
    double velocity = problem.n0p;
    double tau = 0.0;
    double h = dtau0;
    traj.points.push_back({tau, value, velocity});

    while (tau < tau_end) {
        if (tau + h > tau_end) h = tau_end - tau;
        double v_try = value, vel_try = velocity;
        rk4(problem, v_try, vel_try, h);
        // Near the blow-up the solution stiffens; keep relative growth small.
        if (v_try > 1.05 * value + 1e-3 && h > 1e-14) {
            h *= 0.5;
            continue;
        }
        value = v_try;
        velocity = vel_try;
        tau += h;
        traj.points.push_back({tau, value, velocity});
        if (value > kBlowupWitness) {
            traj.blew_up = true;
            traj.blowup_tau = tau;
            break;
        }
        if (!std::isfinite(value)) {
            traj.blew_up = true;
            traj.blowup_tau = tau;
            break;
        }
    }
    return traj;
}

double first_integral_residual(const BoundProblem& problem,
                               const LowerBoundTrajectory& traj) {
    check_problem(problem);
    const double base = problem.n0p * problem.n0p - problem.poly.eval_velocity_sq(problem.n0);
    double worst = 0.0;
    for (const auto& pt : traj.points) {
        const double rhs_val = base + problem.poly.eval_velocity_sq(pt.value);
        const double lhs = pt.velocity * pt.velocity;
        const double scale = std::max({std::abs(lhs), std::abs(rhs_val), 1e-30});
        worst = std::max(worst, std::abs(lhs - rhs_val) / scale);
    }
    return worst;
}

double default_probe_time(const BoundProblem& problem, double threshold) {
    check_problem(problem);
    require(threshold > 0.0, "default_probe_time: threshold must be > 0");
    if (problem.n0 >= threshold) return 0.0;
    double value = problem.n0, velocity = problem.n0p, tau = 0.0;
    const double h = 1e-5;
    while (value < threshold) {
        rk4(problem, value, velocity, h);
        tau += h;
        if (tau > 1e6) throw std::runtime_error("default_probe_time: threshold never reached");
    }
    return tau;
}

namespace {

// Adaptive Simpson on [a, b] with absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

DivergenceEstimate divergence_time(const BoundProblem& problem, double tau1) {
    check_problem(problem);
    require(tau1 > 0.0 && std::isfinite(tau1), "divergence_time: tau1 must be > 0");

    const auto traj = solve_lower_bound(problem, tau1);
    const auto& last = traj.points.back();
    if (traj.blew_up || last.tau < tau1 * (1.0 - 1e-12))
        throw std::invalid_argument("divergence_time: lower bound blew up before tau1");

    DivergenceEstimate est;
    est.tau1 = tau1;
    est.n_at_tau1 = last.value;
    if (!(est.n_at_tau1 > 0.0))
        throw std::invalid_argument("divergence_time: N(tau1) = 0, quadrature endpoint singular");

    const int k = problem.order;
    const double inf = std::numeric_limits<double>::infinity();
    if (k <= 2) {
        est.dtau_inf_upper = inf;
        est.dtau_inf_quadrature = inf;
        return est;
    }

    const double bk = problem.poly.b.back().convert_to<double>();
    est.dtau_inf_upper =
        2.0 / (k - 2) / std::sqrt(bk * std::pow(est.n_at_tau1, k - 2));

    // Quadrature over [N(tau1), 1e6] in the substitution n = N1 e^u, then the
    // analytic tail using only the leading coefficient (relative error of the
    // neglected terms < 1e-6 at the split point).
    const double n1 = est.n_at_tau1;
    auto integrand = [&](double u) {
        const double n = n1 * std::exp(u);
        return n / std::sqrt(problem.poly.eval_velocity_sq(n));
    };
    const double u_max = std::log(kTailSplit / n1);
    const double body = integrate(integrand, 0.0, u_max, 1e-12);
    const double tail =
        2.0 / (k - 2) / std::sqrt(bk * std::pow(kTailSplit, k - 2));
    est.dtau_inf_quadrature = body + tail;
    return est;
}

UpperBound solve_upper_bound(double n0, double n0p, int order, double eta) {
    require(n0 >= 0.0 && std::isfinite(n0) && std::isfinite(n0p),
            "solve_upper_bound: bad initial conditions");
    return {n0, n0p, specfun::envelope_constant(order, eta)};
}

}  // namespace kmotion::bounds
