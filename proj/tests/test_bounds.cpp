#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "kmotion/bounds.hpp"
#include "kmotion/dynamics.hpp"

using namespace kmotion;
using bounds::BoundProblem;
using bounds::ground_state_problem;

TEST_CASE("k = 1 ground state: N(tau) = tau^2/2 exactly") {
    const auto traj = bounds::solve_lower_bound(ground_state_problem(1), 2.0);
    CHECK_FALSE(traj.blew_up);
    for (const auto& p : traj.points)
        CHECK(std::abs(p.value - 0.5 * p.tau * p.tau) < 1e-9);
    CHECK(traj.points.back().tau == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("k = 2 ground state: N(tau) = (cosh(sqrt2 tau) - 1)/2, no blow-up") {
    const auto traj = bounds::solve_lower_bound(ground_state_problem(2), 6.0);
    CHECK_FALSE(traj.blew_up);
    for (const auto& p : traj.points) {
        const double ref = 0.5 * (std::cosh(std::numbers::sqrt2 * p.tau) - 1.0);
        CHECK(std::abs(p.value - ref) <= 1e-7 * std::max(1.0, ref));
    }
}

TEST_CASE("k = 3 ground state: finite-time blow-up, stable under step halving") {
    const auto p = ground_state_problem(3);
    const auto a = bounds::solve_lower_bound(p, 20.0, 1e-3);
    const auto b = bounds::solve_lower_bound(p, 20.0, 5e-4);
    const auto c = bounds::solve_lower_bound(p, 20.0, 2.5e-4);
    REQUIRE(a.blew_up);
    REQUIRE(b.blew_up);
    REQUIRE(c.blew_up);
    CHECK(std::abs(a.blowup_tau - b.blowup_tau) / b.blowup_tau < 1e-3);
    CHECK(std::abs(b.blowup_tau - c.blowup_tau) / c.blowup_tau < 1e-3);
    // converged value from the independent quadrature study
    CHECK(b.blowup_tau == doctest::Approx(3.9901).epsilon(2e-4));
}

TEST_CASE("first integral holds along trajectories") {
    const auto p1 = ground_state_problem(1);
    CHECK(bounds::first_integral_residual(p1, bounds::solve_lower_bound(p1, 2.0)) < 1e-10);

    const auto p3 = ground_state_problem(3);
    const auto t3 = bounds::solve_lower_bound(p3, 20.0, 1e-4);
    CHECK(bounds::first_integral_residual(p3, t3) <= 1e-6);

    // velocity positivity for tau > 0 on ground-state problems
    for (const auto& pt : t3.points)
        if (pt.tau > 0.0) CHECK(pt.velocity > 0.0);
}

TEST_CASE("monotone and convex for ground-state problems") {
    for (int k : {1, 2, 3, 4}) {
        const auto traj = bounds::solve_lower_bound(ground_state_problem(k), 3.0);
        const auto& pts = traj.points;
        for (size_t i = 1; i < pts.size(); ++i) {
            CHECK(pts[i].value >= pts[i - 1].value);
            CHECK(pts[i].velocity >= pts[i - 1].velocity);  // accel > 0 throughout
        }
    }
}

TEST_CASE("divergence time: closed form for k = 3 at N(tau1) = 1") {
    const auto p = ground_state_problem(3);
    // locate tau with N = 1 by bisection on the integrated solution
    double lo = 0.0, hi = 3.0;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        const auto t = bounds::solve_lower_bound(p, mid);
        (t.points.back().value < 1.0 ? lo : hi) = mid;
    }
    const auto est = bounds::divergence_time(p, hi);
    CHECK(est.n_at_tau1 == doctest::Approx(1.0).epsilon(1e-6));
    // 2/(k-2)/sqrt(b_kk N^{k-2}) with b_33 = 1/2
    CHECK(est.dtau_inf_upper == doctest::Approx(2.0 * std::numbers::sqrt2).epsilon(1e-6));
    CHECK(est.dtau_inf_quadrature <= est.dtau_inf_upper);
}

TEST_CASE("divergence time: infinite sentinels for k = 1, 2") {
    for (int k : {1, 2}) {
        const auto est = bounds::divergence_time(ground_state_problem(k), 1.0);
        CHECK(std::isinf(est.dtau_inf_upper));
        CHECK(std::isinf(est.dtau_inf_quadrature));
        CHECK(est.n_at_tau1 > 0.0);
    }
}

TEST_CASE("divergence time: quadrature agrees with the ODE blow-up") {
    const auto p = ground_state_problem(3);
    const double tau1 = bounds::default_probe_time(p);
    CHECK(tau1 > 0.0);
    const auto est = bounds::divergence_time(p, tau1);
    CHECK(est.n_at_tau1 >= 0.1);
    const auto traj = bounds::solve_lower_bound(p, 50.0, 1e-4);
    REQUIRE(traj.blew_up);
    const double from_quadrature = tau1 + est.dtau_inf_quadrature;
    CHECK(std::abs(from_quadrature - traj.blowup_tau) / traj.blowup_tau < 0.01);
}

TEST_CASE("finite divergence-time bound for every order k >= 3") {
    for (int k : {3, 4, 5, 6}) {
        const auto p = ground_state_problem(k);
        const auto est = bounds::divergence_time(p, bounds::default_probe_time(p));
        CHECK(std::isfinite(est.dtau_inf_upper));
        CHECK(std::isfinite(est.dtau_inf_quadrature));
        CHECK(est.dtau_inf_quadrature <= est.dtau_inf_upper);
    }
}

TEST_CASE("divergence time rejects unusable probe times") {
    CHECK_THROWS_AS(bounds::divergence_time(ground_state_problem(3), 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(bounds::divergence_time(ground_state_problem(3), -1.0),
                    std::invalid_argument);
    // past the blow-up there is no finite N(tau1) to start from
    CHECK_THROWS_AS(bounds::divergence_time(ground_state_problem(3), 10.0),
                    std::invalid_argument);
}

TEST_CASE("upper-bound trajectory: quadratic form and domination") {
    const auto ub = bounds::solve_upper_bound(0.0, 0.0, 3, 0.2);
    CHECK(ub(0.0) == 0.0);
    CHECK(ub(1.0) == doctest::Approx(12685.162985487007).epsilon(1e-12));

    // the simulated mean excitation never exceeds it
    const auto t = build_tables({3, 0.2, CouplingMode::Exact, 0.0}, 512);
    EvolveOptions opt;
    opt.dtau = 1e-3;
    opt.sample_every = 100;
    const auto res = evolve(fock_state(512, 0), t, 3.0, opt);
    for (const auto& s : res.trajectory.samples) CHECK(s.mean_n <= ub(s.tau));
}

TEST_CASE("lower bound sits below the Lamb-Dicke simulation") {
    const auto t = build_tables({3, 0.2, CouplingMode::LambDicke, 0.0}, 2048);
    EvolveOptions opt;
    opt.dtau = t.max_step();
    opt.sample_every = 500;
    const auto res = evolve(fock_state(2048, 0), t, 4.0, opt);
    REQUIRE(res.stop == StopReason::TruncationBreach);

    const auto p = ground_state_problem(3);
    for (const auto& s : res.trajectory.samples) {
        if (s.tau == 0.0) continue;
        const auto lb = bounds::solve_lower_bound(p, s.tau);
        CHECK(lb.points.back().value <= s.mean_n + 1e-6);
    }
}

TEST_CASE("problem validation") {
    BoundProblem bad;
    bad.order = 3;
    bad.poly = specfun::ld_accel_poly(2);  // mismatched order
    CHECK_THROWS_AS(bounds::solve_lower_bound(bad, 1.0), std::invalid_argument);
    BoundProblem neg = ground_state_problem(3);
    neg.n0 = -1.0;
    CHECK_THROWS_AS(bounds::solve_lower_bound(neg, 1.0), std::invalid_argument);
}
