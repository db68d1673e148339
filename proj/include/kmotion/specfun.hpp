#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace kmotion::specfun {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Associated Laguerre polynomial L_n^(k)(x), upward three-term recurrence in n.
/// Stable for the small non-negative arguments (x = eta^2) used throughout.
double laguerre(int n, int k, double x);

/// Recoil overlap factor f_k(n;eta) = n!/(n+k)! L_n^(k)(eta^2) e^{-eta^2/2}.
/// The factorial ratio is fused (running product, log-space above n = 64).
/// eta == 0 dispatches to the Lamb-Dicke limit 1/k!.
double overlap_factor(int n, int k, double eta);

/// Ladder convention of the equations of motion: zero for n < 0.
double overlap_factor_or_zero(int n, int k, double eta);

/// |g_k(n;eta)|/|kappa| = eta^k sqrt(n!/(n+k)!) |L_n^(k)(eta^2)| e^{-eta^2/2},
/// zero for n < 0.  Fused form only; never a quotient of two factorials.
double coupling_magnitude(int n, int k, double eta);

/// Signed scaled coupling g(n)/(sqrt2 eta^k |kappa|) for the exact model.
/// The eta^k prefactor cancels against the scaled-time unit.
double scaled_coupling(int n, int k, double eta);

/// Scaled coupling in the Lamb-Dicke approximation:
/// (1/(sqrt2 k!)) sqrt((n+k)!/n!).
double scaled_coupling_ld(int n, int k);

/// Coefficient driving the second derivative of the mean excitation:
/// F_k(n;eta) = k [ (n+k)!/n! f_k^2(n;eta) - n!/(n-k)! f_k^2(n-k;eta) ],
/// evaluated in fused overflow-safe form.  eta == 0 uses the exact
/// binomial limit (1/(k-1)!)[C(n+k,k) - C(n,k)].  Zero for n < 0.
double accel_coefficient(int n, int k, double eta);

/// Exact rational coefficients of the Lamb-Dicke acceleration polynomial
/// F_k(n;0) = sum_{l=0}^{k-1} a_l n^l and of the first integral,
/// b_l = 2 a_{l-1}/l for l = 1..k.
struct AccelPoly {
    int order = 0;                // k
    std::vector<Rational> a;      // a_0 .. a_{k-1}
    std::vector<Rational> b;      // b_1 .. b_k (index shifted by one)

    std::vector<double> a_doubles() const;
    std::vector<double> b_doubles() const;

    /// sum_l a_l x^l
    double eval_accel(double x) const;
    /// sum_l b_l x^l (l = 1..k)
    double eval_velocity_sq(double x) const;
};

/// Expand Eq.-(19)-style binomial difference into AccelPoly with exact
/// integer arithmetic.  Validated range 1 <= k <= 20.
AccelPoly ld_accel_poly(int k);

/// Large-n envelope of accel_coefficient: (1/pi) e^{eta^2/2} eta^{-(2k+1)} / sqrt(n).
double accel_envelope(int n, int k, double eta);

/// The n-independent envelope constant C_k(eta) = (1/pi) e^{eta^2/2} eta^{-(2k+1)}.
double envelope_constant(int k, double eta);

/// sqrt(n!/(n+k)!) without forming either factorial.
double factorial_ratio_sqrt(int n, int k);

}  // namespace kmotion::specfun
