#include "kmotion/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kmotion::specfun {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

double factorial(int k) {
    double f = 1.0;
    for (int j = 2; j <= k; ++j) f *= j;
    return f;
}

// n!/(n+k)!  (plain ratio, not the square root)
double factorial_ratio(int n, int k) {
    if (n > 64) return std::exp(std::lgamma(n + 1.0) - std::lgamma(n + k + 1.0));
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r /= (n + j);
    return r;
}

}  // namespace

double laguerre(int n, int k, double x) {
    require(n >= 0 && k >= 0, "laguerre: indices must be non-negative");
    require(x >= 0.0 && std::isfinite(x), "laguerre: argument must be finite and >= 0");
    if (n == 0) return 1.0;
    double lm1 = 1.0;            // L_0
    double l = 1.0 + k - x;      // L_1
    for (int j = 1; j < n; ++j) {
        const double lp1 = ((2.0 * j + k + 1.0 - x) * l - (j + k) * lm1) / (j + 1.0);
        lm1 = l;
        l = lp1;
    }
    return l;
}

double factorial_ratio_sqrt(int n, int k) {
    if (n > 64) return std::exp(0.5 * (std::lgamma(n + 1.0) - std::lgamma(n + k + 1.0)));
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r /= (n + j);
    return std::sqrt(r);
}

double overlap_factor(int n, int k, double eta) {
    require(n >= 0, "overlap_factor: n must be non-negative");
    require(k >= 1, "overlap_factor: order must be >= 1");
    require(eta >= 0.0 && std::isfinite(eta), "overlap_factor: eta must be finite and >= 0");
    if (eta == 0.0) return 1.0 / factorial(k);
    const double x = eta * eta;
    return factorial_ratio(n, k) * laguerre(n, k, x) * std::exp(-0.5 * x);
}

double overlap_factor_or_zero(int n, int k, double eta) {
    if (n < 0) return 0.0;
    return overlap_factor(n, k, eta);
}

double coupling_magnitude(int n, int k, double eta) {
    if (n < 0) return 0.0;
    require(k >= 1, "coupling_magnitude: order must be >= 1");
    require(eta >= 0.0 && std::isfinite(eta), "coupling_magnitude: eta must be finite and >= 0");
    if (eta == 0.0) return 0.0;
    const double x = eta * eta;
    return std::pow(eta, k) * factorial_ratio_sqrt(n, k) * std::abs(laguerre(n, k, x)) *
           std::exp(-0.5 * x);
}

double scaled_coupling(int n, int k, double eta) {
    if (n < 0) return 0.0;
    require(eta > 0.0 && std::isfinite(eta), "scaled_coupling: eta must be finite and > 0");
    const double x = eta * eta;
    return factorial_ratio_sqrt(n, k) * laguerre(n, k, x) * std::exp(-0.5 * x) /
           std::numbers::sqrt2;
}

double scaled_coupling_ld(int n, int k) {
    if (n < 0) return 0.0;
    return 1.0 / (std::numbers::sqrt2 * factorial(k) * factorial_ratio_sqrt(n, k));
}

namespace {

// F_k(n;0) = (1/(k-1)!) [C(n+k,k) - C(n,k)], products in double.
double accel_coefficient_ld(int n, int k) {
    double rising = 1.0;   // C(n+k,k)
    double falling = 1.0;  // C(n,k), vanishes for n < k
    for (int j = 1; j <= k; ++j) {
        rising *= double(n + j) / j;
        falling *= double(n - k + j) / j;
    }
    if (n < k) falling = 0.0;
    return (rising - falling) / factorial(k - 1);
}

}  // namespace

double accel_coefficient(int n, int k, double eta) {
    require(k >= 1, "accel_coefficient: order must be >= 1");
    require(eta >= 0.0 && std::isfinite(eta), "accel_coefficient: eta must be finite and >= 0");
    if (n < 0) return 0.0;
    if (eta == 0.0) return accel_coefficient_ld(n, k);
    const double x = eta * eta;
    const double up = factorial_ratio(n, k) * std::pow(laguerre(n, k, x), 2);
    const double down =
        (n >= k) ? factorial_ratio(n - k, k) * std::pow(laguerre(n - k, k, x), 2) : 0.0;
    return k * std::exp(-x) * (up - down);
}

std::vector<double> AccelPoly::a_doubles() const {
    std::vector<double> out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i].convert_to<double>();
    return out;
}

std::vector<double> AccelPoly::b_doubles() const {
    std::vector<double> out(b.size());
    for (size_t i = 0; i < b.size(); ++i) out[i] = b[i].convert_to<double>();
    return out;
}

double AccelPoly::eval_accel(double x) const {
    double acc = 0.0;
    for (size_t i = a.size(); i-- > 0;) acc = acc * x + a[i].convert_to<double>();
    return acc;
}

double AccelPoly::eval_velocity_sq(double x) const {
    double acc = 0.0;
    for (size_t i = b.size(); i-- > 0;) acc = acc * x + b[i].convert_to<double>();
    return acc * x;  // b starts at l = 1
}

AccelPoly ld_accel_poly(int k) {
    require(k >= 1, "ld_accel_poly: order must be >= 1");
    require(k <= 20, "ld_accel_poly: validated range is 1 <= k <= 20");

    // Expand prod_{j=1..k}(n+j) and prod_{j=0..k-1}(n-j) as integer polynomials.
    std::vector<BigInt> rising{1}, falling{1};
    for (int j = 1; j <= k; ++j) {
        rising.push_back(0);
        falling.push_back(0);
        for (size_t i = rising.size() - 1; i > 0; --i) {
            rising[i] = rising[i - 1] + BigInt(j) * rising[i];
            falling[i] = falling[i - 1] + BigInt(-(j - 1)) * falling[i];
        }
        rising[0] *= j;
        falling[0] *= -(j - 1);
    }

    BigInt kfac = 1, km1fac = 1;
    for (int j = 2; j <= k; ++j) kfac *= j;
    for (int j = 2; j <= k - 1; ++j) km1fac *= j;

    AccelPoly poly;
    poly.order = k;
    poly.a.resize(k);
    for (int l = 0; l < k; ++l)
        poly.a[l] = Rational(rising[l] - falling[l], kfac * km1fac);
    // The degree-k terms are both monic and cancel exactly.
    if (rising[k] != falling[k])
        throw std::logic_error("ld_accel_poly: leading terms failed to cancel");
    if (poly.a[k - 1] == 0)
        throw std::logic_error("ld_accel_poly: vanishing top coefficient");

    poly.b.resize(k);
    for (int l = 1; l <= k; ++l) poly.b[l - 1] = 2 * poly.a[l - 1] / l;
    return poly;
}

double envelope_constant(int k, double eta) {
    require(k >= 1, "envelope_constant: order must be >= 1");
    require(eta > 0.0 && std::isfinite(eta), "envelope_constant: eta must be finite and > 0");
    return std::exp(0.5 * eta * eta) / (std::numbers::pi * std::pow(eta, 2 * k + 1));
}

double accel_envelope(int n, int k, double eta) {
    require(n >= 1, "accel_envelope: n must be >= 1");
    return envelope_constant(k, eta) / std::sqrt(double(n));
}

}  // namespace kmotion::specfun
