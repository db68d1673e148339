#include "kmotion/phasespace.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kmotion::phasespace {

double QGrid::re_at(int i) const {
    return n_re > 1 ? re_min + (re_max - re_min) * i / (n_re - 1) : re_min;
}

double QGrid::im_at(int j) const {
    return n_im > 1 ? im_min + (im_max - im_min) * j / (n_im - 1) : im_min;
}

double QGrid::cell_area() const {
    const double dre = n_re > 1 ? (re_max - re_min) / (n_re - 1) : 0.0;
    const double dim = n_im > 1 ? (im_max - im_min) / (n_im - 1) : 0.0;
    return dre * dim;
}

double husimi_q(const MotionalState& state, std::complex<double> alpha) {
    const std::complex<double> ac = std::conj(alpha);
    // term_n = conj(alpha)^n / sqrt(n!) * e^{-|alpha|^2/2}, by running multiplication
    std::complex<double> term = std::exp(-0.5 * std::norm(alpha));
    std::complex<double> acc = term * state.amps[0];
    for (int n = 1; n < state.nmax(); ++n) {
        term *= ac / std::sqrt(double(n));
        acc += term * state.amps[n];
    }
    return std::norm(acc) / std::numbers::pi;
}

QGrid q_on_grid(const MotionalState& state, double re_min, double re_max, double im_min,
                double im_max, int n_re, int n_im) {
    if (!(re_max > re_min) || !(im_max > im_min))
        throw std::invalid_argument("q_on_grid: empty grid bounds");
    if (n_re < 2 || n_im < 2) throw std::invalid_argument("q_on_grid: need at least 2x2 nodes");

    QGrid grid;
    grid.re_min = re_min;
    grid.re_max = re_max;
    grid.im_min = im_min;
    grid.im_max = im_max;
    grid.n_re = n_re;
    grid.n_im = n_im;
    grid.values.resize(size_t(n_re) * n_im);

    double sum = 0.0;
    for (int j = 0; j < n_im; ++j) {
        const double im = grid.im_at(j);
        for (int i = 0; i < n_re; ++i) {
            const double q = husimi_q(state, {grid.re_at(i), im});
            grid.values[size_t(j) * n_re + i] = q;
            sum += q;
        }
    }
    grid.norm_estimate = sum * grid.cell_area();
    grid.norm_ok = std::abs(grid.norm_estimate - 1.0) <= 0.02;
    return grid;
}

std::vector<std::pair<double, double>> radial_average(const QGrid& grid, int nbins) {
    if (nbins < 1) throw std::invalid_argument("radial_average: need at least one bin");
    const double r_enclosed =
        std::min({std::abs(grid.re_min), std::abs(grid.re_max), std::abs(grid.im_min),
                  std::abs(grid.im_max)});
    const double dr = r_enclosed / nbins;
    std::vector<double> acc(nbins, 0.0);
    std::vector<long> cnt(nbins, 0);
    for (int j = 0; j < grid.n_im; ++j) {
        const double im = grid.im_at(j);
        for (int i = 0; i < grid.n_re; ++i) {
            const double r = std::hypot(grid.re_at(i), im);
            const int bin = int(r / dr);
            if (bin < nbins) {
                acc[bin] += grid.at(j, i);
                ++cnt[bin];
            }
        }
    }
    std::vector<std::pair<double, double>> out;
    out.reserve(nbins);
    for (int b = 0; b < nbins; ++b)
        if (cnt[b] > 0) out.emplace_back((b + 0.5) * dr, acc[b] / cnt[b]);
    return out;
}

}  // namespace kmotion::phasespace
