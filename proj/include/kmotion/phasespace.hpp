#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "kmotion/model.hpp"

namespace kmotion::phasespace {

/// Husimi Q values on a rectangular phase-space grid.  Rows are indexed by
/// the imaginary part (row-major storage), columns by the real part.
struct QGrid {
    double re_min = 0.0, re_max = 0.0, im_min = 0.0, im_max = 0.0;
    int n_re = 0, n_im = 0;
    std::vector<double> values;

    double norm_estimate = 0.0;  // cell area * sum of values
    bool norm_ok = false;        // within 2% of unity

    double re_at(int i) const;
    double im_at(int j) const;
    double at(int j_im, int i_re) const { return values[size_t(j_im) * n_re + i_re]; }
    double cell_area() const;
};

/// Q(alpha) = (1/pi) e^{-|alpha|^2} |sum_n conj(alpha)^n/sqrt(n!) psi_n|^2.
/// The sum is accumulated with e^{-|alpha|^2/2} folded into the running term,
/// so no intermediate overflows for |alpha| <= 30 (nmax <= 4096).
double husimi_q(const MotionalState& state, std::complex<double> alpha);

QGrid q_on_grid(const MotionalState& state, double re_min, double re_max, double im_min,
                double im_max, int n_re, int n_im);

/// Angular average of Q over the grid, binned by |alpha| up to the largest
/// fully enclosed radius.  Returns (bin center radius, mean Q) pairs.
std::vector<std::pair<double, double>> radial_average(const QGrid& grid, int nbins);

}  // namespace kmotion::phasespace
