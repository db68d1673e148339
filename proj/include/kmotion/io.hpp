#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kmotion/bounds.hpp"
#include "kmotion/dynamics.hpp"
#include "kmotion/phasespace.hpp"

namespace kmotion::io {

/// File write/parse failure (maps to the CLI I/O exit code).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// '#'-prefixed provenance lines, written above the column header of every
/// output file.  Values are key = value pairs.
using Provenance = std::vector<std::pair<std::string, std::string>>;

std::string format_g17(double v);

/// Columns: tau,mean_n,norm,energy,tail_pop; 17 significant digits.
void write_trajectory_csv(const std::string& path, const Provenance& meta,
                          const Trajectory& traj);
Trajectory read_trajectory_csv(const std::string& path);

/// Columns: tau,N_lb,N_ub; the divergence-estimate scalars go into the
/// provenance block.
void write_bounds_csv(const std::string& path, const Provenance& meta,
                      const bounds::LowerBoundTrajectory& lb,
                      const bounds::UpperBound& ub);

/// Columns: re_alpha,im_alpha,q in row-major order (rows = imaginary part).
void write_qgrid_csv(const std::string& path, const Provenance& meta,
                     const phasespace::QGrid& grid);

/// Plain (P2) PGM, values mapped linearly from [0, 1/pi] to [0, 65535].
void write_qgrid_pgm(const std::string& path, const phasespace::QGrid& grid);

}  // namespace kmotion::io
