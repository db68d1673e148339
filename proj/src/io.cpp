#include "kmotion/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace kmotion::io {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    return out;
}

void finish(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

void write_meta(std::ofstream& out, const Provenance& meta) {
    for (const auto& [key, value] : meta) out << "# " << key << " = " << value << "\n";
}

}  // namespace

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_trajectory_csv(const std::string& path, const Provenance& meta,
                          const Trajectory& traj) {
    auto out = open_out(path);
    write_meta(out, meta);
    out << "tau,mean_n,norm,energy,tail_pop\n";
    for (const auto& s : traj.samples)
        out << format_g17(s.tau) << ',' << format_g17(s.mean_n) << ',' << format_g17(s.norm)
            << ',' << format_g17(s.energy) << ',' << format_g17(s.tail_pop) << "\n";
    finish(out, path);
}

Trajectory read_trajectory_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path);
    Trajectory traj;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {  // column header
            header_seen = true;
            continue;
        }
        TrajectorySample s;
        char comma;
        std::istringstream ss(line);
        if (!(ss >> s.tau >> comma >> s.mean_n >> comma >> s.norm >> comma >> s.energy >>
              comma >> s.tail_pop))
            throw IoError("malformed trajectory row in " + path + ": " + line);
        traj.samples.push_back(s);
    }
    return traj;
}

void write_bounds_csv(const std::string& path, const Provenance& meta,
                      const bounds::LowerBoundTrajectory& lb, const bounds::UpperBound& ub) {
    auto out = open_out(path);
    write_meta(out, meta);
    out << "tau,N_lb,N_ub\n";
    for (const auto& p : lb.points)
        out << format_g17(p.tau) << ',' << format_g17(p.value) << ','
            << format_g17(ub(p.tau)) << "\n";
    finish(out, path);
}

void write_qgrid_csv(const std::string& path, const Provenance& meta,
                     const phasespace::QGrid& grid) {
    auto out = open_out(path);
    write_meta(out, meta);
    out << "re_alpha,im_alpha,q\n";
    for (int j = 0; j < grid.n_im; ++j)
        for (int i = 0; i < grid.n_re; ++i)
            out << format_g17(grid.re_at(i)) << ',' << format_g17(grid.im_at(j)) << ','
                << format_g17(grid.at(j, i)) << "\n";
    finish(out, path);
}

void write_qgrid_pgm(const std::string& path, const phasespace::QGrid& grid) {
    auto out = open_out(path);
    out << "P2\n" << grid.n_re << ' ' << grid.n_im << "\n65535\n";
    const double scale = 65535.0 * std::numbers::pi;  // [0, 1/pi] -> [0, 65535]
    for (int j = 0; j < grid.n_im; ++j) {
        for (int i = 0; i < grid.n_re; ++i) {
            const long v = std::lround(std::clamp(grid.at(j, i) * scale, 0.0, 65535.0));
            out << v << (i + 1 < grid.n_re ? ' ' : '\n');
        }
    }
    finish(out, path);
}

}  // namespace kmotion::io
