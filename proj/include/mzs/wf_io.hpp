#pragma once

#include "mzs/grid.hpp"

#include <string>

namespace mzs {

// Binary wavefunction snapshot.
// Layout: magic "MZWF", u32 version=1, u64 n_points, f64 eps, f64 t,
// f64 x_min, f64 x_max, then n_points (f64 re, f64 im) pairs.
// All fields little-endian.
struct WfSnapshot {
  Wavefunction u;
  double eps = 0.0;
  double t = 0.0;
};

void dump_mzwf(const std::string& path, const Wavefunction& u, double eps, double t);

// Throws std::runtime_error on missing file, bad magic/version, or a
// truncated payload (callers treat that as "recompute", never as data).
WfSnapshot load_mzwf(const std::string& path);

} // namespace mzs
