#pragma once

#include "mzs/bench/config.hpp"
#include "mzs/bench/presets.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mzs::bench {

struct RunResult {
  RunConfig cfg;
  double h = 0.0;
  double l2_error = 0.0;
  double energy_error = 0.0;
  double norm_drift = 0.0;
  double wall_seconds = 0.0;
};

struct ReferenceInfo {
  std::string path;       // cache file backing this reference
  bool cache_hit = false;
  int n_steps = 0;
  double doubling_check = -1.0; // L2 distance to the 2x-steps run (fresh entries)
};

// Fine-step order-6 reference for cfg's problem, cached on disk. The number
// of reference steps is 50 x max(n_steps of the sweep; cfg.n_steps when the
// sweep is empty), with 21 quadrature nodes. A fresh cache entry is verified
// once by doubling the step count (distance must be <= 1e-9); cache reads
// validate the header and fall back to recomputation on any mismatch.
Wavefunction make_reference(const RunConfig& cfg, int sweep_max_steps, ReferenceInfo* info = nullptr);

// One benchmark run measured against a given reference state.
RunResult run_single(const RunConfig& cfg, const Wavefunction& reference);

// Sweep n_steps over steps_list (jobs-wide worker pool, deterministic order).
std::vector<RunResult> run_table(const RunConfig& base, const std::vector<int>& steps_list,
                                 const Wavefunction& reference);

std::string csv_header();
std::string csv_row(const RunResult& r);
void write_csv(const std::string& path, const std::vector<RunResult>& rows);

struct SlopeFit {
  double slope = 0.0;
  int points_used = 0;
  bool ok = false; // at least 3 points survived the saturation cut
};

// Least-squares slope of log(err) vs log(h), ignoring points at or below the
// saturation floor.
SlopeFit fit_loglog(const std::vector<double>& h, const std::vector<double>& err,
                    double saturation_floor);

struct ConvergenceResult {
  std::vector<RunResult> rows;
  SlopeFit fit;
};

// Error-vs-h sweep against a shared fine reference, plus the fitted slope.
// The saturation cut is 10x the estimated reference accuracy.
ConvergenceResult run_convergence(const RunConfig& base, const std::vector<int>& steps_list);

} // namespace mzs::bench
