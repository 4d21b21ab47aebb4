#pragma once

#include "mzs/grid.hpp"
#include "mzs/propagators.hpp"

#include <string>
#include <vector>

namespace mzs::bench {

// One benchmark run. n_grid is the number of collocation points (the paper
// Table's M), n_steps the number of uniform time steps (its N).
struct RunConfig {
  std::string preset = "double_well_chirp";
  SchemeId scheme = SchemeId::mz6;
  double eps = 1e-2;
  Index n_grid = 1000;
  int n_steps = 100;
  double t0 = 0.0;
  double t_final = 2.5;
  int gl_nodes = 11;
  int lanczos_w2 = 0; // 0 = policy (3 below h = sqrt(eps), else 5)
  int lanczos_w3 = 2;
  double sigma = 0.0;      // > 0: choose n_steps from h = eps^sigma / sigma_mult
  double sigma_mult = 1.0; // the multiplier c in h = eps^sigma / c
  bool prune_by_sigma = false;
  bool midpoint = false; // order-2 scheme: midpoint sampling instead of integral
  std::string out_csv;
  std::string cache_dir = "ref_cache";
  int snapshots = 0;
  int jobs = 1;
  bool verbose = false;

  double h() const { return (t_final - t0) / n_steps; }
  // Number of steps implied by h = eps^sigma / sigma_mult, rounded to cover
  // [t0, t_final] with uniform steps.
  int steps_from_sigma() const;
  PropagatorOptions propagator_options() const;
};

// Flat `key = value` file, '#' starts a comment, keys match the CLI flag
// names with '-' replaced by '_'. Unknown keys are an error.
RunConfig load_config_file(const std::string& path);
void apply_kv(RunConfig& cfg, const std::string& key, const std::string& value);

} // namespace mzs::bench
