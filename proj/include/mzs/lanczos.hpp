#pragma once

#include "mzs/grid.hpp"

#include <functional>

namespace mzs {

struct LanczosConfig {
  int max_iters = 5;
  double breakdown_tol = 1e-14;
  bool adaptive = false;     // stop once the a-posteriori estimate is small
  double adaptive_tol = 1e-12;
  bool full_reorth = false;  // re-project against the whole basis each sweep
};

struct LanczosReport {
  int iters_used = 0;
  double est_residual = 0.0;
  bool happy_breakdown = false;
};

using Matvec = std::function<Wavefunction(const Wavefunction&)>;

// exp(W) v for skew-Hermitian W given only v |-> W v. Runs Hermitian Lanczos
// on H = -i W; the result is ||v|| Q_m exp(i T_m) e_1 with the tridiagonal
// exponential computed by dense symmetric eigendecomposition, so the output
// norm equals ||v|| up to orthogonality loss in Q_m.
Wavefunction lanczos_expv(const Matvec& matvec, const Wavefunction& v, const LanczosConfig& cfg,
                          LanczosReport* report = nullptr);

} // namespace mzs
