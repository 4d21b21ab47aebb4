#pragma once

#include "mzs/grid.hpp"
#include "mzs/lanczos.hpp"
#include "mzs/symop.hpp"
#include "mzs/time_integrals.hpp"

#include <string>
#include <vector>

namespace mzs {

enum class SchemeId { mz2, mz4, mz6 };

SchemeId scheme_from_string(const std::string& s);
std::string to_string(SchemeId s);
int scheme_order(SchemeId s);

// Treatment of the small jet-correction terms (the h^2 eps d^4 mu diagonal
// and, at order 6, the eps h^3 / eps^2 h^2 / eps^3 h^4 companions): by
// default they are always kept (a few extra O(n) summands cost nothing);
// with prune=true they are dropped whenever sigma <= 1/2, where
// h = O(eps^sigma), the regime in which they are negligible.
struct SigmaPolicy {
  bool prune = false;
  double sigma = 1.0;
};

struct StepContext {
  double eps = 1.0;
  double t = 0.0;
  double h = 0.0;
  SigmaPolicy sigma_policy;
  MuLambdaTables tables;
  LanczosConfig lanczos_w2; // central/inner symmetrized exponent
  LanczosConfig lanczos_w3; // innermost exponent of the 7-factor step
  bool midpoint_mu = false; // order-2 only: h V(t+h/2) instead of the integral
};

struct StepReport {
  double norm_before = 0.0;
  double norm_after = 0.0;
  std::vector<LanczosReport> lanczos_reports;
  double wall_seconds = 0.0;
};

// exp(coeff * mu(x)), a pointwise phase factor.
struct DiagExponent {
  GridFunction mu;
  cplx coeff{0.0, 0.0};
};

struct Mz4Exponents {
  cplx w0{0.0, 0.0}; // exponent is w0 * (d/dx)^2, applied spectrally
  DiagExponent w1;
  SymOpSum w2;
};

struct Mz6Exponents {
  cplx w0{0.0, 0.0};
  DiagExponent w1;
  SymOpSum w2;
  SymOpSum w3;
};

Mz4Exponents assemble_mz4_exponents(const StepContext& ctx);
Mz6Exponents assemble_mz6_exponents(const StepContext& ctx);

// Single-exponential Magnus exponents, for dense-oracle comparisons: the
// 5-factor splitting approximates exp(theta2) to O(h^5), the 7-factor one
// approximates exp(theta4o) to O(h^7) (the O(h^5 eps) remainder term of the
// order-4 Magnus exponent is discarded, as in the derivation).
SymOpSum assemble_theta2(const StepContext& ctx);
SymOpSum assemble_theta4o(const StepContext& ctx);

Wavefunction step_mz2(const Wavefunction& u, const PotentialModel& pot, const StepContext& ctx,
                      StepReport* rep = nullptr);
Wavefunction step_mz4(const Wavefunction& u, const PotentialModel& pot, const StepContext& ctx,
                      StepReport* rep = nullptr);
Wavefunction step_mz6(const Wavefunction& u, const PotentialModel& pot, const StepContext& ctx,
                      StepReport* rep = nullptr);

struct PropagatorOptions {
  double eps = 1.0;
  int gl_nodes = 11;
  int lanczos_w2 = 0; // 0 = policy: 3 iterations when |h| < sqrt(eps), else 5
  int lanczos_w3 = 2;
  SigmaPolicy sigma_policy;
  bool midpoint_mu = false;
  bool force_generic_tables = false;
  int snapshot_every = 0; // record every k-th state (plus endpoints); 0 = off
  double drift_warn = 1e-10;
};

struct TrajectorySample {
  double t = 0.0;
  Wavefunction u;
};

struct EvolveResult {
  Wavefunction u;
  std::vector<StepReport> reports;
  std::vector<TrajectorySample> snapshots;
  double max_norm_drift = 0.0; // max per-step relative norm change
  int drift_warnings = 0;      // steps whose drift exceeded drift_warn
};

EvolveResult evolve(const Wavefunction& u0, const PotentialModel& pot, double t0, double t_final,
                    int n_steps, SchemeId scheme, const PropagatorOptions& opt = {});

} // namespace mzs
