#include "mzs/propagators.hpp"

#include "mzs/spectral.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace mzs {

SchemeId scheme_from_string(const std::string& s) {
  if (s == "mz2") return SchemeId::mz2;
  if (s == "mz4") return SchemeId::mz4;
  if (s == "mz6") return SchemeId::mz6;
  throw contract_error("unknown scheme '" + s + "' (expected mz2|mz4|mz6)");
}

std::string to_string(SchemeId s) {
  switch (s) {
    case SchemeId::mz2: return "mz2";
    case SchemeId::mz4: return "mz4";
    case SchemeId::mz6: return "mz6";
  }
  return "?";
}

int scheme_order(SchemeId s) {
  switch (s) {
    case SchemeId::mz2: return 2;
    case SchemeId::mz4: return 4;
    case SchemeId::mz6: return 6;
  }
  return 0;
}

namespace {

using clock_type = std::chrono::steady_clock;

void add_term(SymOpSum& s, cplx coeff, int k, const ArrayXd& values, const std::string& label) {
  if (coeff == cplx(0.0, 0.0)) return;
  if (!(values != 0.0).any()) return;
  s.add(coeff, k, sym_func_jet(s.grid, {values}, label));
}

// Whether the h^2 eps d^4 mu00 correction stays in the central exponent.
bool keep_sigma_term(const SigmaPolicy& p) { return !p.prune || p.sigma > 0.5; }

void finish_report(StepReport* rep, const Wavefunction& out, clock_type::time_point start) {
  if (!rep) return;
  rep->norm_after = l2_norm(out);
  rep->wall_seconds = std::chrono::duration<double>(clock_type::now() - start).count();
}

Wavefunction expv_or_identity(const SymOpSum& w, const Wavefunction& u, const LanczosConfig& cfg,
                              StepReport* rep) {
  if (w.terms.empty()) return u;
  LanczosReport lrep;
  Wavefunction out = lanczos_expv(
      [&w](const Wavefunction& x) { return apply_symop(w, x); }, u, cfg, &lrep);
  if (rep) rep->lanczos_reports.push_back(lrep);
  return out;
}

} // namespace

Wavefunction step_mz2(const Wavefunction& u, const PotentialModel& pot, const StepContext& ctx,
                      StepReport* rep) {
  const auto start = clock_type::now();
  if (rep) *rep = StepReport{l2_norm(u), 0.0, {}, 0.0};
  if (ctx.h == 0.0) {
    finish_report(rep, u, start);
    return u;
  }
  GridFunction mu = ctx.midpoint_mu
                        ? GridFunction{pot.grid, ctx.h * pot.sample(0, ctx.t + 0.5 * ctx.h)}
                        : ctx.tables.mu00.val;
  require(mu.grid != nullptr, "step_mz2: tables missing mu00");
  require_same_grid(u.grid, mu.grid);

  const cplx half_kin = 0.5 * iu * ctx.h * ctx.eps;
  Wavefunction y = exp_circulant(half_kin, 2, u);
  y = exp_diag(mu, -iu / ctx.eps, y);
  y = exp_circulant(half_kin, 2, y);
  finish_report(rep, y, start);
  return y;
}

Mz4Exponents assemble_mz4_exponents(const StepContext& ctx) {
  const MuLambdaTables& tab = ctx.tables;
  require(tab.mu00.val.grid != nullptr && tab.mu00.dx.size() >= 2,
          "assemble_mz4_exponents: tables missing mu00 derivatives");
  require(tab.mu11.val.grid != nullptr && tab.mu11.dx.size() >= 1,
          "assemble_mz4_exponents: tables missing mu11 derivative");
  const double h = ctx.h, eps = ctx.eps;
  const GridPtr& g = tab.mu00.val.grid;

  Mz4Exponents ex;
  ex.w0 = iu * h * eps;
  ex.w1 = {tab.mu00.val, -iu / eps};
  ex.w2 = SymOpSum(g);
  const ArrayXd& d1 = tab.mu00.deriv(1);
  add_term(ex.w2, iu * h / (6.0 * eps), 0, d1 * d1, "(dx mu00)^2");
  add_term(ex.w2, cplx(-2.0, 0.0), 1, tab.mu11.deriv(1), "dx mu11");
  add_term(ex.w2, iu * h * h * eps / 6.0, 2, tab.mu00.deriv(2), "dx2 mu00");
  // The quartic diagonal correction completes the sBCH algebra exactly; it is
  // negligible only for large steps (h^2 eps times a bounded multiplier), so
  // the pruning policy may drop it but the default keeps it: one extra O(N)
  // diagonal term costs nothing and never hurts accuracy.
  if (keep_sigma_term(ctx.sigma_policy))
    add_term(ex.w2, -iu * h * h * eps / 24.0, 0, tab.mu00.deriv(4), "dx4 mu00");
  return ex;
}

Wavefunction step_mz4(const Wavefunction& u, const PotentialModel& pot, const StepContext& ctx,
                      StepReport* rep) {
  (void)pot;
  const auto start = clock_type::now();
  if (rep) *rep = StepReport{l2_norm(u), 0.0, {}, 0.0};
  if (ctx.h == 0.0) {
    finish_report(rep, u, start);
    return u;
  }
  Mz4Exponents ex = assemble_mz4_exponents(ctx);
  require_same_grid(u.grid, ex.w1.mu.grid);

  Wavefunction y = exp_circulant(0.5 * ex.w0, 2, u);
  y = exp_diag(ex.w1.mu, 0.5 * ex.w1.coeff, y);
  y = expv_or_identity(ex.w2, y, ctx.lanczos_w2, rep);
  y = exp_diag(ex.w1.mu, 0.5 * ex.w1.coeff, y);
  y = exp_circulant(0.5 * ex.w0, 2, y);
  finish_report(rep, y, start);
  return y;
}

Mz6Exponents assemble_mz6_exponents(const StepContext& ctx) {
  const MuLambdaTables& tab = ctx.tables;
  require(tab.level == TableLevel::mz6, "assemble_mz6_exponents: order-6 tables required");
  require(tab.mu00_e.val.grid != nullptr && tab.mu00_e.dx.size() >= 8 &&
              tab.mu11_o.dx.size() >= 5 && tab.mu21_e.dx.size() >= 2 &&
              tab.mu31_o.dx.size() >= 3,
          "assemble_mz6_exponents: tables missing parity integrals or derivatives");
  require(tab.lam_psi_e.grid != nullptr && tab.lam_c1_o.grid != nullptr &&
              tab.lam_c2_o.grid != nullptr,
          "assemble_mz6_exponents: tables missing triangle integrals");
  const double h = ctx.h, eps = ctx.eps;
  const GridPtr& g = tab.mu00_e.val.grid;

  Mz6Exponents ex;
  ex.w0 = iu * h * eps;
  ex.w1 = {tab.mu00_e.val, -iu / eps};

  ex.w2 = SymOpSum(g);
  const ArrayXd& d1 = tab.mu00_e.deriv(1);
  const ArrayXd& d2 = tab.mu00_e.deriv(2);
  add_term(ex.w2, iu * h / (6.0 * eps), 0, d1 * d1, "(dx mu00^e)^2");
  add_term(ex.w2, cplx(-2.0, 0.0), 1, tab.mu11_o.deriv(1), "dx mu11^o");
  add_term(ex.w2, iu * h * h * eps / 6.0, 2, d2, "dx2 mu00^e");

  ex.w3 = SymOpSum(g);
  const ArrayXd& d3 = tab.mu00_e.deriv(3);
  const ArrayXd& d4 = tab.mu00_e.deriv(4);
  // multiplication-operator part (k = 0)
  add_term(ex.w3, iu / eps, 0, tab.lam_psi_e.v, "lam_psi^e");
  add_term(ex.w3, -iu / (6.0 * eps), 0, d1 * d1 * tab.mu21_e.deriv(2), "(dx mu00^e)^2 dx2 mu21^e");
  add_term(ex.w3, -iu * 7.0 * h * h / (120.0 * eps), 0, d1 * d1 * d2,
           "(dx mu00^e)^2 dx2 mu00^e");
  // first-derivative part (k = 1)
  add_term(ex.w3, cplx(1.0 / 6.0, 0.0), 1, tab.lam_c1_o.v + tab.lam_c2_o.v, "lam_c1^o + lam_c2^o");
  add_term(ex.w3, cplx(h, 0.0), 1,
           d1 * tab.mu11_o.deriv(2) - (1.0 / 3.0) * d2 * tab.mu11_o.deriv(1),
           "dx mu00^e dx2 mu11^o - 1/3 dx2 mu00^e dx mu11^o");
  // second-derivative part (k = 2)
  add_term(ex.w3, iu * h * h * h * eps / 30.0, 2, d2 * d2 - 2.0 * d1 * d3,
           "(dx2 mu00^e)^2 - 2 dx mu00^e dx3 mu00^e");
  add_term(ex.w3, iu * 2.0 * eps, 2, tab.mu21_e.deriv(2), "dx2 mu21^e");
  // third-derivative part (k = 3)
  add_term(ex.w3, cplx(4.0 * eps * eps / 3.0, 0.0), 3, tab.mu31_o.deriv(3), "dx3 mu31^o");
  add_term(ex.w3, cplx(h * h * eps * eps / 3.0, 0.0), 3, tab.mu11_o.deriv(3), "dx3 mu11^o");
  // fourth-derivative part (k = 4)
  add_term(ex.w3, -iu * h * h * h * h * eps * eps * eps / 120.0, 4, d4, "dx4 mu00^e");
  if (keep_sigma_term(ctx.sigma_policy)) {
    // Small jet corrections that complete the sBCH algebra of the 7-factor
    // product through the seventh grade; all carry at least eps h^3 times
    // bounded derivative content, so the sigma policy may drop them together.
    add_term(ex.w3, -iu * h * h * eps / 24.0, 0, d4, "dx4 mu00^e");
    add_term(ex.w3, iu * h * h * h * eps / 60.0, 0,
             d1 * tab.mu00_e.deriv(5) + d2 * d4, "dx mu00^e dx5 mu00^e + dx2 mu00^e dx4 mu00^e");
    add_term(ex.w3, -iu * h * h * h * eps / 120.0, 0, d3 * d3, "(dx3 mu00^e)^2");
    add_term(ex.w3, -iu * h * h * h * h * eps * eps * eps / 384.0, 0, tab.mu00_e.deriv(8),
             "dx8 mu00^e");
    add_term(ex.w3, cplx(-h * h * eps * eps / 4.0, 0.0), 1, tab.mu11_o.deriv(5), "dx5 mu11^o");
    add_term(ex.w3, iu * h * h * h * h * eps * eps * eps / 80.0, 2, tab.mu00_e.deriv(6),
             "dx6 mu00^e");
  }
  return ex;
}

Wavefunction step_mz6(const Wavefunction& u, const PotentialModel& pot, const StepContext& ctx,
                      StepReport* rep) {
  (void)pot;
  const auto start = clock_type::now();
  if (rep) *rep = StepReport{l2_norm(u), 0.0, {}, 0.0};
  if (ctx.h == 0.0) {
    finish_report(rep, u, start);
    return u;
  }
  Mz6Exponents ex = assemble_mz6_exponents(ctx);
  require_same_grid(u.grid, ex.w1.mu.grid);
  SymOpSum w2_half = scaled(ex.w2, cplx(0.5, 0.0));

  Wavefunction y = exp_circulant(0.5 * ex.w0, 2, u);
  y = exp_diag(ex.w1.mu, 0.5 * ex.w1.coeff, y);
  y = expv_or_identity(w2_half, y, ctx.lanczos_w2, rep);
  y = expv_or_identity(ex.w3, y, ctx.lanczos_w3, rep);
  y = expv_or_identity(w2_half, y, ctx.lanczos_w2, rep);
  y = exp_diag(ex.w1.mu, 0.5 * ex.w1.coeff, y);
  y = exp_circulant(0.5 * ex.w0, 2, y);
  finish_report(rep, y, start);
  return y;
}

SymOpSum assemble_theta2(const StepContext& ctx) {
  const MuLambdaTables& tab = ctx.tables;
  require(tab.mu00.val.grid != nullptr && tab.mu11.dx.size() >= 1,
          "assemble_theta2: tables missing mu00/mu11");
  const GridPtr& g = tab.mu00.val.grid;
  SymOpSum th(g);
  th.add(iu * ctx.h * ctx.eps, 2, sym_func_one(g));
  add_term(th, -iu / ctx.eps, 0, tab.mu00.val.v, "mu00");
  add_term(th, cplx(-2.0, 0.0), 1, tab.mu11.deriv(1), "dx mu11");
  return th;
}

SymOpSum assemble_theta4o(const StepContext& ctx) {
  const MuLambdaTables& tab = ctx.tables;
  require(tab.level == TableLevel::mz6, "assemble_theta4o: order-6 tables required");
  const GridPtr& g = tab.mu00_e.val.grid;
  SymOpSum th(g);
  th.add(iu * ctx.h * ctx.eps, 2, sym_func_one(g));
  add_term(th, -iu / ctx.eps, 0, tab.mu00_e.val.v, "mu00^e");
  add_term(th, cplx(-2.0, 0.0), 1, tab.mu11_o.deriv(1), "dx mu11^o");
  add_term(th, iu / ctx.eps, 0, tab.lam_psi_e.v, "lam_psi^e");
  add_term(th, cplx(1.0 / 6.0, 0.0), 1, tab.lam_c1_o.v + tab.lam_c2_o.v, "lam_c1^o + lam_c2^o");
  add_term(th, iu * 2.0 * ctx.eps, 2, tab.mu21_e.deriv(2), "dx2 mu21^e");
  add_term(th, cplx(4.0 * ctx.eps * ctx.eps / 3.0, 0.0), 3, tab.mu31_o.deriv(3), "dx3 mu31^o");
  return th;
}

EvolveResult evolve(const Wavefunction& u0, const PotentialModel& pot, double t0, double t_final,
                    int n_steps, SchemeId scheme, const PropagatorOptions& opt) {
  require(n_steps >= 1, "evolve: n_steps must be >= 1");
  require(opt.eps > 0.0 && opt.eps <= 1.0, "evolve: eps outside (0, 1]");
  require_same_grid(u0.grid, pot.grid);

  EvolveResult res;
  res.u = u0;
  res.reports.reserve(static_cast<size_t>(n_steps));

  const double h = (t_final - t0) / n_steps;
  if (h == 0.0) return res;

  const QuadratureRule rule = gl_rule(opt.gl_nodes, h);
  const TableLevel level = scheme == SchemeId::mz2   ? TableLevel::mz2
                           : scheme == SchemeId::mz4 ? TableLevel::mz4
                                                     : TableLevel::mz6;
  LanczosConfig cfg2, cfg3;
  cfg2.max_iters =
      opt.lanczos_w2 > 0 ? opt.lanczos_w2 : (std::abs(h) >= std::sqrt(opt.eps) ? 5 : 3);
  cfg3.max_iters = opt.lanczos_w3;

  const bool want_snaps = opt.snapshot_every > 0;
  if (want_snaps) res.snapshots.push_back({t0, u0});

  for (int n = 0; n < n_steps; ++n) {
    const double t = t0 + n * h;
    StepContext ctx;
    ctx.eps = opt.eps;
    ctx.t = t;
    ctx.h = h;
    ctx.sigma_policy = opt.sigma_policy;
    ctx.lanczos_w2 = cfg2;
    ctx.lanczos_w3 = cfg3;
    ctx.midpoint_mu = opt.midpoint_mu;
    if (!(scheme == SchemeId::mz2 && opt.midpoint_mu))
      ctx.tables = build_tables(pot, t, h, rule, level, opt.force_generic_tables);

    StepReport rep;
    switch (scheme) {
      case SchemeId::mz2: res.u = step_mz2(res.u, pot, ctx, &rep); break;
      case SchemeId::mz4: res.u = step_mz4(res.u, pot, ctx, &rep); break;
      case SchemeId::mz6: res.u = step_mz6(res.u, pot, ctx, &rep); break;
    }
    if (!res.u.v.allFinite())
      throw std::runtime_error("evolve: non-finite state after step " + std::to_string(n + 1));
    const double drift =
        rep.norm_before > 0.0 ? std::abs(rep.norm_after - rep.norm_before) / rep.norm_before : 0.0;
    res.max_norm_drift = std::max(res.max_norm_drift, drift);
    if (drift > opt.drift_warn) ++res.drift_warnings;
    res.reports.push_back(std::move(rep));

    if (want_snaps && ((n + 1) % opt.snapshot_every == 0 || n + 1 == n_steps))
      res.snapshots.push_back({t0 + (n + 1) * h, res.u});
  }
  return res;
}

} // namespace mzs
