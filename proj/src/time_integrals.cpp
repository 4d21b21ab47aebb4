#include "mzs/time_integrals.hpp"

#include "mzs/spectral.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace mzs {

ArrayXd PotentialModel::sample(int a, double t) const {
  require(grid != nullptr, "potential without grid");
  require(a >= 0, "negative derivative order");
  const Index n = grid->n;
  ArrayXd out(n);
  if (a == 0) {
    require(static_cast<bool>(eval), "potential has no eval");
    for (Index i = 0; i < n; ++i) out[i] = eval(grid->x[i], t);
  } else {
    require(has_dx(a), "potential: analytic derivative of order " + std::to_string(a) +
                           " not available");
    for (Index i = 0; i < n; ++i) out[i] = dx_eval(a, grid->x[i], t);
  }
  return out;
}

namespace {

void check_symmetric(const QuadratureRule& rule, double h) {
  const int n = rule.n_nodes;
  for (int q = 0; q < n; ++q)
    require(std::abs(rule.nodes[q] + rule.nodes[n - 1 - q] - h) <= 1e-12 * std::abs(h),
            "quadrature rule not symmetric about h/2");
}

double bt_pow(int j, int k, double h, double zeta) {
  return std::pow(bernoulli_bt(j, h, zeta), k);
}

// Parity-combined node sample of d^a V about the step midpoint.
ArrayXd paired_sample(const PotentialModel& pot, int a, double t, double h, double tau,
                      Parity parity) {
  switch (parity) {
    case Parity::none: return pot.sample(a, t + tau);
    case Parity::even: return 0.5 * (pot.sample(a, t + tau) + pot.sample(a, t + h - tau));
    case Parity::odd: return 0.5 * (pot.sample(a, t + tau) - pot.sample(a, t + h - tau));
  }
  return {};
}

double paired_scalar(const std::function<double(double)>& f, double t, double h, double tau,
                     Parity parity) {
  switch (parity) {
    case Parity::none: return f(t + tau);
    case Parity::even: return 0.5 * (f(t + tau) + f(t + h - tau));
    case Parity::odd: return 0.5 * (f(t + tau) - f(t + h - tau));
  }
  return 0.0;
}

ArrayXd static_jet(const PotentialModel& pot, int a) {
  const Index n = pot.grid->n;
  ArrayXd out(n);
  if (a == 0) {
    for (Index i = 0; i < n; ++i) out[i] = pot.v_static(pot.grid->x[i]);
  } else {
    for (Index i = 0; i < n; ++i) out[i] = pot.v_static_dx(a, pot.grid->x[i]);
  }
  return out;
}

GridFunction eval_mu_separable(const PotentialModel& pot, double t, double h, int j, int k,
                               const QuadratureRule& rule, Parity parity, int a) {
  // V = S(x) + f(t) x, so the line integral splits into two scalar
  // quadratures: mu* = S^(a) * int Btjk  (even/none only; S is even about the
  // midpoint) + d^a(x) * int Btjk f*.
  double ib = 0.0, iff = 0.0;
  for (int q = 0; q < rule.n_nodes; ++q) {
    const double bt = bt_pow(j, k, h, rule.nodes[q]);
    ib += rule.weights[q] * bt;
    iff += rule.weights[q] * bt * paired_scalar(pot.f_time, t, h, rule.nodes[q], parity);
  }
  ArrayXd out = ArrayXd::Zero(pot.grid->n);
  if (parity != Parity::odd) out += ib * static_jet(pot, a);
  if (a == 0)
    out += iff * pot.grid->x;
  else if (a == 1)
    out += ArrayXd::Constant(pot.grid->n, iff);
  return {pot.grid, std::move(out)};
}

} // namespace

GridFunction eval_mu(const PotentialModel& pot, double t, double h, int j, int k,
                     const QuadratureRule& rule, Parity parity, int dx_order) {
  require(j >= 0 && j <= 4, "eval_mu: j out of range [0,4]");
  require(k >= 0 && k <= 2, "eval_mu: k out of range [0,2]");
  require(h != 0.0, "eval_mu: zero step");
  if (parity != Parity::none) check_symmetric(rule, h);

  if (pot.separable) return eval_mu_separable(pot, t, h, j, k, rule, parity, dx_order);

  ArrayXd acc = ArrayXd::Zero(pot.grid->n);
  for (int q = 0; q < rule.n_nodes; ++q) {
    const double w = rule.weights[q] * bt_pow(j, k, h, rule.nodes[q]);
    acc += w * paired_sample(pot, dx_order, t, h, rule.nodes[q], parity);
  }
  return {pot.grid, std::move(acc)};
}

Eigen::MatrixXd lambda_coeff_matrix(const TriangleKernel& kernel, int n_nodes) {
  static std::mutex m;
  static std::map<std::pair<std::string, int>, Eigen::MatrixXd> cache;
  std::lock_guard<std::mutex> lock(m);
  auto key = std::make_pair(kernel.name, n_nodes);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  const ArrayXd z = gl_rule(n_nodes, 1.0).nodes;
  ArrayXd denom(n_nodes);
  for (int i = 0; i < n_nodes; ++i) {
    double d = 1.0;
    for (int j = 0; j < n_nodes; ++j)
      if (j != i) d *= z[i] - z[j];
    denom[i] = d;
  }
  auto cardinal = [&](int i, double x) {
    double p = 1.0;
    for (int j = 0; j < n_nodes; ++j)
      if (j != i) p *= x - z[j];
    return p / denom[i];
  };

  // Chat_ij = int_0^1 l_i(z) z [ int_0^1 ker(1,z,z s) l_j(z s) ds ] dz.
  // Polynomial degrees: inner <= deg(ker) + n-1 in s, outer <= 2n + deg(ker) - 1
  // in z; the product Gauss rules below are exact for those degrees, so the
  // only approximation in eval_lambda is the interpolation of W itself.
  const int mi = (kernel.degree + n_nodes) / 2 + 2;
  const int mo = n_nodes + kernel.degree + 2;
  const QuadratureRule qi = gl_rule(mi, 1.0);
  const QuadratureRule qo = gl_rule(mo, 1.0);

  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n_nodes, n_nodes);
  for (int oc = 0; oc < mo; ++oc) {
    const double zc = qo.nodes[oc];
    const double wz = qo.weights[oc] * zc;
    ArrayXd inner = ArrayXd::Zero(n_nodes);
    for (int ic = 0; ic < mi; ++ic) {
      const double y = zc * qi.nodes[ic];
      const double kv = qi.weights[ic] * kernel.eval(1.0, zc, y);
      for (int jj = 0; jj < n_nodes; ++jj) inner[jj] += kv * cardinal(jj, y);
    }
    for (int ii = 0; ii < n_nodes; ++ii) {
      const double li = wz * cardinal(ii, zc);
      for (int jj = 0; jj < n_nodes; ++jj) C(ii, jj) += li * inner[jj];
    }
  }
  // Rebalance the (roundoff-sized) defect in the zeroth moment so that a
  // constant integrand reproduces the kernel's exact triangle integral; this
  // makes kernels with vanishing integral (psi and friends) annihilate
  // time-constant potentials exactly.
  C.array() += (triangle_integral(kernel, 1.0) - C.sum()) / (n_nodes * n_nodes);
  return cache.emplace(std::move(key), std::move(C)).first->second;
}

namespace {

// Node samples of d^a W about the midpoint, one ArrayXd per node, for the
// requested parity. Falls back to spectral differentiation of the sampled
// time slices when the potential has no analytic derivatives.
std::vector<ArrayXd> lambda_side_samples(const PotentialModel& pot, int a, double t, double h,
                                         const QuadratureRule& rule, Parity parity) {
  std::vector<ArrayXd> out;
  out.reserve(rule.n_nodes);
  auto slice = [&](double tt) -> ArrayXd {
    if (pot.has_dx(a)) return pot.sample(a, tt);
    return deriv(GridFunction{pot.grid, pot.sample(0, tt)}, a).v;
  };
  for (int q = 0; q < rule.n_nodes; ++q) {
    const double tau = rule.nodes[q];
    switch (parity) {
      case Parity::none: out.push_back(slice(t + tau)); break;
      case Parity::even: out.push_back(0.5 * (slice(t + tau) + slice(t + h - tau))); break;
      case Parity::odd: out.push_back(0.5 * (slice(t + tau) - slice(t + h - tau))); break;
    }
  }
  return out;
}

ArrayXd bilinear(const Eigen::MatrixXd& C, const std::vector<ArrayXd>& A,
                 const std::vector<ArrayXd>& B, Index n) {
  ArrayXd acc = ArrayXd::Zero(n);
  const int m = static_cast<int>(A.size());
  for (int i = 0; i < m; ++i) {
    ArrayXd p = ArrayXd::Zero(n);
    for (int j = 0; j < m; ++j) p += C(i, j) * B[j];
    acc += A[i] * p;
  }
  return acc;
}

GridFunction eval_lambda_separable(const PotentialModel& pot, double t, double h, int a, int b,
                                   const QuadratureRule& rule, Parity parity,
                                   const Eigen::MatrixXd& C) {
  // A_i = S^(a) + [a==1] f(t+tau_i), B_j = S^(b) + [b==1] f(t+tau_j): the
  // bilinear form collapses to scalar contractions of C with the f node
  // values. S is time-constant, hence purely even about the midpoint.
  const int m = rule.n_nodes;
  Eigen::VectorXd fe(m), fo(m), fn(m);
  for (int q = 0; q < m; ++q) {
    fn[q] = paired_scalar(pot.f_time, t, h, rule.nodes[q], Parity::none);
    fe[q] = paired_scalar(pot.f_time, t, h, rule.nodes[q], Parity::even);
    fo[q] = paired_scalar(pot.f_time, t, h, rule.nodes[q], Parity::odd);
  }
  const double tot = C.sum();
  Eigen::VectorXd row = C.rowwise().sum(); // contracts the xi side
  Eigen::VectorXd col = C.colwise().sum(); // contracts the zeta side
  const bool da = a == 1, db = b == 1;

  const ArrayXd Sa = static_jet(pot, a);
  const ArrayXd Sb = static_jet(pot, b);
  ArrayXd out = ArrayXd::Zero(pot.grid->n);
  double cc = 0.0; // x-independent piece
  switch (parity) {
    case Parity::none:
      out += tot * (Sa * Sb);
      if (db) out += col.dot(fn) * Sa;
      if (da) out += row.dot(fn) * Sb;
      if (da && db) cc = fn.dot(C * fn);
      break;
    case Parity::even:
      out += tot * (Sa * Sb);
      if (db) out += col.dot(fe) * Sa;
      if (da) out += row.dot(fe) * Sb;
      if (da && db) cc = fe.dot(C * fe) + fo.dot(C * fo);
      break;
    case Parity::odd:
      if (db) out += col.dot(fo) * Sa;
      if (da) out += row.dot(fo) * Sb;
      if (da && db) cc = fe.dot(C * fo) + fo.dot(C * fe);
      break;
  }
  if (cc != 0.0) out += cc;
  return {pot.grid, std::move(out)};
}

} // namespace

GridFunction eval_lambda(const PotentialModel& pot, double t, double h,
                         const TriangleKernel& kernel, int a, int b,
                         const QuadratureRule& rule, Parity parity) {
  require(a >= 1 && a <= 2 && b >= 1 && b <= 2, "eval_lambda: derivative orders must be 1 or 2");
  require(h != 0.0, "eval_lambda: zero step");
  check_symmetric(rule, h);

  Eigen::MatrixXd C =
      std::pow(h, kernel.degree + 2) * lambda_coeff_matrix(kernel, rule.n_nodes);

  if (pot.separable) return eval_lambda_separable(pot, t, h, a, b, rule, parity, C);

  const Index n = pot.grid->n;
  if (parity == Parity::none) {
    auto A = lambda_side_samples(pot, a, t, h, rule, Parity::none);
    auto B = lambda_side_samples(pot, b, t, h, rule, Parity::none);
    return {pot.grid, bilinear(C, A, B, n)};
  }
  auto Ae = lambda_side_samples(pot, a, t, h, rule, Parity::even);
  auto Ao = lambda_side_samples(pot, a, t, h, rule, Parity::odd);
  auto Be = lambda_side_samples(pot, b, t, h, rule, Parity::even);
  auto Bo = lambda_side_samples(pot, b, t, h, rule, Parity::odd);
  ArrayXd acc = parity == Parity::even ? bilinear(C, Ae, Be, n) + bilinear(C, Ao, Bo, n)
                                       : bilinear(C, Ae, Bo, n) + bilinear(C, Ao, Be, n);
  return {pot.grid, std::move(acc)};
}

namespace {

IntegralJet mu_jet(const PotentialModel& pot, double t, double h, int j, int k,
                   const QuadratureRule& rule, Parity parity, int depth) {
  IntegralJet out;
  out.val = eval_mu(pot, t, h, j, k, rule, parity, 0);
  int a = 1;
  if (pot.separable) {
    for (; a <= depth; ++a) out.dx.push_back(eval_mu(pot, t, h, j, k, rule, parity, a).v);
  } else {
    for (; a <= depth && pot.has_dx(a); ++a)
      out.dx.push_back(eval_mu(pot, t, h, j, k, rule, parity, a).v);
    // Spectral fallback past the deepest analytic order: differentiate the
    // integral itself (valid for x-periodic potentials only; documented with
    // the presets).
    GridFunction g{pot.grid, a == 1 ? out.val.v : out.dx.back()};
    for (; a <= depth; ++a) {
      g = deriv(g, 1);
      out.dx.push_back(g.v);
    }
  }
  return out;
}

} // namespace

MuLambdaTables build_tables(const PotentialModel& pot, double t, double h,
                            const QuadratureRule& rule, TableLevel level, bool force_generic) {
  require(pot.grid != nullptr, "build_tables: potential without grid");
  require(h != 0.0, "build_tables: zero step (steppers short-circuit h=0)");

  PotentialModel p = pot;
  if (force_generic) p.separable = false;

  MuLambdaTables tab;
  tab.t = t;
  tab.h = h;
  tab.gl_nodes = rule.n_nodes;
  tab.level = level;

  if (level == TableLevel::mz2) {
    tab.mu00 = mu_jet(p, t, h, 0, 0, rule, Parity::none, 0);
    return tab;
  }
  if (level == TableLevel::mz4) {
    tab.mu00 = mu_jet(p, t, h, 0, 0, rule, Parity::none, 4);
    tab.mu11 = mu_jet(p, t, h, 1, 1, rule, Parity::none, 1);
    return tab;
  }

  require(rule.n_nodes >= 3, "order-6 tables need at least 3 quadrature nodes");
  tab.mu00_e = mu_jet(p, t, h, 0, 0, rule, Parity::even, 8);
  tab.mu11_o = mu_jet(p, t, h, 1, 1, rule, Parity::odd, 5);
  tab.mu21_e = mu_jet(p, t, h, 2, 1, rule, Parity::even, 2);
  tab.mu31_o = mu_jet(p, t, h, 3, 1, rule, Parity::odd, 3);
  tab.mu12_e = mu_jet(p, t, h, 1, 2, rule, Parity::even, 0);
  tab.lam_psi_e = eval_lambda(p, t, h, kernel_psi(), 1, 1, rule, Parity::even);
  tab.lam_c1_o = eval_lambda(p, t, h, kernel_phi1_plus_vphi1(), 1, 2, rule, Parity::odd);
  tab.lam_c2_o = eval_lambda(p, t, h, kernel_phi2_plus_vphi2(), 2, 1, rule, Parity::odd);
  return tab;
}

} // namespace mzs
