#include "mzs/quadrature.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <mutex>

namespace mzs {

namespace {

// Golub-Welsch on [-1,1]: nodes are eigenvalues of the Jacobi matrix with
// off-diagonal b_i = i/sqrt(4i^2-1); weight_i = 2 * (first eigenvector
// component)^2.
struct RefRule {
  ArrayXd x, w;
};

const RefRule& reference_rule(int n) {
  static std::mutex m;
  static std::map<int, RefRule> cache;
  std::lock_guard<std::mutex> lock(m);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    const double b = i / std::sqrt(4.0 * i * i - 1.0);
    J(i, i - 1) = J(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  require(es.info() == Eigen::Success, "gl_rule: Jacobi eigensolve failed");
  RefRule r;
  r.x = es.eigenvalues().array();
  r.w = 2.0 * es.eigenvectors().row(0).array().square();
  return cache.emplace(n, std::move(r)).first->second;
}

} // namespace

QuadratureRule gl_rule(int n_nodes, double h) {
  require(n_nodes >= 1 && n_nodes <= 64, "gl_rule: node count out of range [1,64]");
  require(h != 0.0, "gl_rule: zero step");
  const RefRule& r = reference_rule(n_nodes);
  QuadratureRule q;
  q.n_nodes = n_nodes;
  q.nodes = 0.5 * h * (r.x + 1.0);
  q.weights = 0.5 * h * r.w;
  return q;
}

double bernoulli(int j, double x) {
  switch (j) {
    case 0: return 1.0;
    case 1: return x - 0.5;
    case 2: return (x - 1.0) * x + 1.0 / 6.0;
    case 3: return ((x - 1.5) * x + 0.5) * x;
    case 4: return (((x - 2.0) * x + 1.0) * x) * x - 1.0 / 30.0;
    default: require(false, "bernoulli: degree out of range [0,4]"); return 0.0;
  }
}

double bernoulli_bt(int j, double h, double zeta) {
  require(h != 0.0, "bernoulli_bt: zero step");
  return std::pow(h, j) * bernoulli(j, zeta / h);
}

double triangle_monomial(int p, int q, int r, double h) {
  require(p >= 0 && q >= 0 && r >= 0, "triangle_monomial: negative powers");
  return std::pow(h, p + q + r + 2) / ((q + 1.0) * (p + q + 2.0));
}

double TriangleKernel::eval(double h, double zeta, double xi) const {
  double s = 0.0;
  for (const Mono& m : monos)
    s += m.c * std::pow(h, m.ph) * std::pow(zeta, m.pz) * std::pow(xi, m.px);
  return s;
}

namespace {
TriangleKernel make_kernel(std::string name, std::vector<TriangleKernel::Mono> monos) {
  TriangleKernel k;
  k.name = std::move(name);
  k.monos = std::move(monos);
  k.degree = k.monos.front().ph + k.monos.front().pz + k.monos.front().px;
  for (const auto& m : k.monos)
    require(m.ph + m.pz + m.px == k.degree, "kernel not homogeneous: " + k.name);
  k.odd = k.degree % 2 == 1;
  return k;
}

TriangleKernel combine(std::string name, const TriangleKernel& a, const TriangleKernel& b) {
  std::vector<TriangleKernel::Mono> monos = a.monos;
  monos.insert(monos.end(), b.monos.begin(), b.monos.end());
  return make_kernel(std::move(name), std::move(monos));
}
} // namespace

const TriangleKernel& kernel_psi() {
  static const TriangleKernel k =
      make_kernel("psi", {{1.0, 0, 1, 0}, {-1.0, 0, 0, 1}, {-1.0 / 3.0, 1, 0, 0}});
  return k;
}

const TriangleKernel& kernel_phi1() {
  static const TriangleKernel k =
      make_kernel("phi1", {{1.0, 2, 0, 0}, {-4.0, 1, 0, 1}, {2.0, 0, 1, 1}});
  return k;
}

const TriangleKernel& kernel_phi2() {
  static const TriangleKernel k = make_kernel(
      "phi2", {{1.0, 2, 0, 0}, {-4.0, 1, 1, 0}, {4.0, 0, 2, 0}, {-2.0, 0, 1, 1}});
  return k;
}

const TriangleKernel& kernel_vphi1() {
  static const TriangleKernel k =
      make_kernel("vphi1", {{1.0, 2, 0, 0}, {-6.0, 1, 1, 0}, {6.0, 1, 0, 1},
                            {6.0, 0, 1, 1}, {3.0, 0, 2, 0}, {-12.0, 0, 0, 2}});
  return k;
}

const TriangleKernel& kernel_vphi2() {
  static const TriangleKernel k =
      make_kernel("vphi2", {{1.0, 2, 0, 0}, {-6.0, 1, 1, 0}, {6.0, 1, 0, 1},
                            {-6.0, 0, 1, 1}, {5.0, 0, 2, 0}});
  return k;
}

const TriangleKernel& kernel_phi1_plus_vphi1() {
  static const TriangleKernel k = combine("phi1+vphi1", kernel_phi1(), kernel_vphi1());
  return k;
}

const TriangleKernel& kernel_phi2_plus_vphi2() {
  static const TriangleKernel k = combine("phi2+vphi2", kernel_phi2(), kernel_vphi2());
  return k;
}

double triangle_integral(const TriangleKernel& kernel, double h) {
  double s = 0.0;
  for (const auto& m : kernel.monos) s += m.c * triangle_monomial(m.pz, m.px, m.ph, h);
  return s;
}

} // namespace mzs
