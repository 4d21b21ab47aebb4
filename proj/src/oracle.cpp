#include "mzs/oracle.hpp"

#include "mzs/fft.hpp"

#include <cmath>

namespace mzs {

namespace {
constexpr Index kDenseCap = 256;

void check_structure(const Eigen::MatrixXcd& m, OpStructure s) {
  if (s == OpStructure::general) return;
  const double scale = std::max(1.0, m.norm());
  const double defect = s == OpStructure::hermitian ? (m - m.adjoint()).norm()
                                                    : (m + m.adjoint()).norm();
  require(defect <= 1e-10 * scale, "DenseOperator: tagged structure violated (defect " +
                                       std::to_string(defect / scale) + ")");
}
} // namespace

DenseOperator::DenseOperator(Eigen::MatrixXcd m, OpStructure s) : a(std::move(m)), structure(s) {
  require(a.rows() == a.cols(), "DenseOperator: square matrices only");
  check_structure(a, structure);
}

Eigen::MatrixXcd dense_diff_matrix(const GridPtr& grid, int k) {
  const Index n = grid->n;
  require(n <= kDenseCap, "dense path capped at n=256");
  Eigen::MatrixXcd F(n, n);
  for (Index m = 0; m < n; ++m)
    for (Index j = 0; j < n; ++j)
      F(m, j) = std::exp(-iu * (2.0 * M_PI * static_cast<double>(m) * static_cast<double>(j) /
                                static_cast<double>(n)));
  Eigen::MatrixXcd Finv = F.adjoint() / static_cast<double>(n);
  ArrayXcd c = diff_symbol(grid, k);
  return Finv * c.matrix().asDiagonal() * F;
}

Eigen::MatrixXcd dense_symop_direct(const SymOpSum& op) {
  require(op.grid != nullptr, "dense_symop_direct: empty operator");
  const Index n = op.grid->n;
  require(n <= kDenseCap, "dense path capped at n=256");
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
  for (const SymTerm& t : op.terms) {
    Eigen::MatrixXcd D = t.f.values().cast<cplx>().matrix().asDiagonal();
    if (t.k == 0) {
      acc += t.coeff * D;
    } else {
      Eigen::MatrixXcd K = dense_diff_matrix(op.grid, t.k);
      acc += (0.5 * t.coeff) * (D * K + K * D);
    }
  }
  return acc;
}

DenseOperator dense_of_symop(const SymOpSum& op) {
  require(op.grid != nullptr, "dense_of_symop: empty operator");
  const Index n = op.grid->n;
  require(n <= kDenseCap, "dense path capped at n=256");

  bool all_herm = true, all_skew = true;
  for (const SymTerm& t : op.terms) {
    const bool even = t.k % 2 == 0;
    const bool re = std::abs(t.coeff.imag()) <= 1e-14 * std::abs(t.coeff);
    const bool im = std::abs(t.coeff.real()) <= 1e-14 * std::abs(t.coeff);
    const bool term_herm = (even && re) || (!even && im);
    const bool term_skew = (even && im) || (!even && re);
    all_herm = all_herm && term_herm;
    all_skew = all_skew && term_skew;
  }
  OpStructure s = all_skew   ? OpStructure::skew_hermitian
                  : all_herm ? OpStructure::hermitian
                             : OpStructure::general;

  Eigen::MatrixXcd m(n, n);
  for (Index j = 0; j < n; ++j) {
    ArrayXcd e = ArrayXcd::Zero(n);
    e[j] = 1.0;
    m.col(j) = apply_symop(op, Wavefunction{op.grid, e}).v.matrix();
  }
  return DenseOperator(std::move(m), s);
}

Eigen::MatrixXcd dense_expm(const DenseOperator& op) {
  require(op.structure != OpStructure::general,
          "dense_expm: general matrices rejected; tag hermitian or skew_hermitian");
  const bool skew = op.structure == OpStructure::skew_hermitian;
  Eigen::MatrixXcd H = skew ? Eigen::MatrixXcd(-iu * op.a) : op.a;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  require(es.info() == Eigen::Success, "dense_expm: eigendecomposition failed");
  Eigen::VectorXcd ev = skew ? Eigen::VectorXcd((iu * es.eigenvalues().cast<cplx>().array()).exp())
                             : Eigen::VectorXcd(es.eigenvalues().cast<cplx>().array().exp());
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXcd brute_commutator(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "brute_commutator: dimension mismatch");
  return a * b - b * a;
}

Eigen::MatrixXcd band_projector(const GridPtr& grid, Index m_max) {
  require(grid != nullptr, "band_projector: null grid");
  require(m_max >= 0 && m_max <= grid->n / 2, "band_projector: mode cutoff out of range");
  const Index n = grid->n;
  const ArrayXd freq = signed_freq(n);
  Eigen::MatrixXcd p(n, n);
  ArrayXcd e = ArrayXcd::Zero(n);
  for (Index j = 0; j < n; ++j) {
    e[j] = 1.0;
    ArrayXcd hat = fft_forward(e);
    for (Index m = 0; m < n; ++m)
      if (std::abs(freq[m]) > static_cast<double>(m_max)) hat[m] = 0.0;
    p.col(j) = fft_inverse(hat).matrix();
    e[j] = 0.0;
  }
  return p;
}

DenseOperator sbch3(const DenseOperator& x, const DenseOperator& y, double h) {
  require(x.structure == OpStructure::skew_hermitian && y.structure == OpStructure::skew_hermitian,
          "sbch3: skew-Hermitian inputs required");
  require(x.n() == y.n(), "sbch3: dimension mismatch");
  Eigen::MatrixXcd yx = brute_commutator(y.a, x.a);
  Eigen::MatrixXcd out = h * (x.a + y.a) -
                         (h * h * h) * (brute_commutator(yx, x.a) / 24.0 +
                                        brute_commutator(yx, y.a) / 12.0);
  return DenseOperator(std::move(out), OpStructure::skew_hermitian);
}

Wavefunction reference_step(const SymOpSum& theta, const Wavefunction& u) {
  if (theta.terms.empty()) return u;
  require_same_grid(theta.grid, u.grid);
  Eigen::MatrixXcd E = dense_expm(dense_of_symop(theta));
  return {u.grid, (E * u.v.matrix()).array()};
}

double frobenius(const Eigen::MatrixXcd& m) { return m.norm(); }

} // namespace mzs
