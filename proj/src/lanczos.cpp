#include "mzs/lanczos.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace mzs {

namespace {

// e_1-column of exp(i T) for the real symmetric tridiagonal T given by
// alpha[0..m-1], beta[0..m-2].
Eigen::VectorXcd tridiag_exp_e1(const std::vector<double>& alpha, const std::vector<double>& beta,
                                int m) {
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) t(i, i) = alpha[i];
  for (int i = 0; i + 1 < m; ++i) t(i, i + 1) = t(i + 1, i) = beta[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  const Eigen::VectorXd& lam = es.eigenvalues();
  const Eigen::MatrixXd& u = es.eigenvectors();
  Eigen::VectorXcd phase(m);
  for (int i = 0; i < m; ++i) phase[i] = std::exp(iu * lam[i]) * u(0, i);
  return u.cast<cplx>() * phase;
}

} // namespace

Wavefunction lanczos_expv(const Matvec& matvec, const Wavefunction& v, const LanczosConfig& cfg,
                          LanczosReport* report) {
  const Index n = v.v.size();
  require(cfg.max_iters >= 1 && cfg.max_iters <= n, "lanczos: max_iters outside [1, n_points]");
  require(cfg.breakdown_tol > 0.0, "lanczos: breakdown_tol must be positive");

  LanczosReport rep;
  const double vnorm = std::sqrt(v.v.abs2().sum());
  if (vnorm == 0.0) {
    if (report) *report = rep;
    return v;
  }

  Eigen::MatrixXcd q(n, cfg.max_iters);
  q.col(0) = (v.v / vnorm).matrix();
  std::vector<double> alpha, beta; // beta[j] couples iterates j and j+1
  double hscale = 1.0;             // running estimate of ||H||

  auto apply_h = [&](const Eigen::VectorXcd& x) {
    Wavefunction wx{v.grid, x.array()};
    Wavefunction wy = matvec(wx);
    require_same_grid(wy.grid, v.grid);
    if (!wy.v.allFinite()) throw std::runtime_error("lanczos: matvec produced non-finite values");
    return Eigen::VectorXcd(-iu * wy.v.matrix());
  };

  int m = 0;
  double trailing_beta = 0.0;
  for (int j = 0; j < cfg.max_iters; ++j) {
    Eigen::VectorXcd w = apply_h(q.col(j));
#ifndef NDEBUG
    // H must be Hermitian, i.e. the original operator skew-Hermitian.
    {
      const double im = std::imag(cplx(q.col(j).dot(w)));
      const double mag = w.norm();
      require(std::abs(im) <= 1e-8 * std::max(1.0, mag), "lanczos: operator is not skew-Hermitian");
    }
#endif
    if (j > 0) w -= beta[j - 1] * q.col(j - 1);
    const double a = std::real(cplx(q.col(j).dot(w)));
    w -= a * q.col(j);
    if (cfg.full_reorth)
      w -= q.leftCols(j + 1) * (q.leftCols(j + 1).adjoint() * w);
    alpha.push_back(a);
    m = j + 1;

    const double b = w.norm();
    trailing_beta = b;
    hscale = std::max(hscale, std::abs(a) + b + (j > 0 ? beta[j - 1] : 0.0));
    if (b <= cfg.breakdown_tol * hscale) {
      rep.happy_breakdown = true;
      break;
    }
    if (j + 1 == cfg.max_iters) break;

    if (cfg.adaptive) {
      Eigen::VectorXcd y = tridiag_exp_e1(alpha, beta, m);
      if (b * std::abs(y[m - 1]) <= cfg.adaptive_tol) break;
    }
    beta.push_back(b);
    q.col(j + 1) = w / b;
  }

  Eigen::VectorXcd y = tridiag_exp_e1(alpha, beta, m);
  rep.iters_used = m;
  rep.est_residual = rep.happy_breakdown ? 0.0 : trailing_beta * std::abs(y[m - 1]);
  if (report) *report = rep;

  Eigen::VectorXcd out = vnorm * (q.leftCols(m) * y);
  return {v.grid, out.array()};
}

} // namespace mzs
