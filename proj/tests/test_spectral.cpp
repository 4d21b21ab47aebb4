#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mzs/fft.hpp"
#include "mzs/oracle.hpp"
#include "mzs/spectral.hpp"
#include "mzs/symop.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace mzs;

namespace {

constexpr double pi = std::numbers::pi;

Wavefunction random_wf(const GridPtr& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  ArrayXcd v(g->n);
  for (Index j = 0; j < g->n; ++j) v[j] = cplx(nd(rng), nd(rng));
  return {g, v};
}

} // namespace

TEST_CASE("signed frequency layout") {
  ArrayXd m = signed_freq(8);
  const double want[8] = {0, 1, 2, 3, 4, -3, -2, -1};
  for (int j = 0; j < 8; ++j) CHECK(m[j] == want[j]);
}

TEST_CASE("derivative symbols: parity and Nyquist") {
  GridPtr g = make_grid(-1.0, 3.0, 16);
  ArrayXcd c1 = diff_symbol(g, 1);
  ArrayXcd c2 = diff_symbol(g, 2);
  for (Index j = 0; j < g->n; ++j) {
    CHECK(std::abs(c1[j].real()) == 0.0); // odd order: purely imaginary
    CHECK(std::abs(c2[j].imag()) == 0.0); // even order: purely real
  }
  CHECK(std::abs(c1[g->n / 2]) == 0.0); // odd-order Nyquist zeroed
  const double nyq = 2.0 * pi * (static_cast<double>(g->n) / 2.0) / g->length;
  CHECK(c2[g->n / 2].real() == doctest::Approx(-nyq * nyq).epsilon(1e-14));
}

TEST_CASE("spectral derivative of resolved modes") {
  GridPtr g = make_grid(0.0, 2.0, 128);
  const double w = 2.0 * pi / g->length;

  Wavefunction c{g, ArrayXcd::Constant(g->n, 1.0)};
  CHECK(deriv(c, 2).v.abs().maxCoeff() <= 1e-12);

  Wavefunction s{g, (w * g->x).sin().cast<cplx>()};
  ArrayXcd want = w * (w * g->x).cos();
  CHECK((deriv(s, 1).v - want).abs().maxCoeff() <= 1e-12);
}

TEST_CASE("second derivative matches the dense differentiation matrix") {
  GridPtr g = make_grid(0.0, 1.0, 64);
  const double w = 2.0 * pi / g->length;
  Wavefunction u{g, (w * g->x).sin().exp().cast<cplx>()};

  Eigen::MatrixXcd k2 = dense_diff_matrix(g, 2);
  Eigen::VectorXcd ref = k2 * u.v.matrix();
  double rel = (deriv(u, 2).v - ref.array()).matrix().norm() / ref.norm();
  CHECK(rel <= 1e-10);
}

TEST_CASE("derivative is linear") {
  GridPtr g = make_grid(-2.0, 2.0, 64);
  Wavefunction u = random_wf(g, 11), v = random_wf(g, 12);
  const cplx a{0.3, -1.1}, b{-0.7, 0.2};
  Wavefunction s{g, a * u.v + b * v.v};
  ArrayXcd want = a * deriv(u, 3).v + b * deriv(v, 3).v;
  ArrayXcd got = deriv(s, 3).v;
  CHECK((got - want).abs().maxCoeff() <= 1e-9 * want.abs().maxCoeff());
}

TEST_CASE("Parseval identity") {
  GridPtr g = make_grid(-1.0, 1.0, 64);
  Wavefunction u = random_wf(g, 21);
  double phys = l2_norm(u);
  ArrayXcd uhat = fft_forward(u.v);
  double spec = std::sqrt(g->dx / static_cast<double>(g->n) * uhat.abs2().sum());
  CHECK(phys == doctest::Approx(spec).epsilon(1e-13));
}

TEST_CASE("apply_symop: identity and diagonal terms") {
  GridPtr g = make_grid(-pi, pi, 32);
  Wavefunction u = random_wf(g, 31);

  SymOpSum ident(g);
  ident.add(1.0, 0, sym_func_one(g));
  CHECK((apply_symop(ident, u).v - u.v).abs().maxCoeff() <= 1e-14);

  ArrayXd f = g->x.sin() + 0.5;
  SymOpSum diag(g);
  diag.add(1.0, 0, sym_func_spectral(g, f, 0, "f"));
  ArrayXcd want = f.cast<cplx>() * u.v;
  CHECK((apply_symop(diag, u).v - want).abs().maxCoeff() <= 1e-14);
}

TEST_CASE("apply_symop matches the dense assembled operator") {
  GridPtr g = make_grid(0.0, 1.0, 64);
  Wavefunction u = random_wf(g, 41);
  ArrayXd gfun = (2.0 * pi / g->length * g->x).cos();

  SymOpSum op(g);
  op.add(iu, 1, sym_func_spectral(g, gfun, 1, "g"));

  Eigen::MatrixXcd m = dense_symop_direct(op);
  Eigen::VectorXcd ref = m * u.v.matrix();
  double rel = (apply_symop(op, u).v - ref.array()).matrix().norm() / ref.norm();
  CHECK(rel <= 1e-11);
}

TEST_CASE("apply_symop transform count is 2n+2 for n distinct orders") {
  GridPtr g = make_grid(-pi, pi, 64);
  Wavefunction u = random_wf(g, 51);
  ArrayXd f = g->x.sin();

  SymOpSum op(g); // orders {1, 2} plus a diagonal term
  op.add(1.0, 1, sym_func_spectral(g, f, 0, "f"));
  op.add(iu, 2, sym_func_spectral(g, 1.0 + 0.2 * f, 0, "g"));
  op.add(2.0, 2, sym_func_one(g)); // same order: must not add transforms
  op.add(iu, 0, sym_func_spectral(g, f * f, 0, "f2"));

  std::uint64_t before = fft_call_count();
  apply_symop(op, u);
  CHECK(fft_call_count() - before == 6); // 2*2 + 2

  SymOpSum zero_order(g);
  zero_order.add(1.0, 0, sym_func_one(g));
  before = fft_call_count();
  apply_symop(zero_order, u);
  CHECK(fft_call_count() - before == 0); // purely diagonal: no transforms
}

TEST_CASE("exp_circulant") {
  GridPtr g = make_grid(-3.0, 5.0, 64);
  Wavefunction u = random_wf(g, 61);

  SUBCASE("zero exponent is the identity") {
    CHECK((exp_circulant(0.0, 2, u).v - u.v).abs().maxCoeff() <= 1e-13);
  }
  SUBCASE("Fourier modes are eigenfunctions") {
    const int m = 5;
    const double km = 2.0 * pi * m / g->length;
    Wavefunction mode{g, (iu * km * g->x).exp()};
    const cplx a{0.0, 0.37};
    ArrayXcd want = std::exp(-a * km * km) * mode.v;
    CHECK((exp_circulant(a, 2, mode).v - want).abs().maxCoeff() <= 1e-12);
  }
  SUBCASE("imaginary exponent preserves the norm") {
    double n0 = l2_norm(u);
    double n1 = l2_norm(exp_circulant(cplx(0.0, 0.8), 2, u));
    CHECK(std::abs(n1 - n0) <= 1e-14 * n0);
  }
}

TEST_CASE("exp_diag") {
  GridPtr g = make_grid(0.0, 1.0, 32);
  Wavefunction u = random_wf(g, 71);
  GridFunction one{g, ArrayXd::Constant(g->n, 1.0)};

  CHECK((exp_diag(one, 0.0, u).v - u.v).abs().maxCoeff() == 0.0);

  ArrayXcd want = std::exp(cplx(0.0, -1.0)) * u.v;
  CHECK((exp_diag(one, -iu, u).v - want).abs().maxCoeff() <= 1e-15 * want.abs().maxCoeff());

  GridFunction f{g, g->x.sin() * 3.0};
  double n0 = l2_norm(u);
  CHECK(std::abs(l2_norm(exp_diag(f, cplx(0.0, 2.0), u)) - n0) <= 1e-14 * n0);
}

TEST_CASE("norm, error, and energy basics") {
  GridPtr g = make_grid(-5.0, 5.0, 64);
  Wavefunction z{g, ArrayXcd::Zero(g->n)};
  GridFunction v0{g, ArrayXd::Zero(g->n)};
  CHECK(l2_norm(z) == 0.0);
  CHECK(energy(z, v0, 0.1) == 0.0);

  Wavefunction u = random_wf(g, 81);
  CHECK(l2_error(u, u) == 0.0);
}

TEST_CASE("energy of the reference Gaussian is eps/(2 delta)") {
  const double eps = 1e-2, delta = 1e-2, x0 = -2.5;
  GridPtr g = make_grid(-5.0, 5.0, 1000);
  ArrayXcd v = (-(g->x - x0).square() / (2.0 * delta)).exp().cast<cplx>()
               * std::pow(delta * pi, -0.25);
  Wavefunction u{g, v};
  u.v /= l2_norm(u);
  GridFunction v0{g, ArrayXd::Zero(g->n)};
  double e = energy(u, v0, eps);
  CHECK(e == doctest::Approx(eps / (2.0 * delta)).epsilon(1e-6));
}

TEST_CASE("symmetrised operators have the advertised hermitian structure") {
  GridPtr g = make_grid(-pi, pi, 32);
  ArrayXd f = 1.0 + 0.3 * g->x.sin();

  for (int k : {1, 2}) {
    SymOpSum op(g);
    op.add(1.0, k, sym_func_spectral(g, f, 0, "f"));
    Eigen::MatrixXcd m = dense_symop_direct(op);
    Eigen::MatrixXcd defect = (k % 2 == 0) ? Eigen::MatrixXcd(m - m.adjoint())
                                           : Eigen::MatrixXcd(m + m.adjoint());
    CHECK(frobenius(defect) <= 1e-12 * frobenius(m));
  }
}

TEST_CASE("grid and wavefunction contracts") {
  CHECK_THROWS_AS(make_grid(0.0, 1.0, 6), contract_error);   // too small
  CHECK_THROWS_AS(make_grid(0.0, 1.0, 33), contract_error);  // odd
  CHECK_THROWS_AS(make_grid(1.0, 0.0, 16), contract_error);  // reversed

  GridPtr a = make_grid(0.0, 1.0, 16), b = make_grid(0.0, 1.0, 16);
  Wavefunction ua{a, ArrayXcd::Zero(16)}, ub{b, ArrayXcd::Zero(16)};
  CHECK_THROWS_AS(l2_error(ua, ub), contract_error); // identity, not value, match
  CHECK_THROWS_AS((Wavefunction{a, ArrayXcd::Zero(8)}), contract_error);
}
