#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mzs/oracle.hpp"
#include "mzs/propagators.hpp"
#include "mzs/spectral.hpp"
#include "mzs/time_integrals.hpp"

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

Eigen::MatrixXcd random_skew(Index n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  Eigen::MatrixXcd m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = cplx(nd(rng), nd(rng));
  return 0.5 * (m - m.adjoint()).eval();
}

} // namespace

TEST_CASE("structure tags are verified at construction") {
  Eigen::MatrixXcd h(2, 2);
  h << cplx(1, 0), cplx(0, 1), cplx(0, -1), cplx(2, 0); // Hermitian
  CHECK_NOTHROW(DenseOperator(h, OpStructure::hermitian));
  CHECK_THROWS_AS(DenseOperator(h, OpStructure::skew_hermitian), contract_error);
  Eigen::MatrixXcd s = h * cplx(0, 1); // skew-Hermitian
  CHECK_NOTHROW(DenseOperator(s, OpStructure::skew_hermitian));
  CHECK_THROWS_AS(DenseOperator(s, OpStructure::hermitian), contract_error);
}

TEST_CASE("dense differentiation matrix agrees with the spectral derivative") {
  GridPtr g = make_grid(0.0, 1.0, 64);
  const double w = 2.0 * pi / g->length;
  Wavefunction u{g, (w * g->x).sin().exp().cast<cplx>()};
  for (int k : {1, 2, 4}) {
    Eigen::MatrixXcd m = dense_diff_matrix(g, k);
    ArrayXcd want = (m * u.v.matrix()).array();
    ArrayXcd got = deriv(u, k).v;
    // dense matvec accumulates n*eps roundoff on O((n/2)^k)-sized entries
    CHECK((got - want).matrix().norm() <= 1e-8 * want.matrix().norm());
  }
}

TEST_CASE("dense_of_symop") {
  GridPtr g = make_grid(-pi, pi, 16);

  SUBCASE("identity operator") {
    SymOpSum s(g);
    s.add(1.0, 0, sym_func_one(g));
    DenseOperator d = dense_of_symop(s);
    CHECK(frobenius(d.a - Eigen::MatrixXcd::Identity(16, 16)) <= 1e-13);
  }

  SUBCASE("i h eps <1>_2 is tagged and verified skew-Hermitian") {
    SymOpSum s(g);
    s.add(iu * 0.01 * 0.1, 2, sym_func_one(g));
    DenseOperator d = dense_of_symop(s);
    CHECK(d.structure == OpStructure::skew_hermitian);
    CHECK(frobenius(d.a + d.a.adjoint()) <= 1e-12 * frobenius(d.a));
  }

  SUBCASE("columns are exactly unit-vector applications") {
    SymOpSum s(g);
    s.add(cplx(0.3, 0.0), 1, sym_func_spectral(g, g->x.sin(), 1, "f"));
    DenseOperator d = dense_of_symop(s);
    for (Index j : {Index(0), Index(7)}) {
      ArrayXcd e = ArrayXcd::Zero(16);
      e[j] = 1.0;
      ArrayXcd col = apply_symop(s, Wavefunction{g, e}).v;
      CHECK((d.a.col(j).array() - col).abs().maxCoeff() == 0.0);
    }
  }

  SUBCASE("matches the independent direct assembly on a random mix") {
    GridPtr g64 = make_grid(0.0, 2.0, 64);
    SymOpSum s(g64);
    s.add(cplx(0.2, -0.4), 2, sym_func_spectral(g64, (2 * pi / g64->length * g64->x).cos(), 2, "a"));
    s.add(cplx(0.0, 1.0), 1, sym_func_spectral(g64, (2 * pi / g64->length * g64->x).sin(), 2, "b"));
    Eigen::MatrixXcd direct = dense_symop_direct(s);
    DenseOperator assembled = dense_of_symop(s);
    CHECK(frobenius(assembled.a - direct) <= 1e-12 * frobenius(direct));
  }

  SUBCASE("size guard") {
    GridPtr big = make_grid(0.0, 1.0, 512);
    SymOpSum s(big);
    s.add(1.0, 0, sym_func_one(big));
    CHECK_THROWS_AS(dense_of_symop(s), contract_error);
  }
}

TEST_CASE("dense_expm") {
  SUBCASE("exp(0) = I") {
    DenseOperator z(Eigen::MatrixXcd::Zero(4, 4), OpStructure::skew_hermitian);
    CHECK(frobenius(dense_expm(z) - Eigen::MatrixXcd::Identity(4, 4)) <= 1e-14);
  }
  SUBCASE("diagonal skew case") {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
    d(0, 0) = iu;
    d(1, 1) = -iu;
    Eigen::MatrixXcd e = dense_expm(DenseOperator(d, OpStructure::skew_hermitian));
    CHECK(std::abs(e(0, 0) - std::exp(iu)) <= 1e-14);
    CHECK(std::abs(e(1, 1) - std::exp(-iu)) <= 1e-14);
    CHECK(std::abs(e(0, 1)) + std::abs(e(1, 0)) <= 1e-14);
  }
  SUBCASE("group inverse and unitarity") {
    Eigen::MatrixXcd w = random_skew(24, 42);
    Eigen::MatrixXcd e = dense_expm(DenseOperator(w, OpStructure::skew_hermitian));
    Eigen::MatrixXcd einv = dense_expm(DenseOperator((-w).eval(), OpStructure::skew_hermitian));
    Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(24, 24);
    CHECK(frobenius(e * einv - eye) <= 1e-12 * std::sqrt(24.0));
    CHECK(frobenius(e.adjoint() * e - eye) <= 1e-11);
  }
  SUBCASE("general structure is rejected") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Random(3, 3);
    DenseOperator d(m, OpStructure::general);
    CHECK_THROWS_AS(dense_expm(d), contract_error);
  }
}

TEST_CASE("brute commutator") {
  Eigen::MatrixXcd a = random_skew(16, 7);
  CHECK(frobenius(brute_commutator(a, a)) <= 1e-14 * frobenius(a));

  Eigen::MatrixXcd d1 = Eigen::VectorXcd::Random(16).asDiagonal();
  Eigen::MatrixXcd d2 = Eigen::VectorXcd::Random(16).asDiagonal();
  CHECK(frobenius(brute_commutator(d1, d2)) <= 1e-15);

  GridPtr g = make_grid(0.0, 1.0, 64);
  ArrayXd gf = (2 * pi / g->length * g->x).sin() + 0.2;
  SymOpSum s_g(g), s_k2(g), want(g);
  s_g.add(1.0, 0, sym_func_spectral(g, gf, 4, "g"));
  s_k2.add(1.0, 2, sym_func_one(g, 4));
  want.add(-2.0, 1, sym_func_spectral(g, deriv(GridFunction{g, gf}, 1).v, 3, "g'"));
  // restrict to inputs that cannot alias past Nyquist when multiplied by g
  Eigen::MatrixXcd proj = band_projector(g, g->n / 2 - 4);
  Eigen::MatrixXcd lhs =
      brute_commutator(dense_symop_direct(s_g), dense_symop_direct(s_k2)) * proj;
  Eigen::MatrixXcd rhs = dense_symop_direct(want) * proj;
  CHECK(frobenius(lhs - rhs) <= 1e-9 * frobenius(rhs));
}

TEST_CASE("truncated symmetric BCH") {
  SUBCASE("vanishing or commuting arguments") {
    Eigen::MatrixXcd x = random_skew(6, 11);
    DenseOperator dx(x, OpStructure::skew_hermitian);
    DenseOperator zero(Eigen::MatrixXcd::Zero(6, 6), OpStructure::skew_hermitian);
    const double h = 0.37;
    CHECK(frobenius(sbch3(dx, zero, h).a - h * x) <= 1e-14);

    Eigen::MatrixXcd da = Eigen::VectorXcd::Random(6).asDiagonal();
    Eigen::MatrixXcd db = Eigen::VectorXcd::Random(6).asDiagonal();
    da = 0.5 * (da - da.adjoint()).eval();
    db = 0.5 * (db - db.adjoint()).eval();
    DenseOperator a(da, OpStructure::skew_hermitian), b(db, OpStructure::skew_hermitian);
    CHECK(frobenius(sbch3(a, b, h).a - h * (da + db)) <= 1e-14);
  }

  SUBCASE("output stays in the algebra") {
    Eigen::MatrixXcd x = random_skew(6, 21), y = random_skew(6, 22);
    DenseOperator s = sbch3(DenseOperator(x, OpStructure::skew_hermitian),
                            DenseOperator(y, OpStructure::skew_hermitian), 0.1);
    CHECK(s.structure == OpStructure::skew_hermitian);
  }

  SUBCASE("defect against the exact triple product shrinks like h^5") {
    Eigen::MatrixXcd x = random_skew(6, 31), y = random_skew(6, 32);
    DenseOperator dx(x, OpStructure::skew_hermitian), dy(y, OpStructure::skew_hermitian);
    auto defect = [&](double h) {
      Eigen::MatrixXcd half = dense_expm(DenseOperator((0.5 * h * x).eval(), OpStructure::skew_hermitian));
      Eigen::MatrixXcd mid = dense_expm(DenseOperator((h * y).eval(), OpStructure::skew_hermitian));
      Eigen::MatrixXcd lhs = half * mid * half;
      return frobenius(lhs - dense_expm(sbch3(dx, dy, h)));
    };
    double e1 = defect(0.04), e2 = defect(0.02);
    CHECK(std::log2(e1 / e2) == doctest::Approx(5.0).epsilon(0.08));
  }
}

TEST_CASE("reference step exponentiates an assembled generator") {
  GridPtr g = make_grid(-pi, pi, 64);
  Wavefunction u = random_wf(g, 51);

  SUBCASE("empty generator is the identity") {
    SymOpSum zero(g);
    CHECK((reference_step(zero, u).v - u.v).abs().maxCoeff() <= 1e-13);
  }

  SUBCASE("free-flight generator matches the circulant exponential") {
    const double eps = 0.1, h = 0.02;
    PotentialModel freep;
    freep.grid = g;
    freep.name = "free";
    freep.eval = [](double, double) { return 0.0; };
    freep.dx_eval = [](int, double, double) { return 0.0; };
    freep.max_dx = 4;

    StepContext ctx;
    ctx.eps = eps;
    ctx.t = 0.0;
    ctx.h = h;
    ctx.tables = build_tables(freep, 0.0, h, gl_rule(11, h), TableLevel::mz4);
    SymOpSum theta = assemble_theta2(ctx);

    Wavefunction got = reference_step(theta, u);
    Wavefunction want = exp_circulant(iu * h * eps, 2, u);
    CHECK((got.v - want.v).matrix().norm() <= 1e-12 * want.v.matrix().norm());
  }
}
