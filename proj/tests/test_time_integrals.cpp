#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mzs/bench/presets.hpp"
#include "mzs/quadrature.hpp"
#include "mzs/time_integrals.hpp"

#include <cmath>
#include <numbers>

using namespace mzs;

namespace {

constexpr double pi = std::numbers::pi;

PotentialModel constant_pot(GridPtr g, double c) {
  PotentialModel p;
  p.grid = std::move(g);
  p.name = "const";
  p.eval = [c](double, double) { return c; };
  p.dx_eval = [](int, double, double) { return 0.0; };
  p.max_dx = 4;
  return p;
}

PotentialModel ramp_pot(GridPtr g) { // V(x,t) = t
  PotentialModel p;
  p.grid = std::move(g);
  p.name = "ramp";
  p.eval = [](double, double t) { return t; };
  p.dx_eval = [](int, double, double) { return 0.0; };
  p.max_dx = 4;
  return p;
}

// V(x,t) = sin(x) e^t with analytic spatial derivatives.
PotentialModel exp_ramp_pot(GridPtr g) {
  PotentialModel p;
  p.grid = std::move(g);
  p.name = "sin*exp";
  p.eval = [](double x, double t) { return std::sin(x) * std::exp(t); };
  p.dx_eval = [](int a, double x, double t) {
    return std::sin(x + a * pi / 2.0) * std::exp(t);
  };
  p.max_dx = 4;
  return p;
}

// V(x,t) = sin(x) + f(t) x, optionally exposing the separable structure.
PotentialModel sep_pot(GridPtr g, std::function<double(double)> f, bool mark_separable) {
  PotentialModel p;
  p.grid = std::move(g);
  p.name = "sin+laser";
  p.eval = [f](double x, double t) { return std::sin(x) + f(t) * x; };
  p.dx_eval = [f](int a, double x, double t) {
    double s = std::sin(x + a * pi / 2.0);
    return a == 1 ? s + f(t) : s;
  };
  p.max_dx = 4;
  if (mark_separable) {
    p.separable = true;
    p.v_static = [](double x) { return std::sin(x); };
    p.v_static_dx = [](int a, double x) { return std::sin(x + a * pi / 2.0); };
    p.f_time = f;
  }
  return p;
}

// Tensor-product GL(12x12) quadrature of the triangle integral at one x.
double brute_lambda(const PotentialModel& pot, double x, double t, double h,
                    const TriangleKernel& ker, int a, int b, Parity parity) {
  auto dv = [&](int ord, double tt) {
    return ord == 0 ? pot.eval(x, tt) : pot.dx_eval(ord, x, tt);
  };
  auto even_part = [&](int ord, double eta) {
    return 0.5 * (dv(ord, t + h / 2 + eta) + dv(ord, t + h / 2 - eta));
  };
  auto odd_part = [&](int ord, double eta) {
    return 0.5 * (dv(ord, t + h / 2 + eta) - dv(ord, t + h / 2 - eta));
  };

  QuadratureRule zr = gl_rule(12, h);   // zeta over [0,h]
  QuadratureRule sr = gl_rule(12, 1.0); // xi = zeta*s, s over [0,1]
  double sum = 0.0;
  for (int i = 0; i < zr.n_nodes; ++i)
    for (int j = 0; j < sr.n_nodes; ++j) {
      const double zeta = zr.nodes[i], s = sr.nodes[j], xi = zeta * s;
      const double eta = zeta - h / 2, theta = xi - h / 2;
      double prod;
      if (parity == Parity::even)
        prod = even_part(a, eta) * even_part(b, theta) + odd_part(a, eta) * odd_part(b, theta);
      else if (parity == Parity::odd)
        prod = even_part(a, eta) * odd_part(b, theta) + odd_part(a, eta) * even_part(b, theta);
      else
        prod = dv(a, t + h / 2 + eta) * dv(b, t + h / 2 + theta);
      sum += zr.weights[i] * zeta * sr.weights[j] * ker.eval(h, zeta, xi) * prod;
    }
  return sum;
}

} // namespace

TEST_CASE("Bernoulli polynomials") {
  CHECK(bernoulli(1, 0.5) == 0.0);
  CHECK(bernoulli(0, -3.7) == 1.0);
  CHECK(bernoulli(2, 0.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(bernoulli(4, 1.0) == doctest::Approx(-1.0 / 30.0).epsilon(1e-14));
  CHECK_THROWS_AS(bernoulli(5, 0.1), contract_error);

  // integral of B_j over [0,1] vanishes for j = 1..3
  QuadratureRule r = gl_rule(5, 1.0);
  for (int j = 1; j <= 3; ++j) {
    double s = 0.0;
    for (int q = 0; q < r.n_nodes; ++q) s += r.weights[q] * bernoulli(j, r.nodes[q]);
    CHECK(std::abs(s) <= 1e-15);
  }

  // rescaled form Bt_j(h,zeta) = h^j B_j(zeta/h)
  CHECK(bernoulli_bt(2, 0.2, 0.05) ==
        doctest::Approx(0.04 * bernoulli(2, 0.25)).epsilon(1e-14));
  CHECK(bernoulli_bt(1, 0.1, 0.075) == doctest::Approx(0.025).epsilon(1e-13));
}

TEST_CASE("Gauss-Legendre rules") {
  SUBCASE("three-node rule matches the printed nodes and weights") {
    const double h = 0.3;
    QuadratureRule r = gl_rule(3, h);
    const double s = std::sqrt(3.0 / 5.0);
    CHECK(r.nodes[0] == doctest::Approx(h * (1 - s) / 2).epsilon(1e-14));
    CHECK(r.nodes[1] == doctest::Approx(h / 2).epsilon(1e-14));
    CHECK(r.nodes[2] == doctest::Approx(h * (1 + s) / 2).epsilon(1e-14));
    CHECK(r.weights[0] == doctest::Approx(5 * h / 18).epsilon(1e-14));
    CHECK(r.weights[1] == doctest::Approx(4 * h / 9).epsilon(1e-14));
    CHECK(r.weights[2] == doctest::Approx(5 * h / 18).epsilon(1e-14));
  }
  SUBCASE("one node is the midpoint rule") {
    QuadratureRule r = gl_rule(1, 2.0);
    CHECK(r.nodes[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.weights[0] == doctest::Approx(2.0).epsilon(1e-15));
  }
  SUBCASE("degree 2n-1 exactness") {
    const double h = 0.7;
    QuadratureRule r3 = gl_rule(3, h);
    double s5 = 0.0;
    for (int q = 0; q < 3; ++q) s5 += r3.weights[q] * std::pow(r3.nodes[q], 5);
    CHECK(s5 == doctest::Approx(std::pow(h, 6) / 6.0).epsilon(1e-14));

    QuadratureRule r4 = gl_rule(4, h);
    double s7 = 0.0;
    for (int q = 0; q < 4; ++q) s7 += r4.weights[q] * std::pow(r4.nodes[q], 7);
    CHECK(s7 == doctest::Approx(std::pow(h, 8) / 8.0).epsilon(1e-13));
  }
  SUBCASE("weights sum to h; nodes symmetric about h/2") {
    for (int n : {3, 11, 21, 64}) {
      QuadratureRule r = gl_rule(n, 0.17);
      CHECK(std::abs(r.weights.sum() - 0.17) <= 1e-13);
      for (int q = 0; q < n; ++q)
        CHECK(r.nodes[q] + r.nodes[n - 1 - q] == doctest::Approx(0.17).epsilon(1e-13));
    }
  }
  SUBCASE("negative h is allowed, unsupported node counts are not") {
    QuadratureRule r = gl_rule(3, -0.2);
    CHECK(std::abs(r.weights.sum() + 0.2) <= 1e-14);
    CHECK_THROWS_AS(gl_rule(0, 1.0), contract_error);
    CHECK_THROWS_AS(gl_rule(65, 1.0), contract_error);
  }
}

TEST_CASE("line integrals mu_{j,k}") {
  GridPtr g = make_grid(-1.0, 1.0, 8);
  QuadratureRule r = gl_rule(11, 0.1);

  SUBCASE("constant potential") {
    PotentialModel p = constant_pot(g, 2.5);
    GridFunction m00 = eval_mu(p, 0.3, 0.1, 0, 0, r, Parity::none);
    CHECK((m00.v - 0.25).abs().maxCoeff() <= 1e-14);
    GridFunction m11 = eval_mu(p, 0.3, 0.1, 1, 1, r, Parity::none);
    CHECK(m11.v.abs().maxCoeff() <= 1e-15);
  }

  SUBCASE("pure time ramp: mu_{1,1} = h^3/12") {
    PotentialModel p = ramp_pot(g);
    const double h = 0.1;
    GridFunction m = eval_mu(p, 0.0, h, 1, 1, gl_rule(11, h), Parity::none);
    CHECK((m.v - h * h * h / 12.0).abs().maxCoeff() <= 1e-15);
    // the ramp has no even part about the midpoint beyond a constant
    GridFunction me = eval_mu(p, 0.0, h, 1, 1, gl_rule(11, h), Parity::even);
    CHECK(me.v.abs().maxCoeff() <= 1e-16);
    GridFunction mo = eval_mu(p, 0.0, h, 1, 1, gl_rule(11, h), Parity::odd);
    CHECK((mo.v - h * h * h / 12.0).abs().maxCoeff() <= 1e-15);
  }

  SUBCASE("parity parts reconstruct the full integral") {
    PotentialModel p = exp_ramp_pot(g);
    const double t = 0.4, h = 0.07;
    QuadratureRule rr = gl_rule(11, h);
    const std::pair<int, int> jk[] = {{0, 0}, {1, 1}, {2, 1}, {3, 1}, {1, 2}};
    for (auto [j, k] : jk) {
      CAPTURE(j);
      CAPTURE(k);
      ArrayXd none = eval_mu(p, t, h, j, k, rr, Parity::none).v;
      ArrayXd sum = eval_mu(p, t, h, j, k, rr, Parity::even).v +
                    eval_mu(p, t, h, j, k, rr, Parity::odd).v;
      CHECK((none - sum).abs().maxCoeff() <= 1e-13 * std::max(1e-3, none.abs().maxCoeff()));
    }
  }

  SUBCASE("spatial derivative order differentiates the integrand") {
    PotentialModel p = exp_ramp_pot(g);
    PotentialModel shifted = exp_ramp_pot(g); // cos(x) e^t
    shifted.eval = [](double x, double t) { return std::sin(x + pi / 2.0) * std::exp(t); };
    shifted.dx_eval = [](int a, double x, double t) {
      return std::sin(x + (a + 1) * pi / 2.0) * std::exp(t);
    };
    ArrayXd d1 = eval_mu(p, 0.2, 0.05, 1, 1, gl_rule(11, 0.05), Parity::odd, 1).v;
    ArrayXd ref = eval_mu(shifted, 0.2, 0.05, 1, 1, gl_rule(11, 0.05), Parity::odd).v;
    CHECK((d1 - ref).abs().maxCoeff() <= 1e-14 * std::max(1e-3, ref.abs().maxCoeff()));
  }

  SUBCASE("h^{jk+2} decay of mu_{1,1}") {
    PotentialModel p = exp_ramp_pot(g);
    const double t = 0.4, h = 0.02;
    double big = eval_mu(p, t, h, 1, 1, gl_rule(11, h), Parity::none).v.abs().maxCoeff();
    double small = eval_mu(p, t, h / 2, 1, 1, gl_rule(11, h / 2), Parity::none).v.abs().maxCoeff();
    CHECK(big / small == doctest::Approx(8.0).epsilon(0.05)); // ~ h^3
  }

  SUBCASE("contract violations") {
    PotentialModel p = exp_ramp_pot(g);
    CHECK_THROWS_AS(eval_mu(p, 0, 0.1, 5, 1, r, Parity::none), contract_error);
    CHECK_THROWS_AS(eval_mu(p, 0, 0.1, 1, 3, r, Parity::none), contract_error);
    QuadratureRule lop; // asymmetric: parity pairing would be wrong
    lop.n_nodes = 2;
    lop.nodes = ArrayXd(2);
    lop.nodes << 0.01, 0.02;
    lop.weights = ArrayXd::Constant(2, 0.05);
    CHECK_THROWS_AS(eval_mu(p, 0, 0.1, 1, 1, lop, Parity::odd), contract_error);
  }
}

TEST_CASE("triangle monomials and kernel integrals") {
  CHECK(triangle_monomial(0, 0, 0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(triangle_monomial(1, 0, 0, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(triangle_monomial(0, 1, 0, 1.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(triangle_monomial(2, 1, 1, 0.5) ==
        doctest::Approx(std::pow(0.5, 6) / (2.0 * 5.0)).epsilon(1e-14));

  // psi(h,zeta,xi) = zeta - xi - h/3
  CHECK(kernel_psi().eval(2.0, 0.7, 0.3) == doctest::Approx(0.7 - 0.3 - 2.0 / 3.0).epsilon(1e-15));

  const double h = 0.3, h4 = std::pow(h, 4);
  CHECK(std::abs(triangle_integral(kernel_psi(), h)) <= 1e-17);
  CHECK(std::abs(triangle_integral(kernel_vphi1(), h)) <= 1e-16);
  CHECK(std::abs(triangle_integral(kernel_vphi2(), h)) <= 1e-16);
  CHECK(triangle_integral(kernel_phi1(), h) == doctest::Approx(h4 / 12.0).epsilon(1e-13));
  CHECK(triangle_integral(kernel_phi2(), h) == doctest::Approx(-h4 / 12.0).epsilon(1e-13));
  CHECK(triangle_integral(kernel_phi1_plus_vphi1(), h) == doctest::Approx(h4 / 12.0).epsilon(1e-13));
}

TEST_CASE("interpolation coefficient matrices reproduce kernel integrals") {
  for (const TriangleKernel* k : {&kernel_psi(), &kernel_phi1_plus_vphi1(), &kernel_vphi2()}) {
    for (int n : {3, 5, 11}) {
      Eigen::MatrixXd c = lambda_coeff_matrix(*k, n);
      CHECK(std::abs(c.sum() - triangle_integral(*k, 1.0)) <= 1e-14);
    }
  }
}

TEST_CASE("triangle integrals Lambda") {
  GridPtr g = make_grid(-2.0, 2.0, 16);
  const double t = 0.25, h = 0.1;
  QuadratureRule r = gl_rule(11, h);

  SUBCASE("zero and constant potentials vanish") {
    PotentialModel z = constant_pot(g, 0.0);
    PotentialModel c = constant_pot(g, 3.1);
    for (const TriangleKernel* k : {&kernel_psi(), &kernel_phi1_plus_vphi1()}) {
      CHECK(eval_lambda(z, t, h, *k, 1, 1, r, Parity::none).v.abs().maxCoeff() == 0.0);
      CHECK(eval_lambda(c, t, h, *k, 1, 1, r, Parity::even).v.abs().maxCoeff() <= 1e-18);
    }
  }

  SUBCASE("agreement with brute-force 2-D quadrature") {
    PotentialModel generic = exp_ramp_pot(g);
    PotentialModel seplin = sep_pot(g, [](double tt) { return tt; }, true);

    struct Probe {
      const PotentialModel* pot;
      const TriangleKernel* ker;
      int a, b;
      Parity parity;
    };
    const Probe probes[] = {
        {&seplin, &kernel_psi(), 1, 1, Parity::even},
        {&seplin, &kernel_phi1_plus_vphi1(), 1, 2, Parity::odd},
        {&generic, &kernel_psi(), 1, 1, Parity::even},
        {&generic, &kernel_phi1_plus_vphi1(), 1, 2, Parity::odd},
        {&generic, &kernel_phi2_plus_vphi2(), 2, 1, Parity::odd},
        {&generic, &kernel_phi2(), 2, 2, Parity::none},
    };
    int pi_idx = 0;
    for (const Probe& pr : probes) {
      CAPTURE(pi_idx);
      ++pi_idx;
      GridFunction lam = eval_lambda(*pr.pot, t, h, *pr.ker, pr.a, pr.b, r, pr.parity);
      double scale = std::max(lam.v.abs().maxCoeff(), 1e-300);
      for (Index j : {Index(0), g->n / 4, g->n / 2, 3 * g->n / 4}) {
        double want = brute_lambda(*pr.pot, g->x[j], t, h, *pr.ker, pr.a, pr.b, pr.parity);
        CHECK(std::abs(lam.v[j] - want) <= 1e-10 * std::max(scale, std::abs(want)));
      }
    }
  }

  SUBCASE("node count does not matter once the integrand is resolved") {
    PotentialModel p = sep_pot(g, [](double tt) { return tt; }, false);
    ArrayXd a3 = eval_lambda(p, t, h, kernel_psi(), 1, 1, gl_rule(3, h), Parity::even).v;
    ArrayXd a11 = eval_lambda(p, t, h, kernel_psi(), 1, 1, gl_rule(11, h), Parity::even).v;
    CHECK((a3 - a11).abs().maxCoeff() <= 1e-12 * std::max(1e-6, a11.abs().maxCoeff()));
  }

  SUBCASE("contract violations") {
    PotentialModel p = exp_ramp_pot(g);
    CHECK_THROWS_AS(eval_lambda(p, t, h, kernel_psi(), 3, 1, r, Parity::even), contract_error);
    CHECK_THROWS_AS(eval_lambda(p, t, h, kernel_psi(), 1, 0, r, Parity::even), contract_error);
  }
}

TEST_CASE("per-step tables") {
  using bench::preset_double_well_chirp;
  bench::Problem prob = preset_double_well_chirp(1e-2, 400);
  const double t = 0.3, h = 0.02;
  QuadratureRule r = gl_rule(11, h);

  SUBCASE("separable fast path agrees with the generic path") {
    MuLambdaTables fast = build_tables(prob.pot, t, h, r, TableLevel::mz6, false);
    MuLambdaTables slow = build_tables(prob.pot, t, h, r, TableLevel::mz6, true);

    auto close = [](const ArrayXd& a, const ArrayXd& b) {
      return (a - b).abs().maxCoeff() <= 1e-12 * std::max(1.0, b.abs().maxCoeff());
    };
    CHECK(close(fast.mu00_e.val.v, slow.mu00_e.val.v));
    for (int a = 1; a <= 4; ++a) CHECK(close(fast.mu00_e.deriv(a), slow.mu00_e.deriv(a)));
    CHECK(close(fast.mu11_o.val.v, slow.mu11_o.val.v));
    for (int a = 1; a <= 3; ++a) CHECK(close(fast.mu11_o.deriv(a), slow.mu11_o.deriv(a)));
    CHECK(close(fast.mu21_e.val.v, slow.mu21_e.val.v));
    for (int a = 1; a <= 2; ++a) CHECK(close(fast.mu21_e.deriv(a), slow.mu21_e.deriv(a)));
    CHECK(close(fast.mu31_o.val.v, slow.mu31_o.val.v));
    for (int a = 1; a <= 3; ++a) CHECK(close(fast.mu31_o.deriv(a), slow.mu31_o.deriv(a)));
    CHECK(close(fast.mu12_e.val.v, slow.mu12_e.val.v));
    CHECK(close(fast.lam_psi_e.v, slow.lam_psi_e.v));
    CHECK(close(fast.lam_c1_o.v, slow.lam_c1_o.v));
    CHECK(close(fast.lam_c2_o.v, slow.lam_c2_o.v));
  }

  SUBCASE("mz4 level caches the plain integrals with their derivatives") {
    MuLambdaTables tb = build_tables(prob.pot, t, h, r, TableLevel::mz4);
    CHECK(tb.mu00.val.v.size() == prob.pot.grid->n);
    CHECK(tb.mu00.deriv(4).size() == prob.pot.grid->n);
    CHECK_THROWS_AS(tb.mu00.deriv(5), contract_error);
    CHECK_THROWS_AS(tb.mu00.deriv(0), contract_error);
    CHECK(tb.mu11.deriv(1).size() == prob.pot.grid->n);
  }

  SUBCASE("order six needs at least three quadrature nodes") {
    CHECK_THROWS_AS(build_tables(prob.pot, t, h, gl_rule(1, h), TableLevel::mz6),
                    contract_error);
  }
}
