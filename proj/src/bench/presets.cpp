#include "mzs/bench/presets.hpp"

#include "mzs/spectral.hpp"

#include <cmath>

namespace mzs::bench {

double chirp_f(double t) {
  const double s = t - 1.0;
  return 10.0 * std::exp(-10.0 * s * s) * std::sin(500.0 * s * s * s * s + 10.0);
}

namespace {

Wavefunction normalized(Wavefunction u) {
  u.v /= l2_norm(u);
  return u;
}

double dw_static(double x) { return x * x * x * x / 5.0 - 2.0 * x * x; }

double dw_static_dx(int a, double x) {
  switch (a) {
    case 1: return 4.0 * x * x * x / 5.0 - 4.0 * x;
    case 2: return 12.0 * x * x / 5.0 - 4.0;
    case 3: return 24.0 * x / 5.0;
    case 4: return 24.0 / 5.0;
    default: return 0.0;
  }
}

Problem double_well(double eps, Index n_grid, bool laser_on) {
  require(n_grid >= 256, "double-well preset needs at least 256 grid points");
  GridPtr g = make_grid(-5.0, 5.0, n_grid);

  const double x0 = -2.5, delta = 1e-2;
  ArrayXcd v(n_grid);
  const double amp = std::pow(delta * M_PI, -0.25);
  for (Index i = 0; i < n_grid; ++i) {
    const double d = g->x[i] - x0;
    v[i] = amp * std::exp(-d * d / (2.0 * delta));
  }
  Wavefunction u0 = normalized({g, std::move(v)});

  PotentialModel pot;
  pot.grid = g;
  pot.name = laser_on ? "double_well_chirp" : "double_well_static";
  std::function<double(double)> f;
  if (laser_on)
    f = [](double t) { return chirp_f(t); };
  else
    f = [](double) { return 0.0; };
  pot.eval = [f](double x, double t) { return dw_static(x) + f(t) * x; };
  pot.dx_eval = [f](int a, double x, double t) {
    return dw_static_dx(a, x) + (a == 1 ? f(t) : 0.0);
  };
  pot.max_dx = 8;
  pot.separable = true;
  pot.v_static = dw_static;
  pot.v_static_dx = dw_static_dx;
  pot.f_time = f;
  // Fastest phase of the chirp on t in [0, 5/2]: d/dt[500 (t-1)^4] at t = 5/2.
  pot.dt_resolution_hint = laser_on ? 2.0 * M_PI / (2000.0 * 1.5 * 1.5 * 1.5) : 0.0;
  (void)eps;
  return {std::move(u0), std::move(pot)};
}

} // namespace

Problem preset_double_well_chirp(double eps, Index n_grid) {
  return double_well(eps, n_grid, true);
}

Problem preset_double_well_static(double eps, Index n_grid) {
  return double_well(eps, n_grid, false);
}

Problem preset_smooth(double eps, Index n_grid) {
  GridPtr g = make_grid(-M_PI, M_PI, n_grid);
  ArrayXcd v(n_grid);
  for (Index i = 0; i < n_grid; ++i) {
    const double x = g->x[i];
    v[i] = std::exp(-x * x / (2.0 * eps)) * std::exp(iu * (x / eps));
  }
  Wavefunction u0 = normalized({g, std::move(v)});

  PotentialModel pot;
  pot.grid = g;
  pot.name = "smooth";
  pot.eval = [](double x, double t) { return std::sin(x) * (1.0 + t); };
  pot.dx_eval = [](int a, double x, double t) {
    return std::sin(x + a * M_PI / 2.0) * (1.0 + t);
  };
  pot.max_dx = 8;
  return {std::move(u0), std::move(pot)};
}

Problem preset_free(double eps, Index n_grid) {
  Problem p = preset_smooth(eps, n_grid);
  p.pot.name = "free";
  p.pot.eval = [](double, double) { return 0.0; };
  p.pot.dx_eval = [](int, double, double) { return 0.0; };
  p.pot.max_dx = 8;
  p.pot.separable = true;
  p.pot.v_static = [](double) { return 0.0; };
  p.pot.v_static_dx = [](int, double) { return 0.0; };
  p.pot.f_time = [](double) { return 0.0; };
  return p;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"double_well_chirp", "double_well_static",
                                                 "smooth", "free"};
  return names;
}

Problem make_preset(const std::string& name, double eps, Index n_grid) {
  if (name == "double_well_chirp") return preset_double_well_chirp(eps, n_grid);
  if (name == "double_well_static") return preset_double_well_static(eps, n_grid);
  if (name == "smooth") return preset_smooth(eps, n_grid);
  if (name == "free") return preset_free(eps, n_grid);
  throw contract_error("unknown preset '" + name + "'");
}

Wavefunction free_evolution(const Wavefunction& u0, double eps, double dt) {
  return exp_circulant(iu * eps * dt, 2, u0);
}

} // namespace mzs::bench
