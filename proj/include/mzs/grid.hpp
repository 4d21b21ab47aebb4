#pragma once

#include <Eigen/Core>
#include <complex>
#include <memory>
#include <stdexcept>
#include <string>

namespace mzs {

using Eigen::ArrayXcd;
using Eigen::ArrayXd;
using Eigen::Index;
using cplx = std::complex<double>;

inline constexpr cplx iu{0.0, 1.0};

// Contract failures (bad grid sizes, mismatched grids, unsupported bracket
// pairs, ...) throw this. Numerical blow-ups (NaN during evolution) throw
// std::runtime_error instead.
struct contract_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw contract_error(msg);
}

// Uniform periodic grid on [x_min, x_max), right endpoint excluded.
// Immutable after creation; everything downstream holds a shared_ptr and
// grid compatibility is checked by pointer identity, not by value.
struct Grid {
  double x_min;
  double x_max;
  Index n;       // number of points, even, >= 8
  double length; // x_max - x_min
  double dx;     // length / n
  ArrayXd x;     // x[j] = x_min + j*dx

  Grid(double x_min_, double x_max_, Index n_)
      : x_min(x_min_), x_max(x_max_), n(n_) {
    require(x_max > x_min, "grid: x_max must exceed x_min");
    require(n >= 8 && n % 2 == 0, "grid: n must be even and >= 8");
    length = x_max - x_min;
    dx = length / static_cast<double>(n);
    x = x_min + dx * ArrayXd::LinSpaced(n, 0.0, static_cast<double>(n - 1));
  }
};

using GridPtr = std::shared_ptr<const Grid>;

inline GridPtr make_grid(double x_min, double x_max, Index n) {
  return std::make_shared<const Grid>(x_min, x_max, n);
}

inline void require_same_grid(const GridPtr& a, const GridPtr& b) {
  require(a != nullptr && a == b, "operands live on different grids");
}

// Complex-valued state sampled on a grid.
struct Wavefunction {
  GridPtr grid;
  ArrayXcd v;

  Wavefunction() = default;
  Wavefunction(GridPtr g, ArrayXcd values) : grid(std::move(g)), v(std::move(values)) {
    require(grid && v.size() == grid->n, "wavefunction: value count != grid size");
  }
};

// Real-valued function sampled on a grid (potentials, line integrals, ...).
struct GridFunction {
  GridPtr grid;
  ArrayXd v;

  GridFunction() = default;
  GridFunction(GridPtr g, ArrayXd values) : grid(std::move(g)), v(std::move(values)) {
    require(grid && v.size() == grid->n, "grid function: value count != grid size");
  }
};

} // namespace mzs
