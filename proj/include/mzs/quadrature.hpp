#pragma once

#include "mzs/grid.hpp"

#include <string>
#include <vector>

namespace mzs {

// Gauss-Legendre rule mapped onto [0,h]. h may be negative (used by the
// reversibility checks); nodes then live in [h,0] and weights sum to h.
struct QuadratureRule {
  int n_nodes = 0;
  ArrayXd nodes;   // in [0,h], symmetric about h/2
  ArrayXd weights; // sum = h
};

QuadratureRule gl_rule(int n_nodes, double h);

// Classical Bernoulli polynomial B_j(x), j <= 4.
double bernoulli(int j, double x);

// Rescaled Bernoulli polynomial Bt_j(h,zeta) = h^j B_j(zeta/h).
double bernoulli_bt(int j, double h, double zeta);

// h^r * integral over {0 <= xi <= zeta <= h} of zeta^p xi^q
//   = h^{p+q+r+2} / ((q+1)(p+q+2)).
double triangle_monomial(int p, int q, int r, double h);

// Homogeneous polynomial kernel f(h,zeta,xi) entering the triangle integrals.
struct TriangleKernel {
  struct Mono {
    double c;
    int ph, pz, px; // c * h^ph * zeta^pz * xi^px
  };
  std::string name;
  std::vector<Mono> monos;
  int degree = 0; // homogeneous: ph+pz+px == degree for every monomial
  bool odd = false; // parity = degree mod 2

  double eval(double h, double zeta, double xi) const;
};

// The five kernels of the sixth-order exponent, plus the two combinations
// the assembly consumes:
//   psi   = zeta - xi - h/3                                   (degree 1, odd)
//   phi1  = h^2 - 4 h xi + 2 zeta xi                          (degree 2, even)
//   phi2  = (h - 2 zeta)^2 - 2 zeta xi                        (degree 2, even)
//   vphi1 = h^2 - 6 h zeta + 6 h xi + 6 zeta xi + 3 zeta^2 - 12 xi^2
//   vphi2 = h^2 - 6 h zeta + 6 h xi - 6 zeta xi + 5 zeta^2
const TriangleKernel& kernel_psi();
const TriangleKernel& kernel_phi1();
const TriangleKernel& kernel_phi2();
const TriangleKernel& kernel_vphi1();
const TriangleKernel& kernel_vphi2();
const TriangleKernel& kernel_phi1_plus_vphi1();
const TriangleKernel& kernel_phi2_plus_vphi2();

// Exact integral of the kernel itself over the triangle (psi, vphi1, vphi2
// integrate to zero; that property drives an extra order of h).
double triangle_integral(const TriangleKernel& kernel, double h);

} // namespace mzs
