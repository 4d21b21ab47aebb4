#pragma once

#include "mzs/grid.hpp"
#include "mzs/quadrature.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace mzs {

// Real time-dependent potential V(x,t) with optional analytic spatial
// derivatives and optional separable structure V(x,t) = V_static(x) + f(t)*x
// (which unlocks the scalar-integral fast path below).
struct PotentialModel {
  GridPtr grid;
  std::string name;

  std::function<double(double x, double t)> eval;             // required
  std::function<double(int a, double x, double t)> dx_eval;   // optional, 1 <= a <= max_dx
  int max_dx = 0;

  bool separable = false;
  std::function<double(double x)> v_static;       // with derivatives below
  std::function<double(int a, double x)> v_static_dx;
  std::function<double(double t)> f_time;

  double dt_resolution_hint = 0.0; // shortest temporal oscillation scale, 0 = none

  // Samples of d^a/dx^a V(., t). a = 0 uses eval; a >= 1 uses dx_eval when
  // available and otherwise throws (callers fall back to spectral derivatives
  // of the *integrals*, which is the valid periodic-only route).
  ArrayXd sample(int a, double t) const;
  bool has_dx(int a) const { return a == 0 || (dx_eval && a <= max_dx); }
};

enum class Parity { none, even, odd };

// Line integral  mu_{j,k} = integral_0^h Bt_j^k(h,zeta) W*(zeta - h/2) dzeta
// under the given rule, where W(zeta) = V(t + h/2 + zeta), so the integrand
// samples V at t + tau_q. Parity parts use node pairing about the midpoint:
//   W^e at tau = (V(t+tau) + V(t+h-tau))/2,  W^o = (V(t+tau) - V(t+h-tau))/2.
// dx_order differentiates the integrand in x (the derivative commutes with
// the time integral); it requires analytic derivatives from the potential.
GridFunction eval_mu(const PotentialModel& pot, double t, double h, int j, int k,
                     const QuadratureRule& rule, Parity parity, int dx_order = 0);

// Triangle integral  Lambda*[ker]^{a,b}
//   = integral over {0<=xi<=zeta<=h} ker(h,zeta,xi) [d_x^a W(zeta-h/2) d_x^b W(xi-h/2)]*
// where * selects the parity part of the W-product:
//   [AB]^e = A^e B^e + A^o B^o,   [AB]^o = A^e B^o + A^o B^e.
// W is replaced by its Lagrange interpolant through the rule nodes; the
// coefficients C_ij = integral ker * l_i(zeta) * l_j(xi) are integrated
// exactly (degree-exact Gauss-Legendre product rule on the triangle, cached
// per kernel and node count; the kernels are homogeneous so C scales as
// h^{degree+2}).
GridFunction eval_lambda(const PotentialModel& pot, double t, double h,
                         const TriangleKernel& kernel, int a, int b,
                         const QuadratureRule& rule, Parity parity);

// The exact interpolation coefficient matrix in normalized coordinates,
// Chat_ij = integral over {0<=y<=z<=1} ker(1,z,y) l_i(z) l_j(y) dy dz, where
// l_i interpolate the rule nodes mapped to [0,1]. Exposed for tests.
Eigen::MatrixXd lambda_coeff_matrix(const TriangleKernel& kernel, int n_nodes);

// Everything one propagator step needs, evaluated once per step.
struct IntegralJet {
  GridFunction val;
  std::vector<ArrayXd> dx; // dx[a-1] = d^a/dx^a of val
  const ArrayXd& deriv(int a) const {
    require(a >= 1 && a <= static_cast<int>(dx.size()),
            "integral table: spatial derivative order not cached");
    return dx[static_cast<std::size_t>(a) - 1];
  }
};

enum class TableLevel { mz2, mz4, mz6 };

struct MuLambdaTables {
  double t = 0.0, h = 0.0;
  int gl_nodes = 0;
  TableLevel level = TableLevel::mz2;

  // Plain (left-endpoint Bernoulli) integrals driving the order-2/4 schemes.
  IntegralJet mu00;  // derivatives up to 4 at mz4 level
  IntegralJet mu11;  // derivative up to 1 at mz4 level

  // Midpoint-parity integrals driving the order-6 scheme.
  IntegralJet mu00_e; // derivatives up to 8
  IntegralJet mu11_o; // up to 5
  IntegralJet mu21_e; // up to 2
  IntegralJet mu31_o; // up to 3
  IntegralJet mu12_e; // value only; computed for completeness, unused by the
                      // exponents (see README note)

  GridFunction lam_psi_e;  // Lambda^e[psi]^{1,1}
  GridFunction lam_c1_o;   // Lambda^o[phi1+vphi1]^{1,2}
  GridFunction lam_c2_o;   // Lambda^o[phi2+vphi2]^{2,1}
};

// force_generic skips the separable fast path (used to test the two agree).
MuLambdaTables build_tables(const PotentialModel& pot, double t, double h,
                            const QuadratureRule& rule, TableLevel level,
                            bool force_generic = false);

} // namespace mzs
