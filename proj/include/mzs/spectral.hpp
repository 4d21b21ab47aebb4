#pragma once

#include "mzs/grid.hpp"
#include "mzs/symop.hpp"

namespace mzs {

// Signed frequency index m~ in {-n/2+1, ..., n/2} in FFT storage order:
// entry m holds m for m <= n/2 and m-n above. Note the Nyquist index n/2 is
// kept with positive sign.
ArrayXd signed_freq(Index n);

// Fourier symbol of the k-th derivative on the grid: c_k[m] = (i 2 pi m~ / L)^k,
// with the Nyquist entry zeroed for odd k (keeps <f>_1 exactly skew-Hermitian
// and real functions real under differentiation).
ArrayXcd diff_symbol(const GridPtr& grid, int k);

// Spectral derivative d^k/dx^k.
Wavefunction deriv(const Wavefunction& u, int k = 1);
GridFunction deriv(const GridFunction& f, int k = 1); // real in, real out

// Apply a sum of symmetrised operators: sum_t coeff_t (D_{f_t} K_k + K_k D_{f_t})/2.
// k=0 terms are plain diagonal products. Terms are grouped by derivative
// order; with n distinct orders k >= 1 this costs exactly 2n+2 transforms
// (one shared forward of u, one inverse per order for the pre-multiplied
// route, one forward per order for the post-multiplied route accumulated in
// Fourier space, one shared inverse).
Wavefunction apply_symop(const SymOpSum& op, const Wavefunction& u);

// u <- Finv( exp(a * c_k) . F u ) for even k (real symbol).
Wavefunction exp_circulant(cplx a, int k, const Wavefunction& u);

// u <- exp(scale * f) . u  elementwise.
Wavefunction exp_diag(const GridFunction& f, cplx scale, const Wavefunction& u);

double l2_norm(const Wavefunction& u);                // sqrt(dx * sum |u|^2)
double l2_error(const Wavefunction& a, const Wavefunction& b);

// E[u] = eps * dx * sum |u'|^2 + eps^-1 * dx * sum V |u|^2, the expectation
// of the scaled Hamiltonian -eps d_xx + eps^-1 V after integration by parts.
double energy(const Wavefunction& u, const GridFunction& V, double eps);

} // namespace mzs
