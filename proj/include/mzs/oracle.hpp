#pragma once

#include "mzs/spectral.hpp"
#include "mzs/symop.hpp"

#include <Eigen/Dense>

namespace mzs {

// Dense brute-force reference machinery for small grids. Everything here is
// deliberately slow and independent of the fast spectral paths, so the two
// can be compared in tests.

enum class OpStructure { hermitian, skew_hermitian, general };

struct DenseOperator {
  Eigen::MatrixXcd a;
  OpStructure structure = OpStructure::general;

  // Tagged structure is verified to 1e-10 at construction.
  DenseOperator(Eigen::MatrixXcd m, OpStructure s);
  Index n() const { return a.rows(); }
};

// Explicit DFT-matrix construction of the k-th derivative: Finv diag(c_k) F
// assembled from the matrix DFT, not from the FFT code paths (independent
// ground truth for the transform-based derivative).
Eigen::MatrixXcd dense_diff_matrix(const GridPtr& grid, int k);

// 1/2 (diag(f) K_k + K_k diag(f)) summed over terms, built from
// dense_diff_matrix (independent of apply_symop).
Eigen::MatrixXcd dense_symop_direct(const SymOpSum& op);

// Assembles the operator by applying apply_symop to unit vectors; column j
// is exactly apply_symop(op, e_j). Structure tag inferred from the terms:
// <f>_k is Hermitian for even k and skew-Hermitian for odd k, so a term is
// skew iff (k even and coeff imaginary) or (k odd and coeff real).
DenseOperator dense_of_symop(const SymOpSum& op);

// Matrix exponential via eigendecomposition of the Hermitian representative
// (H = A for hermitian, H = -iA for skew-Hermitian). General matrices are
// rejected; everything exponentiated in this project generates a unitary or
// positive group and deserves the spectrally exact path.
Eigen::MatrixXcd dense_expm(const DenseOperator& op);

Eigen::MatrixXcd brute_commutator(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// Dense orthogonal projector onto the Fourier modes |m| <= m_max. Continuum
// operator identities hold for the collocation matrices only on inputs whose
// spectrum cannot wrap past the Nyquist mode when multiplied by band-limited
// coefficient functions; right-multiplying both sides by this projector
// restricts a comparison to that subspace, where the identities are exact.
Eigen::MatrixXcd band_projector(const GridPtr& grid, Index m_max);

// Truncated symmetric BCH: sbch3(X,Y,h) = h(X+Y) - h^3([[Y,X],X]/24 + [[Y,X],Y]/12),
// so that exp(h X/2) exp(h Y) exp(h X/2) = exp(sbch3(X,Y,h)) + O(h^5).
DenseOperator sbch3(const DenseOperator& x, const DenseOperator& y, double h);

// Exact exponential step of an assembled Magnus truncation.
Wavefunction reference_step(const SymOpSum& theta, const Wavefunction& u);

double frobenius(const Eigen::MatrixXcd& m);

} // namespace mzs
