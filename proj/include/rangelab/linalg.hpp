#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "rangelab/complex_matrix.hpp"

namespace rangelab {

/// Full spectral decomposition of a Hermitian matrix. Eigenvalues are sorted
/// descending and vectors holds the matching orthonormal eigenvectors as
/// columns, so A * vectors = vectors * diag(values) up to solver residual.
struct HermEig {
    std::vector<double> values;
    CMatrix vectors;
};

/// Cyclic complex Jacobi eigensolver for Hermitian matrices. Deterministic
/// (fixed sweep order, convergence on off-diagonal Frobenius mass) and
/// dependency-free; intended for the small dense sizes this library works at.
/// Rejects non-square input and matrices with ||A - A^*|| > tol.
HermEig herm_eig(const CMatrix& a, double tol = 1e-10);

/// Eigenvalues only (descending), skipping the accumulation of vectors.
std::vector<double> herm_eig_values(const CMatrix& a, double tol = 1e-10);

/// Largest singular value, computed as sqrt(lambda_max(A^* A)). Effective
/// accuracy is ~1e-8 because of the squaring; plenty for the sizes at hand.
double spectral_norm(const CMatrix& a);

/// All singular values, descending.
std::vector<double> singular_values(const CMatrix& a);

/// Hermitian PSD square root. Eigenvalues in [-tol, 0) are clamped to zero
/// (defect operators of norm-one contractions are PSD only up to roundoff);
/// anything below -tol is rejected.
CMatrix psd_sqrt(const CMatrix& p, double tol = 1e-10);

/// X^* U X for an isometry X (X^* X = I within tol).
CMatrix compress(const CMatrix& u, const CMatrix& x, double tol = 1e-8);

/// Solves A X = B by partial-pivot Gaussian elimination.
CMatrix solve(const CMatrix& a, const CMatrix& b);

/// Extends an isometry (orthonormal columns) to a full unitary by
/// Gram-Schmidt over the standard basis, picking the candidate with the
/// largest residual at each step so the completion is deterministic.
CMatrix complete_to_unitary(const CMatrix& isometry);

/// Eigenvalues of a 2x2 matrix by the quadratic formula, sorted
/// lexicographically by (Re, Im).
std::array<Complex, 2> eig2x2_values(const CMatrix& a);

/// Unitary diagonalization of a normal 2x2 matrix: a = V diag(values) V^*.
struct NormalEig2 {
    std::array<Complex, 2> values;
    CMatrix vectors;
};
NormalEig2 normal_eig_2x2(const CMatrix& a, double tol = 1e-9);

/// exp(i K) for Hermitian 2x2 K, in closed form via the Pauli decomposition.
CMatrix exp_i_hermitian_2x2(const CMatrix& k);

/// Principal logarithm of a 2x2 unitary: Hermitian H with exp(iH) = v and
/// eigenphases in (-pi, pi].
CMatrix principal_log_unitary_2x2(const CMatrix& v);

double unitarity_defect(const CMatrix& u);

}  // namespace rangelab
