#pragma once

#include <cstdint>

#include "rangelab/linalg.hpp"

namespace rangelab {

/// Result of the distance-to-scalars problem R = min_mu ||C - mu I||.
///
/// Invariants at convergence: R = ||C - mu_star I|| within 1e-8, dual_value
/// <= R + 1e-6 always (weak duality), |dual_value - R| <= 1e-5 (strong
/// duality), and the witness pair is orthonormal with |x^* C y| = dual_value.
struct MinShiftResult {
    Complex mu_star;
    double R = 0.0;
    double dual_value = 0.0;
    bool certificate_ok = false;
    CVector witness_x;
    CVector witness_y;
};

/// Minimizes the convex map mu -> ||C - mu I|| over the complex plane by
/// nested golden-section searches (outer over Re mu, inner over Im mu) inside
/// the box |mu - tr(C)/n| <= 2||C||, then polishes with a few damped Newton
/// steps on the smooth branch. Derivative-free outer loop keeps the solve
/// robust at points where the top singular value is multiple.
MinShiftResult min_shift_norm(const CMatrix& c, double tol = 1e-10);

/// Ascent for max |x^* C y| over orthonormal pairs. Alternating closed-form
/// maximization in x and y is monotone; restarts guard against non-global
/// fixed points. The value is always a certified lower bound (witnesses
/// returned).
struct OrthoPair {
    double value = 0.0;
    CVector x;
    CVector y;
};
OrthoPair dual_orthopair(const CMatrix& c, int restarts = 16, int iters = 500,
                         std::uint64_t seed = 20240915);

/// True when some top singular pair (u, v) of C - mu I has |<u, v>| <= tol,
/// which certifies mu as a minimizer of ||C - mu I||. If the top singular
/// value is multiple (within 1e-8 relative), the pair is searched over the
/// top-2 singular subspace with a dense grid plus refinement. Whether that
/// search is exhaustive when the multiplicity is 3 or more is an open point;
/// the routine reports what it finds and nothing stronger.
bool optimality_certificate(const CMatrix& c, Complex mu, double tol = 1e-6);

/// min over unit v in the span of cols of a 2-column isometry V of
/// |v^* A v| / scale; shared between the certificate and the Stampfli
/// normal form construction.
struct SubspacePair {
    double value = 0.0;  // min |v^* A v| found (unscaled)
    CVector v;
};
SubspacePair min_quadratic_over_span(const CMatrix& a, const CMatrix& span_cols);

}  // namespace rangelab
