#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rangelab/cnumerical_range.hpp"

namespace rangelab {

/// Parameters generating one member of the randomized dilation family
///   U = (I_n + P) * (I_n + V) * K * (I_n + W) * (I_n + Q),
/// where K is the Halmos block unitary of T padded with an identity up to
/// size n + pad. Any of the k x k rotation blocks left unset are drawn Haar
/// at sampling time. Every member compresses back to T on the leading n
/// coordinates.
struct DilationSpec {
    CMatrix t;
    std::size_t pad = 0;  // k >= n; the dilation acts on n + k dimensions
    std::optional<CMatrix> v;
    std::optional<CMatrix> w;
    std::optional<CMatrix> p;
    std::optional<CMatrix> q;
};

/// The 2n x 2n block unitary [[T, D_{T*}], [D_T, -T^*]] with defect operators
/// D_T = sqrt(I - T^*T), D_{T*} = sqrt(I - TT^*). Rejects ||T|| > 1 + 1e-10.
CMatrix halmos_dilation(const CMatrix& t);

/// Instantiates spec, drawing unset rotation blocks from streams derived off
/// seed. The result is checked to be unitary and to compress to T within
/// 1e-10 before being returned.
CMatrix sample_dilation(const DilationSpec& spec, std::uint64_t seed);

/// Canonical (n+2)-dimensional compression of a unitary dilation of
/// cos(theta) E_12: rotates the orthogonal complement so the defect part of
/// row 1 becomes (0, -sin theta) and of row 2 becomes (1, 0), then reduces
/// the stray entries of row n+1 with a Householder reflection (real
/// nonnegative pivot). The compressed matrix has rows 1-2 equal to
/// (0, cos t, 0, ..., 0, -sin t) and (0, ..., 0, 1, 0), rows 3..n zero, and
/// last two rows (x1, x2 sin t, x3, 0, ..., 0, 0, x2 cos t),
/// (y1, y2 sin t, y3, ..., yn, 0, y2 cos t) with |x1|^2 + |x2|^2 <= 1 and
/// |y1|^2 + |y2|^2 <= 1.
struct CanonicalCompression {
    CMatrix that;      // (n+2) x (n+2) compression
    CMatrix b;         // 4x4 principal submatrix at rows/cols 1, 2, n+1, n+2
    CMatrix isometry;  // X with X^* U X = that
    Complex x1, x2, x3, y1, y2;
    double pattern_violation = 0.0;  // largest |entry| required to vanish
    std::size_t n = 0;
    double theta = 0.0;
};
CanonicalCompression canonical_compression(const CMatrix& u, std::size_t n, double theta,
                                           double tol = 1e-8);

/// Searches for a unitary V with tr((C+0) V^* U V) = target by multi-restart
/// minimization of the squared distance over the unitary group. The returned
/// certificate's achieved value is recomputable from the stored witness.
/// Targets beyond the trace-norm bound sum sigma_i(C) are inconclusive
/// without search (and provably not members).
MembershipCertificate certify_membership(const CMatrix& c, const CMatrix& u, Complex target,
                                         int restarts = 16, int iters = 800, double tol = 1e-6,
                                         std::uint64_t seed = 13);

/// Pointwise minimum of per-dilation outer support functions: an outer
/// estimate of the intersection of the weighted ranges over num_dilations
/// sampled dilations of T (which itself over-approximates the intersection
/// over all dilations). Supports are exact for Hermitian or rank-one normal
/// weights and optimization lower bounds otherwise (reported via
/// used_optimization). Seeds nest, so growing num_dilations only shrinks the
/// estimate. Inner points are drawn from the weighted range of T itself,
/// which every dilation's range contains.
struct IntersectionEstimate {
    ConvexRegion region;
    bool used_optimization = false;
    std::vector<std::uint64_t> dilation_seeds;
    std::vector<std::size_t> pads_used;
};
IntersectionEstimate intersection_estimate(const CMatrix& t, const CMatrix& c,
                                           std::size_t num_dilations,
                                           const std::vector<std::size_t>& pads,
                                           std::uint64_t seed, std::size_t grid = 720);

/// Support function of the weighted range of a fixed matrix in one
/// direction; exact for rank-one normal or Hermitian weights, otherwise an
/// ascent lower bound (flagged through used_optimization).
double wc_support_auto(const CMatrix& c, const CMatrix& m, double theta,
                       bool* used_optimization = nullptr);

}  // namespace rangelab
