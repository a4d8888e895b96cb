#pragma once

#include <cstdint>
#include <vector>

#include "rangelab/numerical_range.hpp"
#include "rangelab/unitary_opt.hpp"

namespace rangelab {

/// Constructive proof that a point belongs to a weighted range: a unitary V,
/// the value achieved through it, and the residual against the target.
/// Inconclusive only means no witness was found; it is never a proof of
/// non-membership.
struct MembershipCertificate {
    enum class Status { certified, inconclusive };
    CMatrix v;
    Complex achieved;
    Complex target;
    double residual = 0.0;
    Status status = Status::inconclusive;
    bool certified() const { return status == Status::certified; }
};

/// tr((C + 0) V^* T V) for a unitary V of T's size; C is padded with zeros up
/// to T's dimension. Rejects non-unitary V.
Complex wc_value(const CMatrix& c, const CMatrix& t, const CMatrix& v, double tol = 1e-8);

/// N values of wc_value at Haar unitaries from per-sample derived streams.
/// Every returned point is an exact member of the weighted range of T.
std::vector<Complex> wc_sample(const CMatrix& c, const CMatrix& t, std::size_t n_samples,
                               std::uint64_t seed);

/// Exact support value in direction theta for a real weight vector: pads the
/// weights with zeros to T's size and pairs them, both sorted descending,
/// with the eigenvalues of the rotated Hermitian part (Ky Fan style maximum).
double wc_support_realc(const std::vector<double>& c, const CMatrix& t, double theta);

/// Lower bound of the support in direction theta for a general weight matrix
/// by ascent over the unitary group, with a unitary witness attaining it.
struct SupportBound {
    double h = 0.0;
    CMatrix v;
};
SupportBound wc_support_opt(const CMatrix& c, const CMatrix& t, double theta, int restarts = 8,
                            int iters = 500, std::uint64_t seed = 11);

/// Radius of the closed circular disk (centered at 0) traced by the weighted
/// range of the rank-one nilpotent E_12: equals the distance from C to the
/// scalar matrices.
double rank_one_nilpotent_disk(const CMatrix& c);

/// Elliptical disk equal to the weighted range of B = [[0,1],[x2 sin t, 0]]
/// under the weight [[g,f],[1,g]]: foci +-2 sqrt(f x2 sin t), minor axis
/// 2 (1 - f sin t |x2|). Independent of g; the real axis always meets it in
/// at least [f sin t - 1, 1 - f sin t].
Ellipse wca_ellipse(Complex g, double f, Complex x2, double theta);

/// sigma_2 <= tol sigma_1 and ||CC^* - C^*C|| <= tol ||C||^2, i.e. C is a
/// scalar multiple of a rank-one orthogonal projection. Rejects C = 0.
bool is_rank_one_normal(const CMatrix& c, double tol = 1e-8);

/// Sampled circle family swept while certifying membership along the unitary
/// path V_t = exp(i (t H + (1-t) G)).
struct CircleFamily {
    std::vector<double> t;
    std::vector<Complex> center;
    std::vector<double> radius;
    CMatrix h;
    CMatrix g;
};

/// Membership certificate for xi1 in the weighted range of the 3x3 matrix
/// btilde (rows (0,1,0), (b21, 0, b23), (~0,~0,~0)) under the weight ctilde,
/// built by scanning the path V_t between v1 (which must already achieve xi1
/// on the leading 2x2 blocks) and the swap matrix [[0,1],[1,0]]. For each t
/// the reachable set over the extra phase mu is a circle; a sign change of
/// |xi1 - center(t)| - radius(t) is bisected to locate a crossing, and the
/// certificate is the 3x3 unitary V_t + [mu]. Degenerate (radius identically
/// zero) paths fall back to a direct center match. Absence of a crossing
/// yields an inconclusive result, not a non-membership claim.
MembershipCertificate circle_path_certify(const CMatrix& ctilde, const CMatrix& btilde,
                                          Complex xi1, const CMatrix& v1,
                                          std::size_t steps = 2000, double tol = 1e-6,
                                          CircleFamily* family_out = nullptr);

}  // namespace rangelab
