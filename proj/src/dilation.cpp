#include "rangelab/dilation.hpp"

#include <cmath>
#include <numbers>

#include "rangelab/rng.hpp"

namespace rangelab {

namespace {

CMatrix expand_tail(std::size_t n, const CMatrix& a) {
    return direct_sum(CMatrix::identity(n), a);
}

std::uint64_t nested_seed(std::uint64_t base, std::uint64_t index) {
    return RngStream(base).derive(index).next_u64();
}

}  // namespace

CMatrix halmos_dilation(const CMatrix& t) {
    require(t.is_square() && !t.empty(), "halmos_dilation: T must be square and nonempty");
    const std::size_t n = t.rows();
    const double tnorm = spectral_norm(t);
    require(tnorm <= 1.0 + 1e-10,
            "halmos_dilation: T is not a contraction (norm " + std::to_string(tnorm) + ")");
    const CMatrix id = CMatrix::identity(n);
    const CMatrix dt = psd_sqrt(id - t.adjoint() * t);
    const CMatrix dts = psd_sqrt(id - t * t.adjoint());
    CMatrix u(2 * n, 2 * n);
    u.set_block(0, 0, t);
    u.set_block(0, n, dts);
    u.set_block(n, 0, dt);
    u.set_block(n, n, -t.adjoint());
    // The top rows are orthonormal to machine precision (their Gram matrix
    // only sees the square of the defect root), but the two roots are built
    // from separate eigendecompositions and need not intertwine with T to
    // that accuracy at ||T|| = 1. Re-running Gram-Schmidt over the bottom
    // rows restores exact unitarity; they are a valid completion regardless,
    // and the T block is untouched.
    std::vector<CVector> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = u.row(i);
    for (std::size_t i = n; i < 2 * n; ++i) {
        CVector cand = u.row(i);
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& prev : rows) axpy(cand, -dot(prev, cand), prev);
        const double r = norm(cand);
        require(r > 1e-6, "halmos_dilation: degenerate completion row");
        scale(cand, 1.0 / r);
        for (std::size_t j = 0; j < 2 * n; ++j) u(i, j) = cand[j];
        rows.push_back(std::move(cand));
    }
    return u;
}

CMatrix sample_dilation(const DilationSpec& spec, std::uint64_t seed) {
    const CMatrix& t = spec.t;
    require(t.is_square() && !t.empty(), "sample_dilation: T must be square and nonempty");
    const std::size_t n = t.rows();
    const std::size_t k = spec.pad;
    require(k >= n, "sample_dilation: pad must be at least the size of T");
    // Halmos block padded with an identity on the extra k - n coordinates.
    const CMatrix kmat = direct_sum(halmos_dilation(t), CMatrix::identity(k - n));

    RngStream base(seed);
    const auto rotation = [&](const std::optional<CMatrix>& given, std::uint64_t tag) {
        if (given) {
            require(given->rows() == k && given->cols() == k,
                    "sample_dilation: rotation blocks must be pad x pad");
            require(unitarity_defect(*given) <= 1e-8,
                    "sample_dilation: rotation blocks must be unitary");
            return *given;
        }
        RngStream rng = base.derive(tag);
        return haar_unitary(k, rng);
    };
    const CMatrix v = rotation(spec.v, 1);
    const CMatrix w = rotation(spec.w, 2);
    const CMatrix p = rotation(spec.p, 3);
    const CMatrix q = rotation(spec.q, 4);

    const CMatrix u =
        expand_tail(n, p) * (expand_tail(n, v) * kmat * expand_tail(n, w)) * expand_tail(n, q);

    const double ud = unitarity_defect(u);
    require(ud <= 1e-10, "sample_dilation: generated matrix failed the unitarity check");
    const double cd = (u.block(0, 0, n, n) - t).max_abs();
    require(cd <= 1e-10, "sample_dilation: generated matrix failed the compression check");
    return u;
}

CanonicalCompression canonical_compression(const CMatrix& u, std::size_t n, double theta,
                                           double tol) {
    require(u.is_square(), "canonical_compression: U must be square");
    require(n >= 2, "canonical_compression: need n >= 2");
    require(theta > 0.0 && theta < 0.5 * std::numbers::pi,
            "canonical_compression: theta must lie in (0, pi/2)");
    const std::size_t m = u.rows();
    require(m >= n + 2, "canonical_compression: dilation space must have dimension >= n + 2");
    require(unitarity_defect(u) <= tol, "canonical_compression: U is not unitary");

    const double ct = std::cos(theta), st = std::sin(theta);
    {
        const CMatrix target = ct * CMatrix::basis(n, 0, 1);
        const double dev = (u.block(0, 0, n, n) - target).max_abs();
        require(dev <= tol, "canonical_compression: U does not dilate cos(theta) E_12 (deviation " +
                                std::to_string(dev) + ")");
    }

    const std::size_t k = m - n;
    CVector xrow(k), yrow(k);
    for (std::size_t j = 0; j < k; ++j) {
        xrow[j] = u(0, n + j);
        yrow[j] = u(1, n + j);
    }
    require(std::abs(norm(xrow) - st) <= 1e2 * tol && std::abs(norm(yrow) - 1.0) <= 1e2 * tol,
            "canonical_compression: defect rows have unexpected norms");

    // Rotate the complement so row 1's defect becomes -sin(theta) e_2 and
    // row 2's becomes e_1 (positions n+1, n+2 of the compression).
    CVector c1(k), c2(k);
    for (std::size_t j = 0; j < k; ++j) {
        c1[j] = std::conj(yrow[j]);
        c2[j] = -std::conj(xrow[j]);
    }
    scale(c1, 1.0 / norm(c1));
    for (int pass = 0; pass < 2; ++pass) axpy(c2, -dot(c1, c2), c1);
    scale(c2, 1.0 / norm(c2));
    const CMatrix v1 = complete_to_unitary(CMatrix::from_columns({c1, c2}));

    const CMatrix embed = expand_tail(n, v1);
    CMatrix rotated;
    {
        CMatrix ue;
        multiply_into(ue, u, embed);
        adjoint_multiply_into(rotated, embed, ue);
    }
    CMatrix that = rotated.block(0, 0, n + 2, n + 2);
    CMatrix x_cols = embed.block(0, 0, m, n + 2);

    if (n >= 3) {
        CVector stray(n - 2);
        for (std::size_t j = 0; j < n - 2; ++j) stray[j] = that(n, 2 + j);
        const double r = norm(stray);
        if (r > 1e-14) {
            CVector pivot(n - 2);
            for (std::size_t j = 0; j < n - 2; ++j) pivot[j] = std::conj(stray[j]) / r;
            const CMatrix w1 = complete_to_unitary(CMatrix::from_columns({pivot}));
            CMatrix w(n + 2, n + 2);
            w(0, 0) = 1.0;
            w(1, 1) = 1.0;
            w.set_block(2, 2, w1);
            w(n, n) = 1.0;
            w(n + 1, n + 1) = 1.0;
            CMatrix tw;
            multiply_into(tw, that, w);
            adjoint_multiply_into(that, w, tw);
            x_cols = x_cols * w;
        }
    }

    CanonicalCompression out;
    out.n = n;
    out.theta = theta;
    out.that = that;
    out.isometry = x_cols;
    out.x1 = that(n, 0);
    out.y1 = that(n + 1, 0);
    // The two tied entries of each defect row determine x2 (resp. y2)
    // through (sin t, cos t); combining them in the least-squares sense keeps
    // the extraction stable across the whole theta range.
    out.x2 = that(n, 1) * st + that(n, n + 1) * ct;
    out.y2 = that(n + 1, 1) * st + that(n + 1, n + 1) * ct;
    out.x3 = (n >= 3) ? that(n, 2) : Complex(0.0, 0.0);
    out.b = that.select({0, 1, n, n + 1}, {0, 1, n, n + 1});

    double viol = 0.0;
    const auto bump = [&](double d) { viol = std::max(viol, d); };
    const std::size_t last = n + 1;
    for (std::size_t j = 0; j <= last; ++j) {
        if (j != 1 && j != last) bump(std::abs(that(0, j)));           // row 1
        if (j != n) bump(std::abs(that(1, j)));                        // row 2
        for (std::size_t i = 2; i < n; ++i) bump(std::abs(that(i, j)));  // rows 3..n
    }
    bump(std::abs(that(0, 1) - ct));
    bump(std::abs(that(0, last) + st));
    bump(std::abs(that(1, n) - 1.0));
    for (std::size_t j = 3; j < n; ++j) bump(std::abs(that(n, j)));  // x4..xn reduced away
    bump(std::abs(that(n, n)));
    bump(std::abs(that(n + 1, n)));
    bump(std::abs(that(n, 1) - out.x2 * st));
    bump(std::abs(that(n, last) - out.x2 * ct));
    bump(std::abs(that(n + 1, 1) - out.y2 * st));
    bump(std::abs(that(n + 1, last) - out.y2 * ct));
    out.pattern_violation = viol;
    if (viol > 1e-6)
        throw InternalConsistencyError(
            "canonical_compression: compressed matrix does not match the required pattern "
            "(violation " + std::to_string(viol) + ")");

    const double xnorm = std::norm(out.x1) + std::norm(out.x2);
    const double ynorm = std::norm(out.y1) + std::norm(out.y2);
    if (xnorm > 1.0 + 1e-8 || ynorm > 1.0 + 1e-8)
        throw InternalConsistencyError("canonical_compression: defect coefficients exceed the "
                                       "unit ball");
    return out;
}

MembershipCertificate certify_membership(const CMatrix& c, const CMatrix& u, Complex target,
                                         int restarts, int iters, double tol,
                                         std::uint64_t seed) {
    require(c.is_square() && u.is_square(), "certify_membership: matrices must be square");
    require(u.rows() >= c.rows(), "certify_membership: U smaller than the weight");
    const std::size_t m = u.rows();
    const CMatrix c_padded = pad_to(c, m);

    MembershipCertificate cert;
    cert.target = target;

    // |tr(C X)| <= sum sigma_i(C) for any contraction X, so far-out targets
    // cannot be members and the search is skipped.
    double trace_norm = 0.0;
    for (double s : singular_values(c)) trace_norm += s;
    if (std::abs(target) > trace_norm + 1e-9) {
        cert.v = CMatrix::identity(m);
        cert.achieved = wc_value(c, u, cert.v);
        cert.residual = std::abs(cert.achieved - target);
        cert.status = MembershipCertificate::Status::inconclusive;
        return cert;
    }

    const CMatrix u_adj = u.adjoint();
    const CMatrix c_adj = c_padded.adjoint();
    const UnitaryObjective objective = [&](const CMatrix& v) {
        CMatrix uv, vuv;
        multiply_into(uv, u, v);
        adjoint_multiply_into(vuv, v, uv);
        Complex w = -target;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t kk = 0; kk < m; ++kk) {
                const Complex cik = c_padded(i, kk);
                if (cik == 0.0) continue;
                w += cik * vuv(kk, i);
            }
        // minimize |w|^2 <=> maximize its negative; Euclidean gradient of
        // |w|^2 is conj(w) U V C + w U^* V C^*.
        CMatrix grad = std::conj(w) * (uv * c_padded) + w * (u_adj * (v * c_adj));
        return std::make_pair(-std::norm(w), Complex(-1.0, 0.0) * grad);
    };

    const double stop_at = -0.01 * tol * tol;
    const UnitaryOptResult res =
        maximize_over_unitaries(m, objective, restarts, iters, seed, stop_at);
    cert.v = res.v;
    cert.achieved = wc_value(c, u, res.v);
    cert.residual = std::abs(cert.achieved - target);
    cert.status = cert.residual <= tol ? MembershipCertificate::Status::certified
                                       : MembershipCertificate::Status::inconclusive;
    return cert;
}

double wc_support_auto(const CMatrix& c, const CMatrix& m, double theta, bool* used_optimization) {
    if (c.max_abs() == 0.0) return 0.0;
    if (is_rank_one_normal(c, 1e-10)) {
        const Complex gamma = c.trace();
        return std::abs(gamma) * nr_support(m, theta - std::arg(gamma)).h;
    }
    if ((c - c.adjoint()).max_abs() <= 1e-10 * std::max(1.0, c.max_abs()))
        return wc_support_realc(herm_eig(c).values, m, theta);
    if (used_optimization) *used_optimization = true;
    return wc_support_opt(c, m, theta).h;
}

IntersectionEstimate intersection_estimate(const CMatrix& t, const CMatrix& c,
                                           std::size_t num_dilations,
                                           const std::vector<std::size_t>& pads,
                                           std::uint64_t seed, std::size_t grid) {
    require(num_dilations >= 1, "intersection_estimate: need at least one dilation");
    require(!pads.empty(), "intersection_estimate: pads list must be nonempty");
    require(grid >= 8, "intersection_estimate: grid too small");
    const std::size_t n = t.rows();
    for (std::size_t pad : pads)
        require(pad >= n, "intersection_estimate: every pad must be at least the size of T");

    IntersectionEstimate out;
    out.region.directions.resize(grid);
    out.region.support.assign(grid, std::numeric_limits<double>::infinity());
    for (std::size_t kk = 0; kk < grid; ++kk)
        out.region.directions[kk] =
            2.0 * std::numbers::pi * static_cast<double>(kk) / static_cast<double>(grid);

    for (std::size_t i = 0; i < num_dilations; ++i) {
        DilationSpec spec;
        spec.t = t;
        spec.pad = pads[i % pads.size()];
        const std::uint64_t si = nested_seed(seed, i);
        const CMatrix u = sample_dilation(spec, si);
        out.dilation_seeds.push_back(si);
        out.pads_used.push_back(spec.pad);
        for (std::size_t kk = 0; kk < grid; ++kk) {
            const double h = wc_support_auto(c, u, out.region.directions[kk],
                                             &out.used_optimization);
            out.region.support[kk] = std::min(out.region.support[kk], h);
        }
    }
    out.region.inner_points = wc_sample(c, t, 200, nested_seed(seed, 0xFEED));
    return out;
}

}  // namespace rangelab
