#include "rangelab/cnumerical_range.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rangelab/rng.hpp"
#include "rangelab/scalar_distance.hpp"

namespace rangelab {

namespace {

Complex wc_value_prepadded(const CMatrix& c_padded, const CMatrix& t, const CMatrix& v,
                           CMatrix& tv, CMatrix& vtv) {
    multiply_into(tv, t, v);
    adjoint_multiply_into(vtv, v, tv);
    Complex acc = 0.0;
    for (std::size_t i = 0; i < c_padded.rows(); ++i)
        for (std::size_t k = 0; k < c_padded.cols(); ++k) {
            const Complex cik = c_padded(i, k);
            if (cik == 0.0) continue;
            acc += cik * vtv(k, i);
        }
    return acc;
}

}  // namespace

Complex wc_value(const CMatrix& c, const CMatrix& t, const CMatrix& v, double tol) {
    require(c.is_square() && t.is_square() && v.is_square(), "wc_value: matrices must be square");
    require(t.rows() >= c.rows(), "wc_value: weight is larger than the target");
    require(v.rows() == t.rows(), "wc_value: unitary has wrong size");
    const double defect = unitarity_defect(v);
    require(defect <= tol, "wc_value: V is not unitary (defect " + std::to_string(defect) + ")");
    const CMatrix c_padded = pad_to(c, t.rows());
    CMatrix tv, vtv;
    return wc_value_prepadded(c_padded, t, v, tv, vtv);
}

std::vector<Complex> wc_sample(const CMatrix& c, const CMatrix& t, std::size_t n_samples,
                               std::uint64_t seed) {
    require(c.is_square() && t.is_square(), "wc_sample: matrices must be square");
    require(t.rows() >= c.rows(), "wc_sample: weight is larger than the target");
    require(n_samples >= 1, "wc_sample: need at least one sample");
    const std::size_t m = t.rows();
    const CMatrix c_padded = pad_to(c, m);
    RngStream base(seed);
    std::vector<Complex> cloud(n_samples);
    CMatrix tv, vtv;
    for (std::size_t i = 0; i < n_samples; ++i) {
        RngStream rng = base.derive(i);
        const CMatrix v = haar_unitary(m, rng);
        cloud[i] = wc_value_prepadded(c_padded, t, v, tv, vtv);
    }
    return cloud;
}

double wc_support_realc(const std::vector<double>& c, const CMatrix& t, double theta) {
    require(t.is_square(), "wc_support_realc: target must be square");
    require(t.rows() >= c.size(), "wc_support_realc: weight vector longer than the target size");
    const std::size_t m = t.rows();
    const Complex w = std::polar(1.0, -theta);
    CMatrix h(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            h(i, j) = 0.5 * (w * t(i, j) + std::conj(w * t(j, i)));
    const HermEig eig = herm_eig(h, 1e-9 * std::max(1.0, h.max_abs()));
    std::vector<double> weights(c);
    weights.resize(m, 0.0);
    std::sort(weights.begin(), weights.end(), std::greater<double>());
    double acc = 0.0;
    for (std::size_t k = 0; k < m; ++k) acc += weights[k] * eig.values[k];
    return acc;
}

SupportBound wc_support_opt(const CMatrix& c, const CMatrix& t, double theta, int restarts,
                            int iters, std::uint64_t seed) {
    require(c.is_square() && t.is_square(), "wc_support_opt: matrices must be square");
    require(t.rows() >= c.rows(), "wc_support_opt: weight is larger than the target");
    const std::size_t m = t.rows();
    const CMatrix a = std::polar(1.0, -theta) * pad_to(c, m);
    const CMatrix a_adj = a.adjoint();
    const CMatrix t_adj = t.adjoint();

    // f(V) = Re tr(A V^* T V); Euclidean gradient T V A + T^* V A^*.
    const UnitaryObjective objective = [&](const CMatrix& v) {
        CMatrix tv, vtv;
        multiply_into(tv, t, v);
        adjoint_multiply_into(vtv, v, tv);
        Complex tr = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t k = 0; k < m; ++k) tr += a(i, k) * vtv(k, i);
        CMatrix grad = tv * a + t_adj * (v * a_adj);
        return std::make_pair(tr.real(), std::move(grad));
    };
    const UnitaryOptResult res = maximize_over_unitaries(m, objective, restarts, iters, seed);
    return {res.value, res.v};
}

double rank_one_nilpotent_disk(const CMatrix& c) {
    require(c.is_square() && c.rows() >= 2, "rank_one_nilpotent_disk: need size >= 2");
    return min_shift_norm(c).R;
}

Ellipse wca_ellipse(Complex g, double f, Complex x2, double theta) {
    (void)g;  // the range does not depend on g; kept in the signature because
              // the weight matrix carries it.
    require(f >= 0.0 && f <= 1.0, "wca_ellipse: f must lie in [0, 1]");
    require(std::abs(x2) <= 1.0 + 1e-12, "wca_ellipse: |x2| must be at most 1");
    require(theta >= 0.0 && theta < 0.5 * std::numbers::pi,
            "wca_ellipse: theta must lie in [0, pi/2)");
    const Complex focus = 2.0 * std::sqrt(f * x2 * std::sin(theta));
    Ellipse e;
    e.focus1 = focus;
    e.focus2 = -focus;
    if (e.focus1.real() > e.focus2.real() ||
        (e.focus1.real() == e.focus2.real() && e.focus1.imag() > e.focus2.imag()))
        std::swap(e.focus1, e.focus2);
    e.minor_axis = 2.0 * (1.0 - f * std::sin(theta) * std::abs(x2));
    return e;
}

bool is_rank_one_normal(const CMatrix& c, double tol) {
    require(c.is_square(), "is_rank_one_normal: matrix not square");
    require(c.max_abs() > 0.0, "is_rank_one_normal: zero matrix rejected");
    const std::vector<double> sv = singular_values(c);
    if (sv.size() < 2) return true;  // 1x1 nonzero matrix
    if (sv[1] > tol * sv[0]) return false;
    const CMatrix comm = c * c.adjoint() - c.adjoint() * c;
    return spectral_norm(comm) <= tol * sv[0] * sv[0];
}

MembershipCertificate circle_path_certify(const CMatrix& ctilde, const CMatrix& btilde,
                                          Complex xi1, const CMatrix& v1, std::size_t steps,
                                          double tol, CircleFamily* family_out) {
    require(ctilde.rows() == 3 && ctilde.cols() == 3, "circle_path_certify: weight must be 3x3");
    require(btilde.rows() == 3 && btilde.cols() == 3, "circle_path_certify: target must be 3x3");
    require(v1.rows() == 2 && v1.cols() == 2 && unitarity_defect(v1) <= 1e-8,
            "circle_path_certify: v1 must be a 2x2 unitary");
    require(steps >= 8, "circle_path_certify: need at least 8 path steps");

    const CMatrix chat = ctilde.block(0, 0, 2, 2);
    const CMatrix bhat = btilde.block(0, 0, 2, 2);

    {
        const Complex at_v1 = (chat * (v1.adjoint() * (bhat * v1))).trace();
        require(std::abs(at_v1 - xi1) <= std::max(tol, 1e-6),
                "circle_path_certify: v1 does not achieve the target on the leading blocks");
    }

    const CMatrix h = principal_log_unitary_2x2(v1);
    CMatrix g(2, 2);
    {
        // Hermitian G with exp(iG) equal to the swap matrix: pi/2 (I - swap).
        const double p = 0.5 * std::numbers::pi;
        g(0, 0) = p;
        g(0, 1) = -p;
        g(1, 0) = -p;
        g(1, 1) = p;
    }

    const auto path_point = [&](double t) {
        CMatrix k(2, 2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) k(i, j) = t * h(i, j) + (1.0 - t) * g(i, j);
        return exp_i_hermitian_2x2(k);
    };
    // With W = V_t + [mu], block algebra gives
    //   tr(Ct W^* Bt W) = tr(Chat V_t^* Bhat V_t) + c33 b33
    //                     + mu * (c_row V_t^* b_col) + conj(mu) * (b_row V_t c_col),
    // where c_row/b_col pick out row 3 of Ct and column 3 of Bt. Row 3 of Bt
    // vanishes for the targets this routine serves, so the conj(mu) term is
    // rounding dust and the reachable set over |mu| = 1 is the circle
    // center(t) + mu * xi2(t).
    const auto circle_at = [&](double t, Complex* xi2_out) {
        const CMatrix vt = path_point(t);
        Complex center = (chat * (vt.adjoint() * (bhat * vt))).trace();
        center += ctilde(2, 2) * btilde(2, 2);
        Complex xi2 = 0.0;
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                xi2 += ctilde(2, j) * std::conj(vt(k, j)) * btilde(k, 2);
        if (xi2_out) *xi2_out = xi2;
        return center;
    };

    const auto gap = [&](double t) {
        Complex xi2;
        const Complex center = circle_at(t, &xi2);
        return std::abs(xi1 - center) - std::abs(xi2);
    };

    MembershipCertificate cert;
    cert.target = xi1;

    double best_t = 1.0;
    double best_close = std::numeric_limits<double>::infinity();
    double prev_t = 1.0;
    double prev_gap = gap(1.0);
    bool bracketed = false;
    double lo = 1.0, hi = 1.0;
    if (family_out) {
        family_out->h = h;
        family_out->g = g;
        family_out->t.clear();
        family_out->center.clear();
        family_out->radius.clear();
    }
    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = 1.0 - static_cast<double>(k) / static_cast<double>(steps);
        Complex xi2;
        const Complex center = circle_at(t, &xi2);
        const double gk = std::abs(xi1 - center) - std::abs(xi2);
        if (family_out) {
            family_out->t.push_back(t);
            family_out->center.push_back(center);
            family_out->radius.push_back(std::abs(xi2));
        }
        const double closeness = std::abs(gk);
        if (closeness < best_close) {
            best_close = closeness;
            best_t = t;
        }
        if (!bracketed && k > 0 && ((prev_gap <= 0.0 && gk >= 0.0) || (prev_gap >= 0.0 && gk <= 0.0))) {
            bracketed = true;
            lo = t;
            hi = prev_t;
        }
        prev_t = t;
        prev_gap = gk;
    }

    double t_star = best_t;
    if (bracketed) {
        double a = lo, b = hi;
        double ga = gap(a);
        for (int it = 0; it < 80 && std::abs(b - a) > 1e-10; ++it) {
            const double mid = 0.5 * (a + b);
            const double gm = gap(mid);
            if ((ga <= 0.0) == (gm <= 0.0)) {
                a = mid;
                ga = gm;
            } else {
                b = mid;
            }
        }
        t_star = 0.5 * (a + b);
    }

    Complex xi2;
    const Complex center = circle_at(t_star, &xi2);
    Complex mu(1.0, 0.0);
    if (std::abs(xi2) > 1e-14) {
        mu = (xi1 - center) / xi2;
        const double mag = std::abs(mu);
        if (mag > 0.0) mu /= mag;
    }

    const CMatrix vt = path_point(t_star);
    CMatrix w(3, 3);
    w.set_block(0, 0, vt);
    w(2, 2) = mu;
    cert.v = w;
    cert.achieved = (ctilde * (w.adjoint() * (btilde * w))).trace();
    cert.residual = std::abs(cert.achieved - xi1);
    cert.status = cert.residual <= tol ? MembershipCertificate::Status::certified
                                       : MembershipCertificate::Status::inconclusive;
    return cert;
}

}  // namespace rangelab
