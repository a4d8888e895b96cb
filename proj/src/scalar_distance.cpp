#include "rangelab/scalar_distance.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "rangelab/numerical_range.hpp"
#include "rangelab/rng.hpp"
#include "rangelab/unitary_opt.hpp"

namespace rangelab {

namespace {

struct SigmaInfo {
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    CVector v1;  // top right singular vector
    CVector v2;
    CVector u1;  // A v1 / sigma1 when sigma1 > 0
};

SigmaInfo top_singular(const CMatrix& a) {
    CMatrix gram;
    adjoint_multiply_into(gram, a, a);
    const HermEig eig = herm_eig(gram, 1e-8 * std::max(1.0, gram.max_abs()));
    SigmaInfo info;
    info.sigma1 = std::sqrt(std::max(0.0, eig.values[0]));
    info.sigma2 = eig.values.size() > 1 ? std::sqrt(std::max(0.0, eig.values[1])) : 0.0;
    info.v1 = eig.vectors.column(0);
    if (eig.values.size() > 1) info.v2 = eig.vectors.column(1);
    if (info.sigma1 > 0.0) {
        info.u1 = matvec(a, info.v1);
        scale(info.u1, 1.0 / info.sigma1);
    }
    return info;
}

CMatrix shifted(const CMatrix& c, Complex mu) {
    CMatrix a = c;
    for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) -= mu;
    return a;
}

double golden_min(const std::function<double(double)>& f, double lo, double hi, double tol,
                  double* argmin) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    const double xm = 0.5 * (a + b);
    if (argmin) *argmin = xm;
    return f(xm);
}

}  // namespace

SubspacePair min_quadratic_over_span(const CMatrix& a, const CMatrix& span_cols) {
    require(span_cols.cols() == 2 && span_cols.rows() == a.rows(),
            "min_quadratic_over_span: span must have two columns");
    CMatrix av, m;
    multiply_into(av, a, span_cols);
    adjoint_multiply_into(m, span_cols, av);
    const auto value = [&](double alpha, double beta) {
        const Complex a0 = std::cos(alpha);
        const Complex a1 = std::polar(std::sin(alpha), beta);
        return std::abs(std::conj(a0) * (m(0, 0) * a0 + m(0, 1) * a1) +
                        std::conj(a1) * (m(1, 0) * a0 + m(1, 1) * a1));
    };
    const double half_pi = 0.5 * std::numbers::pi;
    double best_a = 0.0, best_b = 0.0, best = value(0.0, 0.0);
    const int grid = 48;
    for (int i = 0; i <= grid; ++i)
        for (int j = 0; j < 2 * grid; ++j) {
            const double al = half_pi * i / grid;
            const double be = std::numbers::pi * j / grid;
            const double r = value(al, be);
            if (r < best) {
                best = r;
                best_a = al;
                best_b = be;
            }
        }
    double step = half_pi / grid;
    for (int it = 0; it < 200 && step > 1e-16; ++it) {
        bool moved = false;
        const double ca[4] = {best_a + step, best_a - step, best_a, best_a};
        const double cb[4] = {best_b, best_b, best_b + step, best_b - step};
        for (int c = 0; c < 4; ++c) {
            const double r = value(ca[c], cb[c]);
            if (r < best) {
                best = r;
                best_a = ca[c];
                best_b = cb[c];
                moved = true;
            }
        }
        if (!moved) step *= 0.5;
    }
    SubspacePair out;
    out.value = best;
    const Complex a0 = std::cos(best_a);
    const Complex a1 = std::polar(std::sin(best_a), best_b);
    out.v = span_cols.column(0);
    scale(out.v, a0);
    axpy(out.v, a1, span_cols.column(1));
    return out;
}

bool optimality_certificate(const CMatrix& c, Complex mu, double tol) {
    require(c.is_square(), "optimality_certificate: matrix not square");
    const CMatrix a = shifted(c, mu);
    const SigmaInfo info = top_singular(a);
    const double scale_c = std::max(1.0, c.max_abs());
    if (info.sigma1 <= 1e-9 * scale_c) return true;  // C - mu I is (numerically) zero
    if (c.rows() < 2) return false;
    if (info.sigma1 - info.sigma2 > 1e-8 * info.sigma1) {
        const Complex overlap = dot(info.v1, info.u1);
        return std::abs(overlap) <= tol;
    }
    const CMatrix span = CMatrix::from_columns({info.v1, info.v2});
    const SubspacePair pair = min_quadratic_over_span(a, span);
    return pair.value / info.sigma1 <= tol;
}

namespace {

/// Unit vector (cos t, e^{i psi} sin t) whose quadratic form under a
/// traceless 2x2 matrix vanishes, in closed form. Writing the form as
/// d cos(2t) + (sin(2t)/2) beta(psi) with beta(psi) = e^{i psi} n01 +
/// e^{-i psi} n10, psi is chosen so beta conj(d) is real and t solves the
/// resulting one-dimensional equation.
void zero_diagonal_witness(Complex d, Complex n01, Complex n10, Complex v[2]) {
    if (std::abs(d) < 1e-300) {
        v[0] = 1.0;
        v[1] = 0.0;
        return;
    }
    const Complex a = n01 * std::conj(d);
    const Complex b = n10 * std::conj(d);
    const double psi = std::atan2(-(a.imag() + b.imag()), a.real() - b.real() + 1e-300);
    const Complex eip = std::polar(1.0, psi);
    const double rho = (eip * a + std::conj(eip) * b).real();
    const double t = 0.5 * std::atan2(-2.0 * std::norm(d), rho);
    v[0] = std::cos(t);
    v[1] = eip * std::sin(t);
}

/// Best orthonormal pair inside a fixed 2-plane, in closed form: compress to
/// 2x2, split off the trace, rotate the traceless part to zero diagonal, and
/// read the pair off the antidiagonal.
OrthoPair best_pair_in_plane(const CMatrix& c, const CVector& q0, const CVector& q1) {
    const CVector cq0 = matvec(c, q0);
    const CVector cq1 = matvec(c, q1);
    const Complex m00 = dot(q0, cq0), m01 = dot(q0, cq1);
    const Complex m10 = dot(q1, cq0), m11 = dot(q1, cq1);
    const Complex center = 0.5 * (m00 + m11);

    Complex v[2];
    zero_diagonal_witness(m00 - center, m01, m10, v);
    const Complex vp0 = -std::conj(v[1]), vp1 = std::conj(v[0]);
    // Entries of the rotated traceless part (diagonal is now zero).
    const Complex n01 = std::conj(v[0]) * (m00 - center) * vp0 + std::conj(v[0]) * m01 * vp1 +
                        std::conj(v[1]) * m10 * vp0 + std::conj(v[1]) * (m11 - center) * vp1;
    const Complex n10 = std::conj(vp0) * (m00 - center) * v[0] + std::conj(vp0) * m01 * v[1] +
                        std::conj(vp1) * m10 * v[0] + std::conj(vp1) * (m11 - center) * v[1];

    const auto lift = [&](Complex a0, Complex a1) {
        CVector out(q0.size(), 0.0);
        axpy(out, a0, q0);
        axpy(out, a1, q1);
        return out;
    };
    OrthoPair pair;
    if (std::abs(n01) >= std::abs(n10)) {
        pair.x = lift(v[0], v[1]);
        pair.y = lift(vp0, vp1);
    } else {
        pair.x = lift(vp0, vp1);
        pair.y = lift(v[0], v[1]);
    }
    pair.value = std::abs(dot(pair.x, matvec(c, pair.y)));
    return pair;
}

}  // namespace

OrthoPair dual_orthopair(const CMatrix& c, int restarts, int iters, std::uint64_t seed) {
    require(c.is_square() && c.rows() >= 2, "dual_orthopair: need a square matrix of size >= 2");
    const std::size_t n = c.rows();
    require(restarts >= 1, "dual_orthopair: restarts must be >= 1");
    const CMatrix c_adj = c.adjoint();
    RngStream base(seed);

    // Gradient ascent of f = |x^* C y|^2 on the manifold of orthonormal
    // pairs, retracting by Gram-Schmidt and halving rejected steps, so the
    // value is monotone along each run. The optimal pair inside a fixed
    // plane has a closed form (see best_pair_in_plane); polishing at the
    // start and end makes the reported bound second-order insensitive to the
    // accuracy of the plane itself.
    const auto retract = [](CVector x, CVector y) {
        scale(x, 1.0 / norm(x));
        axpy(y, -dot(x, y), x);
        scale(y, 1.0 / norm(y));
        return std::make_pair(std::move(x), std::move(y));
    };

    // Round structure: exact coordinate maximization in each vector (the
    // projected image of the partner under C resp. C^*) alternated with the
    // closed-form in-plane jump. Every move maximizes over a superset of the
    // current point, so the value is monotone; the projected images feed new
    // directions into the plane each round, which is what plain coordinate
    // alternation lacks.
    const SigmaInfo top = top_singular(c);
    OrthoPair best;
    bool have_best = false;
    for (int r = 0; r < restarts; ++r) {
        CVector x(n, 0.0), y(n, 0.0);
        if (r == 0) {
            x[0] = 1.0;
            y[1] = 1.0;
        } else if (r == 1 && !top.u1.empty()) {
            x = top.u1;
            y = top.v1;
        } else if (r == 2 && !top.v2.empty()) {
            x = top.v1;
            y = top.v2;
        } else {
            RngStream rng = base.derive(static_cast<std::uint64_t>(r));
            for (auto& z : x) z = rng.complex_gaussian();
            for (auto& z : y) z = rng.complex_gaussian();
        }
        std::tie(x, y) = retract(std::move(x), std::move(y));
        OrthoPair cur = best_pair_in_plane(c, x, y);
        int stall = 0;
        for (int it = 0; it < iters && stall < 5; ++it) {
            const double before = cur.value;
            CVector cy = matvec(c, cur.y);
            axpy(cy, -dot(cur.y, cy), cur.y);
            if (norm(cy) > 1e-14) {
                scale(cy, 1.0 / norm(cy));
                const OrthoPair cand = best_pair_in_plane(c, cy, cur.y);
                if (cand.value > cur.value) cur = cand;
            }
            CVector cx = matvec(c_adj, cur.x);
            axpy(cx, -dot(cur.x, cx), cur.x);
            if (norm(cx) > 1e-14) {
                scale(cx, 1.0 / norm(cx));
                const OrthoPair cand = best_pair_in_plane(c, cur.x, cx);
                if (cand.value > cur.value) cur = cand;
            }
            if (cur.value - before <= 1e-11 * (1.0 + cur.value)) ++stall;
            else stall = 0;
        }
        if (!have_best || cur.value > best.value) {
            best = std::move(cur);
            have_best = true;
        }
    }
    return best;
}

MinShiftResult min_shift_norm(const CMatrix& c, double tol) {
    require(c.is_square(), "min_shift_norm: matrix not square");
    require(c.rows() >= 2, "min_shift_norm: need size >= 2");
    const std::size_t n = c.rows();

    const Complex mu0 = c.trace() / static_cast<double>(n);
    const double radius = 2.0 * spectral_norm(c) + 1e-12;
    const double scale_c = std::max(1.0, std::abs(mu0) + radius);
    const double tol_mu = tol * scale_c;

    // phi(mu) = sigma_max(C - mu I) through the shifted Gram
    //   (C - mu I)^*(C - mu I) = C^*C - mu C^* - conj(mu) C + |mu|^2 I,
    // assembled in O(n^2) per evaluation.
    CMatrix gram0;
    adjoint_multiply_into(gram0, c, c);
    const CMatrix c_adj = c.adjoint();
    CMatrix gram(n, n);
    const auto phi = [&](Complex mu) {
        const double mu2 = std::norm(mu);
        const Complex cmu = std::conj(mu);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                gram(i, j) = gram0(i, j) - mu * c_adj(i, j) - cmu * c(i, j);
        for (std::size_t i = 0; i < n; ++i) gram(i, i) += mu2;
        const std::vector<double> values =
            herm_eig_values(gram, 1e-7 * std::max(1.0, gram.max_abs()));
        return std::sqrt(std::max(0.0, values.front()));
    };

    // Nested golden section: the outer search sees x -> min_y phi(x + i y),
    // which stays convex (hence unimodal) as a partial minimization of a
    // convex function; plain coordinate alternation can stall at kinks of
    // sigma_max. A coarse pass localizes the minimizer, a second pass
    // restarted on a small box sharpens it to tol.
    const auto inner = [&](double x, double y_center, double y_radius, double width_tol,
                           double* y_arg) {
        return golden_min([&](double y) { return phi({x, y}); }, y_center - y_radius,
                          y_center + y_radius, width_tol, y_arg);
    };
    double x_star = mu0.real(), y_star = mu0.imag();
    const double tol_coarse = std::max(1e-5 * scale_c, tol_mu);
    golden_min(
        [&](double x) { return inner(x, mu0.imag(), radius, 1e-8 * scale_c, nullptr); },
        mu0.real() - radius, mu0.real() + radius, tol_coarse, &x_star);
    inner(x_star, mu0.imag(), radius, 1e-8 * scale_c, &y_star);

    const double fine_radius = 1e-2 * scale_c;
    const double x_coarse = x_star, y_coarse = y_star;
    golden_min(
        [&](double x) { return inner(x, y_coarse, fine_radius, tol_mu, nullptr); },
        x_coarse - fine_radius, x_coarse + fine_radius, tol_mu, &x_star);
    inner(x_star, y_coarse, fine_radius, tol_mu, &y_star);

    // Candidates are re-scored on the direct route, which does not suffer the
    // Gram cancellation floor near R = 0 (and is exact for scalar matrices at
    // the normalized trace).
    const auto phi_exact = [&](Complex mu) { return spectral_norm(shifted(c, mu)); };
    Complex mu_star(x_star, y_star);
    double best_r = phi_exact(mu_star);
    if (const double at_center = phi_exact(mu0); at_center < best_r) {
        mu_star = mu0;
        best_r = at_center;
    }

    // Newton polish on the smooth branch: drives the optimality residual
    // u^* v of the top singular pair to zero. Skipped when the top singular
    // value is (numerically) multiple, where the subspace certificate takes
    // over and the golden-section answer is already sharp.
    {
        const auto residual = [&](Complex mu, double* sigma_out) -> Complex {
            const SigmaInfo info = top_singular(shifted(c, mu));
            if (sigma_out) *sigma_out = info.sigma1;
            if (info.sigma1 <= 0.0 || info.sigma1 - info.sigma2 <= 1e-8 * info.sigma1)
                return {std::nan(""), 0.0};
            return dot(info.v1, info.u1);
        };
        double sigma = 0.0;
        Complex g = residual(mu_star, &sigma);
        if (!std::isnan(g.real())) {
            Complex mu = mu_star;
            const double h = 1e-7 * scale_c;
            for (int it = 0; it < 10 && std::abs(g) > 1e-12; ++it) {
                const Complex gx = residual(mu + Complex(h, 0.0), nullptr);
                const Complex gy = residual(mu + Complex(0.0, h), nullptr);
                if (std::isnan(gx.real()) || std::isnan(gy.real())) break;
                const double j11 = (gx.real() - g.real()) / h, j12 = (gy.real() - g.real()) / h;
                const double j21 = (gx.imag() - g.imag()) / h, j22 = (gy.imag() - g.imag()) / h;
                const double det = j11 * j22 - j12 * j21;
                if (std::abs(det) < 1e-300) break;
                const double dx = (-g.real() * j22 + g.imag() * j12) / det;
                const double dy = (-j11 * g.imag() + j21 * g.real()) / det;
                const Complex trial = mu + Complex(dx, dy);
                const Complex gt = residual(trial, nullptr);
                if (std::isnan(gt.real()) || std::abs(gt) >= std::abs(g)) break;
                mu = trial;
                g = gt;
            }
            const double r_candidate = phi_exact(mu);
            if (r_candidate <= best_r + 1e-11 * scale_c) {
                mu_star = mu;
                best_r = r_candidate;
            }
        }
    }

    MinShiftResult out;
    out.mu_star = mu_star;
    out.R = best_r;
    const OrthoPair dual = dual_orthopair(c);
    out.dual_value = dual.value;
    out.witness_x = dual.x;
    out.witness_y = dual.y;
    out.certificate_ok = optimality_certificate(c, mu_star);
    return out;
}

}  // namespace rangelab
