#include "rangelab/numerical_range.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace rangelab {

double Ellipse::major_axis() const {
    const double d = std::abs(focus1 - focus2);
    return std::sqrt(minor_axis * minor_axis + d * d);
}

double Ellipse::area() const {
    return std::numbers::pi * 0.25 * major_axis() * minor_axis;
}

double Ellipse::boundary_defect(Complex z) const {
    return std::abs(z - focus1) + std::abs(z - focus2) - major_axis();
}

bool ConvexRegion::contains(Complex z, double tol) const {
    return violation(z) <= tol;
}

double ConvexRegion::violation(Complex z) const {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < directions.size(); ++k) {
        const double proj = std::cos(directions[k]) * z.real() + std::sin(directions[k]) * z.imag();
        worst = std::max(worst, proj - support[k]);
    }
    return worst;
}

SupportPoint nr_support(const CMatrix& a, double theta) {
    require(a.is_square(), "nr_support: matrix not square");
    const std::size_t n = a.rows();
    const Complex w = std::polar(1.0, -theta);
    CMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            h(i, j) = 0.5 * (w * a(i, j) + std::conj(w * a(j, i)));
    const HermEig eig = herm_eig(h, 1e-9 * std::max(1.0, h.max_abs()));
    SupportPoint out;
    out.h = eig.values.front();
    out.witness = eig.vectors.column(0);
    out.boundary_point = dot(out.witness, matvec(a, out.witness));
    return out;
}

ConvexRegion nr_region(const CMatrix& a, std::size_t grid) {
    require(grid >= 8, "nr_region: grid size must be at least 8");
    ConvexRegion region;
    region.directions.resize(grid);
    region.support.resize(grid);
    region.inner_points.resize(grid);
    for (std::size_t k = 0; k < grid; ++k) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(grid);
        const SupportPoint sp = nr_support(a, theta);
        region.directions[k] = theta;
        region.support[k] = sp.h;
        region.inner_points[k] = sp.boundary_point;
    }
    return region;
}

bool nr_contains(const CMatrix& a, Complex z, std::size_t grid, double tol) {
    require(grid >= 64, "nr_contains: grid size must be at least 64");
    for (std::size_t k = 0; k < grid; ++k) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(grid);
        const double proj = std::cos(theta) * z.real() + std::sin(theta) * z.imag();
        if (proj > nr_support(a, theta).h + tol) return false;
    }
    return true;
}

Ellipse ellipse_2x2(const CMatrix& a) {
    require(a.rows() == 2 && a.cols() == 2, "ellipse_2x2: matrix must be 2x2");
    const auto lam = eig2x2_values(a);
    double tr_gram = 0.0;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) tr_gram += std::norm(a(i, j));
    const double minor_sq = tr_gram - std::norm(lam[0]) - std::norm(lam[1]);
    Ellipse e;
    e.focus1 = lam[0];
    e.focus2 = lam[1];
    e.minor_axis = std::sqrt(std::max(0.0, minor_sq));
    return e;
}

bool boundary_certificate(const CMatrix& a, double phi, double tol) {
    require(a.is_square(), "boundary_certificate: matrix not square");
    const std::size_t n = a.rows();
    const Complex w = std::polar(1.0, phi);
    CMatrix aphi(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            aphi(i, j) = w * a(i, j) + std::conj(w * a(j, i));
    const HermEig eig = herm_eig(aphi, 1e-9 * std::max(1.0, aphi.max_abs()));
    const double candidate = (w * a(0, 0) + std::conj(w * a(0, 0))).real();
    if (std::abs(candidate - eig.values.front()) > tol) return false;
    for (std::size_t j = 1; j < n; ++j) {
        const double entry = std::abs(w * a(0, j) + std::conj(w * a(j, 0)));
        if (entry > tol)
            throw InternalConsistencyError(
                "boundary_certificate: (1,1) attains the top eigenvalue but the (1," +
                std::to_string(j + 1) + ") entry of A_phi has modulus " + std::to_string(entry));
    }
    return true;
}

PointWitness2 nr_point_witness_2x2(const CMatrix& a, Complex xi, int grid) {
    require(a.rows() == 2 && a.cols() == 2, "nr_point_witness_2x2: matrix must be 2x2");
    require(grid >= 8, "nr_point_witness_2x2: grid too small");
    const auto make = [](double alpha, double beta) {
        return CVector{std::cos(alpha), std::polar(std::sin(alpha), beta)};
    };
    const auto value = [&](double alpha, double beta) {
        const CVector x = make(alpha, beta);
        return dot(x, matvec(a, x));
    };

    PointWitness2 out;
    const double scale_a = std::max(1.0, a.max_abs());
    if (std::abs(a(0, 0)) <= 1e-12 * scale_a && std::abs(a(1, 0)) <= 1e-12 * scale_a &&
        std::abs(a(1, 1)) <= 1e-12 * scale_a && std::abs(a(0, 1)) > 1e-12 * scale_a) {
        // x^* A x = a01 cos(al) sin(al) e^{i be}: the range is the closed disk
        // of radius |a01|/2 and the preimage is explicit.
        const Complex ratio = 2.0 * xi / a(0, 1);
        const double m = std::min(1.0, std::abs(ratio));
        const double alpha = 0.5 * std::asin(m);
        const double beta = std::arg(ratio);
        out.x = make(alpha, beta);
        out.residual = std::abs(value(alpha, beta) - xi);
        return out;
    }

    const double half_pi = 0.5 * std::numbers::pi;
    double best_a = 0.0, best_b = 0.0;
    double best = std::abs(value(0.0, 0.0) - xi);
    for (int i = 0; i <= grid; ++i)
        for (int j = 0; j < 2 * grid; ++j) {
            const double al = half_pi * i / grid;
            const double be = std::numbers::pi * j / grid;
            const double r = std::abs(value(al, be) - xi);
            if (r < best) {
                best = r;
                best_a = al;
                best_b = be;
            }
        }
    // Damped Gauss-Newton on the complex residual, interleaved with an
    // 8-direction compass fallback for folds where the Jacobian degenerates.
    for (int round = 0; round < 3 && best > 1e-13; ++round) {
        const double h = 1e-6;
        for (int it = 0; it < 25 && best > 1e-13; ++it) {
            const Complex r0 = value(best_a, best_b) - xi;
            const Complex ra = (value(best_a + h, best_b) - xi - r0) * (1.0 / h);
            const Complex rb = (value(best_a, best_b + h) - xi - r0) * (1.0 / h);
            const double j11 = ra.real(), j12 = rb.real();
            const double j21 = ra.imag(), j22 = rb.imag();
            const double det = j11 * j22 - j12 * j21;
            if (std::abs(det) < 1e-14) break;
            double da = (-r0.real() * j22 + r0.imag() * j12) / det;
            double db = (-j11 * r0.imag() + j21 * r0.real()) / det;
            bool accepted = false;
            for (int damp = 0; damp < 12; ++damp) {
                const double r = std::abs(value(best_a + da, best_b + db) - xi);
                if (r < best) {
                    best_a += da;
                    best_b += db;
                    best = r;
                    accepted = true;
                    break;
                }
                da *= 0.5;
                db *= 0.5;
            }
            if (!accepted) break;
        }
        double step = 0.05;
        for (int it = 0; it < 300 && step > 1e-14 && best > 1e-13; ++it) {
            bool moved = false;
            for (int c = 0; c < 8; ++c) {
                const double ang = 0.25 * std::numbers::pi * c;
                const double ca = best_a + step * std::cos(ang);
                const double cb = best_b + step * std::sin(ang);
                const double r = std::abs(value(ca, cb) - xi);
                if (r < best) {
                    best = r;
                    best_a = ca;
                    best_b = cb;
                    moved = true;
                }
            }
            if (!moved) step *= 0.5;
        }
    }
    out.x = make(best_a, best_b);
    out.residual = best;
    return out;
}

}  // namespace rangelab
