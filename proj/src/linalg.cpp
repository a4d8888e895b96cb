#include "rangelab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rangelab {

namespace {

double off_diagonal_mass(const CMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace

namespace {

// Cyclic complex Jacobi core; diagonalizes b in place and accumulates the
// rotations into *v when requested.
void jacobi_diagonalize(CMatrix& b, CMatrix* v) {
    const std::size_t n = b.rows();
    const double scale = std::max(b.frobenius_norm(), 1e-300);
    const double threshold = 1e-13 * scale;

    const int max_sweeps = 100;
    int sweep = 0;
    while (off_diagonal_mass(b) > threshold) {
        require(++sweep <= max_sweeps, "herm_eig: Jacobi iteration failed to converge");
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = b(p, q);
                const double mag = std::abs(apq);
                if (mag <= 1e-300) continue;
                const double app = b(p, p).real();
                const double aqq = b(q, q).real();
                // Phase factor turning the pivot real, then the classic
                // stable real rotation.
                const Complex phase = apq / mag;
                const double tau = (aqq - app) / (2.0 * mag);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const Complex s = -t * c * std::conj(phase);
                // Column update: (col_p, col_q) <- (c*col_p + s*col_q, -conj(s)*col_p + c*col_q)
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex bip = b(i, p), biq = b(i, q);
                    b(i, p) = c * bip + s * biq;
                    b(i, q) = -std::conj(s) * bip + c * biq;
                }
                if (v)
                    for (std::size_t i = 0; i < n; ++i) {
                        const Complex vip = (*v)(i, p), viq = (*v)(i, q);
                        (*v)(i, p) = c * vip + s * viq;
                        (*v)(i, q) = -std::conj(s) * vip + c * viq;
                    }
                // Row update with the conjugate rotation.
                for (std::size_t j = 0; j < n; ++j) {
                    const Complex bpj = b(p, j), bqj = b(q, j);
                    b(p, j) = c * bpj + std::conj(s) * bqj;
                    b(q, j) = -s * bpj + c * bqj;
                }
                b(p, q) = std::conj(b(q, p));
            }
        }
    }
}

CMatrix symmetrized_checked(const CMatrix& a, double tol) {
    require(a.is_square(), "herm_eig: matrix not square");
    require(!a.empty(), "herm_eig: empty matrix");
    const std::size_t n = a.rows();
    double dev = 0.0;
    CMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            dev = std::max(dev, std::abs(a(i, j) - std::conj(a(j, i))));
            b(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
        }
    require(dev <= std::max(tol, tol * a.max_abs()),
            "herm_eig: matrix not Hermitian (deviation " + std::to_string(dev) + ")");
    return b;
}

}  // namespace

HermEig herm_eig(const CMatrix& a, double tol) {
    const std::size_t n = a.rows();
    CMatrix b = symmetrized_checked(a, tol);
    CMatrix v = CMatrix::identity(n);
    jacobi_diagonalize(b, &v);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = b(i, i).real();
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return diag[i] > diag[j]; });

    HermEig out;
    out.values.resize(n);
    out.vectors = CMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = diag[order[k]];
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

std::vector<double> herm_eig_values(const CMatrix& a, double tol) {
    const std::size_t n = a.rows();
    CMatrix b = symmetrized_checked(a, tol);
    jacobi_diagonalize(b, nullptr);
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = b(i, i).real();
    std::sort(values.begin(), values.end(), std::greater<double>());
    return values;
}

double spectral_norm(const CMatrix& a) {
    require(!a.empty(), "spectral_norm: empty matrix");
    CMatrix gram;
    adjoint_multiply_into(gram, a, a);
    const std::vector<double> values = herm_eig_values(gram, 1e-8 * std::max(1.0, gram.max_abs()));
    return std::sqrt(std::max(0.0, values.front()));
}

std::vector<double> singular_values(const CMatrix& a) {
    CMatrix gram;
    adjoint_multiply_into(gram, a, a);
    const std::vector<double> values = herm_eig_values(gram, 1e-8 * std::max(1.0, gram.max_abs()));
    std::vector<double> s(values.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::sqrt(std::max(0.0, values[i]));
    return s;
}

CMatrix psd_sqrt(const CMatrix& p, double tol) {
    const HermEig eig = herm_eig(p, std::max(tol, 1e-10));
    const std::size_t n = p.rows();
    CVector roots(n);
    for (std::size_t k = 0; k < n; ++k) {
        double lam = eig.values[k];
        require(lam >= -tol, "psd_sqrt: matrix has eigenvalue below -tol");
        if (lam < 0.0) lam = 0.0;
        roots[k] = std::sqrt(lam);
    }
    const CMatrix d = CMatrix::diagonal(roots);
    CMatrix vd;
    multiply_into(vd, eig.vectors, d);
    CMatrix s(n, n);
    // s = V sqrt(D) V^*
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += vd(i, k) * std::conj(eig.vectors(j, k));
            s(i, j) = acc;
        }
    // Symmetrize away rounding dust.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const Complex m = 0.5 * (s(i, j) + std::conj(s(j, i)));
            s(i, j) = m;
            s(j, i) = std::conj(m);
        }
    return s;
}

CMatrix compress(const CMatrix& u, const CMatrix& x, double tol) {
    require(u.is_square(), "compress: U must be square");
    require(x.rows() == u.rows(), "compress: X has wrong number of rows");
    CMatrix gram;
    adjoint_multiply_into(gram, x, x);
    const double defect = (gram - CMatrix::identity(x.cols())).max_abs();
    require(defect <= tol, "compress: X is not an isometry (defect " + std::to_string(defect) + ")");
    CMatrix ux, out;
    multiply_into(ux, u, x);
    adjoint_multiply_into(out, x, ux);
    return out;
}

CMatrix solve(const CMatrix& a, const CMatrix& b) {
    require(a.is_square(), "solve: A must be square");
    require(a.rows() == b.rows(), "solve: shape mismatch");
    const std::size_t n = a.rows(), m = b.cols();
    CMatrix lu = a, x = b;
    std::vector<std::size_t> piv(n);
    std::iota(piv.begin(), piv.end(), 0);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t best = k;
        double best_mag = std::abs(lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(lu(i, k)) > best_mag) {
                best = i;
                best_mag = std::abs(lu(i, k));
            }
        require(best_mag > 0.0, "solve: singular matrix");
        if (best != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(best, j));
            for (std::size_t j = 0; j < m; ++j) std::swap(x(k, j), x(best, j));
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex f = lu(i, k) / lu(k, k);
            if (f == 0.0) continue;
            for (std::size_t j = k; j < n; ++j) lu(i, j) -= f * lu(k, j);
            for (std::size_t j = 0; j < m; ++j) x(i, j) -= f * x(k, j);
        }
    }
    for (std::size_t kk = n; kk-- > 0;) {
        for (std::size_t j = 0; j < m; ++j) {
            Complex acc = x(kk, j);
            for (std::size_t i = kk + 1; i < n; ++i) acc -= lu(kk, i) * x(i, j);
            x(kk, j) = acc / lu(kk, kk);
        }
    }
    return x;
}

CMatrix complete_to_unitary(const CMatrix& isometry) {
    const std::size_t n = isometry.rows(), k = isometry.cols();
    require(k <= n, "complete_to_unitary: more columns than rows");
    std::vector<CVector> cols;
    cols.reserve(n);
    for (std::size_t j = 0; j < k; ++j) cols.push_back(isometry.column(j));
    std::vector<bool> used(n, false);
    while (cols.size() < n) {
        // Deterministic pivot: the standard basis vector with the largest
        // residual after projecting out what we already have.
        std::size_t best = n;
        double best_norm = -1.0;
        CVector best_res;
        for (std::size_t c = 0; c < n; ++c) {
            if (used[c]) continue;
            CVector res(n, 0.0);
            res[c] = 1.0;
            for (const auto& col : cols) axpy(res, -dot(col, res), col);
            const double r = norm(res);
            if (r > best_norm + 1e-15) {
                best_norm = r;
                best = c;
                best_res = res;
            }
        }
        require(best < n && best_norm > 1e-8, "complete_to_unitary: rank-deficient columns");
        used[best] = true;
        for (const auto& col : cols) axpy(best_res, -dot(col, best_res), col);
        scale(best_res, 1.0 / norm(best_res));
        cols.push_back(best_res);
    }
    return CMatrix::from_columns(cols);
}

std::array<Complex, 2> eig2x2_values(const CMatrix& a) {
    require(a.rows() == 2 && a.cols() == 2, "eig2x2_values: matrix must be 2x2");
    const Complex tr = a(0, 0) + a(1, 1);
    const Complex det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    const Complex disc = std::sqrt(tr * tr - 4.0 * det);
    Complex l1 = 0.5 * (tr + disc);
    Complex l2 = 0.5 * (tr - disc);
    if (l1.real() > l2.real() ||
        (l1.real() == l2.real() && l1.imag() > l2.imag()))
        std::swap(l1, l2);
    return {l1, l2};
}

NormalEig2 normal_eig_2x2(const CMatrix& a, double tol) {
    require(a.rows() == 2 && a.cols() == 2, "normal_eig_2x2: matrix must be 2x2");
    const CMatrix comm = a * a.adjoint() - a.adjoint() * a;
    require(comm.max_abs() <= tol * std::max(1.0, a.max_abs() * a.max_abs()),
            "normal_eig_2x2: matrix not normal");
    const auto vals = eig2x2_values(a);
    NormalEig2 out;
    out.values = vals;
    if (std::abs(vals[0] - vals[1]) <= 1e-14 * std::max(1.0, a.max_abs())) {
        out.vectors = CMatrix::identity(2);
        return out;
    }
    // For normal a, the columns of (a - l2 I) span the l1 eigenspace.
    const CMatrix shifted = a - vals[1] * CMatrix::identity(2);
    CVector v1 = shifted.column(0);
    CVector alt = shifted.column(1);
    if (norm(alt) > norm(v1)) v1 = alt;
    scale(v1, 1.0 / norm(v1));
    const CVector v2 = {-std::conj(v1[1]), std::conj(v1[0])};
    out.vectors = CMatrix::from_columns({v1, v2});
    // Column 2 is the orthogonal complement; make sure it matches values[1].
    const CVector av2 = matvec(a, v2);
    const Complex lam2 = dot(v2, av2);
    if (std::abs(lam2 - vals[1]) > std::abs(lam2 - vals[0])) {
        std::swap(out.values[0], out.values[1]);
        out.vectors = CMatrix::from_columns({v2, v1});
    }
    return out;
}

CMatrix exp_i_hermitian_2x2(const CMatrix& k) {
    require(k.rows() == 2 && k.cols() == 2, "exp_i_hermitian_2x2: matrix must be 2x2");
    const double a = 0.5 * (k(0, 0).real() + k(1, 1).real());
    const double b3 = 0.5 * (k(0, 0).real() - k(1, 1).real());
    const double b1 = k(0, 1).real();
    const double b2 = -k(0, 1).imag();
    const double r = std::sqrt(b1 * b1 + b2 * b2 + b3 * b3);
    const Complex phase = std::polar(1.0, a);
    CMatrix u = CMatrix::identity(2);
    if (r < 1e-300) {
        u *= phase;
        return u;
    }
    const double c = std::cos(r), s = std::sin(r) / r;
    const Complex i(0.0, 1.0);
    u(0, 0) = phase * (c + i * s * b3);
    u(0, 1) = phase * (i * s * (b1 - i * b2));
    u(1, 0) = phase * (i * s * (b1 + i * b2));
    u(1, 1) = phase * (c - i * s * b3);
    return u;
}

CMatrix principal_log_unitary_2x2(const CMatrix& v) {
    require(unitarity_defect(v) <= 1e-8, "principal_log_unitary_2x2: input not unitary");
    const NormalEig2 eig = normal_eig_2x2(v);
    const double p0 = std::arg(eig.values[0]);
    const double p1 = std::arg(eig.values[1]);
    // H = p0 P0 + p1 P1 with spectral projectors from the eigenvector basis.
    CMatrix h(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            h(i, j) = p0 * eig.vectors(i, 0) * std::conj(eig.vectors(j, 0)) +
                      p1 * eig.vectors(i, 1) * std::conj(eig.vectors(j, 1));
    return h;
}

double unitarity_defect(const CMatrix& u) {
    require(u.is_square(), "unitarity_defect: matrix not square");
    CMatrix gram;
    adjoint_multiply_into(gram, u, u);
    return (gram - CMatrix::identity(u.rows())).max_abs();
}

}  // namespace rangelab
