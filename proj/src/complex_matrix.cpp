#include "rangelab/complex_matrix.hpp"

#include <cmath>

namespace rangelab {

void fail(const std::string& msg) { throw std::invalid_argument(msg); }

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        require(r.size() == cols_, "CMatrix: ragged initializer rows");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(const CVector& d) {
    CMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

CMatrix CMatrix::basis(std::size_t n, std::size_t i, std::size_t j) {
    require(i < n && j < n, "CMatrix::basis: index out of range");
    CMatrix m(n, n);
    m(i, j) = 1.0;
    return m;
}

CMatrix CMatrix::from_column(const CVector& v) {
    CMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

CMatrix CMatrix::from_columns(const std::vector<CVector>& cols) {
    require(!cols.empty(), "CMatrix::from_columns: no columns");
    CMatrix m(cols.front().size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        require(cols[j].size() == m.rows(), "CMatrix::from_columns: ragged columns");
        for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = cols[j][i];
    }
    return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
    require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "CMatrix: shape mismatch in +=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
    require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "CMatrix: shape mismatch in -=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
}

CMatrix CMatrix::adjoint() const {
    CMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

CMatrix CMatrix::transpose() const {
    CMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

CMatrix CMatrix::conjugate() const {
    CMatrix m(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) m.data_[k] = std::conj(data_[k]);
    return m;
}

Complex CMatrix::trace() const {
    require(is_square(), "CMatrix::trace: matrix not square");
    Complex t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double CMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
}

bool CMatrix::all_finite() const {
    for (const auto& z : data_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

CMatrix CMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    require(r0 + nr <= rows_ && c0 + nc <= cols_, "CMatrix::block: out of range");
    CMatrix m(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
}

void CMatrix::set_block(std::size_t r0, std::size_t c0, const CMatrix& b) {
    require(r0 + b.rows() <= rows_ && c0 + b.cols() <= cols_, "CMatrix::set_block: out of range");
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

CMatrix CMatrix::select(const std::vector<std::size_t>& row_idx,
                        const std::vector<std::size_t>& col_idx) const {
    CMatrix m(row_idx.size(), col_idx.size());
    for (std::size_t i = 0; i < row_idx.size(); ++i) {
        require(row_idx[i] < rows_, "CMatrix::select: row index out of range");
        for (std::size_t j = 0; j < col_idx.size(); ++j) {
            require(col_idx[j] < cols_, "CMatrix::select: column index out of range");
            m(i, j) = (*this)(row_idx[i], col_idx[j]);
        }
    }
    return m;
}

CVector CMatrix::row(std::size_t i) const {
    require(i < rows_, "CMatrix::row: out of range");
    CVector v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
    return v;
}

CVector CMatrix::column(std::size_t j) const {
    require(j < cols_, "CMatrix::column: out of range");
    CVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void CMatrix::set_column(std::size_t j, const CVector& v) {
    require(j < cols_ && v.size() == rows_, "CMatrix::set_column: shape mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
    CMatrix m = a;
    m += b;
    return m;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
    CMatrix m = a;
    m -= b;
    return m;
}

void multiply_into(CMatrix& out, const CMatrix& a, const CMatrix& b) {
    require(a.cols() == b.rows(), "CMatrix multiply: inner dimensions disagree");
    if (out.rows() != a.rows() || out.cols() != b.cols()) out = CMatrix(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = 0.0;
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
}

void adjoint_multiply_into(CMatrix& out, const CMatrix& a, const CMatrix& b) {
    require(a.rows() == b.rows(), "CMatrix adjoint multiply: inner dimensions disagree");
    if (out.rows() != a.cols() || out.cols() != b.cols()) out = CMatrix(a.cols(), b.cols());
    for (std::size_t i = 0; i < a.cols(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = 0.0;
    for (std::size_t k = 0; k < a.rows(); ++k)
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const Complex c = std::conj(a(k, i));
            if (c == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += c * b(k, j);
        }
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    CMatrix out;
    multiply_into(out, a, b);
    return out;
}

CMatrix operator*(Complex s, const CMatrix& a) {
    CMatrix m = a;
    m *= s;
    return m;
}

CMatrix operator*(double s, const CMatrix& a) { return Complex(s, 0.0) * a; }

CMatrix operator-(const CMatrix& a) { return Complex(-1.0, 0.0) * a; }

CMatrix direct_sum(const CMatrix& a, const CMatrix& b) {
    CMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), a.cols(), b);
    return m;
}

CMatrix pad_to(const CMatrix& a, std::size_t n) {
    require(a.rows() <= n && a.cols() <= n, "pad_to: target size smaller than matrix");
    CMatrix m(n, n);
    m.set_block(0, 0, a);
    return m;
}

CVector matvec(const CMatrix& a, const CVector& x) {
    require(a.cols() == x.size(), "matvec: shape mismatch");
    CVector y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
    return y;
}

CVector adjoint_matvec(const CMatrix& a, const CVector& x) {
    require(a.rows() == x.size(), "adjoint_matvec: shape mismatch");
    CVector y(a.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) y[j] += std::conj(a(i, j)) * x[i];
    return y;
}

Complex dot(const CVector& x, const CVector& y) {
    require(x.size() == y.size(), "dot: length mismatch");
    Complex s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
    return s;
}

double norm(const CVector& x) {
    double s = 0.0;
    for (const auto& z : x) s += std::norm(z);
    return std::sqrt(s);
}

void scale(CVector& x, Complex s) {
    for (auto& z : x) z *= s;
}

void axpy(CVector& y, Complex s, const CVector& x) {
    require(y.size() == x.size(), "axpy: length mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += s * x[i];
}

}  // namespace rangelab
