#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace rangelab {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

[[noreturn]] void fail(const std::string& msg);

inline void require(bool cond, const std::string& msg) {
    if (!cond) fail(msg);
}

/// Dense complex matrix with row-major storage. The single carrier type for
/// weights, targets, unitaries and compressions throughout the library.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static CMatrix identity(std::size_t n);
    static CMatrix diagonal(const CVector& d);
    /// Standard basis matrix with a single 1 at (i, j), zero-based.
    static CMatrix basis(std::size_t n, std::size_t i, std::size_t j);
    static CMatrix from_column(const CVector& v);
    static CMatrix from_columns(const std::vector<CVector>& cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }
    bool is_square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    CMatrix& operator+=(const CMatrix& rhs);
    CMatrix& operator-=(const CMatrix& rhs);
    CMatrix& operator*=(Complex s);

    CMatrix adjoint() const;
    CMatrix transpose() const;
    CMatrix conjugate() const;

    Complex trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    bool all_finite() const;

    CMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const CMatrix& b);
    /// Principal or rectangular submatrix picked out by index lists (zero-based).
    CMatrix select(const std::vector<std::size_t>& row_idx,
                   const std::vector<std::size_t>& col_idx) const;

    CVector row(std::size_t i) const;
    CVector column(std::size_t j) const;
    void set_column(std::size_t j, const CVector& v);

    const CVector& data() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    CVector data_;
};

CMatrix operator+(const CMatrix& a, const CMatrix& b);
CMatrix operator-(const CMatrix& a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(Complex s, const CMatrix& a);
CMatrix operator*(double s, const CMatrix& a);
CMatrix operator-(const CMatrix& a);

/// out = a * b without reallocating when shapes already match.
void multiply_into(CMatrix& out, const CMatrix& a, const CMatrix& b);
/// out = a^* b
void adjoint_multiply_into(CMatrix& out, const CMatrix& a, const CMatrix& b);

CMatrix direct_sum(const CMatrix& a, const CMatrix& b);
/// Embeds a into an n x n zero matrix at the top-left corner.
CMatrix pad_to(const CMatrix& a, std::size_t n);

CVector matvec(const CMatrix& a, const CVector& x);
/// a^* x
CVector adjoint_matvec(const CMatrix& a, const CVector& x);

/// Frobenius inner product convention: dot(x, y) = sum conj(x_i) y_i = x^* y.
Complex dot(const CVector& x, const CVector& y);
double norm(const CVector& x);
void scale(CVector& x, Complex s);
/// y += s * x
void axpy(CVector& y, Complex s, const CVector& x);

}  // namespace rangelab
