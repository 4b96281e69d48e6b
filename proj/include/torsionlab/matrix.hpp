#pragma once
// Dense complex matrices at arbitrary precision, and LU determinants.

#include <cstddef>
#include <utility>
#include <vector>

#include "torsionlab/bigfloat.hpp"
#include "torsionlab/error.hpp"

namespace torsionlab {

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols, unsigned bits = working_precision())
        : rows_(rows), cols_(cols), data_(rows * cols, BigComplex(Bits{bits})) {}

    static ComplexMatrix identity(std::size_t n, unsigned bits = working_precision()) {
        ComplexMatrix m(n, n, bits);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = BigComplex(BigFloat(1L, bits));
        return m;
    }

    /// 2x2 from entries, row-major.
    static ComplexMatrix two_by_two(BigComplex a, BigComplex b, BigComplex c, BigComplex d) {
        ComplexMatrix m;
        m.rows_ = m.cols_ = 2;
        m.data_.reserve(4);
        m.data_.push_back(std::move(a));
        m.data_.push_back(std::move(b));
        m.data_.push_back(std::move(c));
        m.data_.push_back(std::move(d));
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    BigComplex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const BigComplex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    ComplexMatrix& operator*=(const BigComplex& s) {
        for (auto& x : data_) x = x * s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, const BigComplex& s) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.cols_ != b.rows_) throw Error(ErrorKind::domain, "matrix product shape mismatch");
        const unsigned bits = std::max(a.precision(), b.precision());
        ComplexMatrix c(a.rows_, b.cols_, bits);
        BigFloat s1(Bits{bits}), s2(Bits{bits});
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const BigComplex& aik = a(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) add_mul(c(i, j), aik, b(k, j), s1, s2);
            }
        return c;
    }

    BigComplex trace() const {
        if (!square()) throw Error(ErrorKind::domain, "trace of non-square matrix");
        BigComplex t(Bits{precision()});
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    /// max_ij |a_ij|
    BigFloat max_norm() const {
        BigFloat m(Bits{precision()});
        for (const auto& x : data_) {
            BigFloat a = abs(x);
            if (a > m) m = std::move(a);
        }
        return m;
    }

    /// Row-sum infinity norm.
    BigFloat inf_norm() const {
        BigFloat m(Bits{precision()});
        for (std::size_t i = 0; i < rows_; ++i) {
            BigFloat s(Bits{precision()});
            for (std::size_t j = 0; j < cols_; ++j) s += abs((*this)(i, j));
            if (s > m) m = std::move(s);
        }
        return m;
    }

    unsigned precision() const { return data_.empty() ? working_precision() : data_.front().precision(); }
    ComplexMatrix rounded(unsigned bits) const {
        ComplexMatrix m = *this;
        for (auto& x : m.data_) x = x.rounded(bits);
        return m;
    }

private:
    void check_same_shape(const ComplexMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorKind::domain, "matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BigComplex> data_;
};

/// Determinant by LU with partial pivoting. A pivot column whose entries all
/// fall below 2^(-bits+32) * max|a_ij| yields an exact zero.
inline BigComplex determinant(ComplexMatrix m) {
    if (!m.square()) throw Error(ErrorKind::domain, "determinant of non-square matrix");
    const std::size_t n = m.rows();
    const unsigned bits = m.precision();
    if (n == 0) return BigComplex(BigFloat(1L, bits));

    double max_log2 = -INFINITY;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) max_log2 = std::max(max_log2, m(i, j).log2_abs());
    if (std::isinf(max_log2)) return BigComplex(Bits{bits});
    const double zero_log2 = max_log2 - static_cast<double>(bits) + 32.0;

    BigComplex det(BigFloat(1L, bits));
    bool negate = false;
    BigFloat s1(Bits{bits}), s2(Bits{bits});
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = m(k, k).log2_abs();
        for (std::size_t i = k + 1; i < n; ++i) {
            double v = m(i, k).log2_abs();
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best <= zero_log2) return BigComplex(Bits{bits});
        if (piv != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(m(k, j), m(piv, j));
            negate = !negate;
        }
        const BigComplex inv = BigComplex(BigFloat(1L, bits)) / m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m(i, k).is_zero()) continue;
            const BigComplex factor = m(i, k) * inv;
            for (std::size_t j = k + 1; j < n; ++j) sub_mul(m(i, j), factor, m(k, j), s1, s2);
        }
        det = det * m(k, k);
    }
    return negate ? -det : det;
}

}  // namespace torsionlab
