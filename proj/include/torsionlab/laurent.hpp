#pragma once
// Univariate complex Laurent polynomials with a dense exponent window.

#include <cstddef>
#include <utility>
#include <vector>

#include "torsionlab/bigfloat.hpp"
#include "torsionlab/error.hpp"

namespace torsionlab {

class LaurentPolynomial {
public:
    LaurentPolynomial() = default;
    /// coefficients[k] multiplies t^(min_exponent + k).
    LaurentPolynomial(long min_exponent, std::vector<BigComplex> coefficients)
        : min_exp_(min_exponent), coeffs_(std::move(coefficients)) {}

    static LaurentPolynomial constant(const BigComplex& c) { return {0, {c}}; }
    static LaurentPolynomial monomial(long e, const BigComplex& c) { return {e, {c}}; }

    /// t^a - 1 (a may be negative or zero).
    static LaurentPolynomial binomial_minus_one(long a, unsigned bits = working_precision()) {
        const BigComplex one(BigFloat(1L, bits));
        if (a == 0) return {0, {BigComplex(Bits{bits})}};
        std::vector<BigComplex> c(static_cast<std::size_t>(a > 0 ? a : -a) + 1, BigComplex(Bits{bits}));
        if (a > 0) {
            c.front() = -one;
            c.back() = one;
            return {0, std::move(c)};
        }
        c.front() = one;
        c.back() = -one;
        return {a, std::move(c)};
    }

    long min_exponent() const { return min_exp_; }
    long max_exponent() const { return min_exp_ + static_cast<long>(coeffs_.size()) - 1; }
    /// max_exponent - min_exponent; -1 for the empty polynomial.
    long span() const { return static_cast<long>(coeffs_.size()) - 1; }
    std::size_t size() const { return coeffs_.size(); }
    const std::vector<BigComplex>& coefficients() const { return coeffs_; }
    bool empty() const { return coeffs_.empty(); }

    /// Coefficient of t^e (zero outside the window).
    BigComplex coefficient(long e) const {
        if (e < min_exp_ || e > max_exponent()) return BigComplex(Bits{precision()});
        return coeffs_[static_cast<std::size_t>(e - min_exp_)];
    }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }

    unsigned precision() const { return coeffs_.empty() ? working_precision() : coeffs_.front().precision(); }
    LaurentPolynomial rounded(unsigned bits) const {
        LaurentPolynomial p = *this;
        for (auto& c : p.coeffs_) c = c.rounded(bits);
        return p;
    }

    BigFloat max_coefficient_norm() const {
        BigFloat m(Bits{precision()});
        for (const auto& c : coeffs_) {
            BigFloat a = abs(c);
            if (a > m) m = std::move(a);
        }
        return m;
    }

    BigComplex operator()(const BigComplex& t) const {
        const unsigned bits = std::max(precision(), t.precision());
        BigComplex acc(Bits{bits});
        if (coeffs_.empty()) return acc;
        BigFloat s1(Bits{bits}), s2(Bits{bits});
        for (std::size_t k = coeffs_.size(); k-- > 0;) {
            BigComplex next = coeffs_[k];
            add_mul(next, acc, t, s1, s2);
            acc = std::move(next);
        }
        if (min_exp_ != 0) acc = acc * pow(t, min_exp_);
        return acc;
    }

    friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        if (a.empty() || b.empty()) return {};
        const unsigned bits = std::max(a.precision(), b.precision());
        std::vector<BigComplex> c(a.size() + b.size() - 1, BigComplex(Bits{bits}));
        BigFloat s1(Bits{bits}), s2(Bits{bits});
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.size(); ++j) add_mul(c[i + j], a.coeffs_[i], b.coeffs_[j], s1, s2);
        }
        return {a.min_exp_ + b.min_exp_, std::move(c)};
    }

    friend LaurentPolynomial operator-(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        if (a.empty()) return b * constant(BigComplex(BigFloat(-1L, b.precision())));
        if (b.empty()) return a;
        const long lo = std::min(a.min_exp_, b.min_exp_);
        const long hi = std::max(a.max_exponent(), b.max_exponent());
        std::vector<BigComplex> c;
        c.reserve(static_cast<std::size_t>(hi - lo + 1));
        for (long e = lo; e <= hi; ++e) c.push_back(a.coefficient(e) - b.coefficient(e));
        return {lo, std::move(c)};
    }

    /// Drops leading and trailing coefficients with |c| <= 2^(guard-bits) * max|c|.
    LaurentPolynomial pruned(int guard_bits = 32) const {
        if (coeffs_.empty()) return *this;
        double top = -INFINITY;
        for (const auto& c : coeffs_) top = std::max(top, c.log2_abs());
        if (std::isinf(top)) return {};
        const double cut = top - static_cast<double>(precision()) + guard_bits;
        std::size_t lo = 0, hi = coeffs_.size();
        while (lo < hi && coeffs_[lo].log2_abs() <= cut) ++lo;
        while (hi > lo && coeffs_[hi - 1].log2_abs() <= cut) --hi;
        return {min_exp_ + static_cast<long>(lo),
                std::vector<BigComplex>(coeffs_.begin() + static_cast<long>(lo), coeffs_.begin() + static_cast<long>(hi))};
    }

    /// Unit representative: lowest exponent 0 and leading coefficient with
    /// argument in (-pi/2, pi/2] (a purely imaginary leading term keeps Im >= 0).
    LaurentPolynomial normalized() const { return pruned().unit_normalized(); }

    /// As normalized(), keeping every nonzero end coefficient.
    LaurentPolynomial unit_normalized() const {
        LaurentPolynomial p(0, nonzero_span());
        if (p.empty()) return p;
        const BigComplex& lead = p.coeffs_.back();
        const int re = lead.re().sign();
        if (re < 0 || (re == 0 && lead.im().sign() < 0)) {
            for (auto& c : p.coeffs_) c = -c;
        }
        return p;
    }

    /// Ordinary-polynomial part: the coefficients with the monomial factor
    /// t^min_exponent stripped (and exactly zero end terms dropped).
    std::vector<BigComplex> ordinary_part() const { return nonzero_span(); }

private:
    std::vector<BigComplex> nonzero_span() const {
        std::size_t lo = 0, hi = coeffs_.size();
        while (lo < hi && coeffs_[lo].is_zero()) ++lo;
        while (hi > lo && coeffs_[hi - 1].is_zero()) --hi;
        return {coeffs_.begin() + static_cast<long>(lo), coeffs_.begin() + static_cast<long>(hi)};
    }

    long min_exp_ = 0;
    std::vector<BigComplex> coeffs_;
};

struct DivisionResult {
    LaurentPolynomial quotient;
    /// max|remainder coefficient| / max|numerator coefficient|
    BigFloat remainder_norm;
};

/// Long division from the top: num = den * quotient + remainder with the
/// remainder confined to the lowest span(den) exponents of num's window.
inline DivisionResult divide(const LaurentPolynomial& num, const LaurentPolynomial& den) {
    LaurentPolynomial d = den.pruned();
    if (d.empty()) throw Error(ErrorKind::domain, "division by the zero polynomial");
    const unsigned bits = std::max(num.precision(), den.precision());
    if (num.empty()) return {LaurentPolynomial{}, BigFloat(Bits{bits})};
    const long ds = d.span();
    const long ns = num.span();
    if (ns < ds) return {LaurentPolynomial{}, BigFloat(1L, bits)};

    std::vector<BigComplex> work = num.coefficients();
    const auto& dc = d.coefficients();
    const BigComplex inv_lead = BigComplex(BigFloat(1L, bits)) / dc.back();
    std::vector<BigComplex> q(static_cast<std::size_t>(ns - ds + 1), BigComplex(Bits{bits}));
    BigFloat s1(Bits{bits}), s2(Bits{bits});
    for (long k = ns - ds; k >= 0; --k) {
        BigComplex qk = work[static_cast<std::size_t>(k + ds)] * inv_lead;
        for (long j = 0; j <= ds; ++j)
            sub_mul(work[static_cast<std::size_t>(k + j)], qk, dc[static_cast<std::size_t>(j)], s1, s2);
        q[static_cast<std::size_t>(k)] = std::move(qk);
    }
    BigFloat rem(Bits{bits});
    for (long j = 0; j < ds; ++j) {
        BigFloat a = abs(work[static_cast<std::size_t>(j)]);
        if (a > rem) rem = std::move(a);
    }
    BigFloat scale = num.max_coefficient_norm();
    if (!scale.is_zero()) rem /= scale;
    return {LaurentPolynomial(num.min_exponent() - d.min_exponent(), std::move(q)), std::move(rem)};
}

}  // namespace torsionlab
