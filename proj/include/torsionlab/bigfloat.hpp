#pragma once
// Thin value types over MPFR: BigFloat (real) and BigComplex.
//
// Every value owns its own precision. Default-constructed values and values
// built from machine numbers take the calling thread's working precision,
// which is set with a WorkingPrecision guard. Binary operations produce a
// result at the larger of the two operand precisions.

#include <mpfr.h>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>
#include <utility>

#include "torsionlab/error.hpp"

namespace torsionlab {

inline constexpr unsigned kDefaultPrecisionBits = 256;

namespace detail {
inline unsigned& working_precision_ref() {
    thread_local unsigned bits = kDefaultPrecisionBits;
    return bits;
}
}  // namespace detail

inline unsigned working_precision() { return detail::working_precision_ref(); }

/// Scoped override of the thread's working precision.
class WorkingPrecision {
public:
    explicit WorkingPrecision(unsigned bits) : saved_(detail::working_precision_ref()) {
        if (bits < 16) throw Error(ErrorKind::domain, "precision must be at least 16 bits");
        detail::working_precision_ref() = bits;
    }
    ~WorkingPrecision() { detail::working_precision_ref() = saved_; }
    WorkingPrecision(const WorkingPrecision&) = delete;
    WorkingPrecision& operator=(const WorkingPrecision&) = delete;

private:
    unsigned saved_;
};

/// Precision tag, so a bit count is never mistaken for a value.
struct Bits {
    unsigned value;
};

class BigFloat {
public:
    BigFloat() : BigFloat(0L, working_precision()) {}
    explicit BigFloat(Bits bits) {
        mpfr_init2(v_, static_cast<mpfr_prec_t>(bits.value));
        mpfr_set_zero(v_, 1);
    }
    BigFloat(double x, unsigned bits) {
        mpfr_init2(v_, static_cast<mpfr_prec_t>(bits));
        mpfr_set_d(v_, x, MPFR_RNDN);
    }
    BigFloat(long x, unsigned bits) {
        mpfr_init2(v_, static_cast<mpfr_prec_t>(bits));
        mpfr_set_si(v_, x, MPFR_RNDN);
    }
    // Implicit from machine numbers at working precision.
    BigFloat(double x) : BigFloat(x, working_precision()) {}  // NOLINT
    BigFloat(int x) : BigFloat(static_cast<long>(x), working_precision()) {}  // NOLINT
    BigFloat(long x) : BigFloat(x, working_precision()) {}  // NOLINT

    /// Parses a decimal string, rounding to nearest at `bits`.
    static BigFloat parse(std::string_view text, unsigned bits = working_precision()) {
        BigFloat r(Bits{bits});
        std::string s(text);
        if (s.empty() || mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0) {
            // mpfr_set_str returns 0 only when the whole string is consumed
            throw Error(ErrorKind::parse, "malformed decimal '" + s + "'");
        }
        return r;
    }

    static BigFloat pi(unsigned bits = working_precision()) {
        BigFloat r(Bits{bits});
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    static BigFloat infinity(unsigned bits = working_precision()) {
        BigFloat r(Bits{bits});
        mpfr_set_inf(r.v_, 1);
        return r;
    }

    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        std::memcpy(v_, o.v_, sizeof(mpfr_t));
        o.v_->_mpfr_d = nullptr;
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this == &o) return *this;
        if (!alive()) {
            mpfr_init2(v_, mpfr_get_prec(o.v_));
        } else if (mpfr_get_prec(v_) != mpfr_get_prec(o.v_)) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        }
        mpfr_set(v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        if (this == &o) return *this;
        if (alive()) mpfr_clear(v_);
        std::memcpy(v_, o.v_, sizeof(mpfr_t));
        o.v_->_mpfr_d = nullptr;
        return *this;
    }
    ~BigFloat() {
        if (alive()) mpfr_clear(v_);
    }

    unsigned precision() const { return static_cast<unsigned>(mpfr_get_prec(v_)); }
    /// Copy rounded (or zero-extended) to `bits`.
    BigFloat rounded(unsigned bits) const {
        BigFloat r(Bits{bits});
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    /// Approximate log2|x|; -inf for zero. Safe far outside double range.
    double log2_abs() const {
        if (mpfr_zero_p(v_)) return -INFINITY;
        if (!mpfr_number_p(v_)) return INFINITY;
        long e = 0;
        double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
        return std::log2(std::fabs(m)) + static_cast<double>(e);
    }

    /// Scientific notation with `digits` significant digits, truncated toward
    /// zero so the text depends only on the value.
    std::string to_string(int digits) const {
        if (mpfr_nan_p(v_)) return "nan";
        if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
        if (digits < 1) digits = 1;
        if (mpfr_zero_p(v_)) {
            return "0." + std::string(static_cast<std::size_t>(digits - 1), '0') + "e+0";
        }
        mpfr_exp_t exp10 = 0;
        char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<std::size_t>(digits), v_, MPFR_RNDZ);
        std::string mant(raw);
        mpfr_free_str(raw);
        std::string out;
        if (!mant.empty() && mant[0] == '-') {
            out.push_back('-');
            mant.erase(0, 1);
        }
        out.push_back(mant[0]);
        out.push_back('.');
        out.append(mant.substr(1));
        const long e = static_cast<long>(exp10) - 1;
        out += (e < 0 ? "e-" : "e+") + std::to_string(e < 0 ? -e : e);
        return out;
    }

    BigFloat& operator+=(const BigFloat& o) { return apply(o, mpfr_add); }
    BigFloat& operator-=(const BigFloat& o) { return apply(o, mpfr_sub); }
    BigFloat& operator*=(const BigFloat& o) { return apply(o, mpfr_mul); }
    BigFloat& operator/=(const BigFloat& o) { return apply(o, mpfr_div); }

    BigFloat operator-() const {
        BigFloat r(*this);
        mpfr_neg(r.v_, r.v_, MPFR_RNDN);
        return r;
    }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_add); }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_sub); }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_mul); }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_div); }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

    friend BigFloat abs(const BigFloat& a) { return unary(a, mpfr_abs); }
    friend BigFloat sqrt(const BigFloat& a) { return unary(a, mpfr_sqrt); }
    friend BigFloat exp(const BigFloat& a) { return unary(a, mpfr_exp); }
    friend BigFloat log(const BigFloat& a) { return unary(a, mpfr_log); }
    friend BigFloat log1p(const BigFloat& a) { return unary(a, mpfr_log1p); }
    friend BigFloat sin(const BigFloat& a) { return unary(a, mpfr_sin); }
    friend BigFloat cos(const BigFloat& a) { return unary(a, mpfr_cos); }
    friend BigFloat atan2(const BigFloat& y, const BigFloat& x) { return binary(y, x, mpfr_atan2); }
    friend BigFloat hypot(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_hypot); }
    friend BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }
    friend BigFloat min(const BigFloat& a, const BigFloat& b) { return b < a ? b : a; }

    /// x * 2^e, exact.
    friend BigFloat ldexp(const BigFloat& a, long e) {
        BigFloat r(a);
        mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
        return r;
    }

private:
    bool alive() const { return v_->_mpfr_d != nullptr; }

    using Binary = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    using Unary = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

    BigFloat& apply(const BigFloat& o, Binary f) {
        if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
        f(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    static BigFloat binary(const BigFloat& a, const BigFloat& b, Binary f) {
        BigFloat r(Bits{std::max(a.precision(), b.precision())});
        f(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    static BigFloat unary(const BigFloat& a, Unary f) {
        BigFloat r(Bits{a.precision()});
        f(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    mpfr_t v_;
};

class BigComplex {
public:
    BigComplex() = default;
    explicit BigComplex(Bits bits) : re_(bits), im_(bits) {}
    BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {}
    BigComplex(BigFloat re) : re_(std::move(re)), im_(Bits{re_.precision()}) {}  // NOLINT
    BigComplex(double re, double im = 0.0) : re_(re), im_(im) {}  // NOLINT
    BigComplex(int re) : re_(re), im_(0) {}  // NOLINT
    BigComplex(long re) : re_(re), im_(0L) {}  // NOLINT

    static BigComplex polar(const BigFloat& r, const BigFloat& theta) {
        return {r * cos(theta), r * sin(theta)};
    }
    /// e^{i theta}
    static BigComplex unit(const BigFloat& theta) { return {cos(theta), sin(theta)}; }

    const BigFloat& re() const { return re_; }
    const BigFloat& im() const { return im_; }
    BigFloat& re() { return re_; }
    BigFloat& im() { return im_; }
    unsigned precision() const { return std::max(re_.precision(), im_.precision()); }
    BigComplex rounded(unsigned bits) const { return {re_.rounded(bits), im_.rounded(bits)}; }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_finite() const { return re_.is_finite() && im_.is_finite(); }

    /// Approximate log2|z| without forming |z|.
    double log2_abs() const {
        double a = re_.log2_abs(), b = im_.log2_abs();
        if (std::isinf(a) && a < 0) return b;
        if (std::isinf(b) && b < 0) return a;
        double hi = std::max(a, b), lo = std::min(a, b);
        return hi + 0.5 * std::log2(1.0 + std::exp2(2.0 * (lo - hi)));
    }

    BigComplex operator-() const { return {-re_, -im_}; }
    BigComplex& operator+=(const BigComplex& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    BigComplex& operator-=(const BigComplex& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    BigComplex& operator*=(const BigComplex& o) { return *this = *this * o; }
    BigComplex& operator/=(const BigComplex& o) { return *this = *this / o; }

    friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
    friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
        return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
    }
    friend BigComplex operator*(const BigComplex& a, const BigFloat& s) { return {a.re_ * s, a.im_ * s}; }
    friend BigComplex operator*(const BigFloat& s, const BigComplex& a) { return a * s; }
    friend BigComplex operator/(const BigComplex& a, const BigFloat& s) { return {a.re_ / s, a.im_ / s}; }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
        // Smith's algorithm keeps intermediate magnitudes in range.
        if (abs(b.re_) >= abs(b.im_)) {
            BigFloat r = b.im_ / b.re_;
            BigFloat d = b.re_ + b.im_ * r;
            return {(a.re_ + a.im_ * r) / d, (a.im_ - a.re_ * r) / d};
        }
        BigFloat r = b.re_ / b.im_;
        BigFloat d = b.re_ * r + b.im_;
        return {(a.re_ * r + a.im_) / d, (a.im_ * r - a.re_) / d};
    }

    friend BigComplex conj(const BigComplex& a) { return {a.re_, -a.im_}; }
    friend BigFloat norm(const BigComplex& a) { return a.re_ * a.re_ + a.im_ * a.im_; }
    friend BigFloat abs(const BigComplex& a) { return hypot(a.re_, a.im_); }
    friend BigFloat arg(const BigComplex& a) { return atan2(a.im_, a.re_); }
    friend BigComplex exp(const BigComplex& a) { return polar(exp(a.re_), a.im_); }
    /// Principal branch.
    friend BigComplex log(const BigComplex& a) { return {log(abs(a)), arg(a)}; }
    friend BigComplex sqrt(const BigComplex& a) {
        BigFloat r = sqrt(abs(a));
        BigFloat half = arg(a) / BigFloat(2L, a.precision());
        return polar(r, half);
    }
    friend BigComplex pow(const BigComplex& a, long k) {
        BigComplex base = k < 0 ? BigComplex(BigFloat(1L, a.precision())) / a : a;
        unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
        BigComplex r(BigFloat(1L, a.precision()));
        while (e) {
            if (e & 1UL) r = r * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return r;
    }

    /// acc -= a*b using caller-provided scratch; no allocation in the hot path.
    friend void sub_mul(BigComplex& acc, const BigComplex& a, const BigComplex& b, BigFloat& s1, BigFloat& s2) {
        mpfr_mul(s1.raw(), a.im_.raw(), b.im_.raw(), MPFR_RNDN);
        mpfr_fms(s2.raw(), a.re_.raw(), b.re_.raw(), s1.raw(), MPFR_RNDN);
        mpfr_sub(acc.re_.raw(), acc.re_.raw(), s2.raw(), MPFR_RNDN);
        mpfr_mul(s1.raw(), a.im_.raw(), b.re_.raw(), MPFR_RNDN);
        mpfr_fma(s2.raw(), a.re_.raw(), b.im_.raw(), s1.raw(), MPFR_RNDN);
        mpfr_sub(acc.im_.raw(), acc.im_.raw(), s2.raw(), MPFR_RNDN);
    }
    /// acc += a*b, same contract as sub_mul.
    friend void add_mul(BigComplex& acc, const BigComplex& a, const BigComplex& b, BigFloat& s1, BigFloat& s2) {
        mpfr_mul(s1.raw(), a.im_.raw(), b.im_.raw(), MPFR_RNDN);
        mpfr_fms(s2.raw(), a.re_.raw(), b.re_.raw(), s1.raw(), MPFR_RNDN);
        mpfr_add(acc.re_.raw(), acc.re_.raw(), s2.raw(), MPFR_RNDN);
        mpfr_mul(s1.raw(), a.im_.raw(), b.re_.raw(), MPFR_RNDN);
        mpfr_fma(s2.raw(), a.re_.raw(), b.im_.raw(), s1.raw(), MPFR_RNDN);
        mpfr_add(acc.im_.raw(), acc.im_.raw(), s2.raw(), MPFR_RNDN);
    }

private:
    BigFloat re_;
    BigFloat im_;
};

/// Accepts `re`, `re+imi`, `re-imi`, `imi`, `i`, `-i` (no interior spaces).
inline BigComplex parse_complex(std::string_view text, unsigned bits = working_precision()) {
    std::string s(text);
    if (s.empty()) throw Error(ErrorKind::parse, "empty complex literal");
    if (s.back() != 'i') return {BigFloat::parse(s, bits), BigFloat(Bits{bits})};
    std::string body = s.substr(0, s.size() - 1);
    // split at the last sign that is not part of an exponent
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imag_of = [&](const std::string& t) {
        if (t.empty() || t == "+") return BigFloat(1L, bits);
        if (t == "-") return BigFloat(-1L, bits);
        return BigFloat::parse(t[0] == '+' ? t.substr(1) : t, bits);
    };
    if (split == std::string::npos) return {BigFloat(Bits{bits}), imag_of(body)};
    return {BigFloat::parse(body.substr(0, split), bits), imag_of(body.substr(split))};
}

}  // namespace torsionlab
