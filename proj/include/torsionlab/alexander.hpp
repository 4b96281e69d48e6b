#pragma once
// Twisted Alexander polynomials: Wada's determinant quotient of the Fox
// matrix under alpha (x) rho_n, and the normalized Delta^{alpha,n}.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "torsionlab/bigfloat.hpp"
#include "torsionlab/error.hpp"
#include "torsionlab/fpgroup.hpp"
#include "torsionlab/interpolation.hpp"
#include "torsionlab/laurent.hpp"
#include "torsionlab/matrix.hpp"
#include "torsionlab/representation.hpp"

namespace torsionlab {

/// log2 of the Hadamard bound prod_i ||row_i||_2.
inline double log2_hadamard(const ComplexMatrix& m) {
    double total = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double hi = -INFINITY;
        for (std::size_t j = 0; j < m.cols(); ++j) hi = std::max(hi, m(i, j).log2_abs());
        if (std::isinf(hi)) return -INFINITY;
        double s = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) s += std::exp2(2.0 * (m(i, j).log2_abs() - hi));
        total += hi + 0.5 * std::log2(s);
    }
    return total;
}

/// The Fox matrix (d r_i / d x_j) pushed through alpha (x) rho_n: every entry
/// is a finite sum  sum_a t^a M_a  with M_a an n x n matrix.
class TwistedFoxMatrix {
public:
    using Entry = std::map<std::vector<long>, ComplexMatrix>;

    TwistedFoxMatrix(const HolonomyLift& rho, int n, const AlphaMap& alpha) : rho_(&rho), alpha_(&alpha), n_(n) {
        const GroupPresentation& p = rho.presentation();
        if (n < 1) throw Error(ErrorKind::domain, "n must be at least 1");
        if (p.deficiency() != 1)
            throw Error(ErrorKind::domain, "Wada pipeline needs deficiency one, got " + std::to_string(p.deficiency()));
        if (alpha.images().size() != p.generator_count()) throw Error(ErrorKind::domain, "alpha and presentation disagree");
        const std::uint32_t g = p.generator_count();
        entries_.assign(p.relators().size(), std::vector<Entry>(g));
        for (std::size_t i = 0; i < p.relators().size(); ++i) {
            for (std::uint32_t j = 0; j < g; ++j) {
                Entry& e = entries_[i][j];
                const GroupRingElement d = fox_derivative(p.relators()[i], j, g);
                for (const auto& [w, c] : d.terms()) {
                    ComplexMatrix m = rho.rho_n(w, n) * BigComplex(BigFloat(static_cast<long>(c), rho.precision()));
                    auto key = alpha(w);
                    auto it = e.find(key);
                    if (it == e.end()) e.emplace(std::move(key), std::move(m));
                    else it->second += m;
                }
            }
        }
    }

    int n() const { return n_; }
    std::size_t relator_count() const { return entries_.size(); }
    std::uint32_t generator_count() const { return static_cast<std::uint32_t>(entries_.empty() ? 1 : entries_.front().size()); }
    std::size_t rank() const { return alpha_->rank(); }
    const HolonomyLift& lift() const { return *rho_; }
    const AlphaMap& alpha() const { return *alpha_; }

    /// Block matrix with generator column `removed` deleted, evaluated at chi.
    template <class Chi>
    ComplexMatrix numerator_matrix(std::size_t removed, Chi&& chi) const {
        const std::size_t n = static_cast<std::size_t>(n_);
        const std::size_t blocks = entries_.size();
        const unsigned bits = rho_->precision();
        ComplexMatrix m(blocks * n, blocks * n, bits);
        BigFloat s1(Bits{bits}), s2(Bits{bits});
        for (std::size_t i = 0; i < blocks; ++i) {
            std::size_t bc = 0;
            for (std::size_t j = 0; j < generator_count(); ++j) {
                if (j == removed) continue;
                for (const auto& [a, mat] : entries_[i][j]) {
                    const BigComplex z = chi(a);
                    for (std::size_t u = 0; u < n; ++u)
                        for (std::size_t v = 0; v < n; ++v) add_mul(m(i * n + u, bc * n + v), z, mat(u, v), s1, s2);
                }
                ++bc;
            }
        }
        return m;
    }

    /// chi(alpha(x_j)) rho_n(x_j) - I
    template <class Chi>
    ComplexMatrix denominator_matrix(std::size_t column, Chi&& chi) const {
        const auto& gen = rho_->sym_generator(static_cast<std::uint32_t>(column), 1, n_);
        ComplexMatrix m = gen * chi(alpha_->images()[column]);
        const BigComplex one(BigFloat(1L, rho_->precision()));
        for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) -= one;
        return m;
    }

    /// Exponent window [lo, hi] of the numerator determinant (rank one).
    std::pair<long, long> numerator_window(std::size_t removed) const {
        long lo = 0, hi = 0;
        for (const auto& row : entries_) {
            long rlo = 0, rhi = 0;
            bool any = false;
            for (std::size_t j = 0; j < row.size(); ++j) {
                if (j == removed) continue;
                for (const auto& kv : row[j]) {
                    const long a = kv.first.at(0);
                    rlo = any ? std::min(rlo, a) : a;
                    rhi = any ? std::max(rhi, a) : a;
                    any = true;
                }
            }
            lo += rlo * n_;
            hi += rhi * n_;
        }
        return {lo, hi};
    }

    std::pair<long, long> denominator_window(std::size_t column) const {
        const long a = alpha_->images()[column].at(0);
        return {std::min(0L, a) * n_, std::max(0L, a) * n_};
    }

    /// log2|det(denominator)| at a generic probe point per column, -inf when
    /// the determinant vanishes.
    std::vector<double> column_scores() const {
        const unsigned bits = rho_->precision();
        std::vector<BigComplex> probe;
        for (std::size_t k = 0; k < rank(); ++k)
            probe.push_back(BigComplex::unit(BigFloat(0.7 + 0.31 * static_cast<double>(k), bits)));
        const TwistPoint z(probe);
        std::vector<double> out;
        for (std::size_t j = 0; j < generator_count(); ++j) {
            out.push_back(determinant(denominator_matrix(j, [&](const std::vector<long>& a) { return z.chi(a); })).log2_abs());
        }
        return out;
    }

    /// Columns ordered by decreasing probe score, vanishing ones dropped.
    std::vector<std::size_t> column_order() const {
        auto s = column_scores();
        std::vector<std::size_t> idx;
        for (std::size_t j = 0; j < s.size(); ++j)
            if (!std::isinf(s[j])) idx.push_back(j);
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return s[a] > s[b]; });
        return idx;
    }

private:
    const HolonomyLift* rho_;
    const AlphaMap* alpha_;
    int n_;
    std::vector<std::vector<Entry>> entries_;
};

struct WadaOptions {
    std::optional<std::size_t> column;  // removed column; chosen by probe when absent
    std::size_t guard_nodes = 8;
    double tolerance = -1;  // remainder tolerance; default 2^(-bits/4)
};

struct WadaResult {
    int n = 0;
    std::size_t removed_column = 0;
    LaurentPolynomial numerator;    // det of the reduced Fox matrix
    LaurentPolynomial denominator;  // det(chi(x_j) rho_n(x_j) - I)
    LaurentPolynomial quotient;     // numerator / denominator (n >= 2)
    BigFloat remainder_norm;        // ||num - den * quotient|| / ||num||
    std::size_t node_count = 0;
    unsigned internal_precision = 0;
    bool rational = false;  // n = 1: the pair (numerator, denominator) is the answer
};

inline double default_tolerance(unsigned bits) { return std::exp2(-static_cast<double>(bits) / 4.0); }

namespace detail {

inline double log2_of(const BigFloat& x) { return x.is_zero() ? -INFINITY : x.log2_abs(); }

/// One Wada evaluation at the lift's own precision, without the remainder check.
inline WadaResult wada_unchecked(const HolonomyLift& rho, int n, const AlphaMap& alpha, std::size_t column,
                                 std::size_t guard_nodes) {
    const unsigned bits = rho.precision();
    WorkingPrecision scope(bits);
    const TwistedFoxMatrix fox(rho, n, alpha);
    WadaResult res;
    res.n = n;
    res.removed_column = column;
    const std::size_t j = column;
    const auto [nlo, nhi] = fox.numerator_window(j);
    const auto [dlo, dhi] = fox.denominator_window(j);
    const std::size_t count = static_cast<std::size_t>(nhi - nlo + 1) + guard_nodes;
    res.node_count = count;
    res.internal_precision = bits;

    const std::string seed = rho.presentation().to_text() + "|" + std::to_string(n) + "|" + std::to_string(j);
    const BigFloat rot = node_rotation(stable_hash(seed), count, bits);
    const auto nodes = rotated_nodes(count, rot);
    std::vector<BigComplex> num_v, den_v, q_v;
    num_v.reserve(count);
    den_v.reserve(count);
    for (const auto& t : nodes) {
        std::map<long, BigComplex> powers;
        auto chi = [&](const std::vector<long>& a) -> const BigComplex& {
            auto it = powers.find(a[0]);
            if (it == powers.end()) it = powers.emplace(a[0], pow(t, a[0])).first;
            return it->second;
        };
        num_v.push_back(determinant(fox.numerator_matrix(j, chi)));
        den_v.push_back(determinant(fox.denominator_matrix(j, chi)));
    }
    const long shift = static_cast<long>(guard_nodes) / 2;
    res.numerator = interpolate_on_rotated_roots_of_unity(num_v, rot, nlo - shift);
    res.denominator = interpolate_on_rotated_roots_of_unity(den_v, rot, dlo - shift);
    res.remainder_norm = BigFloat(Bits{bits});
    if (n == 1) {
        res.rational = true;
        return res;
    }
    for (std::size_t k = 0; k < count; ++k) {
        if (den_v[k].is_zero()) throw Error(ErrorKind::degenerate, "denominator vanishes at an interpolation node");
        q_v.push_back(num_v[k] / den_v[k]);
    }
    const long qlo = nlo - dlo, qhi = nhi - dhi;
    LaurentPolynomial q = interpolate_on_rotated_roots_of_unity(q_v, rot, qlo - shift);
    std::vector<BigComplex> inside;
    for (long e = qlo; e <= qhi; ++e) inside.push_back(q.coefficient(e));
    res.quotient = LaurentPolynomial(qlo, std::move(inside));
    LaurentPolynomial back = res.numerator - res.denominator * res.quotient;
    BigFloat scale = res.numerator.max_coefficient_norm();
    if (!scale.is_zero()) res.remainder_norm = back.max_coefficient_norm() / scale;
    return res;
}

inline std::size_t choose_column(const HolonomyLift& rho, int n, const AlphaMap& alpha, const WadaOptions& opt) {
    if (alpha.rank() != 1) throw Error(ErrorKind::domain, "polynomial path needs rank-one alpha");
    WorkingPrecision scope(rho.precision());
    const TwistedFoxMatrix fox(rho, n, alpha);
    if (opt.column) {
        if (*opt.column >= fox.generator_count()) throw Error(ErrorKind::domain, "removed column out of range");
        return *opt.column;
    }
    auto order = fox.column_order();
    if (order.empty()) throw Error(ErrorKind::degenerate, "every column gives an identically zero denominator");
    return order.front();
}

struct Attempt {
    double residual = -INFINITY;  // log2 of the consistency residual
    double deficit = 0;           // further bits the result itself asks for
};

/// Runs `attempt(lift)` at rising internal precision until its residual is at
/// most log2(tol) and its deficit is gone. The precision step is read off the
/// observed loss. A residual above tolerance that does not shrink with
/// precision is reported as inconsistent input; a residual within tolerance
/// that stalls ends the escalation with a note.
template <class F>
auto escalate(const HolonomyLift& rho, unsigned bits, double tol, F&& attempt, const std::string& what,
              std::vector<std::string>* notes = nullptr) {
    const double target = std::log2(tol);
    unsigned p = bits;
    double previous = INFINITY;
    for (int round = 0;; ++round) {
        auto [value, a] = attempt(rho.at_precision(p));
        const bool consistent = a.residual <= target;
        if (consistent && a.deficit <= 0) return value;
        const bool stalled = !(a.residual < previous - 16.0);
        if (round >= 6 || stalled) {
            if (consistent) {
                if (notes) notes->push_back("result accuracy limited by the representation at " + std::to_string(p) + " bits");
                return value;
            }
            std::ostringstream msg;
            msg << what << " at " << p << " bits: residual 2^" << a.residual;
            throw Error(ErrorKind::inconsistent, msg.str());
        }
        previous = a.residual;
        double need = a.deficit;
        if (!consistent) need = std::max(need, a.residual >= 0 ? static_cast<double>(p) : a.residual - target);
        p += std::max(64u, static_cast<unsigned>(std::ceil(need)) + 32);
    }
}

inline WadaResult rounded(WadaResult w, unsigned bits) {
    w.numerator = w.numerator.rounded(bits);
    w.denominator = w.denominator.rounded(bits);
    w.quotient = w.quotient.rounded(bits);
    w.remainder_norm = w.remainder_norm.rounded(bits);
    return w;
}

}  // namespace detail

/// Wada's invariant for a rank-one alpha. For n >= 2 the quotient must be a
/// Laurent polynomial; internal precision rises until the remainder is below
/// tolerance, and a remainder that does not shrink flags inconsistent input.
inline WadaResult wada_polynomial(const HolonomyLift& rho, int n, const AlphaMap& alpha, const WadaOptions& opt = {}) {
    const unsigned bits = std::max(rho.precision(), working_precision());
    const std::size_t column = detail::choose_column(rho.at_precision(bits), n, alpha, opt);
    const double tol = opt.tolerance > 0 ? opt.tolerance : default_tolerance(bits);
    WadaResult w = detail::escalate(
        rho, bits, tol,
        [&](const HolonomyLift& lift) {
            WadaResult r = detail::wada_unchecked(lift, n, alpha, column, opt.guard_nodes);
            const double worst = detail::log2_of(r.remainder_norm);
            return std::make_pair(std::move(r), detail::Attempt{worst, 0});
        },
        "Wada quotient is not a Laurent polynomial");
    return detail::rounded(std::move(w), bits);
}

enum class Normalization { rational, even, odd_divided };

inline const char* to_string(Normalization k) {
    switch (k) {
        case Normalization::rational: return "rational";
        case Normalization::even: return "even";
        case Normalization::odd_divided: return "odd-divided";
    }
    return "?";
}

struct TwistedAlexResult {
    int n = 0;
    std::size_t r = 1;
    std::optional<LaurentPolynomial> polynomial;  // normalized Delta (n >= 2)
    std::optional<std::pair<LaurentPolynomial, LaurentPolynomial>> rational_pair;  // n = 1
    Normalization normalization = Normalization::even;
    std::size_t removed_column = 0;
    BigFloat quotient_residual;     // Wada quotient remainder
    BigFloat laurentness_residual;  // remainder of the final division
    unsigned internal_precision = 0;
    std::vector<std::string> notes;
};

/// alpha(m_i) per cusp. Without peripheral data a knot-like alpha (every
/// generator to 1) is read as one cusp with alpha(m) = 1.
inline std::vector<std::vector<long>> meridian_exponents(const AlphaMap& alpha, const PeripheralData* peripheral,
                                                         std::vector<std::string>* notes = nullptr) {
    if (peripheral && !peripheral->empty()) return peripheral->meridian_alpha();
    bool knot_like = alpha.rank() == 1;
    for (const auto& v : alpha.images()) knot_like = knot_like && v[0] == 1;
    if (!knot_like) throw Error(ErrorKind::domain, "odd n needs peripheral data (cusp meridians)");
    if (notes) notes->push_back("no peripheral data: assumed one cusp with alpha(meridian) = 1");
    return {{1}};
}

namespace detail {

inline TwistedAlexResult normalize_unchecked(const WadaResult& w, const AlphaMap& alpha, const PeripheralData* peripheral) {
    TwistedAlexResult res;
    res.n = w.n;
    res.r = alpha.rank();
    res.removed_column = w.removed_column;
    res.internal_precision = w.internal_precision;
    const unsigned bits = w.numerator.precision();
    res.quotient_residual = w.remainder_norm;
    res.laurentness_residual = w.remainder_norm;
    if (w.rational) {
        res.normalization = Normalization::rational;
        res.rational_pair = std::make_pair(w.numerator.normalized(), w.denominator.normalized());
        return res;
    }
    if (w.n % 2 == 0) {
        res.normalization = Normalization::even;
        res.polynomial = w.quotient.unit_normalized();
        return res;
    }
    res.normalization = Normalization::odd_divided;
    LaurentPolynomial den = LaurentPolynomial::constant(BigComplex(BigFloat(1L, bits)));
    for (const auto& a : meridian_exponents(alpha, peripheral, &res.notes))
        den = den * LaurentPolynomial::binomial_minus_one(a.at(0), bits);
    DivisionResult d = divide(w.quotient, den);
    res.laurentness_residual = d.remainder_norm;
    res.polynomial = d.quotient.unit_normalized();
    return res;
}

/// Drops end coefficients at the noise floor (2^noise_rel times the largest
/// coefficient) once that floor is below 2^-2bits; returns how many more bits
/// the surviving end coefficients need to carry `bits` correct bits.
inline double trim_noise_ends(LaurentPolynomial& p, double noise_rel, unsigned bits) {
    if (p.empty()) return 0;
    const double top = log2_of(p.max_coefficient_norm());
    if (std::isinf(top)) return 0;
    const double floor = top + noise_rel + 8.0;
    const double b = static_cast<double>(bits);
    const bool deep = floor - top <= -2.0 * b;
    long lo = p.min_exponent(), hi = p.max_exponent();
    double deficit = 0;
    auto scan = [&](long& e, long step) {
        while (lo <= hi) {
            const double l = log2_of(abs(p.coefficient(e))) - floor;
            if (l >= b + 8.0) return;
            if (l <= 16.0 && deep) {
                e += step;
                continue;
            }
            deficit = std::max(deficit, l <= 16.0 ? floor - top + 2.0 * b : b + 8.0 - l);
            return;
        }
    };
    scan(lo, 1);
    scan(hi, -1);
    std::vector<BigComplex> kept;
    for (long e = lo; e <= hi; ++e) kept.push_back(p.coefficient(e));
    p = LaurentPolynomial(lo, std::move(kept)).unit_normalized();
    return deficit;
}

inline TwistedAlexResult rounded(TwistedAlexResult r, unsigned bits) {
    if (r.polynomial) r.polynomial = r.polynomial->rounded(bits);
    if (r.rational_pair) r.rational_pair = std::make_pair(r.rational_pair->first.rounded(bits), r.rational_pair->second.rounded(bits));
    r.quotient_residual = r.quotient_residual.rounded(bits);
    r.laurentness_residual = r.laurentness_residual.rounded(bits);
    return r;
}

inline void note_source_precision(const HolonomyLift& rho, unsigned internal, std::vector<std::string>& notes) {
    if (!rho.source()) return;
    const int digits = representation_source_digits(*rho.source());
    if (digits > 0 && static_cast<double>(digits) * 3.3219 < static_cast<double>(internal)) {
        notes.push_back("representation carries " + std::to_string(digits) + " digits, below the internal precision of " +
                        std::to_string(internal) + " bits");
    }
}

}  // namespace detail

/// Applies the even/odd normalization to a Wada result.
inline TwistedAlexResult normalized_delta(const WadaResult& w, const AlphaMap& alpha, const PeripheralData* peripheral = nullptr,
                                          double tolerance = -1) {
    TwistedAlexResult res = detail::normalize_unchecked(w, alpha, peripheral);
    const double tol = tolerance > 0 ? tolerance : default_tolerance(w.numerator.precision());
    if (res.laurentness_residual.to_double() > tol)
        throw Error(ErrorKind::inconsistent, "peripheral division leaves remainder " + res.laurentness_residual.to_string(6));
    return res;
}

/// Normalized Delta^{alpha,n}, computed at whatever internal precision makes
/// both the Wada remainder and the peripheral division remainder small;
/// the result is rounded back to the working precision.
inline TwistedAlexResult twisted_alexander(const HolonomyLift& rho, int n, const AlphaMap& alpha,
                                           const PeripheralData* peripheral = nullptr, const WadaOptions& opt = {}) {
    const unsigned bits = std::max(rho.precision(), working_precision());
    const std::size_t column = detail::choose_column(rho.at_precision(bits), n, alpha, opt);
    const double tol = opt.tolerance > 0 ? opt.tolerance : default_tolerance(bits);
    std::vector<std::string> notes;
    TwistedAlexResult r = detail::escalate(
        rho, bits, tol,
        [&](const HolonomyLift& lift) {
            WorkingPrecision scope(lift.precision());
            WadaResult w = detail::wada_unchecked(lift, n, alpha, column, opt.guard_nodes);
            TwistedAlexResult t = detail::normalize_unchecked(w, alpha, peripheral);
            const double worst = std::max(detail::log2_of(t.quotient_residual), detail::log2_of(t.laurentness_residual));
            double deficit = 0;
            if (t.polynomial) deficit = detail::trim_noise_ends(*t.polynomial, worst, bits);
            return std::make_pair(std::move(t), detail::Attempt{worst, deficit});
        },
        n % 2 == 1 && n > 1 ? "twisted Alexander quotient or peripheral division is not Laurent"
                            : "Wada quotient is not a Laurent polynomial",
        &notes);
    r.notes.insert(r.notes.end(), notes.begin(), notes.end());
    detail::note_source_precision(rho, r.internal_precision, r.notes);
    return detail::rounded(std::move(r), bits);
}

/// Classical Alexander polynomial: n = 1, trivial rho, every generator to 1;
/// returns numerator / denominator * (t - 1), normalized.
inline LaurentPolynomial classical_alexander(const GroupPresentation& p) {
    const unsigned bits = working_precision();
    const HolonomyLift triv = HolonomyLift::trivial(p, bits);
    const AlphaMap alpha = AlphaMap::knot_like(p);
    WadaResult w = wada_polynomial(triv, 1, alpha);
    DivisionResult d = divide(w.numerator.pruned() * LaurentPolynomial::binomial_minus_one(1, bits), w.denominator.pruned());
    if (d.remainder_norm.to_double() > default_tolerance(bits))
        throw Error(ErrorKind::inconsistent, "classical Alexander quotient is not a polynomial");
    return d.quotient.normalized();
}

struct DeltaValue {
    BigFloat modulus;
    std::size_t column = 0;
    bool fallback = false;  // value taken from the interpolated polynomial
    unsigned internal_precision = 0;
};

namespace detail {

struct PointDets {
    BigComplex num, den;
};

inline PointDets point_dets(const HolonomyLift& lift, int n, const AlphaMap& alpha, const TwistPoint& zeta, std::size_t j) {
    WorkingPrecision scope(lift.precision());
    const TwistedFoxMatrix fox(lift, n, alpha);
    const TwistPoint z = zeta.rounded(lift.precision());
    auto chi = [&](const std::vector<long>& a) { return z.chi(a); };
    return {determinant(fox.numerator_matrix(j, chi)), determinant(fox.denominator_matrix(j, chi))};
}

}  // namespace detail

/// |Delta^{alpha,n}(zeta)| from pointwise determinants. Each value is taken
/// at two internal precisions and accepted once they agree to the working
/// precision. A denominator that shrinks with precision is a true zero: the
/// next column is tried, then the polynomial (r = 1).
inline DeltaValue evaluate_delta_at(const HolonomyLift& rho, int n, const AlphaMap& alpha, const TwistPoint& zeta,
                                    const PeripheralData* peripheral = nullptr, std::optional<std::size_t> column = {}) {
    if (zeta.rank() != alpha.rank()) throw Error(ErrorKind::domain, "rank mismatch between alpha and twist point");
    const unsigned bits = std::max(rho.precision(), working_precision());
    const HolonomyLift base = rho.at_precision(bits);
    std::vector<std::size_t> order;
    {
        WorkingPrecision scope(bits);
        order = TwistedFoxMatrix(base, n, alpha).column_order();
    }
    if (column) {
        if (*column >= rho.presentation().generator_count()) throw Error(ErrorKind::domain, "removed column out of range");
        auto it = std::find(order.begin(), order.end(), *column);
        if (it != order.end()) std::rotate(order.begin(), it, it + 1);
    }

    BigFloat peripheral_abs(1L, bits);
    bool peripheral_zero = false;
    if (n % 2 == 1 && n > 1) {
        for (const auto& a : meridian_exponents(alpha, peripheral)) {
            BigComplex f = zeta.chi(a) - BigComplex(BigFloat(1L, bits));
            if (f.log2_abs() < -static_cast<double>(bits) / 2.0) peripheral_zero = true;
            peripheral_abs = peripheral_abs * abs(f);
        }
    }
    if (!peripheral_zero) {
        for (std::size_t j : order) {
            unsigned p = bits + 32;
            bool degenerate = false;
            for (int round = 0; round < 6 && !degenerate; ++round) {
                const unsigned g = std::max(64u, p / 4);
                const auto a = detail::point_dets(rho.at_precision(p), n, alpha, zeta, j);
                const auto b = detail::point_dets(rho.at_precision(p + g), n, alpha, zeta, j);
                const double half_g = static_cast<double>(g) / 2.0;
                if (b.den.is_zero() || b.den.log2_abs() < a.den.log2_abs() - half_g) {
                    degenerate = true;
                    break;
                }
                DeltaValue v;
                v.column = j;
                v.internal_precision = p + g;
                if (b.num.is_zero() || b.num.log2_abs() < a.num.log2_abs() - half_g) {
                    v.modulus = BigFloat(Bits{bits});
                    return v;
                }
                const BigComplex qa = a.num / a.den, qb = b.num / b.den;
                const BigComplex diff = qa.rounded(p + g) - qb;
                const double agree = diff.is_zero() ? INFINITY : qb.log2_abs() - diff.log2_abs();
                if (agree >= static_cast<double>(bits) + 8.0) {
                    v.modulus = abs(qb).rounded(bits);
                    if (n % 2 == 1 && n > 1) v.modulus = v.modulus / peripheral_abs;
                    return v;
                }
                const double lost = static_cast<double>(p) - std::max(agree, 0.0);
                p = std::max(p + g, bits + static_cast<unsigned>(std::ceil(lost)) + 64);
            }
            if (!degenerate) throw Error(ErrorKind::convergence, "pointwise value did not stabilize under rising precision");
        }
    }
    if (alpha.rank() != 1)
        throw Error(ErrorKind::degenerate, "removable singularity at this twist point: every column degenerates (rank > 1)");
    WadaOptions opt;
    opt.column = column;
    TwistedAlexResult r = twisted_alexander(rho, n, alpha, peripheral, opt);
    DeltaValue v;
    v.fallback = true;
    v.column = r.removed_column;
    v.internal_precision = r.internal_precision;
    const BigComplex z = zeta.components()[0].rounded(bits);
    if (r.polynomial) {
        v.modulus = abs((*r.polynomial)(z));
    } else {
        const auto& [num, den] = *r.rational_pair;
        BigComplex d = den(z);
        if (d.is_zero()) throw Error(ErrorKind::degenerate, "pole of the rational invariant at this twist point");
        v.modulus = abs(num(z)) / abs(d);
    }
    return v;
}

}  // namespace torsionlab
