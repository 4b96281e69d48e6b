#pragma once
// SL2(C) holonomy lifts, symmetric powers, the abelian epimorphism alpha and
// unitary twists, and evaluation of group-ring elements under alpha (x) rho_n.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "torsionlab/bigfloat.hpp"
#include "torsionlab/error.hpp"
#include "torsionlab/fpgroup.hpp"
#include "torsionlab/matrix.hpp"

namespace torsionlab {

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::io, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------------------
// symmetric powers

namespace detail {
// Coefficients of (p x + q y)^e in y-degree order: C(e,j) p^(e-j) q^j.
inline std::vector<BigComplex> binary_power(const BigComplex& p, const BigComplex& q, int e, unsigned bits) {
    std::vector<BigComplex> pp(static_cast<std::size_t>(e) + 1), qp(static_cast<std::size_t>(e) + 1);
    pp[0] = BigComplex(BigFloat(1L, bits));
    qp[0] = pp[0];
    for (int k = 1; k <= e; ++k) {
        pp[static_cast<std::size_t>(k)] = pp[static_cast<std::size_t>(k - 1)] * p;
        qp[static_cast<std::size_t>(k)] = qp[static_cast<std::size_t>(k - 1)] * q;
    }
    std::vector<BigComplex> out;
    out.reserve(static_cast<std::size_t>(e) + 1);
    BigFloat binom(1L, bits);
    for (int j = 0; j <= e; ++j) {
        out.push_back(pp[static_cast<std::size_t>(e - j)] * qp[static_cast<std::size_t>(j)] * BigComplex(binom));
        binom = binom * BigFloat(static_cast<long>(e - j), bits) / BigFloat(static_cast<long>(j + 1), bits);
    }
    return out;
}
}  // namespace detail

/// Sym^(n-1)(m) on the basis x^(n-1-k) y^k, where m sends x to a x + c y and
/// y to b x + d y. Column k holds (ax+cy)^(n-1-k) (bx+dy)^k.
inline ComplexMatrix sym_power(const ComplexMatrix& m, int n) {
    if (m.rows() != 2 || m.cols() != 2) throw Error(ErrorKind::domain, "sym_power expects a 2x2 matrix");
    if (n < 1) throw Error(ErrorKind::domain, "sym_power: n must be at least 1");
    const unsigned bits = m.precision();
    const std::size_t nn = static_cast<std::size_t>(n);
    ComplexMatrix s(nn, nn, bits);
    BigFloat s1(Bits{bits}), s2(Bits{bits});
    for (int k = 0; k < n; ++k) {
        auto u = detail::binary_power(m(0, 0), m(1, 0), n - 1 - k, bits);
        auto v = detail::binary_power(m(0, 1), m(1, 1), k, bits);
        for (std::size_t i = 0; i < u.size(); ++i)
            for (std::size_t j = 0; j < v.size(); ++j) add_mul(s(i + j, static_cast<std::size_t>(k)), u[i], v[j], s1, s2);
    }
    return s;
}

inline BigComplex det2(const ComplexMatrix& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

/// Inverse of a 2x2 matrix through its adjugate.
inline ComplexMatrix inverse2(const ComplexMatrix& m) {
    const BigComplex d = det2(m);
    if (d.is_zero()) throw Error(ErrorKind::degenerate, "singular 2x2 matrix");
    const BigComplex inv = BigComplex(BigFloat(1L, m.precision())) / d;
    return ComplexMatrix::two_by_two(m(1, 1) * inv, -m(0, 1) * inv, -m(1, 0) * inv, m(0, 0) * inv);
}

/// |tr Ad(Sym^(n-1) m) - sum_{k=1}^{n-1} tr Sym^(2k) m|, with Ad the
/// conjugation action on trace-free n x n matrices.
inline BigFloat clebsch_gordan_residual(const ComplexMatrix& m, int n) {
    if (n < 2) throw Error(ErrorKind::domain, "clebsch_gordan_residual: n must be at least 2");
    const ComplexMatrix s = sym_power(m, n);
    const ComplexMatrix si = sym_power(inverse2(m), n);
    const unsigned bits = m.precision();
    // Ad on gl_n is S (x) S^-T; removing the scalar line leaves tr S tr S^-1 - 1
    BigComplex lhs = s.trace() * si.trace() - BigComplex(BigFloat(1L, bits));
    BigComplex rhs(Bits{bits});
    for (int k = 1; k <= n - 1; ++k) rhs += sym_power(m, 2 * k + 1).trace();
    return abs(lhs - rhs);
}

// ---------------------------------------------------------------------------
// holonomy lift

class HolonomyLift {
public:
    HolonomyLift() = default;
    /// `source` is the representation text the matrices were read from, if
    /// any; at_precision re-reads it instead of zero-extending.
    HolonomyLift(GroupPresentation presentation, std::vector<ComplexMatrix> generators, std::string source = {})
        : pres_(std::make_shared<const GroupPresentation>(std::move(presentation))),
          gens_(std::move(generators)),
          cache_(std::make_shared<SymCache>()) {
        if (!source.empty()) source_ = std::make_shared<const std::string>(std::move(source));
        if (gens_.size() != pres_->generator_count())
            throw Error(ErrorKind::domain, "representation must give one matrix per generator");
        for (const auto& g : gens_)
            if (g.rows() != 2 || g.cols() != 2) throw Error(ErrorKind::domain, "representation matrices must be 2x2");
        for (const auto& g : gens_) inverses_.push_back(inverse2(g));
        for (const auto& r : pres_->relators()) {
            ComplexMatrix e = (*this)(r) - ComplexMatrix::identity(2, precision());
            BigFloat v = e.inf_norm();
            if (v > relator_residual_) relator_residual_ = v;
        }
    }

    /// The trivial representation (all generators to the identity).
    static HolonomyLift trivial(const GroupPresentation& p, unsigned bits = working_precision()) {
        return {p, std::vector<ComplexMatrix>(p.generator_count(), ComplexMatrix::identity(2, bits))};
    }

    const GroupPresentation& presentation() const { return *pres_; }
    const std::vector<ComplexMatrix>& generators() const { return gens_; }
    unsigned precision() const { return gens_.empty() ? working_precision() : gens_.front().precision(); }
    /// max over relators r of ||rho(r) - I||_inf
    const BigFloat& relator_residual() const { return relator_residual_; }

    /// rho(word) as a 2x2 product.
    ComplexMatrix operator()(const Word& w) const {
        ComplexMatrix acc = ComplexMatrix::identity(2, precision());
        for (const auto& l : w.letters()) acc = acc * (l.exponent > 0 ? gens_[l.generator] : inverses_[l.generator]);
        return acc;
    }

    /// Sym^(n-1)(rho(x_g)^sign), memoized.
    const ComplexMatrix& sym_generator(std::uint32_t g, int sign, int n) const {
        std::lock_guard<std::mutex> lock(cache_->mutex);
        auto key = std::make_tuple(g, sign, n);
        auto it = cache_->entries.find(key);
        if (it == cache_->entries.end()) {
            it = cache_->entries.emplace(key, sym_power(sign > 0 ? gens_[g] : inverses_[g], n)).first;
        }
        return it->second;
    }

    /// rho_n(word) = Sym^(n-1)(rho(word)).
    ComplexMatrix rho_n(const Word& w, int n) const { return sym_power((*this)(w), n); }

    /// The same lift at another precision.
    HolonomyLift at_precision(unsigned bits) const;
    const std::string* source() const { return source_.get(); }

private:
    struct SymCache {
        std::mutex mutex;
        std::map<std::tuple<std::uint32_t, int, int>, ComplexMatrix> entries;
    };
    std::shared_ptr<const GroupPresentation> pres_;
    std::vector<ComplexMatrix> gens_;
    std::vector<ComplexMatrix> inverses_;
    BigFloat relator_residual_{Bits{64}};
    std::shared_ptr<SymCache> cache_;
    std::shared_ptr<const std::string> source_;
};

// ---------------------------------------------------------------------------
// alpha, twists, peripheral data

namespace detail {
// Rank and gcd of maximal minors of an integer matrix via Smith-style
// elimination. Returns (rank, product of the invariant factors).
inline std::pair<std::size_t, long long> smith_summary(std::vector<std::vector<long long>> a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a.front().size() : 0;
    std::size_t rank = 0;
    long long prod = 1;
    for (std::size_t k = 0; k < std::min(rows, cols); ++k) {
        // find the smallest nonzero entry in the remaining block
        for (;;) {
            std::size_t pi = rows, pj = cols;
            long long best = 0;
            for (std::size_t i = k; i < rows; ++i)
                for (std::size_t j = k; j < cols; ++j)
                    if (a[i][j] != 0 && (best == 0 || std::llabs(a[i][j]) < best)) {
                        best = std::llabs(a[i][j]);
                        pi = i;
                        pj = j;
                    }
            if (best == 0) return {rank, prod};
            std::swap(a[k], a[pi]);
            for (auto& row : a) std::swap(row[k], row[pj]);
            bool clean = true;
            for (std::size_t i = k + 1; i < rows; ++i) {
                long long q = a[i][k] / a[k][k];
                for (std::size_t j = k; j < cols; ++j) a[i][j] -= q * a[k][j];
                if (a[i][k] != 0) clean = false;
            }
            for (std::size_t j = k + 1; j < cols; ++j) {
                long long q = a[k][j] / a[k][k];
                for (std::size_t i = k; i < rows; ++i) a[i][j] -= q * a[i][k];
                if (a[k][j] != 0) clean = false;
            }
            if (!clean) continue;
            // the pivot must divide the rest of the block
            bool divides = true;
            for (std::size_t i = k + 1; i < rows && divides; ++i)
                for (std::size_t j = k + 1; j < cols; ++j)
                    if (a[i][j] % a[k][k] != 0) {
                        for (std::size_t jj = k; jj < cols; ++jj) a[k][jj] += a[i][jj];
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        ++rank;
        prod *= std::llabs(a[k][k]);
    }
    return {rank, prod};
}
}  // namespace detail

class AlphaMap {
public:
    AlphaMap() = default;
    /// images[g] is alpha(x_g) in Z^r.
    AlphaMap(const GroupPresentation& p, std::vector<std::vector<long>> images) : images_(std::move(images)) {
        if (images_.size() != p.generator_count()) throw Error(ErrorKind::domain, "alpha must give one vector per generator");
        rank_ = images_.front().size();
        if (rank_ == 0) throw Error(ErrorKind::domain, "alpha must have rank at least 1");
        for (const auto& v : images_)
            if (v.size() != rank_) throw Error(ErrorKind::domain, "alpha vectors must share one rank");
        for (std::size_t k = 0; k < p.relators().size(); ++k) {
            auto a = (*this)(p.relators()[k]);
            if (std::any_of(a.begin(), a.end(), [](long v) { return v != 0; }))
                throw Error(ErrorKind::inconsistent, "alpha does not kill relator " + std::to_string(k));
        }
        std::vector<std::vector<long long>> m;
        for (const auto& v : images_) m.emplace_back(v.begin(), v.end());
        auto [rank, prod] = detail::smith_summary(m);
        if (rank != rank_ || prod != 1) throw Error(ErrorKind::inconsistent, "alpha is not surjective onto Z^r");
    }

    /// Every generator to 1 in Z.
    static AlphaMap knot_like(const GroupPresentation& p) {
        return {p, std::vector<std::vector<long>>(p.generator_count(), std::vector<long>{1})};
    }

    std::size_t rank() const { return rank_; }
    const std::vector<std::vector<long>>& images() const { return images_; }

    std::vector<long> operator()(const Word& w) const {
        std::vector<long> a(rank_, 0);
        for (const auto& l : w.letters())
            for (std::size_t j = 0; j < rank_; ++j) a[j] += l.exponent * images_[l.generator][j];
        return a;
    }
    /// Rank-one convenience.
    long scalar(const Word& w) const {
        if (rank_ != 1) throw Error(ErrorKind::domain, "scalar alpha requested for rank " + std::to_string(rank_));
        return (*this)(w)[0];
    }

private:
    std::size_t rank_ = 0;
    std::vector<std::vector<long>> images_;
};

/// Point zeta on the unit torus; chi(gamma) = prod zeta_j^alpha_j(gamma).
class TwistPoint {
public:
    TwistPoint() = default;
    explicit TwistPoint(std::vector<BigComplex> zeta) : zeta_(std::move(zeta)) {
        for (const auto& z : zeta_) {
            const double tol = std::exp2(-static_cast<double>(z.precision()) / 2.0);
            if (std::fabs((abs(z) - BigFloat(1L, z.precision())).to_double()) > tol)
                throw Error(ErrorKind::domain, "twist point components must have modulus one");
        }
    }
    /// (e^{2 pi i k_1/q}, ...) with exact-as-possible roots of unity.
    static TwistPoint roots_of_unity(const std::vector<std::pair<long, long>>& fractions, unsigned bits = working_precision()) {
        std::vector<BigComplex> z;
        for (const auto& [k, q] : fractions) {
            if (q <= 0) throw Error(ErrorKind::domain, "root of unity order must be positive");
            const long kk = ((k % q) + q) % q;
            if (kk == 0) z.emplace_back(BigFloat(1L, bits));
            else if (4 * kk == q) z.emplace_back(BigFloat(Bits{bits}), BigFloat(1L, bits));
            else if (2 * kk == q) z.emplace_back(BigFloat(-1L, bits));
            else if (4 * kk == 3 * q) z.emplace_back(BigFloat(Bits{bits}), BigFloat(-1L, bits));
            else z.push_back(BigComplex::unit(ldexp(BigFloat::pi(bits), 1) * BigFloat(kk, bits) / BigFloat(q, bits)));
        }
        return TwistPoint(std::move(z));
    }
    static TwistPoint single(const BigComplex& z) { return TwistPoint(std::vector<BigComplex>{z}); }

    std::size_t rank() const { return zeta_.size(); }
    const std::vector<BigComplex>& components() const { return zeta_; }
    TwistPoint rounded(unsigned bits) const {
        TwistPoint t;
        for (const auto& z : zeta_) t.zeta_.push_back(z.rounded(bits));
        return t;
    }

    BigComplex chi(const std::vector<long>& a) const {
        if (a.size() != zeta_.size()) throw Error(ErrorKind::domain, "rank mismatch between alpha and twist point");
        BigComplex acc(BigFloat(1L, zeta_.empty() ? working_precision() : zeta_.front().precision()));
        for (std::size_t j = 0; j < a.size(); ++j)
            if (a[j] != 0) acc = acc * pow(zeta_[j], a[j]);
        return acc;
    }

private:
    std::vector<BigComplex> zeta_;
};

struct Cusp {
    Word meridian;
    Word longitude;
};

class PeripheralData {
public:
    PeripheralData() = default;
    PeripheralData(std::vector<Cusp> cusps, const AlphaMap& alpha) : cusps_(std::move(cusps)) {
        for (std::size_t i = 0; i < cusps_.size(); ++i) {
            auto l = alpha(cusps_[i].longitude);
            auto m = alpha(cusps_[i].meridian);
            if (std::any_of(l.begin(), l.end(), [](long v) { return v != 0; }))
                throw Error(ErrorKind::inconsistent, "cusp " + std::to_string(i) + ": alpha(longitude) != 0");
            if (std::all_of(m.begin(), m.end(), [](long v) { return v == 0; }))
                throw Error(ErrorKind::inconsistent, "cusp " + std::to_string(i) + ": alpha(meridian) == 0");
            meridian_alpha_.push_back(std::move(m));
        }
    }

    const std::vector<Cusp>& cusps() const { return cusps_; }
    /// alpha(m_i) per cusp.
    const std::vector<std::vector<long>>& meridian_alpha() const { return meridian_alpha_; }
    bool empty() const { return cusps_.empty(); }

private:
    std::vector<Cusp> cusps_;
    std::vector<std::vector<long>> meridian_alpha_;
};

// ---------------------------------------------------------------------------
// validation

struct RepresentationReport {
    BigFloat relator_residual;
    BigFloat determinant_residual;  // max_g |det rho(x_g) - 1|
    bool accepted = false;          // relator residual within tolerance
    std::vector<BigComplex> longitude_traces;
    std::vector<BigComplex> meridian_traces;
    std::vector<std::string> notes;
};

/// Determinant residuals above 2^(-bits/2) are an error; the relator residual
/// and peripheral traces are reported and judged against `tol`.
inline RepresentationReport validate_representation(const HolonomyLift& rho, double tol,
                                                    const PeripheralData* peripheral = nullptr) {
    RepresentationReport r;
    const unsigned bits = rho.precision();
    r.relator_residual = rho.relator_residual();
    r.determinant_residual = BigFloat(Bits{bits});
    const BigComplex one(BigFloat(1L, bits));
    for (const auto& g : rho.generators()) {
        if (g.rows() != 2 || g.cols() != 2) throw Error(ErrorKind::domain, "representation matrices must be 2x2");
        BigFloat d = abs(det2(g) - one);
        if (d > r.determinant_residual) r.determinant_residual = d;
    }
    if (r.determinant_residual.to_double() > std::exp2(-static_cast<double>(bits) / 2.0)) {
        throw Error(ErrorKind::inconsistent, "generator determinant differs from 1 by " + r.determinant_residual.to_string(6));
    }
    r.accepted = r.relator_residual.to_double() <= tol;
    if (!r.accepted) r.notes.push_back("relator residual " + r.relator_residual.to_string(6) + " exceeds tolerance");
    if (peripheral) {
        const BigComplex two(BigFloat(2L, bits));
        for (std::size_t i = 0; i < peripheral->cusps().size(); ++i) {
            const auto& c = peripheral->cusps()[i];
            BigComplex tl = rho(c.longitude).trace();
            BigComplex tm = rho(c.meridian).trace();
            if (abs(tl + two).to_double() > tol) r.notes.push_back("cusp " + std::to_string(i) + ": tr rho(longitude) != -2");
            if (std::min(abs(tm - two).to_double(), abs(tm + two).to_double()) > tol)
                r.notes.push_back("cusp " + std::to_string(i) + ": tr rho(meridian) != +-2");
            r.longitude_traces.push_back(std::move(tl));
            r.meridian_traces.push_back(std::move(tm));
        }
    }
    return r;
}

/// sum over terms of coeff * chi(alpha(w)) * rho_n(w)
inline ComplexMatrix evaluate_group_ring(const GroupRingElement& e, const HolonomyLift& rho, int n, const AlphaMap& alpha,
                                         const TwistPoint& at) {
    if (alpha.rank() != at.rank()) throw Error(ErrorKind::domain, "rank mismatch between alpha and twist point");
    const unsigned bits = std::max(rho.precision(), at.rank() ? at.components().front().precision() : 0u);
    const std::size_t nn = static_cast<std::size_t>(n);
    ComplexMatrix acc(nn, nn, bits);
    for (const auto& [w, c] : e.terms()) {
        BigComplex s = at.chi(alpha(w)) * BigComplex(BigFloat(static_cast<long>(c), bits));
        acc += rho.rho_n(w, n) * s;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// file formats

namespace detail {
inline std::vector<std::pair<std::string, std::vector<std::string>>> keyed_lines(const std::string& text) {
    std::vector<std::pair<std::string, std::vector<std::string>>> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key.size() < 2 || key.back() != ':') throw Error(ErrorKind::parse, "expected 'name:' at start of line '" + line + "'");
        key.pop_back();
        std::vector<std::string> fields;
        std::string f;
        while (ls >> f) fields.push_back(f);
        out.emplace_back(std::move(key), std::move(fields));
    }
    return out;
}
}  // namespace detail

/// Representation text: optional `digits: D` declaring the source precision,
/// then `g: a b c d` (row-major, complex decimals `re+imi`) per generator.
/// Entries are rounded to nearest at `bits`.
inline HolonomyLift parse_representation(const GroupPresentation& p, const std::string& text,
                                         unsigned bits = working_precision()) {
    std::vector<std::optional<ComplexMatrix>> mats(p.generator_count());
    for (const auto& [key, f] : detail::keyed_lines(text)) {
        if (key == "digits") continue;
        const std::uint32_t g = p.generator_index(key);
        if (f.size() != 4) throw Error(ErrorKind::parse, "generator '" + key + "' needs four entries");
        if (mats[g]) throw Error(ErrorKind::parse, "generator '" + key + "' given twice");
        mats[g] = ComplexMatrix::two_by_two(parse_complex(f[0], bits), parse_complex(f[1], bits), parse_complex(f[2], bits),
                                            parse_complex(f[3], bits));
    }
    std::vector<ComplexMatrix> gens;
    for (std::uint32_t g = 0; g < mats.size(); ++g) {
        if (!mats[g]) throw Error(ErrorKind::parse, "no matrix for generator '" + p.generator_names()[g] + "'");
        gens.push_back(std::move(*mats[g]));
    }
    return {p, std::move(gens), text};
}

inline HolonomyLift HolonomyLift::at_precision(unsigned bits) const {
    if (bits == precision()) return *this;
    if (source_) return parse_representation(*pres_, *source_, bits);
    std::vector<ComplexMatrix> g;
    for (const auto& m : gens_) g.push_back(m.rounded(bits));
    return {*pres_, std::move(g)};
}

/// Declared `digits:` value of a representation text (0 when absent).
inline int representation_source_digits(const std::string& text) {
    for (const auto& [key, f] : detail::keyed_lines(text))
        if (key == "digits" && !f.empty()) return std::stoi(f[0]);
    return 0;
}

/// Alpha text: `g: a_1 ... a_r` per generator.
inline AlphaMap parse_alpha(const GroupPresentation& p, const std::string& text) {
    std::vector<std::optional<std::vector<long>>> img(p.generator_count());
    for (const auto& [key, f] : detail::keyed_lines(text)) {
        const std::uint32_t g = p.generator_index(key);
        std::vector<long> v;
        for (const auto& s : f) {
            std::size_t used = 0;
            long x = 0;
            try {
                x = std::stol(s, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != s.size() || s.empty()) throw Error(ErrorKind::parse, "alpha entry '" + s + "' is not an integer");
            v.push_back(x);
        }
        img[g] = std::move(v);
    }
    std::vector<std::vector<long>> images;
    for (std::uint32_t g = 0; g < img.size(); ++g) {
        if (!img[g]) throw Error(ErrorKind::parse, "no alpha vector for generator '" + p.generator_names()[g] + "'");
        images.push_back(std::move(*img[g]));
    }
    return {p, std::move(images)};
}

/// Peripheral text: `cusp: <meridian> <longitude>` per cusp.
inline PeripheralData parse_peripheral(const GroupPresentation& p, const AlphaMap& alpha, const std::string& text) {
    std::vector<Cusp> cusps;
    for (const auto& [key, f] : detail::keyed_lines(text)) {
        if (key != "cusp" || f.size() != 2) throw Error(ErrorKind::parse, "expected 'cusp: <meridian> <longitude>'");
        cusps.push_back({p.parse_word(f[0]), p.parse_word(f[1])});
    }
    return {std::move(cusps), alpha};
}

}  // namespace torsionlab
