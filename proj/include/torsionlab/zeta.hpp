#pragma once
// Geodesic length spectra and truncated Ruelle / Selberg zeta functions.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "torsionlab/bigfloat.hpp"
#include "torsionlab/error.hpp"
#include "torsionlab/interpolation.hpp"
#include "torsionlab/representation.hpp"

namespace torsionlab {

/// One prime closed oriented geodesic. The inverse orientation is a separate
/// entry with the same length and negated theta and alpha class.
struct SpectrumEntry {
    double length = 0;  // > 0
    double theta = 0;   // holonomy angle of the lift, in (-2 pi, 2 pi]
    std::vector<long> alpha;
    long multiplicity = 1;
};

struct LengthSpectrum {
    std::size_t rank = 0;
    double truncation = 0;  // every entry has length <= truncation
    std::vector<SpectrumEntry> entries;  // sorted by length

    bool empty() const { return entries.empty(); }
};

namespace detail {

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace detail

inline void sort_spectrum(LengthSpectrum& sp) {
    std::stable_sort(sp.entries.begin(), sp.entries.end(),
                     [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.length < b.length; });
    sp.truncation = sp.entries.empty() ? 0.0 : sp.entries.back().length;
}

/// CSV with header `length,theta,alpha_1,...,alpha_r,mult`. Primitivity of
/// the listed classes is taken on trust.
inline LengthSpectrum parse_spectrum(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    LengthSpectrum sp;
    bool header = false;
    std::size_t columns = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
        const auto cells = detail::split_csv(line);
        const std::string where = "spectrum line " + std::to_string(line_no) + ": ";
        if (!header) {
            if (cells.size() < 3 || cells.front() != "length" || cells[1] != "theta" || cells.back() != "mult")
                throw Error(ErrorKind::parse, where + "header must be length,theta,alpha_1..alpha_r,mult");
            for (std::size_t k = 2; k + 1 < cells.size(); ++k)
                if (cells[k] != "alpha_" + std::to_string(k - 1)) throw Error(ErrorKind::parse, where + "bad column '" + cells[k] + "'");
            columns = cells.size();
            sp.rank = columns - 3;
            header = true;
            continue;
        }
        if (cells.size() != columns)
            throw Error(ErrorKind::parse, where + "expected " + std::to_string(columns) + " fields, got " + std::to_string(cells.size()));
        SpectrumEntry e;
        try {
            std::size_t used = 0;
            e.length = std::stod(cells[0], &used);
            if (used != cells[0].size()) throw std::invalid_argument("length");
            e.theta = std::stod(cells[1], &used);
            if (used != cells[1].size()) throw std::invalid_argument("theta");
            for (std::size_t k = 2; k + 1 < columns; ++k) {
                e.alpha.push_back(std::stol(cells[k], &used));
                if (used != cells[k].size()) throw std::invalid_argument("alpha");
            }
            e.multiplicity = std::stol(cells.back(), &used);
            if (used != cells.back().size()) throw std::invalid_argument("mult");
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::parse, where + "malformed row '" + line + "'");
        }
        if (!(e.length > 0) || !std::isfinite(e.length)) throw Error(ErrorKind::parse, where + "length must be positive");
        if (!(e.theta > -2 * M_PI && e.theta <= 2 * M_PI)) throw Error(ErrorKind::parse, where + "theta outside (-2 pi, 2 pi]");
        if (e.multiplicity <= 0) throw Error(ErrorKind::parse, where + "multiplicity must be positive");
        sp.entries.push_back(std::move(e));
    }
    if (!header) return sp;  // empty body
    sort_spectrum(sp);
    return sp;
}

inline LengthSpectrum load_spectrum(const std::string& path) { return parse_spectrum(read_text_file(path)); }

inline std::string spectrum_to_csv(const LengthSpectrum& sp) {
    std::ostringstream os;
    os.precision(17);
    os << "length,theta";
    for (std::size_t k = 1; k <= sp.rank; ++k) os << ",alpha_" << k;
    os << ",mult\n";
    for (const auto& e : sp.entries) {
        os << e.length << ',' << e.theta;
        for (long a : e.alpha) os << ',' << a;
        os << ',' << e.multiplicity << '\n';
    }
    return os.str();
}

/// Entries with length <= L.
inline LengthSpectrum truncated(const LengthSpectrum& sp, double L) {
    LengthSpectrum out;
    out.rank = sp.rank;
    for (const auto& e : sp.entries)
        if (e.length <= L) out.entries.push_back(e);
    out.truncation = L;
    return out;
}

/// Deterministic spectrum with counting function close to e^{2t}/(2t),
/// generated in inverse-orientation pairs starting at length l_min.
inline LengthSpectrum synthetic_spectrum(std::size_t count, std::size_t rank, std::uint64_t seed, double l_min = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(-2 * M_PI * 0.999, 2 * M_PI * 0.999);
    std::uniform_int_distribution<long> cls(-3, 3);
    auto counting = [](double t) { return std::exp(2 * t) / (2 * t); };
    const double base = counting(l_min);
    LengthSpectrum sp;
    sp.rank = rank;
    for (std::size_t i = 0; sp.entries.size() < count; ++i) {
        // invert the counting function by Newton's method
        const double target = base + static_cast<double>(i);
        double t = std::max(l_min, 0.5 * std::log(2 * std::max(target, 1.0)));
        for (int it = 0; it < 60; ++it) {
            const double f = counting(t) - target;
            const double df = counting(t) * (2 - 1 / t);
            t -= f / df;
            t = std::max(t, l_min);
        }
        SpectrumEntry e;
        e.length = t;
        e.theta = angle(rng);
        for (std::size_t k = 0; k < rank; ++k) e.alpha.push_back(cls(rng));
        SpectrumEntry inv = e;
        inv.theta = -e.theta;
        for (auto& a : inv.alpha) a = -a;
        sp.entries.push_back(std::move(e));
        if (sp.entries.size() < count) sp.entries.push_back(std::move(inv));
    }
    sort_spectrum(sp);
    return sp;
}

struct ZetaValue {
    BigComplex log_value;  // sum of principal logarithms of the factors
    BigComplex value;
    bool formal = false;  // Re s outside the half-plane where the product converges
    BigFloat inner_tail;  // selberg_z only: bound on the dropped l > l_max factors
};

namespace detail {

/// log(1 - z), accurate for small |z|.
inline BigComplex log_one_minus(const BigComplex& z) {
    const unsigned bits = z.precision();
    const BigFloat one(1L, bits);
    const BigFloat re = BigFloat(0.5, bits) * log1p(norm(z) - ldexp(z.re(), 1));
    const BigFloat im = atan2(-z.im(), one - z.re());
    return {re, im};
}

inline void check_rank(const LengthSpectrum& sp, const TwistPoint& zeta) {
    if (sp.rank != zeta.rank())
        throw Error(ErrorKind::domain, "spectrum rank " + std::to_string(sp.rank) + " does not match twist rank " +
                                           std::to_string(zeta.rank()));
}

/// chi(gamma) e^{i k theta / 2} e^{-s l}
inline BigComplex ruelle_weight(const SpectrumEntry& e, const TwistPoint& zeta, const BigFloat& k, const BigComplex& s,
                                unsigned bits) {
    const BigFloat l(e.length, bits), th(e.theta, bits);
    const BigComplex expo(-s.re() * l, k * th / BigFloat(2L, bits) - s.im() * l);
    return zeta.chi(e.alpha) * exp(expo);
}

inline ZetaValue finish(std::vector<BigComplex> logs, bool formal, unsigned bits) {
    ZetaValue v;
    v.log_value = pairwise_sum(std::move(logs), bits);
    v.value = exp(v.log_value);
    v.formal = formal;
    v.inner_tail = BigFloat(Bits{bits});
    return v;
}

}  // namespace detail

/// R_{chi,k}(s) = prod (1 - chi(gamma) e^{i k theta/2} e^{-s l})^mult over the
/// spectrum; k may be any real (half-integer shifts appear in ruelle_big_r).
inline ZetaValue ruelle_r(const LengthSpectrum& sp, const TwistPoint& zeta, const BigFloat& k, const BigComplex& s) {
    detail::check_rank(sp, zeta);
    const unsigned bits = working_precision();
    std::vector<BigComplex> logs;
    logs.reserve(sp.entries.size());
    for (const auto& e : sp.entries) {
        BigComplex lg = detail::log_one_minus(detail::ruelle_weight(e, zeta, k, s, bits));
        logs.push_back(lg * BigFloat(e.multiplicity, bits));
    }
    return detail::finish(std::move(logs), s.re().to_double() <= 2.0, bits);
}

inline ZetaValue ruelle_r(const LengthSpectrum& sp, const TwistPoint& zeta, long k, const BigComplex& s) {
    return ruelle_r(sp, zeta, BigFloat(k, working_precision()), s);
}

/// Twisted Ruelle function of chi (x) rho_n: per geodesic the eigenvalues of
/// rho_n(gamma) are e^{(n-1-2k) lambda/2}, lambda = l + i theta.
inline ZetaValue ruelle_big_r(const LengthSpectrum& sp, const TwistPoint& zeta, int n, const BigComplex& s) {
    detail::check_rank(sp, zeta);
    if (n < 1) throw Error(ErrorKind::domain, "n must be at least 1");
    const unsigned bits = working_precision();
    std::vector<BigComplex> logs;
    logs.reserve(sp.entries.size() * static_cast<std::size_t>(n));
    for (const auto& e : sp.entries) {
        const BigFloat l(e.length, bits);
        const BigComplex lambda(l, BigFloat(e.theta, bits));
        const BigComplex decay = zeta.chi(e.alpha) * exp(-(s * l));
        const BigFloat mult(e.multiplicity, bits);
        for (int k = 0; k < n; ++k) {
            const BigComplex eig = exp(lambda * BigFloat(static_cast<long>(n - 1 - 2 * k), bits) / BigFloat(2L, bits));
            logs.push_back(detail::log_one_minus(eig * decay) * mult);
        }
    }
    return detail::finish(std::move(logs), s.re().to_double() <= 2.0 + 0.5 * (n - 1), bits);
}

/// |log R_{rho_{n+1}}(s) - sum_k log R_{n-2k}(s - (n/2 - k))|
inline BigFloat factorization_residual(const LengthSpectrum& sp, const TwistPoint& zeta, int n, const BigComplex& s) {
    const unsigned bits = working_precision();
    const ZetaValue big = ruelle_big_r(sp, zeta, n + 1, s);
    std::vector<BigComplex> parts;
    for (int k = 0; k <= n; ++k) {
        const BigFloat shift = BigFloat(static_cast<long>(n - 2 * k), bits) / BigFloat(2L, bits);
        parts.push_back(ruelle_r(sp, zeta, BigFloat(static_cast<long>(n - 2 * k), bits), s - BigComplex(shift)).log_value);
    }
    return abs(big.log_value - pairwise_sum(std::move(parts), bits));
}

/// Truncated Selberg function
///   prod_gamma prod_{l <= l_max} prod_{p=0}^{l} (1 - chi e^{i k theta/2} a^p b^{l-p} e^{-(s+1) l(gamma)})
/// with a = e^{-lambda}, b = e^{-conj(lambda)}: the weights of the adjoint
/// action on the two-dimensional real nilpotent algebra.
inline ZetaValue selberg_z(const LengthSpectrum& sp, const TwistPoint& zeta, long k, const BigComplex& s, int l_max) {
    detail::check_rank(sp, zeta);
    if (l_max < 0) throw Error(ErrorKind::domain, "l_max must be nonnegative");
    const unsigned bits = working_precision();
    const BigFloat kk(k, bits);
    const BigComplex one(BigFloat(1L, bits));
    std::vector<BigComplex> logs;
    BigFloat tail(Bits{bits});
    for (const auto& e : sp.entries) {
        const BigFloat l(e.length, bits), th(e.theta, bits);
        const BigComplex base = detail::ruelle_weight(e, zeta, kk, s + one, bits);
        const BigComplex lambda(l, th);
        const BigComplex a = exp(-lambda), b = exp(-conj(lambda));
        const BigComplex ratio = a / b;
        const BigFloat mult(e.multiplicity, bits);
        std::vector<BigComplex> entry_logs;
        BigComplex b_pow = one;
        for (int level = 0; level <= l_max; ++level) {
            BigComplex w = base * b_pow;
            for (int p = 0; p <= level; ++p) {
                entry_logs.push_back(detail::log_one_minus(w));
                w = w * ratio;
            }
            b_pow = b_pow * b;
        }
        logs.push_back(pairwise_sum(std::move(entry_logs), bits) * mult);
        // |log(1 - w)| <= 2|w| for |w| <= 1/2; level l holds l+1 factors of size |base| e^{-l l(gamma)}
        const BigFloat q = exp(-l);
        const BigFloat L1(static_cast<long>(l_max) + 1, bits);
        const BigFloat geo = exp(-l * L1) * ((L1 + BigFloat(1L, bits)) - L1 * q) / ((BigFloat(1L, bits) - q) * (BigFloat(1L, bits) - q));
        tail = tail + BigFloat(2L, bits) * mult * abs(base) * geo;
    }
    ZetaValue v = detail::finish(std::move(logs), s.re().to_double() <= 1.0, bits);
    v.inner_tail = tail;
    return v;
}

/// max over entries of |log R_k(s) - log[Z_k(s+1) Z_k(s-1) / (Z_{k+2}(s) Z_{k-2}(s))]|
inline BigFloat ruelle_selberg_residual(const LengthSpectrum& sp, const TwistPoint& zeta, long k, const BigComplex& s, int l_max) {
    detail::check_rank(sp, zeta);
    const unsigned bits = working_precision();
    const BigComplex one(BigFloat(1L, bits));
    BigFloat worst(Bits{bits});
    for (const auto& e : sp.entries) {
        LengthSpectrum single;
        single.rank = sp.rank;
        single.entries = {e};
        const BigComplex lhs = ruelle_r(single, zeta, k, s).log_value;
        const BigComplex rhs = selberg_z(single, zeta, k, s + one, l_max).log_value + selberg_z(single, zeta, k, s - one, l_max).log_value -
                               selberg_z(single, zeta, k + 2, s, l_max).log_value - selberg_z(single, zeta, k - 2, s, l_max).log_value;
        worst = max(worst, abs(lhs - rhs));
    }
    return worst;
}

/// C'(eps) e^{L(2 + eps - s)} with C'(eps) = 4C / (1 - e^{-eps^2/2}).
inline double tail_bound(double eps, double s, double L, double C) {
    if (!(eps > 0)) throw Error(ErrorKind::domain, "tail_bound: eps must be positive");
    if (!(s > 2 + eps)) throw Error(ErrorKind::domain, "tail_bound: needs s > 2 + eps");
    if (!(L >= 1)) throw Error(ErrorKind::domain, "tail_bound: needs L >= 1");
    if (!(C >= 0)) throw Error(ErrorKind::domain, "tail_bound: C must be nonnegative");
    return 4 * C / (1 - std::exp(-eps * eps / 2)) * std::exp(L * (2 + eps - s));
}

struct GrowthReport {
    double C = 0;  // min C with count(l <= t) <= C e^{2t} at every sampled t
    double worst_length = 0;
    bool pass = true;
    double threshold = 1e3;
};

inline GrowthReport growth_check(const LengthSpectrum& sp, double threshold = 1e3) {
    GrowthReport r;
    r.threshold = threshold;
    double count = 0;
    for (std::size_t i = 0; i < sp.entries.size(); ++i) {
        count += static_cast<double>(sp.entries[i].multiplicity);
        if (i + 1 < sp.entries.size() && sp.entries[i + 1].length == sp.entries[i].length) continue;
        const double c = count * std::exp(-2 * sp.entries[i].length);
        if (c > r.C) {
            r.C = c;
            r.worst_length = sp.entries[i].length;
        }
    }
    r.pass = r.C <= threshold;
    return r;
}

struct SeriesReport {
    std::vector<double> terms;  // |log|R_{chi,-k}(k/2)||, k = 5..k_max
    double partial_sum = 0;
    double tail_estimate = 0;  // bound on k > k_max
    double total = 0;
};

inline SeriesReport series_bound_report(const LengthSpectrum& sp, const TwistPoint& zeta, int k_max = 60) {
    detail::check_rank(sp, zeta);
    if (k_max < 5) throw Error(ErrorKind::domain, "k_max must be at least 5");
    const unsigned bits = working_precision();
    SeriesReport r;
    std::vector<BigFloat> parts;
    for (int k = 5; k <= k_max; ++k) {
        const BigComplex s(BigFloat(static_cast<long>(k), bits) / BigFloat(2L, bits));
        const BigFloat t = abs(ruelle_r(sp, zeta, -static_cast<long>(k), s).log_value.re());
        r.terms.push_back(t.to_double());
        parts.push_back(t);
    }
    r.partial_sum = pairwise_sum(std::move(parts), bits).to_double();
    // |log|1 - z|| <= 4|z| for |z| < 1/2, summed geometrically in k
    for (const auto& e : sp.entries) {
        const double q = std::exp(-e.length / 2);
        r.tail_estimate += 4.0 * static_cast<double>(e.multiplicity) * std::pow(q, k_max + 1) / (1 - q);
    }
    r.total = r.partial_sum + r.tail_estimate;
    return r;
}

/// The two elementary inequalities used for tail estimates:
/// |z| < 1: |log|1-z|| <= |log(1-|z|)|; |z| < 1/2: |log|1-z|| <= 4|z|.
inline bool elementary_inequalities_hold(const BigComplex& z) {
    const unsigned bits = z.precision();
    const BigFloat one(1L, bits);
    const BigFloat r = abs(z);
    const BigFloat lhs = abs(log(abs(one - z)));
    bool ok = true;
    if (r < one) ok = ok && lhs <= abs(log(one - r));
    if (r < BigFloat(0.5, bits)) ok = ok && lhs <= BigFloat(4L, bits) * r;
    return ok;
}

}  // namespace torsionlab
