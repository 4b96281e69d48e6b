#pragma once
// n^2 growth of log|Delta^{alpha,n}|: volume fits, circle margins, root sums,
// Dehn filling factors and the rational cross-check against zeta values.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "torsionlab/alexander.hpp"
#include "torsionlab/bigfloat.hpp"
#include "torsionlab/error.hpp"
#include "torsionlab/roots.hpp"
#include "torsionlab/zeta.hpp"

namespace torsionlab {

/// Lobachevsky function Lambda(theta) = -int_0^theta log|2 sin u| du, from
/// Lambda(t) = t - t log(2t) + (1/2) sum_k zeta(2k) (2t)^{2k+1} / (k (2k+1) (2 pi)^{2k})
/// on 0 < t <= pi/2, with Lambda(pi - t) = -Lambda(t) and period pi.
inline BigFloat lobachevsky(const BigFloat& theta) {
    const unsigned bits = theta.precision();
    const BigFloat pi = BigFloat::pi(bits);
    const BigFloat zero(Bits{bits});
    BigFloat t = theta - pi * BigFloat(static_cast<long>(std::floor((theta / pi).to_double())), bits);
    while (t < zero) t = t + pi;
    while (t >= pi) t = t - pi;
    if (t.is_zero()) return zero;
    const bool reflect = t > ldexp(pi, -1);
    if (reflect) t = pi - t;
    const BigFloat two_t = ldexp(t, 1);
    BigFloat sum = t * (BigFloat(1L, bits) - log(two_t));
    const BigFloat ratio = (two_t / ldexp(pi, 1)) * (two_t / ldexp(pi, 1));
    BigFloat power = two_t;
    BigFloat zeta(Bits{bits});
    for (long k = 1; k < 4L * bits; ++k) {
        power = power * ratio;
        mpfr_zeta_ui(zeta.raw(), static_cast<unsigned long>(2 * k), MPFR_RNDN);
        const BigFloat term = zeta * power / BigFloat(2 * k * (2 * k + 1), bits);
        sum = sum + term;
        if (term.is_zero() || term.log2_abs() < sum.log2_abs() - static_cast<double>(bits) - 4) break;
    }
    return reflect ? -sum : sum;
}

struct QuadraticFit {
    double a = 0, b = 0, c = 0;  // y ~ a x^2 + b x + c
    double rms_residual = 0;
    double max_residual = 0;
};

/// Least squares in long double on centered abscissae; at least three points.
inline QuadraticFit fit_quadratic(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 3) throw Error(ErrorKind::domain, "quadratic fit needs at least three points");
    long double mean = 0;
    for (double v : x) mean += v;
    mean /= static_cast<long double>(x.size());
    std::array<std::array<long double, 4>, 3> m{};
    for (std::size_t i = 0; i < x.size(); ++i) {
        const long double u = x[i] - mean;
        const long double basis[3] = {u * u, u, 1.0L};
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) m[r][c] += basis[r] * basis[c];
            m[r][3] += basis[r] * y[i];
        }
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
        std::swap(m[col], m[piv]);
        if (m[col][col] == 0) throw Error(ErrorKind::degenerate, "quadratic fit: abscissae do not determine a parabola");
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const long double f = m[r][col] / m[col][col];
            for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
        }
    }
    const long double A = m[0][3] / m[0][0], B = m[1][3] / m[1][1], C = m[2][3] / m[2][2];
    QuadraticFit f;
    f.a = static_cast<double>(A);
    f.b = static_cast<double>(B - 2 * A * mean);
    f.c = static_cast<double>(C - B * mean + A * mean * mean);
    long double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const long double u = x[i] - mean;
        const long double r = y[i] - (A * u * u + B * u + C);
        ss += r * r;
        f.max_residual = std::max(f.max_residual, static_cast<double>(std::fabs(r)));
    }
    f.rms_residual = static_cast<double>(std::sqrt(ss / static_cast<long double>(x.size())));
    return f;
}

/// Top half of [lo, hi]: the last ceil(count / 2) values.
inline std::pair<int, int> top_half_window(int lo, int hi) {
    const int count = hi - lo + 1;
    return {hi - (count + 1) / 2 + 1, hi};
}

struct VolumeSample {
    int n = 0;
    std::size_t zeta_index = 0;
    BigFloat log_modulus;
};

struct VolumeEstimate {
    std::vector<VolumeSample> samples;
    QuadraticFit fit;
    double volume = 0;  // 4 pi a
    int window_lo = 0, window_hi = 0;
};

/// Fits a n^2 + b n + c to the samples with window_lo <= n <= window_hi.
inline VolumeEstimate fit_volume(std::vector<VolumeSample> samples, int window_lo, int window_hi) {
    std::vector<double> x, y;
    for (const auto& s : samples) {
        if (s.n < window_lo || s.n > window_hi) continue;
        x.push_back(static_cast<double>(s.n));
        y.push_back(s.log_modulus.to_double());
    }
    if (x.size() < 4) throw Error(ErrorKind::domain, "volume fit window has " + std::to_string(x.size()) + " points, needs at least 4");
    VolumeEstimate v;
    v.fit = fit_quadratic(x, y);
    v.volume = 4 * M_PI * v.fit.a;
    v.window_lo = window_lo;
    v.window_hi = window_hi;
    v.samples = std::move(samples);
    return v;
}

struct VolumeOptions {
    std::optional<int> window;  // number of top n values fitted; default top half
    std::optional<std::size_t> column;
    std::size_t zeta_index = 0;
};

/// log|Delta^{alpha,n}(zeta)| for n_lo <= n <= n_hi and the quadratic fit.
inline VolumeEstimate volume_sequence(const HolonomyLift& rho, const AlphaMap& alpha, const TwistPoint& zeta, int n_lo, int n_hi,
                                      const PeripheralData* peripheral = nullptr, const VolumeOptions& opt = {}) {
    if (n_lo < 2 || n_hi < n_lo) throw Error(ErrorKind::domain, "n range must satisfy 2 <= n_lo <= n_hi");
    auto [wlo, whi] = top_half_window(n_lo, n_hi);
    if (opt.window) wlo = std::max(n_lo, n_hi - *opt.window + 1);
    if (whi - wlo + 1 < 4) throw Error(ErrorKind::domain, "volume fit window has fewer than 4 points");
    std::vector<VolumeSample> samples;
    for (int n = n_lo; n <= n_hi; ++n) {
        const DeltaValue d = evaluate_delta_at(rho, n, alpha, zeta, peripheral, opt.column);
        if (d.modulus.is_zero()) throw Error(ErrorKind::degenerate, "Delta vanishes at the twist point for n = " + std::to_string(n));
        samples.push_back({n, opt.zeta_index, log(d.modulus)});
    }
    return fit_volume(std::move(samples), wlo, whi);
}

/// min over roots of ||lambda| - 1|; +infinity for no roots.
inline BigFloat unit_circle_margin(const std::vector<BigComplex>& roots, unsigned bits = working_precision()) {
    if (roots.empty()) return BigFloat::infinity(bits);
    BigFloat best = BigFloat::infinity(bits);
    for (const auto& z : roots) best = min(best, abs(abs(z) - BigFloat(1L, z.precision())));
    return best;
}

/// Whether a margin counts as a root on the circle at the given precision.
inline bool margin_flags_circle_root(const BigFloat& margin) {
    return margin.is_zero() || margin.log2_abs() < -static_cast<double>(margin.precision()) / 2.0;
}

struct RootLogSum {
    BigFloat sum;         // sum |log|lambda||
    BigFloat normalized;  // sum / n^2
};

inline RootLogSum root_log_sum(const std::vector<BigComplex>& roots, int n, unsigned bits = working_precision()) {
    if (n < 1) throw Error(ErrorKind::domain, "n must be positive");
    std::vector<BigFloat> parts;
    for (const auto& z : roots) {
        if (z.is_zero() || z.log2_abs() < -static_cast<double>(z.precision()) / 2.0)
            throw Error(ErrorKind::domain, "root at zero: strip the monomial factor first");
        parts.push_back(abs(log(abs(z))));
    }
    RootLogSum r;
    r.sum = pairwise_sum(std::move(parts), bits);
    r.normalized = r.sum / BigFloat(static_cast<long>(n) * n, bits);
    return r;
}

struct RootSumSample {
    int n = 0;
    BigFloat sum;
    BigFloat normalized;
    BigFloat margin;
};

struct RootSumSequence {
    std::vector<RootSumSample> samples;
    QuadraticFit fit;  // of the sum against n over the top-half window
    int window_lo = 0, window_hi = 0;
};

/// Root sums of Delta^{alpha,n} (rank one) for n_lo..n_hi, with the fitted
/// leading coefficient as the extrapolated limit of sum / n^2.
inline RootSumSequence root_sum_sequence(const HolonomyLift& rho, const AlphaMap& alpha, int n_lo, int n_hi,
                                         const PeripheralData* peripheral = nullptr) {
    if (n_lo < 2 || n_hi < n_lo) throw Error(ErrorKind::domain, "n range must satisfy 2 <= n_lo <= n_hi");
    RootSumSequence out;
    std::tie(out.window_lo, out.window_hi) = top_half_window(n_lo, n_hi);
    std::vector<double> x, y;
    for (int n = n_lo; n <= n_hi; ++n) {
        const TwistedAlexResult d = twisted_alexander(rho, n, alpha, peripheral);
        const auto roots = polynomial_roots(*d.polynomial);
        RootSumSample s;
        s.n = n;
        const RootLogSum r = root_log_sum(roots, n);
        s.sum = r.sum;
        s.normalized = r.normalized;
        s.margin = unit_circle_margin(roots);
        if (n >= out.window_lo) {
            x.push_back(n);
            y.push_back(s.sum.to_double());
        }
        out.samples.push_back(std::move(s));
    }
    if (x.size() < 4) throw Error(ErrorKind::domain, "root-sum fit window has fewer than 4 points");
    out.fit = fit_quadratic(x, y);
    return out;
}

struct DehnFillingFactor {
    int n = 0;
    std::vector<BigComplex> lambdas;  // complex lengths of the filling cores
    std::vector<BigComplex> chi_m;    // chi(m_j)
    BigComplex value;
};

/// prod_j prod_{k=0}^{n-1} (e^{lambda_j (n-1-2k)/2} chi(m_j) - 1); for odd n the
/// k with 2k = n-1 is skipped on cusps flagged chi-trivial.
inline DehnFillingFactor dehn_filling_factor(int n, const std::vector<BigComplex>& lambdas, const std::vector<BigComplex>& chi_m,
                                             const std::vector<bool>& chi_trivial) {
    if (n < 1) throw Error(ErrorKind::domain, "n must be positive");
    if (lambdas.size() != chi_m.size() || lambdas.size() != chi_trivial.size())
        throw Error(ErrorKind::domain, "one lambda, chi(m) and triviality flag per cusp");
    const unsigned bits = working_precision();
    DehnFillingFactor f;
    f.n = n;
    f.lambdas = lambdas;
    f.chi_m = chi_m;
    f.value = BigComplex(BigFloat(1L, bits));
    const BigComplex one(BigFloat(1L, bits));
    for (std::size_t j = 0; j < lambdas.size(); ++j) {
        if (!(lambdas[j].re() > BigFloat(Bits{bits}))) throw Error(ErrorKind::domain, "complex length must have positive real part");
        for (int k = 0; k < n; ++k) {
            if (n % 2 == 1 && chi_trivial[j] && 2 * k == n - 1) continue;
            const BigComplex e = exp(lambdas[j] * BigFloat(static_cast<long>(n - 1 - 2 * k), bits) / BigFloat(2L, bits));
            f.value = f.value * (e * chi_m[j] - one);
        }
    }
    return f;
}

enum class Parity { even, odd };

namespace detail {

inline void require_roots_of_unity(const TwistPoint& zeta) {
    for (const auto& z : zeta.components()) {
        const double frac = arg(z).to_double() / (2 * M_PI);
        bool found = false;
        for (int q = 1; q <= 10000 && !found; ++q) found = std::fabs(frac * q - std::round(frac * q)) < 1e-9;
        if (!found) throw Error(ErrorKind::domain, "rational cross-check needs roots of unity");
    }
}

}  // namespace detail

/// Volume term minus the truncated zeta sum:
///   even: (vol/pi)(m-2)(m+2) - sum_{k=2}^{m-1} log|R_{chi,-2k-1}(k+1/2)|
///   odd:  (vol/pi)(m-2)(m+3) - sum_{k=3}^{m}   log|R_{chi,-2k}(k)|
inline BigFloat corollary_rhs(const LengthSpectrum& sp, const TwistPoint& zeta, double vol, int m, Parity parity) {
    if (m < 2) throw Error(ErrorKind::domain, "m must be at least 2");
    const unsigned bits = working_precision();
    const BigFloat vterm = BigFloat(vol, bits) / BigFloat::pi(bits) *
                           BigFloat(static_cast<long>((m - 2) * (parity == Parity::even ? m + 2 : m + 3)), bits);
    std::vector<BigFloat> parts;
    if (parity == Parity::even) {
        for (int k = 2; k <= m - 1; ++k) {
            const BigComplex s(BigFloat(static_cast<long>(2 * k + 1), bits) / BigFloat(2L, bits));
            parts.push_back(ruelle_r(sp, zeta, -static_cast<long>(2 * k + 1), s).log_value.re());
        }
    } else {
        for (int k = 3; k <= m; ++k)
            parts.push_back(ruelle_r(sp, zeta, -static_cast<long>(2 * k), BigComplex(BigFloat(static_cast<long>(k), bits))).log_value.re());
    }
    return vterm - pairwise_sum(std::move(parts), bits);
}

/// log|Delta^{2m}(zeta) / Delta^4(zeta)| (even) or log|Delta^{2m+1} / Delta^5| (odd).
inline BigFloat corollary_lhs(const HolonomyLift& rho, const AlphaMap& alpha, const TwistPoint& zeta, int m, Parity parity,
                              const PeripheralData* peripheral = nullptr) {
    if (m < 2) throw Error(ErrorKind::domain, "m must be at least 2");
    const int top = parity == Parity::even ? 2 * m : 2 * m + 1;
    const int base = parity == Parity::even ? 4 : 5;
    if (top == base) return BigFloat(Bits{working_precision()});
    return log(evaluate_delta_at(rho, top, alpha, zeta, peripheral).modulus) - log(evaluate_delta_at(rho, base, alpha, zeta, peripheral).modulus);
}

/// |lhs - rhs| for a given left-hand side.
inline BigFloat rational_corollary_residual(const BigFloat& lhs, const LengthSpectrum& sp, const TwistPoint& zeta, double vol, int m,
                                            Parity parity) {
    detail::require_roots_of_unity(zeta);
    return abs(lhs - corollary_rhs(sp, zeta, vol, m, parity));
}

inline BigFloat rational_corollary_residual(const HolonomyLift& rho, const AlphaMap& alpha, const TwistPoint& zeta,
                                            const LengthSpectrum& sp, double vol, int m, Parity parity,
                                            const PeripheralData* peripheral = nullptr) {
    if (sp.rank != alpha.rank()) throw Error(ErrorKind::domain, "spectrum rank does not match alpha");
    detail::require_roots_of_unity(zeta);
    return abs(corollary_lhs(rho, alpha, zeta, m, parity, peripheral) - corollary_rhs(sp, zeta, vol, m, parity));
}

}  // namespace torsionlab
