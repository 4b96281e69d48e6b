#pragma once
// Simultaneous polynomial root finding (Aberth-Ehrlich) at arbitrary precision.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <vector>

#include "torsionlab/bigfloat.hpp"
#include "torsionlab/laurent.hpp"

namespace torsionlab {

struct RootOptions {
    int max_iterations = 800;
};

namespace detail {

// Initial approximations on circles read off the upper convex hull of
// (k, log|c_k|); each hull edge of width m contributes m points on the circle
// of radius (|c_i| / |c_j|)^(1/m).
inline std::vector<BigComplex> newton_polygon_start(const std::vector<BigComplex>& c) {
    const std::size_t d = c.size() - 1;
    const unsigned bits = c.front().precision();
    std::vector<double> lg(c.size());
    for (std::size_t k = 0; k <= d; ++k) lg[k] = c[k].log2_abs();
    std::vector<std::size_t> hull;
    for (std::size_t k = 0; k <= d; ++k) {
        if (std::isinf(lg[k])) continue;
        while (hull.size() >= 2) {
            const std::size_t a = hull[hull.size() - 2], b = hull.back();
            // drop b when it lies on or below segment a-k
            const double cross = (static_cast<double>(b) - static_cast<double>(a)) * (lg[k] - lg[a]) -
                                 (lg[b] - lg[a]) * (static_cast<double>(k) - static_cast<double>(a));
            if (cross >= 0) hull.pop_back();
            else break;
        }
        hull.push_back(k);
    }
    std::vector<BigComplex> z;
    z.reserve(d);
    const double two_pi = 2.0 * M_PI;
    for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
        const std::size_t i = hull[h], j = hull[h + 1];
        const double m = static_cast<double>(j - i);
        const double log2_r = (lg[i] - lg[j]) / m;
        const BigFloat radius = exp(BigFloat(log2_r * std::log(2.0), bits));
        for (std::size_t q = 0; q < j - i; ++q) {
            const double angle = two_pi * static_cast<double>(q) / m + two_pi * static_cast<double>(h) / static_cast<double>(d) + 0.4;
            z.push_back(BigComplex::polar(radius, BigFloat(angle, bits)));
        }
    }
    return z;
}

inline void horner_with_derivative(const std::vector<BigComplex>& c, const BigComplex& z, BigComplex& p, BigComplex& dp,
                                   BigFloat& s1, BigFloat& s2) {
    const unsigned bits = c.front().precision();
    p = c.back();
    dp = BigComplex(Bits{bits});
    for (std::size_t k = c.size() - 1; k-- > 0;) {
        BigComplex ndp = p;
        add_mul(ndp, dp, z, s1, s2);
        dp = std::move(ndp);
        BigComplex np = c[k];
        add_mul(np, p, z, s1, s2);
        p = std::move(np);
    }
}

/// sum_k |c_k| |z|^k
inline BigFloat magnitude_bound(const std::vector<BigFloat>& abs_c, const BigFloat& r) {
    BigFloat acc = abs_c.back();
    for (std::size_t k = abs_c.size() - 1; k-- > 0;) acc = acc * r + abs_c[k];
    return acc;
}

}  // namespace detail

/// Relative residual |p(z)| / sum_k |c_k||z|^k (a backward error).
inline BigFloat relative_residual(const std::vector<BigComplex>& c, const BigComplex& z) {
    std::vector<BigFloat> abs_c;
    abs_c.reserve(c.size());
    for (const auto& x : c) abs_c.push_back(abs(x));
    BigFloat s1(Bits{z.precision()}), s2(Bits{z.precision()});
    BigComplex p, dp;
    detail::horner_with_derivative(c, z, p, dp, s1, s2);
    BigFloat bound = detail::magnitude_bound(abs_c, abs(z));
    return bound.is_zero() ? BigFloat(Bits{z.precision()}) : abs(p) / bound;
}

/// All roots of the ordinary part of `p`, each with relative residual at most
/// 2^(-bits/2). Degree 0 gives an empty multiset.
inline std::vector<BigComplex> polynomial_roots(const LaurentPolynomial& p, const RootOptions& opt = {}) {
    if (p.empty() || p.is_zero()) throw Error(ErrorKind::domain, "roots of the zero polynomial");
    std::vector<BigComplex> c = p.ordinary_part();
    if (c.size() <= 1) return {};
    const std::size_t d = c.size() - 1;
    const unsigned bits = c.front().precision();

    std::vector<BigFloat> abs_c;
    abs_c.reserve(c.size());
    for (const auto& x : c) abs_c.push_back(abs(x));

    std::vector<BigComplex> z = detail::newton_polygon_start(c);
    std::vector<char> done(d, 0);
    const double stop_log2 = -static_cast<double>(bits) + 12.0;
    BigFloat s1(Bits{bits}), s2(Bits{bits});
    BigComplex pv, dpv;
    const BigComplex one(BigFloat(1L, bits));

    int iter = 0;
    for (; iter < opt.max_iterations; ++iter) {
        bool all = true;
        for (std::size_t i = 0; i < d; ++i) {
            if (done[i]) continue;
            detail::horner_with_derivative(c, z[i], pv, dpv, s1, s2);
            const double res_log2 = pv.log2_abs() - detail::magnitude_bound(abs_c, abs(z[i])).log2_abs();
            if (pv.is_zero() || res_log2 <= stop_log2) {
                done[i] = 1;
                continue;
            }
            all = false;
            BigComplex ratio = pv / dpv;
            BigComplex sum(Bits{bits});
            for (std::size_t j = 0; j < d; ++j) {
                if (j == i) continue;
                BigComplex diff = z[i] - z[j];
                if (diff.is_zero()) continue;
                sum += one / diff;
            }
            BigComplex denom = one - ratio * sum;
            BigComplex step = denom.is_zero() ? ratio : ratio / denom;
            z[i] -= step;
            if (step.log2_abs() <= z[i].log2_abs() - static_cast<double>(bits) + 4.0) done[i] = 1;
        }
        if (all) break;
    }

    const double accept_log2 = -static_cast<double>(bits) / 2.0;
    double worst = -INFINITY;
    for (std::size_t i = 0; i < d; ++i) {
        detail::horner_with_derivative(c, z[i], pv, dpv, s1, s2);
        if (pv.is_zero()) continue;
        worst = std::max(worst, pv.log2_abs() - detail::magnitude_bound(abs_c, abs(z[i])).log2_abs());
    }
    if (worst > accept_log2) {
        std::ostringstream msg;
        msg << "root finder did not converge after " << iter << " iterations; worst relative residual 2^" << worst;
        throw Error(ErrorKind::convergence, msg.str());
    }
    return z;
}

}  // namespace torsionlab
