#pragma once
// Logarithmic Mahler measures: Jensen's formula for one variable, tensor
// trapezoid quadrature on the torus for any number of variables.

#include <cmath>
#include <cstddef>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "torsionlab/alexander.hpp"
#include "torsionlab/asymptotics.hpp"
#include "torsionlab/bigfloat.hpp"
#include "torsionlab/interpolation.hpp"
#include "torsionlab/laurent.hpp"
#include "torsionlab/roots.hpp"

namespace torsionlab {

enum class MahlerMethod { jensen, quadrature };

inline const char* to_string(MahlerMethod m) { return m == MahlerMethod::jensen ? "jensen" : "quadrature"; }

struct MahlerResult {
    BigFloat value;
    MahlerMethod method = MahlerMethod::jensen;
    std::size_t count = 0;        // roots (jensen) or nodes (quadrature)
    double error_indicator = 0;   // jensen: worst relative root residual; quadrature: |Q_N - Q_{N/2}|
};

/// m(p) = log|lead| + sum_{|lambda| > 1} log|lambda|.
inline MahlerResult mahler_jensen(const LaurentPolynomial& p) {
    const LaurentPolynomial q = p.unit_normalized();
    if (q.empty() || q.is_zero()) throw Error(ErrorKind::domain, "Mahler measure of the zero polynomial");
    const unsigned bits = q.precision();
    const auto roots = polynomial_roots(q);
    const auto coeffs = q.ordinary_part();
    MahlerResult r;
    r.method = MahlerMethod::jensen;
    r.count = roots.size();
    std::vector<BigFloat> parts{log(abs(coeffs.back()))};
    const BigFloat one(1L, bits);
    for (const auto& z : roots) {
        const BigFloat a = abs(z);
        if (a > one) parts.push_back(log(a));
        r.error_indicator = std::max(r.error_indicator, relative_residual(coeffs, z).to_double());
    }
    r.value = pairwise_sum(std::move(parts), bits);
    return r;
}

/// Evaluator: torus point (e^{i phi_1}, ..., e^{i phi_r}) -> |P|.
using ModulusEvaluator = std::function<BigFloat(const std::vector<BigComplex>&)>;

/// Equal-weight trapezoid rule on grid^r nodes phi_j = 2 pi (j + rotation) / grid.
inline MahlerResult mahler_quadrature(const ModulusEvaluator& f, std::size_t r, std::size_t grid, double rotation = 0.0) {
    if (r == 0) throw Error(ErrorKind::domain, "quadrature needs at least one variable");
    if (grid < 2) throw Error(ErrorKind::domain, "quadrature grid must have at least 2 nodes per dimension");
    const unsigned bits = working_precision();
    std::vector<BigComplex> circle;
    circle.reserve(grid);
    const BigFloat two_pi = ldexp(BigFloat::pi(bits), 1);
    for (std::size_t j = 0; j < grid; ++j)
        circle.push_back(BigComplex::unit(two_pi * (BigFloat(static_cast<long>(j), bits) + BigFloat(rotation, bits)) /
                                          BigFloat(static_cast<long>(grid), bits)));
    std::size_t total = 1;
    for (std::size_t d = 0; d < r; ++d) total *= grid;
    std::vector<BigFloat> logs;
    logs.reserve(total);
    std::vector<BigFloat> coarse;  // nodes with every index even
    std::vector<std::size_t> idx(r, 0);
    std::vector<BigComplex> point(r);
    for (std::size_t node = 0; node < total; ++node) {
        std::size_t rest = node;
        bool even = true;
        for (std::size_t d = 0; d < r; ++d) {
            idx[d] = rest % grid;
            rest /= grid;
            point[d] = circle[idx[d]];
            even = even && idx[d] % 2 == 0;
        }
        const BigFloat v = f(point);
        if (!v.is_finite() || v.is_zero()) {
            std::ostringstream msg;
            msg << "non-finite log|P| at node (";
            for (std::size_t d = 0; d < r; ++d) msg << (d ? "," : "") << idx[d];
            msg << ") of a " << grid << "-point grid";
            throw Error(ErrorKind::degenerate, msg.str());
        }
        BigFloat lg = log(v);
        if (even && grid % 2 == 0) coarse.push_back(lg);
        logs.push_back(std::move(lg));
    }
    MahlerResult res;
    res.method = MahlerMethod::quadrature;
    res.count = total;
    res.value = pairwise_sum(std::move(logs), bits) / BigFloat(static_cast<long>(total), bits);
    if (grid % 2 == 0) {
        const std::size_t nc = coarse.size();
        const BigFloat half = pairwise_sum(std::move(coarse), bits) / BigFloat(static_cast<long>(nc), bits);
        res.error_indicator = abs(half - res.value).to_double();
    }
    return res;
}

/// Univariate quadrature of a Laurent polynomial.
inline MahlerResult mahler_quadrature(const LaurentPolynomial& p, std::size_t grid = 4096, double rotation = 0.0) {
    return mahler_quadrature([&](const std::vector<BigComplex>& z) { return abs(p(z[0])); }, 1, grid, rotation);
}

struct MahlerSample {
    int n = 0;
    MahlerResult mahler;
    BigFloat normalized;  // m / n^2
};

struct MahlerSequence {
    std::vector<MahlerSample> samples;
    QuadraticFit fit;
    double limit = 0;  // leading coefficient: the fitted limit of m / n^2
    int window_lo = 0, window_hi = 0;
};

struct MahlerOptions {
    std::size_t grid = 0;  // quadrature grid per dimension; 0 picks 4096 (r = 1) or 512
};

/// m(Delta^{alpha,n}) for n_lo..n_hi (Jensen for r = 1, quadrature of pointwise
/// values otherwise) and the quadratic-fit limit over the top-half window.
inline MahlerSequence mahler_sequence(const HolonomyLift& rho, const AlphaMap& alpha, int n_lo, int n_hi,
                                      const PeripheralData* peripheral = nullptr, const MahlerOptions& opt = {}) {
    if (n_lo < 2 || n_hi < n_lo) throw Error(ErrorKind::domain, "n range must satisfy 2 <= n_lo <= n_hi");
    MahlerSequence out;
    std::tie(out.window_lo, out.window_hi) = top_half_window(n_lo, n_hi);
    if (out.window_hi - out.window_lo + 1 < 4) throw Error(ErrorKind::domain, "Mahler fit window has fewer than 4 points");
    const unsigned bits = working_precision();
    std::vector<double> x, y;
    for (int n = n_lo; n <= n_hi; ++n) {
        MahlerSample s;
        s.n = n;
        if (alpha.rank() == 1) {
            s.mahler = mahler_jensen(*twisted_alexander(rho, n, alpha, peripheral).polynomial);
        } else {
            const std::size_t grid = opt.grid ? opt.grid : 512;
            s.mahler = mahler_quadrature(
                [&](const std::vector<BigComplex>& z) { return evaluate_delta_at(rho, n, alpha, TwistPoint(z), peripheral).modulus; },
                alpha.rank(), grid);
        }
        s.normalized = s.mahler.value / BigFloat(static_cast<long>(n) * n, bits);
        if (n >= out.window_lo) {
            x.push_back(n);
            y.push_back(s.mahler.value.to_double());
        }
        out.samples.push_back(std::move(s));
    }
    out.fit = fit_quadratic(x, y);
    out.limit = out.fit.a;
    return out;
}

}  // namespace torsionlab
