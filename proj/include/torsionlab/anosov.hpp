#pragma once
// Mapping tori: the product of odd twisted Alexander polynomials and the
// hyperbolicity of its roots.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "torsionlab/alexander.hpp"
#include "torsionlab/asymptotics.hpp"
#include "torsionlab/roots.hpp"

namespace torsionlab {

struct CharPolyProduct {
    int n = 0;
    std::vector<LaurentPolynomial> factors;  // Delta^{alpha,2k+1}, k = 1..n-1
    LaurentPolynomial product;
    std::vector<BigComplex> roots;
    std::vector<std::string> notes;
};

/// Checks the fibration shape of alpha: the monodromy generators (those not
/// sent to 0) must all be sent to 1.
inline void require_fibration(const AlphaMap& alpha) {
    if (alpha.rank() != 1) throw Error(ErrorKind::domain, "fibration alpha must have rank one");
    bool any = false;
    for (const auto& v : alpha.images()) {
        if (v[0] == 0) continue;
        if (v[0] != 1) throw Error(ErrorKind::domain, "fibration alpha must send each generator to 0 or 1");
        any = true;
    }
    if (!any) throw Error(ErrorKind::domain, "fibration alpha sends every generator to 0");
}

inline CharPolyProduct characteristic_product(const HolonomyLift& rho, const AlphaMap& alpha, int n,
                                              const PeripheralData* peripheral = nullptr) {
    if (n < 2) throw Error(ErrorKind::domain, "n must be at least 2");
    require_fibration(alpha);
    const unsigned bits = working_precision();
    CharPolyProduct cp;
    cp.n = n;
    cp.product = LaurentPolynomial::constant(BigComplex(BigFloat(1L, bits)));
    for (int k = 1; k <= n - 1; ++k) {
        TwistedAlexResult d = twisted_alexander(rho, 2 * k + 1, alpha, peripheral);
        for (auto& note : d.notes)
            if (std::find(cp.notes.begin(), cp.notes.end(), note) == cp.notes.end()) cp.notes.push_back(note);
        const LaurentPolynomial& f = *d.polynomial;
        cp.product = cp.product * f;
        cp.factors.push_back(f);
    }
    // roots factor by factor: the product's roots are their union and each
    // factor is better conditioned than the product
    for (const auto& f : cp.factors) {
        auto r = polynomial_roots(f);
        cp.roots.insert(cp.roots.end(), r.begin(), r.end());
    }
    return cp;
}

struct HyperbolicityReport {
    BigFloat margin;            // min ||lambda| - 1|
    bool circle_root = false;   // margin indistinguishable from 0
    double symmetry_distance = 0;  // matching distance between the roots and their inverses
};

/// Bottleneck matching distance of the root multiset against its image under
/// lambda -> 1/lambda (greedy nearest match, exact for well-separated roots).
inline double inversion_symmetry_distance(const std::vector<BigComplex>& roots) {
    const std::size_t d = roots.size();
    if (d == 0) return 0;
    const unsigned bits = roots.front().precision();
    const BigComplex one(BigFloat(1L, bits));
    std::vector<BigComplex> inv;
    for (const auto& z : roots) {
        if (z.is_zero()) return INFINITY;
        inv.push_back(one / z);
    }
    std::vector<char> used(d, 0);
    double worst = 0;
    // match roots in a fixed order, each to the nearest unused inverse
    for (std::size_t i = 0; i < d; ++i) {
        std::size_t best = d;
        BigFloat best_dist = BigFloat::infinity(bits);
        for (std::size_t j = 0; j < d; ++j) {
            if (used[j]) continue;
            BigFloat dist = abs(roots[i] - inv[j]) / max(BigFloat(1L, bits), abs(roots[i]));
            if (dist < best_dist) {
                best_dist = dist;
                best = j;
            }
        }
        used[best] = 1;
        worst = std::max(worst, best_dist.to_double());
    }
    return worst;
}

inline HyperbolicityReport hyperbolicity_report(const std::vector<BigComplex>& roots) {
    HyperbolicityReport r;
    r.margin = unit_circle_margin(roots);
    r.circle_root = margin_flags_circle_root(r.margin);
    r.symmetry_distance = inversion_symmetry_distance(roots);
    return r;
}

inline HyperbolicityReport hyperbolicity_report(const CharPolyProduct& cp) { return hyperbolicity_report(cp.roots); }

}  // namespace torsionlab
