#pragma once
// Deterministic text and CSV renderings of computation results.

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "torsionlab/alexander.hpp"
#include "torsionlab/anosov.hpp"
#include "torsionlab/asymptotics.hpp"
#include "torsionlab/mahler.hpp"

namespace torsionlab {

/// precision_bits / 4 significant digits, truncated toward zero.
inline int report_digits(unsigned bits) { return std::max(1, static_cast<int>(bits / 4)); }

inline std::string fmt(const BigFloat& x, unsigned bits) { return x.to_string(report_digits(bits)); }

inline std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string polynomial_csv(const LaurentPolynomial& p, unsigned bits) {
    std::ostringstream out;
    out << "exponent,re,im\n";
    for (long e = p.min_exponent(); !p.empty() && e <= p.max_exponent(); ++e) {
        const BigComplex c = p.coefficient(e);
        out << e << ',' << fmt(c.re(), bits) << ',' << fmt(c.im(), bits) << '\n';
    }
    return out.str();
}

inline std::string alexander_text(const TwistedAlexResult& r, unsigned bits) {
    std::ostringstream out;
    out << "n: " << r.n << '\n';
    out << "normalization: " << to_string(r.normalization) << '\n';
    out << "removed_column: " << r.removed_column << '\n';
    out << "internal_precision: " << r.internal_precision << '\n';
    out << "quotient_residual: " << r.quotient_residual.to_string(6) << '\n';
    out << "laurentness_residual: " << r.laurentness_residual.to_string(6) << '\n';
    auto coefficients = [&](const char* name, const LaurentPolynomial& p) {
        out << name << "_degree: " << (p.empty() ? 0 : p.max_exponent() - p.min_exponent()) << '\n';
        for (long e = p.min_exponent(); !p.empty() && e <= p.max_exponent(); ++e) {
            const BigComplex c = p.coefficient(e);
            out << name << '[' << e << "]: " << fmt(c.re(), bits) << ' ' << fmt(c.im(), bits) << '\n';
        }
    };
    if (r.polynomial) coefficients("delta", *r.polynomial);
    if (r.rational_pair) {
        coefficients("numerator", r.rational_pair->first);
        coefficients("denominator", r.rational_pair->second);
    }
    for (const auto& note : r.notes) out << "note: " << note << '\n';
    return out.str();
}

inline std::string volume_csv(const VolumeEstimate& v, unsigned bits) {
    std::ostringstream out;
    out << "n,zeta_index,log_modulus,normalized\n";
    for (const auto& s : v.samples) {
        const BigFloat norm = s.log_modulus / BigFloat(static_cast<long>(s.n) * s.n, s.log_modulus.precision());
        out << s.n << ',' << s.zeta_index << ',' << fmt(s.log_modulus, bits) << ',' << fmt(norm, bits) << '\n';
    }
    out << "volume=" << fmt(v.volume) << '\n';
    out << "fit=" << fmt(v.fit.a) << ',' << fmt(v.fit.b) << ',' << fmt(v.fit.c) << '\n';
    out << "fit_residual=" << fmt(v.fit.rms_residual) << ',' << fmt(v.fit.max_residual) << '\n';
    out << "window=" << v.window_lo << ".." << v.window_hi << '\n';
    return out.str();
}

inline std::string mahler_csv(const MahlerSequence& m, unsigned bits) {
    std::ostringstream out;
    out << "n,mahler,normalized\n";
    for (const auto& s : m.samples) out << s.n << ',' << fmt(s.mahler.value, bits) << ',' << fmt(s.normalized, bits) << '\n';
    out << "limit=" << fmt(m.limit) << '\n';
    out << "window=" << m.window_lo << ".." << m.window_hi << '\n';
    return out.str();
}

inline std::string roots_csv(const std::vector<BigComplex>& roots, unsigned bits) {
    std::ostringstream out;
    out << "root_re,root_im,modulus\n";
    for (const auto& z : roots) out << fmt(z.re(), bits) << ',' << fmt(z.im(), bits) << ',' << fmt(abs(z), bits) << '\n';
    return out.str();
}

inline std::string anosov_csv(const CharPolyProduct& cp, const HyperbolicityReport& h, unsigned bits) {
    std::ostringstream out;
    out << roots_csv(cp.roots, bits);
    out << "margin=" << fmt(h.margin, bits) << '\n';
    out << "circle_root=" << (h.circle_root ? "yes" : "no") << '\n';
    out << "symmetry_distance=" << fmt(h.symmetry_distance) << '\n';
    return out.str();
}

}  // namespace torsionlab
