#pragma once
// Sampling and reconstruction of Laurent polynomials on rotated roots of unity.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "torsionlab/bigfloat.hpp"
#include "torsionlab/laurent.hpp"

namespace torsionlab {

/// Sum in a fixed balanced-tree order, independent of how the range was built.
inline BigComplex pairwise_sum(std::vector<BigComplex> terms, unsigned bits = working_precision()) {
    if (terms.empty()) return BigComplex(Bits{bits});
    while (terms.size() > 1) {
        std::size_t half = (terms.size() + 1) / 2;
        for (std::size_t i = 0; i + half < terms.size(); ++i) terms[i] += terms[i + half];
        terms.resize(half);
    }
    return std::move(terms.front());
}

inline BigFloat pairwise_sum(std::vector<BigFloat> terms, unsigned bits = working_precision()) {
    if (terms.empty()) return BigFloat(Bits{bits});
    while (terms.size() > 1) {
        std::size_t half = (terms.size() + 1) / 2;
        for (std::size_t i = 0; i + half < terms.size(); ++i) terms[i] += terms[i + half];
        terms.resize(half);
    }
    return std::move(terms.front());
}

/// FNV-1a; stable across platforms, used to seed node rotations.
inline std::uint64_t stable_hash(std::string_view bytes, std::uint64_t h = 1469598103934665603ULL) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

/// Rotation angle in [0.25, 0.75) of one node spacing 2*pi/N, derived from a
/// seed. Keeps every node at least pi/(2N) away from t = 1.
inline BigFloat node_rotation(std::uint64_t seed, std::size_t node_count, unsigned bits = working_precision()) {
    const double frac = 0.25 + 0.5 * static_cast<double>(seed >> 11) * 0x1.0p-53;
    BigFloat two_pi = ldexp(BigFloat::pi(bits), 1);
    return two_pi * BigFloat(frac, bits) / BigFloat(static_cast<long>(node_count), bits);
}

/// e^{-2 pi i q / N}, q = 0..N-1
inline std::vector<BigComplex> inverse_roots_of_unity(std::size_t n, unsigned bits = working_precision()) {
    std::vector<BigComplex> w;
    w.reserve(n);
    const BigFloat two_pi = ldexp(BigFloat::pi(bits), 1);
    for (std::size_t q = 0; q < n; ++q) {
        BigFloat angle = -two_pi * BigFloat(static_cast<long>(q), bits) / BigFloat(static_cast<long>(n), bits);
        w.push_back(BigComplex::unit(angle));
    }
    return w;
}

/// Nodes e^{i rotation} * e^{2 pi i j / N}, j = 0..N-1.
inline std::vector<BigComplex> rotated_nodes(std::size_t n, const BigFloat& rotation) {
    std::vector<BigComplex> nodes;
    nodes.reserve(n);
    const unsigned bits = rotation.precision();
    const BigFloat two_pi = ldexp(BigFloat::pi(bits), 1);
    for (std::size_t j = 0; j < n; ++j) {
        BigFloat angle = rotation + two_pi * BigFloat(static_cast<long>(j), bits) / BigFloat(static_cast<long>(n), bits);
        nodes.push_back(BigComplex::unit(angle));
    }
    return nodes;
}

/// Recovers the Laurent polynomial with exponents offset..offset+N-1 whose
/// values at the rotated nodes are `values`.
inline LaurentPolynomial interpolate_on_rotated_roots_of_unity(const std::vector<BigComplex>& values,
                                                               const BigFloat& rotation, long exponent_offset) {
    const std::size_t n = values.size();
    if (n == 0) throw Error(ErrorKind::domain, "interpolation needs at least one node");
    const unsigned bits = std::max(values.front().precision(), rotation.precision());
    const auto table = inverse_roots_of_unity(n, bits);
    const long nn = static_cast<long>(n);
    const BigFloat inv_n = BigFloat(1L, bits) / BigFloat(nn, bits);

    std::vector<BigComplex> coeffs;
    coeffs.reserve(n);
    std::vector<BigComplex> terms(n, BigComplex(Bits{bits}));
    for (std::size_t k = 0; k < n; ++k) {
        const long m = static_cast<long>(k) + exponent_offset;
        const long mm = ((m % nn) + nn) % nn;
        for (std::size_t j = 0; j < n; ++j) {
            const auto q = static_cast<std::size_t>((static_cast<long>(j) * mm) % nn);
            terms[j] = values[j] * table[q];
        }
        BigComplex s = pairwise_sum(terms, bits);
        // undo the rotation: multiply by e^{-i m rotation}
        BigComplex unrotate = BigComplex::unit(-rotation * BigFloat(m, bits));
        coeffs.push_back(s * unrotate * inv_n);
    }
    return {exponent_offset, std::move(coeffs)};
}

}  // namespace torsionlab
