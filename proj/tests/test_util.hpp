#pragma once

#include <random>
#include <string>

#include "torsionlab/bigfloat.hpp"
#include "torsionlab/matrix.hpp"

namespace tltest {

using torsionlab::BigComplex;
using torsionlab::BigFloat;
using torsionlab::ComplexMatrix;

inline BigComplex random_complex(std::mt19937_64& rng, unsigned bits, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    // two doubles per part keep the low bits populated
    BigFloat re = BigFloat(u(rng), bits) + BigFloat(u(rng), bits) * BigFloat(0x1.0p-50, bits);
    BigFloat im = BigFloat(u(rng), bits) + BigFloat(u(rng), bits) * BigFloat(0x1.0p-50, bits);
    return {re, im};
}

inline ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t n, unsigned bits) {
    ComplexMatrix m(n, n, bits);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = random_complex(rng, bits);
    return m;
}

/// Random element of SL2(C): random entries then rescaled by sqrt(det).
inline ComplexMatrix random_sl2(std::mt19937_64& rng, unsigned bits) {
    ComplexMatrix m = random_matrix(rng, 2, bits);
    BigComplex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    BigComplex s = BigComplex(BigFloat(1L, bits)) / sqrt(det);
    return m * s;
}

inline double rel_err(const BigComplex& a, const BigComplex& b) {
    BigFloat d = abs(a - b);
    BigFloat s = abs(b);
    if (s.is_zero()) return d.to_double();
    return (d / s).to_double();
}

inline std::string data_path(const std::string& name) { return std::string(TORSIONLAB_DATA_DIR) + "/" + name; }

}  // namespace tltest
