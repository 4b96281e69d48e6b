#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "test_util.hpp"
#include "torsionlab/interpolation.hpp"
#include "torsionlab/laurent.hpp"
#include "torsionlab/matrix.hpp"
#include "torsionlab/roots.hpp"

using namespace torsionlab;
using tltest::rel_err;

namespace {

// Leibniz expansion over all permutations; independent of the LU path.
BigComplex leibniz_det(const ComplexMatrix& m) {
    const std::size_t n = m.rows();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    BigComplex total(Bits{m.precision()});
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        BigComplex term(BigFloat(1L, m.precision()));
        for (std::size_t i = 0; i < n; ++i) term = term * m(i, perm[i]);
        if (inversions % 2) total -= term;
        else total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

LaurentPolynomial from_reals(long lo, std::vector<double> c) {
    std::vector<BigComplex> v;
    for (double x : c) v.emplace_back(BigFloat(x, 256));
    return {lo, v};
}

}  // namespace

TEST(Determinant, IdentityAndDiagonal) {
    WorkingPrecision wp(256);
    EXPECT_LT(rel_err(determinant(ComplexMatrix::identity(5)), BigComplex(1)), 1e-70);
    ComplexMatrix d(2, 2);
    d(0, 0) = BigComplex(2);
    d(1, 1) = BigComplex(3);
    EXPECT_LT(rel_err(determinant(d), BigComplex(6)), 1e-70);
}

TEST(Determinant, MatchesLeibnizOracle) {
    WorkingPrecision wp(256);
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 3; ++rep) {
        ComplexMatrix m = tltest::random_matrix(rng, 6, 256);
        EXPECT_LT(rel_err(determinant(m), leibniz_det(m)), 1e-60);
    }
}

TEST(Determinant, SingularGivesExactZero) {
    WorkingPrecision wp(256);
    std::mt19937_64 rng(5);
    ComplexMatrix m = tltest::random_matrix(rng, 4, 256);
    for (std::size_t j = 0; j < 4; ++j) m(3, j) = m(0, j) + m(1, j);
    EXPECT_TRUE(determinant(m).is_zero());
}

TEST(Determinant, NonSquareThrows) {
    ComplexMatrix m(2, 3);
    EXPECT_THROW(determinant(m), Error);
}

TEST(Determinant, Multiplicative) {
    WorkingPrecision wp(256);
    std::mt19937_64 rng(12);
    const double tol = std::exp2(-256.0 / 4);
    for (int rep = 0; rep < 5; ++rep) {
        ComplexMatrix a = tltest::random_matrix(rng, 8, 256), b = tltest::random_matrix(rng, 8, 256);
        EXPECT_LT(rel_err(determinant(a * b), determinant(a) * determinant(b)), tol);
    }
}

TEST(Interpolation, ConstantAndMonomial) {
    WorkingPrecision wp(256);
    BigFloat rot = node_rotation(stable_hash("constant"), 4);
    auto nodes = rotated_nodes(4, rot);
    std::vector<BigComplex> v(4, BigComplex(7));
    auto p = interpolate_on_rotated_roots_of_unity(v, rot, 0).pruned();
    ASSERT_EQ(p.size(), 1u);
    EXPECT_LT(rel_err(p.coefficient(0), BigComplex(7)), 1e-70);

    rot = node_rotation(stable_hash("cube"), 8);
    nodes = rotated_nodes(8, rot);
    v.clear();
    for (auto& z : nodes) v.push_back(pow(z, 3));
    p = interpolate_on_rotated_roots_of_unity(v, rot, 0).pruned();
    ASSERT_EQ(p.size(), 1u);
    EXPECT_EQ(p.min_exponent(), 3);
    EXPECT_LT(rel_err(p.coefficient(3), BigComplex(1)), 1e-70);
}

TEST(Interpolation, RoundTripRandomLaurent) {
    WorkingPrecision wp(256);
    std::mt19937_64 rng(3);
    for (long offset : {0L, -4L, 3L}) {
        std::vector<BigComplex> c;
        for (int k = 0; k < 10; ++k) c.push_back(tltest::random_complex(rng, 256));
        LaurentPolynomial p(offset, c);
        const std::size_t n = 16;
        BigFloat rot = node_rotation(stable_hash("rt" + std::to_string(offset)), n);
        std::vector<BigComplex> v;
        for (auto& z : rotated_nodes(n, rot)) v.push_back(p(z));
        auto q = interpolate_on_rotated_roots_of_unity(v, rot, offset - 2);
        for (long e = offset - 2; e < offset - 2 + static_cast<long>(n); ++e) {
            EXPECT_LT(abs(q.coefficient(e) - p.coefficient(e)).to_double(), 1e-60);
        }
    }
}

TEST(Interpolation, EmptyThrows) {
    EXPECT_THROW(interpolate_on_rotated_roots_of_unity({}, BigFloat(0), 0), Error);
}

TEST(Interpolation, RotationAvoidsOne) {
    for (std::size_t n : {8u, 33u, 500u}) {
        for (int s = 0; s < 20; ++s) {
            double r = node_rotation(stable_hash(std::to_string(s)), n).to_double();
            double spacing = 2 * M_PI / static_cast<double>(n);
            EXPECT_GE(r, 0.25 * spacing - 1e-15);
            EXPECT_LT(r, 0.75 * spacing);
        }
    }
}

TEST(Laurent, DivideExact) {
    WorkingPrecision wp(256);
    auto num = from_reals(-2, {1, -4, 5, -2});  // -(t-1)^2 (2t-1) / t^2
    auto den = LaurentPolynomial::binomial_minus_one(1);
    auto r = divide(num, den);
    EXPECT_LT(r.remainder_norm.to_double(), 1e-70);
    auto back = r.quotient * den;
    for (long e = -2; e <= 1; ++e) EXPECT_LT(abs(back.coefficient(e) - num.coefficient(e)).to_double(), 1e-70);
    auto bad = divide(from_reals(0, {1, 0, 1}), den);
    EXPECT_GT(bad.remainder_norm.to_double(), 0.1);
}

TEST(Laurent, NormalizedRepresentative) {
    WorkingPrecision wp(256);
    auto p = from_reals(-3, {-1, 3, -1});
    auto q = p.normalized();
    EXPECT_EQ(q.min_exponent(), 0);
    EXPECT_EQ(q.max_exponent(), 2);
    EXPECT_GT(q.coefficient(2).re().to_double(), 0);
    // unit multiples give bit-identical representatives
    auto u = (p * LaurentPolynomial::monomial(5, BigComplex(-1))).normalized();
    for (long e = 0; e <= 2; ++e) EXPECT_EQ(u.coefficient(e).re().to_string(60), q.coefficient(e).re().to_string(60));
}

TEST(Roots, Quadratics) {
    WorkingPrecision wp(256);
    auto r = polynomial_roots(from_reals(0, {-1, 0, 1}));
    ASSERT_EQ(r.size(), 2u);
    std::vector<double> re{r[0].re().to_double(), r[1].re().to_double()};
    std::sort(re.begin(), re.end());
    EXPECT_NEAR(re[0], -1, 1e-15);
    EXPECT_NEAR(re[1], 1, 1e-15);

    r = polynomial_roots(from_reals(0, {1, -3, 1}));
    ASSERT_EQ(r.size(), 2u);
    BigFloat s5 = sqrt(BigFloat(5L, 256));
    BigFloat hi = (BigFloat(3L, 256) + s5) / BigFloat(2L, 256), lo = (BigFloat(3L, 256) - s5) / BigFloat(2L, 256);
    BigFloat d1 = min(abs(r[0] - BigComplex(hi)), abs(r[1] - BigComplex(hi)));
    BigFloat d2 = min(abs(r[0] - BigComplex(lo)), abs(r[1] - BigComplex(lo)));
    EXPECT_LT(d1.to_double(), 1e-60);
    EXPECT_LT(d2.to_double(), 1e-60);
    EXPECT_NEAR(hi.to_double(), 2.61803, 1e-5);
}

TEST(Roots, ConstructedCubic) {
    WorkingPrecision wp(256);
    auto p = from_reals(0, {-6, 11, -6, 1});
    auto r = polynomial_roots(p);
    ASSERT_EQ(r.size(), 3u);
    for (long k : {1L, 2L, 3L}) {
        BigFloat best = BigFloat::infinity(256);
        for (auto& z : r) best = min(best, abs(z - BigComplex(k)));
        EXPECT_LT(best.to_double(), 1e-30);
    }
}

TEST(Roots, DegreeZeroAndMonomialFactor) {
    WorkingPrecision wp(256);
    EXPECT_TRUE(polynomial_roots(from_reals(0, {5})).empty());
    auto r = polynomial_roots(from_reals(-4, {-1, 0, 1}));  // t^-4 (t^2 - 1)
    EXPECT_EQ(r.size(), 2u);
    EXPECT_THROW(polynomial_roots(from_reals(0, {0, 0})), Error);
}

TEST(Roots, VietaOnRandomPolynomials) {
    WorkingPrecision wp(256);
    std::mt19937_64 rng(99);
    for (int rep = 0; rep < 6; ++rep) {
        const int d = 5 + rep * 7;
        std::vector<BigComplex> c;
        for (int k = 0; k <= d; ++k) c.push_back(tltest::random_complex(rng, 256));
        LaurentPolynomial p(0, c);
        auto r = polynomial_roots(p);
        ASSERT_EQ(r.size(), static_cast<std::size_t>(d));
        BigComplex sum(Bits{256}), prod(BigFloat(1L, 256));
        for (auto& z : r) {
            sum += z;
            prod = prod * z;
        }
        EXPECT_LT(rel_err(sum, -c[d - 1] / c[d]), 1e-25);
        BigComplex vp = c[0] / c[d];
        if (d % 2) vp = -vp;
        EXPECT_LT(rel_err(prod, vp), 1e-25);
        for (auto& z : r) EXPECT_LT(relative_residual(c, z).to_double(), std::exp2(-128.0));
    }
}

TEST(Roots, WideDynamicRange) {
    WorkingPrecision wp(256);
    // (t - 1e40)(t - 1e-40)(t^2 + 1)
    BigFloat big = BigFloat::parse("1e40", 256), small = BigFloat::parse("1e-40", 256);
    LaurentPolynomial a(0, {BigComplex(-big), BigComplex(1)});
    LaurentPolynomial b(0, {BigComplex(-small), BigComplex(1)});
    LaurentPolynomial c(0, {BigComplex(1), BigComplex(0), BigComplex(1)});
    auto r = polynomial_roots(a * b * c);
    ASSERT_EQ(r.size(), 4u);
    std::vector<double> l2;
    for (auto& z : r) l2.push_back(z.log2_abs());
    std::sort(l2.begin(), l2.end());
    EXPECT_NEAR(l2[0], -40 * std::log2(10.0), 1e-9);
    EXPECT_NEAR(l2[3], 40 * std::log2(10.0), 1e-9);
}

TEST(BigFloatFormat, TruncatedDigits) {
    WorkingPrecision wp(256);
    EXPECT_EQ(BigFloat(2.0 / 3.0, 53).to_string(5), "6.6666e-1");
    EXPECT_EQ(BigFloat(-1.0, 53).to_string(3), "-1.00e+0");
    EXPECT_EQ(parse_complex("1.5-2i").im().to_double(), -2.0);
    EXPECT_EQ(parse_complex("-i").im().to_double(), -1.0);
    EXPECT_EQ(parse_complex("3e-2+1e-3i").re().to_double(), 0.03);
}
