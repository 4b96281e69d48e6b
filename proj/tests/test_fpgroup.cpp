#include <gtest/gtest.h>

#include <random>

#include "torsionlab/fpgroup.hpp"

using namespace torsionlab;

namespace {

Word random_word(std::mt19937_64& rng, std::uint32_t gens, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<std::uint32_t> g(0, gens - 1);
    std::bernoulli_distribution sgn(0.5);
    std::vector<Letter> ls;
    const std::size_t n = len(rng);
    for (std::size_t k = 0; k < n; ++k) ls.push_back({g(rng), sgn(rng) ? 1 : -1});
    return Word::from_letters(ls);
}

GroupRingElement gen_minus_one(std::uint32_t j) {
    return GroupRingElement::from_word(Word::generator(j)) - GroupRingElement::one();
}

const GroupPresentation& trefoil() {
    static const GroupPresentation p = GroupPresentation::parse("gens: x y\nrel: xyxYXY\n");
    return p;
}

}  // namespace

TEST(Fox, DefiningIdentities) {
    const Word x = Word::generator(0);
    EXPECT_EQ(fox_derivative(x, 0, 2), GroupRingElement::one());
    EXPECT_TRUE(fox_derivative(x, 1, 2).is_zero());
    EXPECT_EQ(fox_derivative(x.inverse(), 0, 2), GroupRingElement::from_word(x.inverse(), -1));
}

TEST(Fox, TrefoilHandExpansion) {
    const auto& p = trefoil();
    // 1 + xy - xyxy^-1x^-1
    GroupRingElement expect = GroupRingElement::one();
    expect.add(p.parse_word("xy"), 1);
    expect.add(p.parse_word("xyxYX"), -1);
    EXPECT_EQ(fox_derivative(p.relators()[0], 0, 2), expect);
    // x - xyxy^-1 - xyxy^-1x^-1y^-1
    GroupRingElement dy;
    dy.add(p.parse_word("x"), 1);
    dy.add(p.parse_word("xyxY"), -1);
    dy.add(p.parse_word("xyxYXY"), -1);
    EXPECT_EQ(fox_derivative(p.relators()[0], 1, 2), dy);
}

TEST(Fox, GeneratorOutOfRange) {
    EXPECT_THROW(fox_derivative(Word::generator(0), 3, 2), Error);
}

TEST(Fox, FundamentalIdentityRandomWords) {
    std::mt19937_64 rng(2024);
    for (int rep = 0; rep < 1000; ++rep) {
        const std::uint32_t gens = 1 + rep % 4;
        Word w = random_word(rng, gens, 64);
        GroupRingElement lhs;
        for (std::uint32_t j = 0; j < gens; ++j) lhs += fox_derivative(w, j, gens) * gen_minus_one(j);
        EXPECT_EQ(lhs, GroupRingElement::from_word(w) - GroupRingElement::one());
    }
}

TEST(Fox, ProductRuleRandomPairs) {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 1000; ++rep) {
        const std::uint32_t gens = 2 + rep % 3;
        Word u = random_word(rng, gens, 20), v = random_word(rng, gens, 20);
        for (std::uint32_t j = 0; j < gens; ++j) {
            GroupRingElement rhs = fox_derivative(u, j, gens) + GroupRingElement::from_word(u) * fox_derivative(v, j, gens);
            EXPECT_EQ(fox_derivative(u * v, j, gens), rhs);
        }
    }
}

TEST(Word, FreeReductionIdempotentAndShortening) {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::uint32_t> g(0, 2);
    std::bernoulli_distribution sgn(0.5);
    for (int rep = 0; rep < 500; ++rep) {
        std::vector<Letter> raw;
        for (int k = 0; k < 30; ++k) raw.push_back({g(rng), sgn(rng) ? 1 : -1});
        auto once = free_reduce(raw);
        EXPECT_LE(once.size(), raw.size());
        EXPECT_EQ(free_reduce(once), once);
        for (std::size_t k = 0; k + 1 < once.size(); ++k) EXPECT_FALSE(once[k].generator == once[k + 1].generator && once[k].exponent == -once[k + 1].exponent);
    }
}

TEST(Word, IntegerExponentsExpand) {
    Word w = Word::from_powers({{0, 3}, {1, -2}, {1, 2}, {0, -1}});
    EXPECT_EQ(w.length(), 2u);
    const auto& p = trefoil();
    EXPECT_EQ(p.parse_word("x^3Y^2"), p.parse_word("xxxyy").prefix(3) * p.parse_word("YY"));
    EXPECT_EQ(p.parse_word("x^-2"), p.parse_word("XX"));
    EXPECT_EQ(p.parse_word("X^-2"), p.parse_word("xx"));
    EXPECT_THROW(p.parse_word("x^"), Error);
    EXPECT_THROW(p.parse_word("z"), Error);
    EXPECT_THROW(p.parse_word("x1"), Error);
}

TEST(Presentation, ValidateTrefoil) {
    auto r = validate_presentation(trefoil());
    EXPECT_EQ(r.deficiency, 1);
    EXPECT_TRUE(r.wada_available);
    EXPECT_TRUE(r.relators_reduced);
}

TEST(Presentation, DeficiencyZero) {
    auto r = validate_presentation(GroupPresentation::parse("gens: x\nrel: x\n"));
    EXPECT_EQ(r.deficiency, 0);
    EXPECT_FALSE(r.wada_available);
}

TEST(Presentation, UnreducedRelatorStoredReduced) {
    auto p = GroupPresentation::parse("gens: x y\nrel: xXy\n");
    EXPECT_EQ(p.format_word(p.relators()[0]), "y");
    auto r = validate_presentation(p);
    EXPECT_FALSE(r.relators_reduced);
    EXPECT_EQ(r.deficiency, 1);
}

TEST(Presentation, Errors) {
    EXPECT_THROW(GroupPresentation::parse("rel: x\n"), Error);
    EXPECT_THROW(GroupPresentation::parse("gens:\n"), Error);
    EXPECT_THROW(GroupPresentation::parse("gens: x\nrel: xX\n"), Error);
    EXPECT_THROW(GroupPresentation::parse("gens: x\nfoo: x\n"), Error);
    EXPECT_THROW(GroupPresentation({}, {}), Error);
}

TEST(Presentation, TextRoundTrip) {
    auto p = GroupPresentation::parse("# figure-eight\ngens: x y\nrel: xYXyxYxyXY\n");
    EXPECT_EQ(GroupPresentation::parse(p.to_text()).to_text(), p.to_text());
}
