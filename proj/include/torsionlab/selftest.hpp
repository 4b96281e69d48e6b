#pragma once
// Built-in corpus of small exact examples, one named case each.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "torsionlab/alexander.hpp"
#include "torsionlab/anosov.hpp"
#include "torsionlab/asymptotics.hpp"
#include "torsionlab/fpgroup.hpp"
#include "torsionlab/interpolation.hpp"
#include "torsionlab/mahler.hpp"
#include "torsionlab/representation.hpp"
#include "torsionlab/roots.hpp"
#include "torsionlab/zeta.hpp"

namespace torsionlab {

struct SelftestCase {
    std::string name;
    bool passed = false;
    std::string detail;
};

namespace detail {

inline bool near(const BigComplex& a, const BigComplex& b, double tol) { return abs(a - b).to_double() <= tol; }

inline bool throws(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error&) {
        return true;
    }
    return false;
}

inline double matrix_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, abs(a(i, j) - b(i, j)).to_double());
    return m;
}

}  // namespace detail

/// Runs every case at 256 bits; `data_dir` holds the fig8 fixtures.
inline std::vector<SelftestCase> run_selftest(const std::string& data_dir) {
    WorkingPrecision wp(256);
    std::vector<SelftestCase> out;
    auto run = [&](const std::string& name, const std::function<bool()>& body) {
        SelftestCase c{name, false, {}};
        try {
            c.passed = body();
            if (!c.passed) c.detail = "check failed";
        } catch (const std::exception& e) {
            c.detail = e.what();
        }
        out.push_back(std::move(c));
    };
    using detail::near;
    using detail::throws;
    const BigComplex one(BigFloat(1L));
    auto poly = [](std::vector<double> ascending) {
        std::vector<BigComplex> c;
        for (double v : ascending) c.emplace_back(BigFloat(v));
        return LaurentPolynomial(0, std::move(c));
    };
    auto fixture = [&](const std::string& ext) { return read_text_file(data_dir + "/fig8." + ext); };

    // fpgroup
    run("fox: dx/dx = 1", [] { return fox_derivative(Word::generator(0), 0, 1) == GroupRingElement::one(); });
    run("fox: d(x^-1)/dx = -x^-1", [] {
        const Word xi = Word::generator(0, -1);
        return fox_derivative(xi, 0, 1) == GroupRingElement::from_word(xi, -1);
    });
    run("presentation: trefoil has deficiency 1", [] {
        const auto r = validate_presentation(GroupPresentation::parse("gens: x y\nrel: xyxYXY\n"));
        return r.deficiency == 1 && r.wada_available;
    });
    run("presentation: <x | x> has deficiency 0", [] {
        const auto r = validate_presentation(GroupPresentation::parse("gens: x\nrel: x\n"));
        return r.deficiency == 0 && !r.wada_available;
    });
    run("presentation: x x^-1 y stored as y", [] {
        const auto p = GroupPresentation::parse("gens: x y\nrel: xXy\n");
        return p.format_word(p.relators()[0]) == "y";
    });

    // numerics
    run("determinant: identity 5x5", [&] { return near(determinant(ComplexMatrix::identity(5)), one, 0); });
    run("determinant: diag(2,3)", [] {
        ComplexMatrix m = ComplexMatrix::identity(2);
        m(0, 0) = BigComplex(BigFloat(2L));
        m(1, 1) = BigComplex(BigFloat(3L));
        return near(determinant(m), BigComplex(BigFloat(6L)), 1e-70);
    });
    run("interpolation: constant 7 at 4 nodes", [] {
        const BigFloat rot = node_rotation(1, 4);
        const auto p = interpolate_on_rotated_roots_of_unity(std::vector<BigComplex>(4, BigComplex(BigFloat(7L))), rot, 0).pruned();
        return p.size() == 1 && p.min_exponent() == 0 && near(p.coefficient(0), BigComplex(BigFloat(7L)), 1e-70);
    });
    run("interpolation: t^3 at 8 nodes", [] {
        const BigFloat rot = node_rotation(2, 8);
        std::vector<BigComplex> v;
        for (const auto& t : rotated_nodes(8, rot)) v.push_back(pow(t, 3));
        const auto p = interpolate_on_rotated_roots_of_unity(v, rot, 0).pruned();
        return p.size() == 1 && p.min_exponent() == 3 && near(p.coefficient(3), BigComplex(BigFloat(1L)), 1e-70);
    });
    run("roots: t^2 - 1", [&] {
        auto r = polynomial_roots(poly({-1, 0, 1}));
        if (r.size() != 2) return false;
        const BigComplex m1(BigFloat(-1L));
        return (near(r[0], one, 1e-60) && near(r[1], m1, 1e-60)) || (near(r[1], one, 1e-60) && near(r[0], m1, 1e-60));
    });

    // representation
    run("sym: n = 2 is the identity functor", [] {
        const ComplexMatrix m = ComplexMatrix::two_by_two(BigComplex(BigFloat(2L)), BigComplex(BigFloat(3L)),
                                                          BigComplex(BigFloat(1L)), BigComplex(BigFloat(2L)));
        return detail::matrix_distance(sym_power(m, 2), m) == 0;
    });
    run("sym: Sym^2 diag(l, 1/l)", [] {
        const BigComplex l(BigFloat(3L), BigFloat(1L));
        const BigComplex li = BigComplex(BigFloat(1L)) / l;
        const ComplexMatrix s = sym_power(ComplexMatrix::two_by_two(l, BigComplex(), BigComplex(), li), 3);
        ComplexMatrix expect = ComplexMatrix::identity(3);
        expect(0, 0) = l * l;
        expect(2, 2) = li * li;
        return detail::matrix_distance(s, expect) < 1e-70;
    });
    run("representation: entry perturbed by 1e-3 rejected", [&] {
        const auto pres = GroupPresentation::parse(fixture("pres"));
        auto gens = parse_representation(pres, fixture("rep")).generators();
        gens[1](1, 0) += BigComplex(BigFloat(1e-3));
        const auto r = validate_representation(HolonomyLift(pres, gens), 1e-10);
        return !r.accepted && r.relator_residual.to_double() > 1e-4 && r.relator_residual.to_double() < 1e-1;
    });
    run("representation: generator scaled by 2 is an error", [&] {
        const auto pres = GroupPresentation::parse(fixture("pres"));
        auto gens = parse_representation(pres, fixture("rep")).generators();
        gens[0] = gens[0] * BigComplex(BigFloat(2L));
        return throws([&] { validate_representation(HolonomyLift(pres, gens), 1e-10); });
    });
    run("clebsch-gordan: diag(2, 1/2), n = 2", [] {
        const ComplexMatrix m = ComplexMatrix::two_by_two(BigComplex(BigFloat(2L)), BigComplex(), BigComplex(), BigComplex(BigFloat(0.5)));
        return clebsch_gordan_residual(m, 2).to_double() < 1e-70;
    });
    run("group ring: 1, x_j and 1 + xy", [&] {
        const auto pres = GroupPresentation::parse(fixture("pres"));
        const auto rho = parse_representation(pres, fixture("rep"));
        const auto alpha = parse_alpha(pres, fixture("alpha"));
        const auto i = TwistPoint::roots_of_unity({{1, 4}});
        const Word y = pres.parse_word("y"), xy = pres.parse_word("xy");
        const BigComplex im(BigFloat(0L), BigFloat(1L));
        const bool e1 = detail::matrix_distance(evaluate_group_ring(GroupRingElement::one(), rho, 3, alpha, i), ComplexMatrix::identity(3)) == 0;
        const bool ey = detail::matrix_distance(evaluate_group_ring(GroupRingElement::from_word(y), rho, 3, alpha, i), rho.rho_n(y, 3) * im) < 1e-70;
        const auto sum = evaluate_group_ring(GroupRingElement::one() + GroupRingElement::from_word(xy), rho, 3, alpha, i);
        const bool exy = detail::matrix_distance(sum, ComplexMatrix::identity(3) + rho.rho_n(xy, 3) * (im * im)) < 1e-70;
        return e1 && ey && exy;
    });

    // alexander
    run("normalization: n = 2 keeps Wada", [] {
        const auto p = GroupPresentation::parse("gens: x y\nrel: xyXY\n");
        const AlphaMap alpha(p, {{2}, {3}});
        WadaResult w;
        w.n = 2;
        w.numerator = LaurentPolynomial::constant(BigComplex(BigFloat(1L)));
        w.remainder_norm = BigFloat(0L);
        w.quotient = LaurentPolynomial(0, {BigComplex(BigFloat(1L)), BigComplex(BigFloat(2L))});
        const auto d = normalized_delta(w, alpha);
        return d.polynomial->size() == 2 && near(d.polynomial->coefficient(1), BigComplex(BigFloat(2L)), 1e-70);
    });
    run("normalization: two cusps, odd n divides by (t^2-1)(t^3-1)", [] {
        const auto p = GroupPresentation::parse("gens: x y\nrel: xyXY\n");
        const AlphaMap alpha(p, {{2}, {3}});
        const PeripheralData periph({{p.parse_word("x"), Word{}}, {p.parse_word("y"), Word{}}}, alpha);
        WadaResult w;
        w.n = 3;
        w.numerator = LaurentPolynomial::constant(BigComplex(BigFloat(1L)));
        w.remainder_norm = BigFloat(0L);
        w.quotient = LaurentPolynomial(0, {BigComplex(BigFloat(1L)), BigComplex(BigFloat(2L))}) *
                     LaurentPolynomial::binomial_minus_one(2) * LaurentPolynomial::binomial_minus_one(3);
        const auto d = normalized_delta(w, alpha, &periph);
        return d.polynomial->size() == 2 && near(d.polynomial->coefficient(0), BigComplex(BigFloat(1L)), 1e-60);
    });
    run("evaluate: column-degenerate fig8 n = 3 at 1", [&] {
        const auto pres = GroupPresentation::parse(fixture("pres"));
        const auto rho = parse_representation(pres, fixture("rep"));
        const auto alpha = parse_alpha(pres, fixture("alpha"));
        const auto periph = parse_peripheral(pres, alpha, fixture("periph"));
        const auto v = evaluate_delta_at(rho, 3, alpha, TwistPoint::roots_of_unity({{0, 1}}), &periph);
        return v.modulus.is_finite() && std::fabs(v.modulus.to_double() - 3.0) < 1e-30;
    });

    // asymptotics
    run("volume: one-point window is an error", [&] { return throws([&] { fit_volume({{5, 0, BigFloat(1L)}}, 5, 5); }); });
    run("margin: root at 1 flagged", [&] { return margin_flags_circle_root(unit_circle_margin({one})); });
    run("margin: empty set is +inf", [] {
        const BigFloat m = unit_circle_margin({});
        return !m.is_finite() && m.to_double() > 0;
    });
    run("root sum: circle roots give 0", [] {
        std::vector<BigComplex> r;
        for (int k = 0; k < 5; ++k) r.push_back(BigComplex::unit(BigFloat(1.1 * k)));
        return root_log_sum(r, 2).sum.to_double() < 1e-70;
    });
    run("dehn: n = 2 two-factor expansion", [&] {
        const BigComplex l(BigFloat(1.5), BigFloat(0.3)), h(BigFloat(0.5));
        const auto f = dehn_filling_factor(2, {l}, {one}, {true});
        return near(f.value, (exp(l * h) - one) * (exp(-l * h) - one), 1e-70);
    });
    run("dehn: n = 3 skips the middle factor", [&] {
        const BigComplex l(BigFloat(1.5), BigFloat(0.3));
        const auto f = dehn_filling_factor(3, {l}, {one}, {true});
        return near(f.value, (exp(l) - one) * (exp(-l) - one), 1e-70);
    });
    run("corollary: m = 2 empty sum", [] {
        const auto sp = synthetic_spectrum(50, 1, 1);
        return rational_corollary_residual(BigFloat(0L), sp, TwistPoint::roots_of_unity({{1, 3}}), 2.03, 2, Parity::even).is_zero();
    });

    // mahler
    run("mahler: m(t) = 0", [&] { return mahler_jensen(poly({0, 1})).value.is_zero(); });
    run("mahler: constant 3 by quadrature", [] {
        const auto r = mahler_quadrature([](const std::vector<BigComplex>&) { return BigFloat(3L); }, 1, 16);
        return std::fabs(r.value.to_double() - std::log(3.0)) < 1e-15;
    });
    run("mahler: one-point n range is an error", [&] {
        const auto pres = GroupPresentation::parse(fixture("pres"));
        const auto rho = parse_representation(pres, fixture("rep"));
        const auto alpha = parse_alpha(pres, fixture("alpha"));
        return throws([&] { mahler_sequence(rho, alpha, 3, 3); });
    });

    // zeta
    run("spectrum: empty body", [] {
        const auto sp = parse_spectrum("length,theta,alpha_1,mult\n");
        return sp.empty() && sp.truncation == 0.0;
    });
    run("spectrum: single row", [] { return parse_spectrum("length,theta,alpha_1,mult\n1.0,0.0,1,1\n").entries.size() == 1; });
    run("spectrum: negative length names the line", [] {
        try {
            parse_spectrum("length,theta,alpha_1,mult\n-1,0.0,1,1\n");
        } catch (const Error& e) {
            return std::string(e.what()).find("line 2") != std::string::npos;
        }
        return false;
    });
    const TwistPoint trivial = TwistPoint::roots_of_unity({{0, 1}});
    LengthSpectrum single;
    single.rank = 1;
    single.truncation = 1.0;
    single.entries.push_back({1.0, 0.0, {0}, 1});
    run("ruelle: empty product", [&] {
        LengthSpectrum e;
        e.rank = 1;
        return near(ruelle_r(e, trivial, 0, BigComplex(BigFloat(3L))).value, one, 1e-70);
    });
    run("ruelle: single factor 1 - e^-3", [&] {
        return std::fabs(ruelle_r(single, trivial, 0, BigComplex(BigFloat(3L))).value.re().to_double() - (1 - std::exp(-3.0))) < 1e-15;
    });
    run("ruelle: n = 1 twisted equals k = 0", [&] {
        const BigComplex s(BigFloat(3L));
        return near(ruelle_big_r(single, trivial, 1, s).log_value, ruelle_r(single, trivial, 0, s).log_value, 1e-70);
    });
    run("selberg: l_max = 0 single factor", [&] {
        const BigComplex s(BigFloat(3L));
        return near(selberg_z(single, trivial, 0, s, 0).value, one - exp(-BigComplex(BigFloat(4L))), 1e-70);
    });
    run("tail bound: s = 50 below s = 10", [] { return tail_bound(0.5, 50, 2, 1) < tail_bound(0.5, 10, 2, 1); });
    run("growth: empty passes with C = 0", [] {
        const auto g = growth_check(LengthSpectrum{});
        return g.pass && g.C == 0.0;
    });
    run("growth: 10^6 entries at 0.1 flagged", [] {
        LengthSpectrum bad;
        bad.entries.push_back({0.1, 0.0, {}, 1000000});
        const auto g = growth_check(bad);
        return !g.pass && g.C > 1e5;
    });
    run("series: empty spectrum gives 0", [&] {
        LengthSpectrum e;
        e.rank = 1;
        return series_bound_report(e, trivial).total == 0.0;
    });

    // anosov
    run("anosov: roots {2, 1/2}", [] {
        const auto h = hyperbolicity_report({BigComplex(BigFloat(2L)), BigComplex(BigFloat(0.5))});
        return std::fabs(h.margin.to_double() - 0.5) < 1e-70 && h.symmetry_distance == 0;
    });
    run("anosov: root 1 flagged", [&] {
        const auto h = hyperbolicity_report({one});
        return h.margin.is_zero() && h.circle_root;
    });
    auto bundle = [&](const std::string& ext) { return read_text_file(data_dir + "/fig8bundle." + ext); };
    run("anosov: n = 2 is the single factor Delta^3 and degrees add", [&] {
        const auto pres = GroupPresentation::parse(bundle("pres"));
        const auto rho = parse_representation(pres, bundle("rep"));
        const auto alpha = parse_alpha(pres, bundle("alpha"));
        const auto periph = parse_peripheral(pres, alpha, bundle("periph"));
        const auto two = characteristic_product(rho, alpha, 2, &periph);
        const auto three = characteristic_product(rho, alpha, 3, &periph);
        std::size_t degree = 0;
        for (const auto& f : three.factors) degree += f.size() - 1;
        return two.factors.size() == 1 && two.product.size() == two.factors[0].size() && three.product.size() - 1 == degree;
    });
    return out;
}

}  // namespace torsionlab
