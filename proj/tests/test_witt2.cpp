#include <doctest.h>

#include <random>

#include "wittlift/exactring.hpp"
#include "wittlift/witt2.hpp"

using namespace wittlift;

namespace {

ModPoly random_elem(std::mt19937_64& rng, Modulus m, const std::vector<std::string>& vars,
                    const ChartRing& chart) {
    std::uniform_int_distribution<int> nterms(0, 4);
    std::uniform_int_distribution<uint32_t> de(0, 3);
    std::uniform_int_distribution<int64_t> dc(0, m.q - 1);
    ModPoly r(m, vars);
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        Exp e(vars.size(), 0);
        for (auto& x : e) x = de(rng);
        r.set_coeff(e, r.coeff(e) + dc(rng));
    }
    return chart.normal_form(r);
}

} // namespace

TEST_CASE("constant Witt arithmetic matches Z/p^2 through the ghost map, exhaustively") {
    for (int64_t p : {3, 5, 7, 13}) {
        auto m = Modulus::make(p, 1);
        auto zp2 = Modulus::working(p, 2);
        ChartRing chart; // trivial
        std::vector<std::string> vars{};
        std::vector<Witt2> all;
        for (int64_t a0 = 0; a0 < p; ++a0)
            for (int64_t a1 = 0; a1 < p; ++a1)
                all.push_back(Witt2(chart, ModPoly::constant(m, vars, a0),
                                    ModPoly::constant(m, vars, a1)));
        // ghost is a bijection onto Z/p^2
        std::vector<bool> seen(zp2.q, false);
        for (const auto& w : all) {
            int64_t g = ghost_value(w);
            CHECK(!seen[g]);
            seen[g] = true;
        }
        for (const auto& x : all) {
            for (const auto& y : all) {
                CHECK(ghost_value(witt_add(x, y)) == zp2.add(ghost_value(x), ghost_value(y)));
                CHECK(ghost_value(witt_mul(x, y)) == zp2.mul(ghost_value(x), ghost_value(y)));
            }
            CHECK(ghost_value(witt_neg(x)) == zp2.reduce(-ghost_value(x)));
        }
    }
}

TEST_CASE("spec examples: [2]+[3] = 0 in W2(F_5), no-carry shapes") {
    auto m = Modulus::make(5, 1);
    ChartRing chart;
    std::vector<std::string> vars{"x", "y"};
    auto c2 = teichmuller(chart, ModPoly::constant(m, vars, 2));
    auto c3 = teichmuller(chart, ModPoly::constant(m, vars, 3));
    auto s = witt_add(c2, c3);
    CHECK(s.a0().is_zero());
    CHECK(s.a1().is_zero());

    auto x = ModPoly::variable(m, vars, 0);
    auto y = ModPoly::variable(m, vars, 1);
    auto s2 = witt_add(teichmuller(chart, x), verschiebung(chart, y));
    CHECK(s2.a0() == x);
    CHECK(s2.a1() == y);

    auto one = ModPoly::constant(m, vars, 1);
    auto s3 = witt_add(teichmuller(chart, one), teichmuller(chart, -one));
    CHECK(s3.a0().is_zero());
    CHECK(s3.a1().is_zero());
}

TEST_CASE("spec examples: multiplication degeneracy and Teichmuller sections") {
    auto m = Modulus::make(3, 1);
    ChartRing chart;
    std::vector<std::string> vars{"x", "y"};
    auto x = ModPoly::variable(m, vars, 0);
    auto y = ModPoly::variable(m, vars, 1);

    // V(x) V(y) = 0
    auto vv = witt_mul(verschiebung(chart, x), verschiebung(chart, y));
    CHECK(vv.a0().is_zero());
    CHECK(vv.a1().is_zero());

    // [u][v] = [uv]
    auto uv = witt_mul(teichmuller(chart, x), teichmuller(chart, y));
    CHECK(uv == teichmuller(chart, x * y));

    // (x,1)*(0,1) = (0, x^p)
    auto one = ModPoly::constant(m, vars, 1);
    auto prod = witt_mul(Witt2(chart, x, one), Witt2(chart, ModPoly::zero(m, vars), one));
    CHECK(prod.a0().is_zero());
    CHECK(prod.a1() == frobenius_power(x));

    // [1] is the identity, R([u]) = u, F componentwise
    auto id = witt_one(chart, m, vars);
    CHECK(witt_mul(id, Witt2(chart, x, y)) == Witt2(chart, x, y));
    CHECK(restrict_w(teichmuller(chart, x + y)) == x + y);
    auto f = witt_frobenius(Witt2(chart, x, y));
    CHECK(f.a0() == frobenius_power(x));
    CHECK(f.a1() == frobenius_power(y));
}

TEST_CASE("embed_zp2: spec examples") {
    auto m = Modulus::make(5, 1);
    ChartRing chart;
    std::vector<std::string> vars{};
    auto w7 = embed_zp2(7, chart, m, vars);
    CHECK(w7.a0().constant_value() == 2);
    CHECK(w7.a1().is_zero());
    auto w6 = embed_zp2(6, chart, m, vars);
    CHECK(w6.a0().constant_value() == 1);
    CHECK(w6.a1().constant_value() == 1);
    auto w0 = embed_zp2(0, chart, m, vars);
    CHECK(w0.a0().is_zero());
    CHECK(w0.a1().is_zero());
    // ghost inverts embed on all of Z/p^2
    for (int64_t p : {3, 5, 7, 13}) {
        auto mp = Modulus::make(p, 1);
        for (int64_t n = 0; n < p * p; ++n)
            CHECK(ghost_value(embed_zp2(n, chart, mp, vars)) == n);
    }
}

TEST_CASE("W2(A) ring axioms over a chart ring") {
    std::mt19937_64 rng(23);
    for (int64_t p : {3, 5}) {
        auto m = Modulus::make(p, 1);
        std::vector<std::string> vars{"x", "y"};
        auto rel = parse_poly("y^2 - x^3 - x - 1", m, vars);
        ChartRing chart(rel, 1);
        for (int i = 0; i < 60; ++i) {
            Witt2 a(chart, random_elem(rng, m, vars, chart), random_elem(rng, m, vars, chart));
            Witt2 b(chart, random_elem(rng, m, vars, chart), random_elem(rng, m, vars, chart));
            Witt2 c(chart, random_elem(rng, m, vars, chart), random_elem(rng, m, vars, chart));
            CHECK(witt_add(a, b) == witt_add(b, a));
            CHECK(witt_mul(a, b) == witt_mul(b, a));
            CHECK(witt_add(witt_add(a, b), c) == witt_add(a, witt_add(b, c)));
            CHECK(witt_mul(witt_mul(a, b), c) == witt_mul(a, witt_mul(b, c)));
            CHECK(witt_mul(a, witt_add(b, c)) == witt_add(witt_mul(a, b), witt_mul(a, c)));
            CHECK(witt_add(a, witt_neg(a)) == witt_zero(chart, m, vars));
        }
    }
}

TEST_CASE("x V(y) = V(F(x) y); R ring map; [..] multiplicative section; V additive") {
    std::mt19937_64 rng(29);
    auto m = Modulus::make(5, 1);
    std::vector<std::string> vars{"x", "y"};
    auto rel = parse_poly("y^2 - x^3 - 2*x", m, vars);
    ChartRing chart(rel, 1);
    for (int i = 0; i < 100; ++i) {
        Witt2 x(chart, random_elem(rng, m, vars, chart), random_elem(rng, m, vars, chart));
        auto u = random_elem(rng, m, vars, chart);
        auto v = random_elem(rng, m, vars, chart);

        CHECK(witt_mul(x, verschiebung(chart, u)) ==
              verschiebung(chart, witt_frobenius(x).a0() * u));

        Witt2 y(chart, random_elem(rng, m, vars, chart), random_elem(rng, m, vars, chart));
        CHECK(restrict_w(witt_add(x, y)) == chart.normal_form(restrict_w(x) + restrict_w(y)));
        CHECK(restrict_w(witt_mul(x, y)) == chart.normal_form(restrict_w(x) * restrict_w(y)));

        CHECK(witt_mul(teichmuller(chart, u), teichmuller(chart, v)) ==
              teichmuller(chart, u * v));
        CHECK(restrict_w(teichmuller(chart, u)) == chart.normal_form(u));

        CHECK(witt_add(verschiebung(chart, u), verschiebung(chart, v)) ==
              verschiebung(chart, u + v));
        auto vv = witt_mul(verschiebung(chart, u), verschiebung(chart, v));
        CHECK(vv == witt_zero(chart, m, vars));
    }
}
