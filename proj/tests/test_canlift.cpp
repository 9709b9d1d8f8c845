#include <doctest.h>

#include <random>

#include "wittlift/canlift.hpp"
#include "wittlift/crysfrob.hpp"

using namespace wittlift;

namespace {

ModPoly random_poly(std::mt19937_64& rng, Modulus m, const std::vector<std::string>& vars,
                    int max_terms = 4, uint32_t max_exp = 3) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<uint32_t> de(0, max_exp);
    std::uniform_int_distribution<int64_t> dc(0, m.q - 1);
    ModPoly r(m, vars);
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        Exp e(vars.size(), 0);
        for (auto& x : e) x = de(rng);
        r.set_coeff(e, r.coeff(e) + dc(rng));
    }
    return r;
}

} // namespace

TEST_CASE("carry_polynomial: spec examples") {
    auto m5 = Modulus::make(5, 1);
    auto f = parse_poly("u + v", m5, {"u", "v"});
    auto kappa = carry_polynomial(f);
    auto expected = parse_poly("4*u^4*v + 3*u^3*v^2 + 3*u^2*v^3 + 4*u*v^4", m5, {"u", "v"});
    CHECK(kappa == expected); // -(u^4 v + 2u^3v^2 + 2u^2v^3 + uv^4) mod 5

    auto mono = parse_poly("3*u^2*v", m5, {"u", "v"});
    CHECK(carry_polynomial(mono).is_zero());
}

TEST_CASE("carry_polynomial agrees with direct Witt evaluation") {
    std::mt19937_64 rng(43);
    auto m3 = Modulus::make(3, 1);
    std::vector<std::string> vars{"u", "v"};
    ChartRing trivial;
    std::vector<ModPoly> gens{ModPoly::variable(m3, vars, 0), ModPoly::variable(m3, vars, 1)};
    for (int i = 0; i < 40; ++i) {
        auto f = random_poly(rng, m3, vars, 4, 2);
        // view f in W_2 by lifting coefficients through Teichmuller
        Modulus w = Modulus::working(3, 2);
        ModPoly ft(w, vars);
        for (const auto& [e, c] : f.terms()) ft.set_coeff(e, w.pow(c, 3));
        Witt2 value = witt_eval_at_teichmuller(ft, trivial, gens);
        CHECK(value.a0() == f);
        CHECK(value.a1() == carry_polynomial(f));
    }
}

TEST_CASE("lifted_equation: flatness and checked vanishing") {
    auto m5 = Modulus::make(5, 1);
    auto f = weierstrass_cubic(1, 0, m5);
    auto sigma = build_splitting(f);
    auto ft = lifted_equation(f, sigma); // postcondition machine-checked inside
    CHECK(ft.modulus().e == 2);
    CHECK(ft.reduce_to(m5) == f);

    auto m7 = Modulus::make(7, 1);
    auto fermat = parse_poly("x^3 + y^3 + z^3", m7, {"x", "y", "z"});
    auto sf = build_splitting(fermat);
    auto ft7 = lifted_equation(fermat, sf);
    CHECK(ft7.reduce_to(m7) == fermat);
}

TEST_CASE("changing the sigma(kappa) representative moves f~ by a unit") {
    std::mt19937_64 rng(47);
    auto m5 = Modulus::make(5, 1);
    auto f = weierstrass_cubic(2, 3, m5);
    REQUIRE(fedder_fsplit_test(f).split);
    auto sigma = build_splitting(f);
    auto ft = lifted_equation(f, sigma);
    auto chart = canonical_lift_chart(f, sigma);
    Modulus w = Modulus::working(5, 2);
    std::vector<ModPoly> gens;
    for (size_t i = 0; i < 3; ++i) gens.push_back(ModPoly::variable(m5, f.vars(), i));
    for (int i = 0; i < 10; ++i) {
        auto h = random_poly(rng, m5, f.vars(), 3, 2);
        // S -> S + h f replaces f~ by f~ - p h f = (1 - p h) f~ mod p^2
        auto ft2 = ft - (h * f).lift_to(w).scaled(5);
        auto unit = ModPoly::constant(w, f.vars(), 1) - h.lift_to(w).scaled(5);
        CHECK(ft2 == unit * ft);
        // and the changed representative still cuts out the same quotient
        Witt2 v = witt_eval_at_teichmuller(ft2, chart.chart(), gens);
        CHECK(chart.in_ideal(v));
    }
}

TEST_CASE("quotient arithmetic is exactly division by I_sigma") {
    std::mt19937_64 rng(53);
    auto m5 = Modulus::make(5, 1);
    auto f = weierstrass_cubic(1, 0, m5);
    auto sigma = build_splitting(f);
    auto chart = canonical_lift_chart(f, sigma);
    const auto& ring = chart.chart();
    auto vars = f.vars();
    for (int i = 0; i < 60; ++i) {
        auto g = random_poly(rng, m5, vars, 4, 3);
        // u = g - sigma(g)^p theta lies in ker(sigma)
        auto u = g - frobenius_power(sigma.sigma(g)) * sigma.theta();
        CHECK(sigma.sigma(u) == ModPoly::zero(m5, vars));
        Witt2 vu = verschiebung(ring, u);
        CHECK(chart.in_ideal(vu));

        Witt2 x(ring, random_poly(rng, m5, vars, 3, 3), random_poly(rng, m5, vars, 3, 3));
        CHECK(chart.normalize(witt_add(x, vu)) == chart.normalize(x));

        Witt2 y(ring, random_poly(rng, m5, vars, 3, 3), random_poly(rng, m5, vars, 3, 3));
        bool same = chart.normalize(x) == chart.normalize(y);
        CHECK(same == chart.in_ideal(witt_sub(x, y)));
    }
}

TEST_CASE("weierstrass_canonical_lift: F^1 verification and uniqueness orbit") {
    // (1,0) over F_5: canonical lift passes the independent F^1 test and
    // the passing set is exactly its twist orbit
    auto lift = weierstrass_canonical_lift(1, 0, 5);
    CHECK(lift.a_tilde % 5 == 1);
    CHECK(lift.b_tilde % 5 == 0);
    auto m = frobenius_matrix(lift.a_tilde, lift.b_tilde, 5);
    CHECK(f1_preserved(m));
    auto hits = enumerate_f1_lifts(1, 0, 5);
    CHECK(hits == twist_orbit(lift.a_tilde, lift.b_tilde, 5));

    // Fermat-type ordinary curve over F_7
    auto lift7 = weierstrass_canonical_lift(0, 1, 7);
    auto m7 = frobenius_matrix(lift7.a_tilde, lift7.b_tilde, 7);
    CHECK(f1_preserved(m7));
    auto hits7 = enumerate_f1_lifts(0, 1, 7);
    CHECK(hits7 == twist_orbit(lift7.a_tilde, lift7.b_tilde, 7));

    // generic curves with a b != 0, where no twist slack can hide a wrong
    // normalization
    for (auto [a, b, p] : {std::array<int64_t, 3>{1, 1, 5}, {1, 2, 5}, {1, 1, 7}}) {
        auto g = weierstrass_canonical_lift(a, b, p);
        auto gm = frobenius_matrix(g.a_tilde, g.b_tilde, p);
        CHECK(f1_preserved(gm));
        CHECK(enumerate_f1_lifts(a, b, p) == twist_orbit(g.a_tilde, g.b_tilde, p));
        // a wrong lift fails
        auto bad = frobenius_matrix((g.a_tilde + p) % (p * p), g.b_tilde, p);
        CHECK(!f1_preserved(bad));
    }

    // supersingular input: no splitting
    CHECK_THROWS_AS(weierstrass_canonical_lift(0, 1, 5), Error);
    CHECK_THROWS_AS(weierstrass_canonical_lift(1, 0, 7), Error);
}

TEST_CASE("legendre: Hasse polynomial matches ordinarity from point counts") {
    for (int64_t p : {5, 7}) {
        auto mp = Modulus::make(p, 1);
        auto H = legendre_hasse_polynomial(p);
        CHECK(H.degree() == (p - 1) / 2);
        for (int64_t l0 = 2; l0 < p; ++l0) {
            auto [a, b] = legendre_to_short_weierstrass(l0, mp);
            if (!curve_is_smooth(a, b, p)) continue;
            bool ord = (point_count_ap(a, b, p) % p) != 0;
            CHECK(legendre_ordinary(l0, p) == ord);
        }
    }
}

TEST_CASE("legendre modular Frobenius: specialization = absolute canonical lift") {
    for (int64_t p : {5, 7}) {
        auto w = Modulus::working(p, 2);
        auto lf = legendre_modular_frobenius(p, 8);
        for (int64_t l0 = 2; l0 < p; ++l0) {
            if (!legendre_ordinary(l0, p)) continue;
            int64_t mu_family = lf.mu_at(l0);
            int64_t mu_absolute = legendre_parameter_of_canonical_lift(l0, p);
            CHECK(mu_family == mu_absolute);
            // ordinarity of the Frobenius lifting at the ordinary points
            CHECK(lf.xi_unit_at(l0) != 0);
            // third route: brute force over all Legendre lifts with the
            // independent crystalline F^1 test
            std::vector<int64_t> passing;
            for (int64_t k = 0; k < p; ++k) {
                int64_t mu = l0 + p * k;
                auto [at, bt] = legendre_to_short_weierstrass(mu, w);
                if (f1_preserved(frobenius_matrix(at, bt, p))) passing.push_back(mu);
            }
            REQUIRE(passing.size() == 1);
            CHECK(passing[0] == mu_family);
        }
    }
}

TEST_CASE("legendre: series expansion is stable and matches g") {
    auto lf = legendre_modular_frobenius(5, 12);
    REQUIRE(int64_t(lf.series.size()) == 13);
    if (lf.series_center == 0) {
        CHECK(lf.g.den().eval(0) != 0);
        CHECK(lf.series[0] == lf.g.eval(0));
    } else {
        CHECK(lf.series[0] == lf.g.eval(lf.series_center));
    }
}
