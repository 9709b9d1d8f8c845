#include <doctest.h>

#include <random>

#include "wittlift/exactring.hpp"

using namespace wittlift;

namespace {

ModPoly random_poly(std::mt19937_64& rng, Modulus m, const std::vector<std::string>& vars,
                    int max_terms = 6, uint32_t max_exp = 4) {
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

TEST_CASE("parse: Weierstrass example over F_5") {
    auto m = Modulus::make(5, 1);
    auto g = parse_poly("y^2 - x^3 - x", m);
    REQUIRE(g.vars() == std::vector<std::string>{"x", "y"});
    CHECK(g.coeff({0, 2}) == 1);
    CHECK(g.coeff({3, 0}) == 4);
    CHECK(g.coeff({1, 0}) == 4);
    CHECK(g.terms().size() == 3);
}

TEST_CASE("parse: binomial square over F_3") {
    auto m = Modulus::make(3, 1);
    auto g = parse_poly("(x+y)^2", m);
    CHECK(g.coeff({2, 0}) == 1);
    CHECK(g.coeff({1, 1}) == 2);
    CHECK(g.coeff({0, 2}) == 1);
}

TEST_CASE("parse: errors carry byte offsets") {
    auto m = Modulus::make(5, 1);
    CHECK_THROWS_WITH_AS(parse_poly("x^", m), doctest::Contains("offset 2"), Error);
    try {
        parse_poly("x^", m);
    } catch (const Error& e) {
        CHECK(e.code() == "syntax");
        CHECK(e.context() == "2");
    }
    try {
        parse_poly("x + @", m);
    } catch (const Error& e) {
        CHECK(e.code() == "unknown_character");
    }
    CHECK_THROWS_AS(parse_poly("-x", m), Error);       // no unary minus in the grammar
    CHECK_THROWS_AS(parse_poly("x^99999999999", m), Error);
    try {
        parse_poly("x^99999999999", m);
    } catch (const Error& e) {
        CHECK(e.code() == "exponent_overflow");
    }
}

TEST_CASE("parse round-trips canonical serialization") {
    std::mt19937_64 rng(42);
    for (int64_t p : {3, 5, 7, 13}) {
        for (int e : {1, 2}) {
            auto m = Modulus::make(p, e);
            std::vector<std::string> vars{"x", "y", "z"};
            for (int i = 0; i < 50; ++i) {
                auto g = random_poly(rng, m, vars);
                auto h = parse_poly(g.to_string(), m, vars);
                CHECK(h == g);
            }
        }
    }
}

TEST_CASE("lift_div_p: spec examples") {
    // 5x + 10 over Z, p=5, e=1  ->  x + 2
    auto w = Modulus::working(5, 2);
    auto q = parse_poly("5*x + 10", w);
    auto r = lift_div_p(q);
    CHECK(r.modulus().e == 1);
    CHECK(r == parse_poly("x + 2", Modulus::make(5, 1)));

    // ((x+1)^5 - x^5 - 1)/5 = x^4 + 2x^3 + 2x^2 + x over F_5
    auto q2 = parse_poly("(x+1)^5 - x^5 - 1", w);
    auto r2 = lift_div_p(q2);
    CHECK(r2 == parse_poly("x^4 + 2*x^3 + 2*x^2 + x", Modulus::make(5, 1)));

    // non-divisible coefficient is reported with its monomial
    try {
        lift_div_p(parse_poly("3*x", w));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == "not_divisible");
        CHECK(e.context() == "x");
    }
}

TEST_CASE("lift_div_p is a left inverse of multiplication by p") {
    std::mt19937_64 rng(7);
    for (int64_t p : {3, 5, 7, 13}) {
        auto m = Modulus::make(p, 1);
        auto w = Modulus::working(p, 2);
        for (int i = 0; i < 100; ++i) {
            auto g = random_poly(rng, m, {"x", "y"});
            auto pg = g.lift_to(w).scaled(p);
            CHECK(lift_div_p(pg) == g);
        }
    }
}

TEST_CASE("normal_form: Weierstrass chart") {
    auto m = Modulus::make(5, 1);
    std::vector<std::string> vars{"x", "y"};
    auto f = parse_poly("y^2 - x^3 - x", m, vars);
    ChartRing ring(f, 1); // monic in y
    auto y2 = parse_poly("y^2", m, vars);
    CHECK(ring.normal_form(y2) == parse_poly("x^3 + x", m, vars));
    auto y3 = parse_poly("y^3", m, vars);
    CHECK(ring.normal_form(y3) == parse_poly("x^3*y + x*y", m, vars));
    auto x = parse_poly("x", m, vars);
    CHECK(ring.normal_form(x) == x);
    // idempotent
    CHECK(ring.normal_form(ring.normal_form(y3)) == ring.normal_form(y3));
}

TEST_CASE("normal_form is multiplicative") {
    std::mt19937_64 rng(11);
    auto m = Modulus::make(7, 1);
    std::vector<std::string> vars{"x", "y"};
    auto f = parse_poly("y^2 - x^3 - 2*x - 1", m, vars);
    ChartRing ring(f, 1);
    for (int i = 0; i < 200; ++i) {
        auto a = random_poly(rng, m, vars);
        auto b = random_poly(rng, m, vars);
        CHECK(ring.normal_form(a * b) ==
              ring.normal_form(ring.normal_form(a) * ring.normal_form(b)));
    }
}

TEST_CASE("frobenius_power: spec examples") {
    auto m3 = Modulus::make(3, 1);
    CHECK(frobenius_power(parse_poly("x+y", m3)) == parse_poly("x^3+y^3", m3));
    auto m9 = Modulus::make(3, 2);
    CHECK(frobenius_power(parse_poly("x+1", m9)) == parse_poly("x^3+3*x^2+3*x+1", m9));
    auto z = ModPoly::zero(m3, {"x"});
    CHECK(frobenius_power(z) == z);
}

TEST_CASE("frobenius_power is a ring map in char p") {
    std::mt19937_64 rng(13);
    for (int64_t p : {3, 5, 7, 13}) {
        auto m = Modulus::make(p, 1);
        for (int i = 0; i < 50; ++i) {
            auto a = random_poly(rng, m, {"x", "y"}, 4, 3);
            auto b = random_poly(rng, m, {"x", "y"}, 4, 3);
            CHECK(frobenius_power(a + b) == frobenius_power(a) + frobenius_power(b));
            CHECK(frobenius_power(a * b) == frobenius_power(a) * frobenius_power(b));
        }
    }
}

TEST_CASE("coeff_extract: spec examples") {
    auto m = Modulus::make(5, 1);
    auto g = parse_poly("(x^3+x)^2", m, {"x"});
    CHECK(coeff_extract(g, {4}) == 2);
    auto g2 = parse_poly("(x^3+1)^2", m, {"x"});
    CHECK(coeff_extract(g2, {4}) == 0);
    auto m2 = Modulus::make(5, 2);
    auto c = parse_poly("7", m2, std::vector<std::string>{});
    CHECK(coeff_extract(c, {}) == 7);
}

TEST_CASE("ring axioms hold on random triples") {
    std::mt19937_64 rng(17);
    for (int64_t p : {3, 5, 7, 13}) {
        auto m = Modulus::make(p, 1);
        std::vector<std::string> vars{"x", "y"};
        for (int i = 0; i < 1000; ++i) {
            auto a = random_poly(rng, m, vars, 3, 3);
            auto b = random_poly(rng, m, vars, 3, 3);
            auto c = random_poly(rng, m, vars, 3, 3);
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
        }
    }
}

TEST_CASE("modulus guards") {
    CHECK_THROWS_AS(Modulus::make(4, 1), Error);
    CHECK_THROWS_AS(Modulus::make(2, 1), Error);
    CHECK_THROWS_AS(Modulus::make(5, 3), Error);
    CHECK_NOTHROW(Modulus::working(5, 5));
    auto m = Modulus::make(5, 2);
    CHECK(m.inv(7) * 7 % 25 == 1);
    CHECK_THROWS_AS(m.inv(5), Error);
}
