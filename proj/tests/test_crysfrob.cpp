#include <doctest.h>

#include "wittlift/crysfrob.hpp"
#include "wittlift/fsplit.hpp"

using namespace wittlift;

TEST_CASE("point counts: spec examples") {
    CHECK(point_count_ap(1, 0, 5) == 2);   // points (0,0),(2,0),(3,0),inf
    CHECK(point_count_ap(0, 1, 5) == 0);   // supersingular, p = 2 mod 3
    CHECK_THROWS_AS(point_count_ap(0, 0, 5), Error);
    // Hasse bound on everything smooth over F_5, F_7, F_13
    for (int64_t p : {5, 7, 13}) {
        for (int64_t a = 0; a < p; ++a)
            for (int64_t b = 0; b < p; ++b) {
                if (!curve_is_smooth(a, b, p)) continue;
                int64_t ap = point_count_ap(a, b, p);
                CHECK(ap * ap <= 4 * p);
            }
    }
}

TEST_CASE("a_p mod p equals the classical Hasse invariant") {
    for (int64_t p : {5, 7}) {
        for (int64_t a = 0; a < p; ++a)
            for (int64_t b = 0; b < p; ++b) {
                if (!curve_is_smooth(a, b, p)) continue;
                int64_t ap = ((point_count_ap(a, b, p) % p) + p) % p;
                CHECK(ap == hasse_invariant_classical(a, b, p));
            }
    }
}

TEST_CASE("frobenius matrix: characteristic polynomial anchors") {
    // trace = a_p and det = p hold mod p^2 for any lift of any smooth curve
    for (int64_t p : {5, 7}) {
        int64_t p2 = p * p;
        for (int64_t a = 0; a < p; ++a) {
            for (int64_t b = 0; b < p; ++b) {
                if (!curve_is_smooth(a, b, p)) continue;
                int64_t ap = point_count_ap(a, b, p);
                // a couple of lifts per curve keeps this test quick; the
                // acceptance suite sweeps them all
                for (int64_t i : {int64_t(0), int64_t(1)}) {
                    for (int64_t j : {int64_t(0), (p - 1)}) {
                        auto m = frobenius_matrix(a + p * i, b + p * j, p);
                        CHECK(m.trace_mod_p2() == ((ap % p2) + p2) % p2);
                        CHECK(m.det_mod_p2() == p);
                        // phi kills F^1 mod p: whole w0-column divisible by p
                        CHECK(m.entry[0][0] % p == 0);
                        CHECK(m.entry[1][0] % p == 0);
                    }
                }
            }
        }
    }
}

TEST_CASE("supersingular trace vanishes mod p") {
    auto m = frobenius_matrix(0, 1, 5); // any lift of a supersingular curve
    CHECK(m.trace_mod_p2() % 5 == 0);
    auto m2 = frobenius_matrix(0 + 5 * 3, 1 + 5 * 2, 5);
    CHECK(m2.trace_mod_p2() % 5 == 0);
}

TEST_CASE("precision stability: delta and delta+1 agree") {
    auto m2 = frobenius_matrix(1, 0, 5, 2);
    auto m3 = frobenius_matrix(1, 0, 5, 3);
    CHECK(m2.entry == m3.entry);
    auto n2 = frobenius_matrix(3 + 7 * 2, 1 + 7 * 5, 7, 2);
    auto n3 = frobenius_matrix(3 + 7 * 2, 1 + 7 * 5, 7, 3);
    CHECK(n2.entry == n3.entry);
}

TEST_CASE("f1_preserved and beta on y^2 = x^3 + x over F_5") {
    // the F^1-preserving lifts of (1,0) form one twist orbit
    auto hits = enumerate_f1_lifts(1, 0, 5);
    REQUIRE(!hits.empty());
    CHECK(hits.size() <= 5);
    auto orbit = twist_orbit(hits[0].first, hits[0].second, 5);
    CHECK(hits == orbit);

    // beta * a_p = 1 mod p on every lift in the orbit (a_5 = 2, so beta = 3)
    for (auto [at, bt] : hits) {
        auto m = frobenius_matrix(at, bt, 5);
        REQUIRE(f1_preserved(m));
        CHECK(beta_scalar(m) == 3);
        CHECK(5 * beta_scalar(m) % 25 == m.entry[0][0] % 25);
    }

    // a wrong-b lift of a generic curve fails the test: done in canlift tests
    // where the canonical lift is available; here check a matrix shape fact
    auto m = frobenius_matrix(hits[0].first, hits[0].second, 5);
    CHECK(m.entry[1][0] == 0);
}

TEST_CASE("beta errors on non-preserving lifts") {
    // find a lift of (1,1)/F_5 failing f1 and check the guard
    auto hits = enumerate_f1_lifts(1, 1, 5);
    REQUIRE(!hits.empty());
    bool found_bad = false;
    for (int64_t i = 0; i < 5 && !found_bad; ++i) {
        for (int64_t j = 0; j < 5 && !found_bad; ++j) {
            int64_t at = 1 + 5 * i, bt = 1 + 5 * j;
            if (std::find(hits.begin(), hits.end(), std::make_pair(at, bt)) != hits.end()) continue;
            auto m = frobenius_matrix(at, bt, 5);
            CHECK(!f1_preserved(m));
            CHECK_THROWS_AS(beta_scalar(m), Error);
            found_bad = true;
        }
    }
    CHECK(found_bad);
}
