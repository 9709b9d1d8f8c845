#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "wittlift/exactring.hpp"

namespace wittlift {

// Matrix of the crystalline Frobenius on H^1_dR of y^2 = x^3 + a~x + b~
// over Z/p^2, in the basis (w0 = dx/y, w1 = x dx/y). F^1 = span(w0).
// entry[r][c] is the w_r-coefficient of phi(w_c).
struct FrobMatrix2 {
    int64_t p = 0;
    int64_t a_tilde = 0, b_tilde = 0; // curve mod p^2
    std::array<std::array<int64_t, 2>, 2> entry{};
    int delta = 0; // precision slack the entries were validated at

    int64_t trace_mod_p2() const;
    int64_t det_mod_p2() const;
};

// Kedlaya-style computation with internal precision p^(2+delta); the result
// is recomputed at delta+1 and must agree mod p^2, otherwise this raises
// (code "precision_validation").
FrobMatrix2 frobenius_matrix(int64_t a_tilde, int64_t b_tilde, int64_t p, int delta = 2);

// a_p = p + 1 - #E(F_p) by exhaustive counting; fails on singular curves.
int64_t point_count_ap(int64_t a, int64_t b, int64_t p);

bool curve_is_smooth(int64_t a, int64_t b, int64_t p);

// phi preserves F^1  <=>  the (w1, w0) entry vanishes mod p^2.
bool f1_preserved(const FrobMatrix2& m);

// beta = phi/p on F^1: entry (w0,w0) divided by p, in F_p. Requires
// f1_preserved and the easy divisibility phi(F^1) c pH.
int64_t beta_scalar(const FrobMatrix2& m);

// All Weierstrass lifts (a~, b~) of (a, b) passing the F^1 test, sorted.
std::vector<std::pair<int64_t, int64_t>> enumerate_f1_lifts(int64_t a, int64_t b, int64_t p,
                                                            int delta = 2);

// Twist orbit of one lift under a~ -> u^4 a~, b~ -> u^6 b~, u = 1 mod p.
std::vector<std::pair<int64_t, int64_t>> twist_orbit(int64_t a_tilde, int64_t b_tilde, int64_t p);

} // namespace wittlift
