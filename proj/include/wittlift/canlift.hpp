#pragma once

#include <cstdint>
#include <vector>

#include "wittlift/exactring.hpp"
#include "wittlift/fsplit.hpp"
#include "wittlift/ratfunc.hpp"
#include "wittlift/witt2.hpp"

namespace wittlift {

// kappa_f = (sum_m C_m^p x^(p m) - F(x)^p)/p on integer lifts C_m in [0,p),
// reduced mod p: the second Witt component of f evaluated at Teichmuller
// generators.
ModPoly carry_polynomial(const ModPoly& f);

// Chart-level quotient W_2(A)/I_sigma with the canonical normal form
// (a0, a1) -> (a0, s(sigma(a1))), s(a) = a^p * theta.
class CanonicalLiftChart {
public:
    CanonicalLiftChart(ChartRing chart, SplittingData sigma, ModPoly lifted_relation);

    const ChartRing& chart() const { return chart_; }
    const SplittingData& splitting() const { return sigma_; }
    const ModPoly& lifted_relation() const { return lifted_; }

    Witt2 normalize(const Witt2& w) const;   // quotient normal form
    bool in_ideal(const Witt2& w) const;     // w = 0 in W_2(A)/I_sigma

private:
    ChartRing chart_;
    SplittingData sigma_;
    ModPoly lifted_;
};

// The lifted hypersurface equation f~ = G - p S over Z/p^2, where G has the
// Teichmuller coefficient lifts C_m^p mod p^2 and S represents
// sigma(kappa_f). Machine-checks the defining property: f~ evaluated at
// Teichmuller generators vanishes in W_2(A)/I_sigma.
ModPoly lifted_equation(const ModPoly& f, const SplittingData& sigma);

// The chart object used for the postcondition of lifted_equation; exposed
// for the quotient-arithmetic property tests.
CanonicalLiftChart canonical_lift_chart(const ModPoly& f, const SplittingData& sigma);

struct WeierstrassLift {
    int64_t p = 0;
    int64_t a = 0, b = 0;             // curve mod p
    int64_t a_tilde = 0, b_tilde = 0; // canonical lift mod p^2
};

// Runs lifted_equation on the homogeneous cubic, renormalizes the resulting
// plane cubic mod p^2 back to short Weierstrass shape, and returns the
// twist-orbit-minimal pair.
WeierstrassLift weierstrass_canonical_lift(int64_t a, int64_t b, int64_t p);

struct LegendreFrobenius {
    int64_t p = 0;
    int64_t degree_bound = 0;   // requested series degree D
    FpRat g;                    // exact rational form of g(lambda)
    FpPoly hasse;               // Hasse polynomial H(lambda), localization witness
    int64_t series_center = 0;  // expansion point (0 when regular there)
    std::vector<int64_t> series; // coefficients of g around the center, degree <= D

    // mu(lambda0) = lift(lambda0)^p + p g(lambda0) mod p^2
    int64_t mu_at(int64_t lambda0) const;
    // ordinarity value lambda0^(p-1) + g'(lambda0) mod p
    int64_t xi_unit_at(int64_t lambda0) const;
};

// Frobenius lifting lambda -> lambda^p + p g(lambda) on the ordinary locus
// of the Legendre line, from the relative canonical lifting of the family.
LegendreFrobenius legendre_modular_frobenius(int64_t p, int64_t degree_bound);

// Hasse polynomial of the Legendre family over F_p.
FpPoly legendre_hasse_polynomial(int64_t p);

bool legendre_ordinary(int64_t lambda0, int64_t p);

// Legendre parameter of the absolute canonical lift of E_lambda0, computed
// through weierstrass_canonical_lift and Hensel-lifted 2-torsion; the
// independent oracle for the family specialization.
int64_t legendre_parameter_of_canonical_lift(int64_t lambda0, int64_t p);

// Short Weierstrass form (a, b) of y^2 = x(x-1)(x-mu) over Z/p^e.
std::pair<int64_t, int64_t> legendre_to_short_weierstrass(int64_t mu, Modulus m);

} // namespace wittlift
