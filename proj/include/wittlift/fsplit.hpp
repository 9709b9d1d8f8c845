#pragma once

#include "wittlift/exactring.hpp"

namespace wittlift {

// Cartier-type trace on a polynomial ring in char p:
//   x^b -> x^{(b-(p-1)*1)/p}  when every b_i = p-1 (mod p), else 0,
// extended linearly. Satisfies Tr(h^p g) = h Tr(g).
ModPoly frobenius_trace(const ModPoly& g);

struct FedderResult {
    bool split = false;
    int64_t hasse_scalar = 0; // coefficient of (x_0...x_n)^(p-1) in f^(p-1)
};

// Fedder coefficient test for a Calabi-Yau hypersurface: f homogeneous of
// degree n+1 in n+1 variables over F_p.
FedderResult fedder_fsplit_test(const ModPoly& f);

// F-splitting on the cone of V(f), normalized so sigma(1) = 1:
//   sigma(g) = hasse_scalar^{-1} * Tr(f^{p-1} g).
// Chart restrictions rehomogenize with the chart variable to a degree
// divisible by p, apply the graded sigma, and dehomogenize again.
class SplittingData {
public:
    SplittingData() = default;

    const ModPoly& hypersurface() const { return f_; }
    const ModPoly& multiplier() const { return multiplier_; } // f^(p-1)
    int64_t hasse_scalar() const { return hasse_scalar_; }
    const ModPoly& theta() const { return theta_; }

    // graded sigma on the full cone ring (well defined modulo (f))
    ModPoly sigma(const ModPoly& g) const;

    // sigma on the affine chart x_i = 1
    ModPoly sigma_chart(size_t chart_var, const ModPoly& a) const;

    friend SplittingData build_splitting(const ModPoly& f);

private:
    ModPoly f_;
    ModPoly multiplier_;
    int64_t hasse_scalar_ = 0;
    ModPoly theta_;
};

// Requires fedder_fsplit_test(f).split; solves sigma(theta)=1 over a
// low-degree monomial basis for the section witness theta.
SplittingData build_splitting(const ModPoly& f);

// Homogeneous Weierstrass cubic  z y^2 - x^3 - a x z^2 - b z^3  over F_p,
// in variables (x, y, z).
ModPoly weierstrass_cubic(int64_t a, int64_t b, Modulus m);

// Classical Hasse invariant of y^2 = x^3 + a x + b: the coefficient of
// x^(p-1) in (x^3 + a x + b)^((p-1)/2). Independent oracle for the Fedder
// scalar.
int64_t hasse_invariant_classical(int64_t a, int64_t b, int64_t p);

} // namespace wittlift
