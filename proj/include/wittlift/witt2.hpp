#pragma once

#include "wittlift/exactring.hpp"

namespace wittlift {

// ---------------------------------------------------------------------------
// Length-2 Witt vectors over a char-p chart ring. Components are kept in
// chart normal form; carries are computed on integer lifts in [0,p) at
// working modulus p^2 and then reduced back into the chart.
// ---------------------------------------------------------------------------
class Witt2 {
public:
    Witt2() = default;
    Witt2(ChartRing chart, ModPoly a0, ModPoly a1);

    const ChartRing& chart() const { return chart_; }
    const ModPoly& a0() const { return a0_; }
    const ModPoly& a1() const { return a1_; }

    bool operator==(const Witt2& o) const { return a0_ == o.a0_ && a1_ == o.a1_; }

private:
    ChartRing chart_;
    ModPoly a0_, a1_;
};

Witt2 witt_add(const Witt2& x, const Witt2& y);
Witt2 witt_sub(const Witt2& x, const Witt2& y);
Witt2 witt_mul(const Witt2& x, const Witt2& y);
Witt2 witt_neg(const Witt2& x);

Witt2 teichmuller(const ChartRing& chart, const ModPoly& u); // [u] = (u, 0)
Witt2 verschiebung(const ChartRing& chart, const ModPoly& u); // V(u) = (0, u)
ModPoly restrict_w(const Witt2& x);                           // R(a0, a1) = a0
Witt2 witt_frobenius(const Witt2& x);                         // F(a0, a1) = (a0^p, a1^p)

Witt2 witt_zero(const ChartRing& chart, Modulus mod_p, std::vector<std::string> vars);
Witt2 witt_one(const ChartRing& chart, Modulus mod_p, std::vector<std::string> vars);

// W_2(F_p) = Z/p^2: n -> (n mod p, (n - n0^p)/p mod p), n0 the lift in [0,p).
Witt2 embed_zp2(int64_t n, const ChartRing& chart, Modulus mod_p, std::vector<std::string> vars);

// Ghost value a0~^p + p*a1~ in Z/p^2, defined for constant Witt vectors.
int64_t ghost_value(const Witt2& x);

// Evaluate a Z/p^2-coefficient polynomial at Teichmuller lifts of the chart
// coordinates, with scalars entering through embed_zp2. Variable i of ftilde
// maps to [args[i]].
Witt2 witt_eval_at_teichmuller(const ModPoly& ftilde, const ChartRing& chart,
                               const std::vector<ModPoly>& args);

} // namespace wittlift
