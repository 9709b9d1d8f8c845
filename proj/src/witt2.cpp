#include "wittlift/witt2.hpp"

namespace wittlift {

namespace {

void require_char_p(const ModPoly& g) {
    if (g.modulus().e != 1)
        fail("bad_component", "Witt components must live in characteristic p");
}

void require_same_chart(const Witt2& x, const Witt2& y) {
    if (!(x.chart() == y.chart()) || x.a0().modulus() != y.a0().modulus() ||
        x.a0().vars() != y.a0().vars())
        fail("chart_mismatch", "Witt vectors live over different charts");
}

// (X^p + Y^p - (X+Y)^p)/p on integer lifts, reduced to char p. The input
// polynomials are arbitrary representatives; the result is well defined in
// the chart ring because the carry is a universal integer polynomial.
ModPoly addition_carry(const ModPoly& x, const ModPoly& y) {
    Modulus w = Modulus::working(x.modulus().p, 2);
    ModPoly xl = x.lift_to(w), yl = y.lift_to(w);
    int64_t p = w.p;
    ModPoly num = xl.pow(p) + yl.pow(p) - (xl + yl).pow(p);
    return lift_div_p(num);
}

} // namespace

Witt2::Witt2(ChartRing chart, ModPoly a0, ModPoly a1) : chart_(std::move(chart)) {
    require_char_p(a0);
    require_char_p(a1);
    a0_ = chart_.normal_form(a0);
    a1_ = chart_.normal_form(a1);
}

Witt2 witt_add(const Witt2& x, const Witt2& y) {
    require_same_chart(x, y);
    ModPoly carry = addition_carry(x.a0(), y.a0());
    return Witt2(x.chart(), x.a0() + y.a0(), x.a1() + y.a1() + carry);
}

Witt2 witt_neg(const Witt2& x) {
    // -(a0, a1) = (-a0, -a1 - carry(a0, -a0)); p odd makes carry(a0,-a0)=0
    // over Z only when lifts cancel, so compute it honestly.
    ModPoly carry = addition_carry(x.a0(), -x.a0());
    return Witt2(x.chart(), -x.a0(), -x.a1() - carry);
}

Witt2 witt_sub(const Witt2& x, const Witt2& y) { return witt_add(x, witt_neg(y)); }

Witt2 witt_mul(const Witt2& x, const Witt2& y) {
    require_same_chart(x, y);
    // (x0, x1)*(y0, y1) = (x0 y0, x0^p y1 + x1 y0^p); the p x1 y1 ghost term
    // dies in characteristic p.
    ModPoly a0 = x.a0() * y.a0();
    ModPoly a1 = frobenius_power(x.a0()) * y.a1() + x.a1() * frobenius_power(y.a0());
    return Witt2(x.chart(), a0, a1);
}

Witt2 teichmuller(const ChartRing& chart, const ModPoly& u) {
    return Witt2(chart, u, ModPoly::zero(u.modulus(), u.vars()));
}

Witt2 verschiebung(const ChartRing& chart, const ModPoly& u) {
    return Witt2(chart, ModPoly::zero(u.modulus(), u.vars()), u);
}

ModPoly restrict_w(const Witt2& x) { return x.a0(); }

Witt2 witt_frobenius(const Witt2& x) {
    return Witt2(x.chart(), frobenius_power(x.a0()), frobenius_power(x.a1()));
}

Witt2 witt_zero(const ChartRing& chart, Modulus mod_p, std::vector<std::string> vars) {
    ModPoly z = ModPoly::zero(mod_p, std::move(vars));
    return Witt2(chart, z, z);
}

Witt2 witt_one(const ChartRing& chart, Modulus mod_p, std::vector<std::string> vars) {
    ModPoly one = ModPoly::constant(mod_p, vars, 1);
    ModPoly z = ModPoly::zero(mod_p, std::move(vars));
    return Witt2(chart, one, z);
}

Witt2 embed_zp2(int64_t n, const ChartRing& chart, Modulus mod_p, std::vector<std::string> vars) {
    if (mod_p.e != 1) fail("bad_modulus", "embed_zp2 target components are char p");
    int64_t p = mod_p.p;
    Modulus zp2 = Modulus::working(p, 2);
    n = zp2.reduce(n);
    int64_t n0 = n % p;
    int64_t n0p = zp2.pow(n0, p);
    int64_t diff = zp2.sub(n, n0p);
    if (diff % p != 0) fail("internal", "embed_zp2 carry not divisible by p");
    int64_t n1 = (diff / p) % p;
    ModPoly a0 = ModPoly::constant(mod_p, vars, n0);
    ModPoly a1 = ModPoly::constant(mod_p, std::move(vars), n1);
    return Witt2(chart, a0, a1);
}

int64_t ghost_value(const Witt2& x) {
    if (!x.a0().is_constant() || !x.a1().is_constant())
        fail("not_constant", "ghost value requires constant components");
    int64_t p = x.a0().modulus().p;
    Modulus zp2 = Modulus::working(p, 2);
    return zp2.add(zp2.pow(x.a0().constant_value(), p), zp2.mul(p, x.a1().constant_value()));
}

Witt2 witt_eval_at_teichmuller(const ModPoly& ftilde, const ChartRing& chart,
                               const std::vector<ModPoly>& args) {
    if (ftilde.modulus().e != 2)
        fail("bad_modulus", "expected Z/p^2 coefficients");
    if (args.size() != ftilde.nvars())
        fail("bad_point", "one chart element per variable required");
    Modulus mod_p = Modulus::make(ftilde.modulus().p, 1);
    const auto& cvars = args.empty() ? std::vector<std::string>{} : args[0].vars();
    Witt2 acc = witt_zero(chart, mod_p, cvars);
    for (const auto& [e, c] : ftilde.terms()) {
        Witt2 term = embed_zp2(c, chart, mod_p, cvars);
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            Witt2 tm = teichmuller(chart, args[i].pow(e[i]));
            term = witt_mul(term, tm);
        }
        acc = witt_add(acc, term);
    }
    return acc;
}

} // namespace wittlift
