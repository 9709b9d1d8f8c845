#include "wittlift/canlift.hpp"

#include <algorithm>

#include "wittlift/linalg.hpp"

namespace wittlift {

namespace {

// first variable whose pure power x_i^deg has a unit coefficient; the chart
// relations we support are monic in one variable after scaling
size_t monic_variable(const ModPoly& f) {
    int64_t d = f.total_degree();
    for (size_t i = 0; i < f.nvars(); ++i) {
        Exp e(f.nvars(), 0);
        e[i] = uint32_t(d);
        if (f.coeff(e) % f.modulus().p != 0) return i;
    }
    fail("bad_chart", "hypersurface has no monic variable; change coordinates first");
}

// Teichmuller coefficient lift: C -> C^p mod p^2 termwise.
ModPoly teichmuller_coeff_lift(const ModPoly& f) {
    Modulus w = Modulus::working(f.modulus().p, 2);
    ModPoly g(w, f.vars());
    for (const auto& [e, c] : f.terms()) g.set_coeff(e, w.pow(c, w.p));
    return g;
}

} // namespace

ModPoly carry_polynomial(const ModPoly& f) {
    if (f.modulus().e != 1) fail("bad_modulus", "carry_polynomial expects char p input");
    int64_t p = f.modulus().p;
    Modulus w = Modulus::working(p, 2);
    // T = sum_m (C_m^p mod p^2) x^(p m)
    ModPoly t(w, f.vars());
    for (const auto& [e, c] : f.terms()) {
        Exp s = e;
        for (auto& x : s) x *= uint32_t(p);
        t.set_coeff(s, w.pow(c, p));
    }
    ModPoly fp = f.lift_to(w).pow(uint64_t(p));
    return lift_div_p(t - fp);
}

CanonicalLiftChart::CanonicalLiftChart(ChartRing chart, SplittingData sigma, ModPoly lifted)
    : chart_(std::move(chart)), sigma_(std::move(sigma)), lifted_(std::move(lifted)) {}

Witt2 CanonicalLiftChart::normalize(const Witt2& w) const {
    // (a0, a1) -> (a0, s(sigma(a1))) with the section s(a) = a^p theta
    ModPoly s = sigma_.sigma(w.a1());
    ModPoly rep = frobenius_power(s) * sigma_.theta();
    return Witt2(chart_, w.a0(), rep);
}

bool CanonicalLiftChart::in_ideal(const Witt2& w) const {
    Witt2 n = normalize(w);
    return n.a0().is_zero() && n.a1().is_zero();
}

CanonicalLiftChart canonical_lift_chart(const ModPoly& f, const SplittingData& sigma) {
    ChartRing cone(f, monic_variable(f));
    ModPoly lifted = lifted_equation(f, sigma);
    return CanonicalLiftChart(cone, sigma, lifted);
}

ModPoly lifted_equation(const ModPoly& f, const SplittingData& sigma) {
    if (!(sigma.hypersurface() == f))
        fail("splitting_mismatch", "splitting was built for a different hypersurface");
    Modulus w = Modulus::working(f.modulus().p, 2);
    ModPoly g = teichmuller_coeff_lift(f);
    ModPoly kappa = carry_polynomial(f);
    ModPoly s = sigma.sigma(kappa);
    ModPoly ftilde = g - s.lift_to(w).scaled(f.modulus().p);

    // executable content of flatness: f~ = f mod p, and f~ at Teichmuller
    // generators dies in the quotient
    if (!(ftilde.reduce_to(f.modulus()) == f))
        fail("postcondition", "lifted equation does not reduce to f");
    ChartRing cone(f, monic_variable(f));
    std::vector<ModPoly> gens;
    for (size_t i = 0; i < f.nvars(); ++i)
        gens.push_back(ModPoly::variable(f.modulus(), f.vars(), i));
    Witt2 value = witt_eval_at_teichmuller(ftilde, cone, gens);
    CanonicalLiftChart chart(cone, sigma, ftilde);
    if (!chart.in_ideal(value))
        fail("postcondition", "lifted equation does not vanish at Teichmuller generators");
    return ftilde;
}

// ---------------------------------------------------------------------------
// Weierstrass renormalization mod p^2: a linear solve for a substitution
// X -> X + p M X, a scale 1 + p l, and coefficient corrections (da, db)
// sending the lifted cubic back to  z y^2 - x^3 - a~ x z^2 - b~ z^3.
// ---------------------------------------------------------------------------

WeierstrassLift weierstrass_canonical_lift(int64_t a, int64_t b, int64_t p) {
    if (p < 5) fail("bad_prime", "weierstrass_canonical_lift requires p >= 5");
    auto mp = Modulus::make(p, 1);
    a = mp.reduce(a);
    b = mp.reduce(b);
    ModPoly f = weierstrass_cubic(a, b, mp);
    auto fed = fedder_fsplit_test(f);
    if (!fed.split) fail("not_f_split", "supersingular curve: no F-splitting exists");
    SplittingData sigma = build_splitting(f);
    ModPoly ftilde = lifted_equation(f, sigma);

    // the renormalization target is the honest mod-p^2 Weierstrass family
    //   z y^2 - x^3 - (a + p da) x z^2 - (b + p db) z^3,
    // so the base point must carry the signed coefficients, not the
    // coefficientwise lift of the mod-p form
    Modulus w = Modulus::working(p, 2);
    ModPoly W0 = weierstrass_cubic(a, b, w);
    ModPoly H0 = lift_div_p(ftilde - W0);

    const auto& vars = f.vars(); // x, y, z
    auto var = [&](size_t i) { return ModPoly::variable(mp, vars, i); };
    ModPoly dW[3] = {f.derivative(0), f.derivative(1), f.derivative(2)};

    // columns: M[r][c] (9), l, da, db
    std::vector<Exp> monos; // cubic monomials
    for (uint32_t i = 0; i <= 3; ++i)
        for (uint32_t j = 0; i + j <= 3; ++j) monos.push_back({i, j, uint32_t(3 - i - j)});
    std::sort(monos.begin(), monos.end(), TermOrder());

    std::vector<std::vector<int64_t>> A(monos.size(), std::vector<int64_t>(12, 0));
    std::vector<int64_t> rhs(monos.size(), 0);
    auto put = [&](const ModPoly& g, size_t col, int64_t scale) {
        for (size_t r = 0; r < monos.size(); ++r)
            A[r][col] = mp.reduce(A[r][col] + scale * g.coeff(monos[r]));
    };
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) put(dW[i] * var(j), 3 * i + j, 1);
    put(f, 9, -1); // -l W
    ModPoly xz2 = ModPoly::monomial(mp, vars, {1, 0, 2}, 1);
    ModPoly z3 = ModPoly::monomial(mp, vars, {0, 0, 3}, 1);
    put(xz2, 10, 1); // +da x z^2
    put(z3, 11, 1);  // +db z^3
    for (size_t r = 0; r < monos.size(); ++r) rhs[r] = mp.reduce(-H0.coeff(monos[r]));

    auto sol = solve_linear_fp(p, A, rhs);
    if (!sol.consistent)
        fail("internal", "Weierstrass renormalization system is inconsistent");

    int64_t p2 = p * p;
    int64_t at = (a + p * sol.solution[10]) % p2;
    int64_t bt = (b + p * sol.solution[11]) % p2;

    // deterministic representative: minimize over the twist orbit
    int64_t best_a = at, best_b = bt;
    for (int64_t k = 0; k < p; ++k) {
        int64_t u = 1 + p * k;
        int64_t u2 = (u * u) % p2;
        int64_t u4 = (u2 * u2) % p2;
        int64_t u6 = (u4 * u2) % p2;
        int64_t ca = (at * u4) % p2, cb = (bt * u6) % p2;
        if (ca < best_a || (ca == best_a && cb < best_b)) {
            best_a = ca;
            best_b = cb;
        }
    }

    WeierstrassLift out;
    out.p = p;
    out.a = a;
    out.b = b;
    out.a_tilde = best_a;
    out.b_tilde = best_b;
    return out;
}

// ---------------------------------------------------------------------------
// Legendre family: canonical lifting with a symbolic parameter.
// Variables are (x, y, z, l) with the trace acting on the first three only.
// ---------------------------------------------------------------------------

namespace {

const std::vector<std::string> kFamVars{"x", "y", "z", "l"};
constexpr size_t kLambda = 3;

// R-linear trace over the (x,y,z) block: lambda exponents pass through.
ModPoly trace_xyz(const ModPoly& g) {
    int64_t p = g.modulus().p;
    ModPoly r(g.modulus(), g.vars());
    for (const auto& [e, c] : g.terms()) {
        bool keep = true;
        for (size_t i = 0; i < 3; ++i) {
            if (e[i] % uint32_t(p) != uint32_t(p - 1)) {
                keep = false;
                break;
            }
        }
        if (!keep) continue;
        Exp d = e;
        for (size_t i = 0; i < 3; ++i) d[i] = (d[i] - uint32_t(p - 1)) / uint32_t(p);
        r.set_coeff(d, r.coeff(d) + c);
    }
    return r;
}

//  z y^2 - x^3 + (1+l) x^2 z - l x z^2  over F_p in (x,y,z,l)
ModPoly legendre_cubic(Modulus mp) {
    ModPoly f(mp, kFamVars);
    f.set_coeff({0, 2, 1, 0}, 1);
    f.set_coeff({3, 0, 0, 0}, mp.reduce(-1));
    f.set_coeff({2, 0, 1, 0}, 1);
    f.set_coeff({2, 0, 1, 1}, 1);
    f.set_coeff({1, 0, 2, 1}, mp.reduce(-1));
    return f;
}

// lambda-polynomial of a (x,y,z)-constant element
FpPoly lambda_poly(const ModPoly& g, int64_t p) {
    std::vector<int64_t> c;
    for (const auto& [e, v] : g.terms()) {
        if (e[0] != 0 || e[1] != 0 || e[2] != 0)
            fail("internal", "expected a pure lambda polynomial");
        if (e[kLambda] >= c.size()) c.resize(e[kLambda] + 1, 0);
        c[e[kLambda]] = v;
    }
    return FpPoly(p, std::move(c));
}

// coefficient of the cubic (x,y,z)-monomial `mono` as a lambda-polynomial
FpPoly xyz_coeff(const ModPoly& g, const Exp& mono, int64_t p) {
    std::vector<int64_t> c;
    for (const auto& [e, v] : g.terms()) {
        if (e[0] != mono[0] || e[1] != mono[1] || e[2] != mono[2]) continue;
        if (e[kLambda] >= c.size()) c.resize(e[kLambda] + 1, 0);
        c[e[kLambda]] = v;
    }
    return FpPoly(p, std::move(c));
}

} // namespace

FpPoly legendre_hasse_polynomial(int64_t p) {
    auto mp = Modulus::make(p, 1);
    ModPoly f = legendre_cubic(mp);
    ModPoly power = f.pow(uint64_t(p - 1));
    ModPoly h(mp, kFamVars);
    Exp target{uint32_t(p - 1), uint32_t(p - 1), uint32_t(p - 1), 0};
    for (const auto& [e, c] : power.terms()) {
        if (e[0] == target[0] && e[1] == target[1] && e[2] == target[2]) {
            Exp d{0, 0, 0, e[kLambda]};
            h.set_coeff(d, c);
        }
    }
    return lambda_poly(h, p);
}

bool legendre_ordinary(int64_t lambda0, int64_t p) {
    auto mp = Modulus::make(p, 1);
    int64_t l = mp.reduce(lambda0);
    if (l == 0 || l == 1) return false; // singular members
    return legendre_hasse_polynomial(p).eval(l) != 0;
}

LegendreFrobenius legendre_modular_frobenius(int64_t p, int64_t degree_bound) {
    if (p < 5) fail("bad_prime", "legendre_modular_frobenius requires p >= 5");
    if (degree_bound < 1) fail("bad_bound", "degree bound must be >= 1");
    auto mp = Modulus::make(p, 1);
    Modulus w = Modulus::working(p, 2);

    ModPoly f = legendre_cubic(mp);
    FpPoly hasse = legendre_hasse_polynomial(p);
    {
        bool any = false;
        for (int64_t l0 = 2; l0 < p; ++l0) any = any || legendre_ordinary(l0, p);
        if (!any) fail("internal", "no ordinary lambda_0 in F_p"); // impossible for p >= 5
    }

    // T_cubic: the twisted Legendre form with its honest signed mod-p^2
    // coefficients,  z y^2 - x^3 + (1 + l^p) x^2 z - l^p x z^2, so that the
    // renormalization target W(mu~) = T_cubic + p dmu (x^2 z - x z^2) is a
    // genuine member of the Legendre family at mu~ = l^p + p dmu.
    ModPoly T_cubic(w, kFamVars);
    T_cubic.set_coeff({0, 2, 1, 0}, 1);
    T_cubic.set_coeff({3, 0, 0, 0}, w.reduce(-1));
    T_cubic.set_coeff({2, 0, 1, 0}, 1);
    T_cubic.set_coeff({2, 0, 1, uint32_t(p)}, 1);
    T_cubic.set_coeff({1, 0, 2, uint32_t(p)}, w.reduce(-1));

    // T: the same coefficients at the p-power generators (xyz exponents
    // scaled by p, lambda exponents kept)
    ModPoly T(w, kFamVars);
    for (const auto& [e, c] : T_cubic.terms()) {
        Exp s = e;
        for (size_t i = 0; i < 3; ++i) s[i] *= uint32_t(p);
        T.set_coeff(s, c);
    }
    ModPoly Fhat = f.lift_to(w);
    ChartRing reduction(Fhat, 0); // monic in x after unit scaling
    ModPoly rho = reduction.normal_form(T);
    ModPoly E = lift_div_p(rho); // char p, x-degree < 3

    // S_raw / H = sigma(E): relative Fedder trace against f^(p-1)
    ModPoly mult = f.pow(uint64_t(p - 1));
    ModPoly S_raw = trace_xyz(mult * E);

    // The cleared lifted equation is lift(H) T_cubic - p S_raw.
    // Renormalizing it to (1+pl) lift(H) (T_cubic + p dmu (x^2z - xz^2)) by
    // X -> X + pMX gives, after the coefficient-lift carries cancel, the
    // F_p(lambda) system
    //   H sum_i dW^tw_i (M X)_i - l H W^tw - dmu H (x^2 z - x z^2) = S_raw.
    ModPoly Wtw = T_cubic.reduce_to(mp);
    ModPoly dW[3] = {Wtw.derivative(0), Wtw.derivative(1), Wtw.derivative(2)};
    std::vector<Exp> monos;
    for (uint32_t i = 0; i <= 3; ++i)
        for (uint32_t j = 0; i + j <= 3; ++j) monos.push_back({i, j, uint32_t(3 - i - j), 0});
    std::sort(monos.begin(), monos.end(), TermOrder());

    auto var = [&](size_t i) { return ModPoly::variable(mp, kFamVars, i); };
    FpRat Hr{hasse};
    std::vector<std::vector<FpRat>> A(monos.size(), std::vector<FpRat>(11, FpRat::zero(p)));
    std::vector<FpRat> rhs(monos.size(), FpRat::zero(p));

    for (size_t i = 0; i < 3; ++i) {
        for (size_t j = 0; j < 3; ++j) {
            ModPoly prod = dW[i] * var(j);
            for (size_t r = 0; r < monos.size(); ++r)
                A[r][3 * i + j] = Hr * FpRat(xyz_coeff(prod, monos[r], p));
        }
    }
    for (size_t r = 0; r < monos.size(); ++r) {
        A[r][9] = -Hr * FpRat(xyz_coeff(Wtw, monos[r], p)); // -l
        rhs[r] = FpRat(xyz_coeff(S_raw, monos[r], p));
    }
    // -H dmu (x^2 z - x z^2)
    {
        Exp x2z{2, 0, 1, 0}, xz2{1, 0, 2, 0};
        for (size_t r = 0; r < monos.size(); ++r) {
            int64_t c = (monos[r] == x2z) ? 1 : (monos[r] == xz2 ? -1 : 0);
            if (c != 0) A[r][10] = -Hr * FpRat::constant(p, mp.reduce(c));
        }
    }

    std::vector<FpRat> sol;
    std::vector<std::vector<FpRat>> kernel;
    if (!solve_linear_ratfunc(A, rhs, sol, &kernel))
        fail("internal", "Legendre renormalization system is inconsistent");
    for (const auto& k : kernel)
        if (!k[10].is_zero())
            fail("internal", "Legendre parameter is not pinned by the normalization");

    LegendreFrobenius out;
    out.p = p;
    out.degree_bound = degree_bound;
    out.g = sol[10];
    out.hasse = hasse;

    // series expansion: around 0 when regular there, else around the first
    // ordinary lambda_0; recomputed at D+5 and compared on the overlap.
    auto expand = [&](int64_t center, int64_t upto) {
        // shift so the center is 0: g(center + t) as a power series in t
        // using repeated synthetic division by (l - center)
        FpPoly num = out.g.num(), den = out.g.den();
        auto shift_poly = [&](const FpPoly& q) {
            // q(center + t) by Horner in (t + center)
            FpPoly acc = FpPoly::zero(p);
            FpPoly lin(p, {center % p, 1});
            for (size_t i = q.coeffs().size(); i-- > 0;)
                acc = acc * lin + FpPoly::constant(p, q.coeffs()[i]);
            return acc;
        };
        FpPoly ns = shift_poly(num), ds = shift_poly(den);
        if (ds.coeff(0) == 0) fail("pole", "series center sits on a pole");
        // power series division to order `upto`
        std::vector<int64_t> res(size_t(upto + 1), 0);
        std::vector<int64_t> rem(ns.coeffs());
        rem.resize(std::max(rem.size(), size_t(upto + 1)), 0);
        int64_t d0inv;
        {
            int64_t a0 = ds.coeff(0), r0 = p, r1 = a0, s0 = 0, s1 = 1;
            while (r1 != 0) {
                int64_t k = r0 / r1;
                int64_t r2 = r0 - k * r1, s2 = s0 - k * s1;
                r0 = r1; r1 = r2;
                s0 = s1; s1 = s2;
            }
            d0inv = ((s0 % p) + p) % p;
        }
        for (int64_t n = 0; n <= upto; ++n) {
            int64_t v = (n < int64_t(rem.size())) ? rem[size_t(n)] : 0;
            int64_t cn = (v * d0inv) % p;
            cn = ((cn % p) + p) % p;
            res[size_t(n)] = cn;
            for (size_t j = 0; j < ds.coeffs().size() && n + int64_t(j) <= upto; ++j) {
                size_t idx = size_t(n + int64_t(j));
                if (idx >= rem.size()) rem.resize(idx + 1, 0);
                rem[idx] = (((rem[idx] - cn * ds.coeff(j)) % p) + p) % p;
            }
        }
        return res;
    };

    int64_t center = 0;
    if (out.g.den().eval(0) == 0) {
        center = -1;
        for (int64_t l0 = 2; l0 < p; ++l0)
            if (legendre_ordinary(l0, p)) {
                center = l0;
                break;
            }
        if (center < 0) fail("internal", "no ordinary expansion center");
    }
    out.series_center = center;
    out.series = expand(center, degree_bound);
    auto recheck = expand(center, degree_bound + 5);
    for (size_t i = 0; i < out.series.size(); ++i)
        if (recheck[i] != out.series[i])
            fail("truncation_unstable", "series expansion changed under a larger bound");
    return out;
}

int64_t LegendreFrobenius::mu_at(int64_t lambda0) const {
    int64_t p2 = p * p;
    int64_t l = ((lambda0 % p) + p) % p;
    Modulus w = Modulus::working(p, 2);
    int64_t lp = w.pow(l, p);
    return (lp + p * g.eval(l)) % p2;
}

int64_t LegendreFrobenius::xi_unit_at(int64_t lambda0) const {
    auto mp = Modulus::make(p, 1);
    int64_t l = mp.reduce(lambda0);
    return mp.reduce(mp.pow(l, p - 1) + g.derivative().eval(l));
}

std::pair<int64_t, int64_t> legendre_to_short_weierstrass(int64_t mu, Modulus m) {
    // y^2 = x(x-1)(x-mu) = x^3 - (1+mu) x^2 + mu x; shift x -> x + (1+mu)/3
    int64_t inv3 = m.inv(3);
    int64_t s = m.mul(m.add(1, mu), inv3);
    int64_t e1 = m.reduce(-m.add(1, mu)); // x^2 coefficient
    int64_t e2 = m.reduce(mu);            // x coefficient
    // (x+s)^3 + e1 (x+s)^2 + e2 (x+s) = x^3 + (3s+e1) x^2 + ... with 3s+e1=0
    int64_t a = m.reduce(3 * s % m.q * s + 2 * e1 * s + e2);
    int64_t b = m.reduce(s * s % m.q * s + e1 * s % m.q * s + e2 * s);
    return {a, b};
}

int64_t legendre_parameter_of_canonical_lift(int64_t lambda0, int64_t p) {
    auto mp = Modulus::make(p, 1);
    Modulus w = Modulus::working(p, 2);
    int64_t l = mp.reduce(lambda0);
    if (!legendre_ordinary(l, p)) fail("not_ordinary", "lambda_0 is not ordinary");

    auto [a, b] = legendre_to_short_weierstrass(l, mp);
    WeierstrassLift lift = weierstrass_canonical_lift(a, b, p);

    // 2-torsion roots of x^3 + a~x + b~ by one Hensel step from the roots
    // mod p, which are the shifted 0, 1, lambda_0
    int64_t inv3 = mp.inv(3);
    int64_t s = mp.mul(mp.add(1, l), inv3);
    auto hensel_root = [&](int64_t r0) {
        int64_t r = r0; // value mod p lifts canonically
        // f(x) = x^3 + a~ x + b~ over Z/p^2
        int64_t fr = w.add(w.add(w.pow(r, 3), w.mul(lift.a_tilde, r)), lift.b_tilde);
        int64_t dfr = w.add(w.mul(3, w.mul(r, r)), lift.a_tilde);
        return w.sub(r, w.mul(fr, w.inv(dfr)));
    };
    int64_t r0 = hensel_root(mp.reduce(0 - s));
    int64_t r1 = hensel_root(mp.reduce(1 - s));
    int64_t rl = hensel_root(mp.reduce(l - s));
    return w.mul(w.sub(rl, r0), w.inv(w.sub(r1, r0)));
}

} // namespace wittlift
