#include "wittlift/frobord.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>

#include "wittlift/linalg.hpp"

namespace wittlift {

FrobeniusLift::FrobeniusLift(int64_t p, int64_t bound, std::vector<TruncSeries> p_parts)
    : p_(p), bound_(bound), f_(std::move(p_parts)) {
    if (f_.empty()) fail("bad_lift", "Frobenius lifting needs at least one variable");
    for (auto& fi : f_) {
        if (fi.nvars() != f_.size() || fi.bound() != bound_)
            fail("bad_lift", "p-parts must share the variable count and bound");
        if (fi.modulus().p != p_) fail("bad_lift", "p-part modulus mismatch");
        if (fi.modulus().e == 1)
            fi = fi.lift_to(Modulus::working(p_, 2));
        else if (fi.modulus().e != 2)
            fail("bad_lift", "p-parts are stored mod p^2");
    }
}

TruncSeries FrobeniusLift::p_part_char_p(size_t i) const {
    return f_.at(i).reduce_to(Modulus::make(p_, 1));
}

TruncSeries FrobeniusLift::image(size_t i, Modulus m, int64_t bound) const {
    TruncSeries t = TruncSeries::variable(m, rank(), bound, i).pow(uint64_t(p_));
    TruncSeries fi(m, rank(), bound);
    for (const auto& [e, c] : f_.at(i).terms()) fi.set_coeff(e, c);
    return t + fi.scaled(p_);
}

TruncSeries FrobeniusLift::pullback(const TruncSeries& g) const {
    std::vector<TruncSeries> args;
    for (size_t i = 0; i < rank(); ++i) args.push_back(image(i, g.modulus(), g.bound()));
    return g.compose(args);
}

bool OneForm::is_zero() const {
    for (const auto& c : comp)
        if (!c.is_zero()) return false;
    return true;
}

OneForm zero_form(int64_t p, size_t r, int64_t bound) {
    OneForm w;
    auto m = Modulus::make(p, 1);
    for (size_t i = 0; i < r; ++i) w.comp.emplace_back(m, r, bound);
    return w;
}

OneForm xi_apply(const FrobeniusLift& F, const OneForm& omega) {
    const size_t r = F.rank();
    if (omega.comp.size() != r) fail("bad_form", "component count mismatch");
    int64_t p = F.p();
    int64_t D = omega.comp[0].bound();
    Modulus w2 = Modulus::working(p, 2);
    auto mp = Modulus::make(p, 1);

    // F~*(sum g_i dt_i) = sum_i g_i(F~ t) d(F~ t_i),
    // d(F~ t_i) = p (t_i^(p-1) dt_i + df_i)
    std::vector<TruncSeries> pulled;
    for (size_t i = 0; i < r; ++i) pulled.push_back(F.pullback(omega.comp[i].lift_to(w2)));

    OneForm out = zero_form(p, r, D);
    for (size_t j = 0; j < r; ++j) {
        TruncSeries acc(w2, r, D);
        for (size_t i = 0; i < r; ++i) {
            TruncSeries factor(w2, r, D);
            if (i == j) {
                Exp e(r, 0);
                e[i] = uint32_t(p - 1);
                factor.set_coeff(e, 1);
            }
            factor = factor + F.p_parts()[i].derivative(j).truncated(D);
            acc = acc + pulled[i] * factor;
        }
        // the pullback of a one-form is divisible by p; xi = pullback / p
        out.comp[j] = series_div_p(acc.scaled(p)).reduce_to(mp);
    }
    return out;
}

std::vector<TruncSeries> exterior_derivative(const OneForm& omega) {
    const size_t r = omega.comp.size();
    std::vector<TruncSeries> out;
    for (size_t i = 0; i < r; ++i)
        for (size_t j = i + 1; j < r; ++j)
            out.push_back(omega.comp[j].derivative(i) - omega.comp[i].derivative(j));
    return out;
}

bool is_closed(const OneForm& omega) {
    for (const auto& c : exterior_derivative(omega))
        if (!c.is_zero()) return false;
    return true;
}

bool is_ordinary_lift(const FrobeniusLift& F) {
    const size_t r = F.rank();
    int64_t p = F.p();
    std::vector<std::vector<int64_t>> J(r, std::vector<int64_t>(r, 0));
    for (size_t i = 0; i < r; ++i) {
        TruncSeries fi = F.p_part_char_p(i);
        for (size_t j = 0; j < r; ++j) J[i][j] = fi.derivative(j).constant_term();
    }
    // determinant over F_p by elimination (r <= 3 in practice, but generic)
    int64_t det = 1;
    for (size_t c = 0; c < r; ++c) {
        size_t piv = c;
        while (piv < r && J[piv][c] % p == 0) ++piv;
        if (piv == r) return false;
        if (piv != c) {
            std::swap(J[piv], J[c]);
            det = (p - det) % p;
        }
        det = (det * J[c][c]) % p;
        int64_t inv;
        {
            int64_t a = J[c][c] % p, r0 = p, r1 = a, s0 = 0, s1 = 1;
            while (r1) {
                int64_t k = r0 / r1;
                int64_t r2 = r0 - k * r1, s2 = s0 - k * s1;
                r0 = r1; r1 = r2;
                s0 = s1; s1 = s2;
            }
            inv = ((s0 % p) + p) % p;
        }
        for (size_t i = c + 1; i < r; ++i) {
            int64_t f = (J[i][c] % p * inv) % p;
            for (size_t j = c; j < r; ++j) J[i][j] = ((J[i][j] - f * J[c][j]) % p + p) % p;
        }
    }
    return det % p != 0;
}

std::vector<int64_t> teichmuller_point(const FrobeniusLift& F) {
    int64_t p2 = F.p() * F.p();
    std::vector<int64_t> c;
    for (size_t i = 0; i < F.rank(); ++i) {
        Exp zero(F.rank(), 0);
        c.push_back((F.p() * F.p_parts()[i].coeff(zero)) % p2);
    }
    return c;
}

std::vector<OneForm> fixed_forms(const FrobeniusLift& F) {
    if (!is_ordinary_lift(F))
        fail("not_ordinary", "fixed_forms requires an ordinary Frobenius lifting");
    const size_t r = F.rank();
    int64_t p = F.p();
    int64_t D = F.bound();
    auto mp = Modulus::make(p, 1);

    // Degree 0: constants c with (J(0)^T - I) c = 0.
    std::vector<std::vector<int64_t>> A(r, std::vector<int64_t>(r, 0));
    for (size_t i = 0; i < r; ++i) {
        TruncSeries fi = F.p_part_char_p(i);
        for (size_t j = 0; j < r; ++j) A[j][i] = fi.derivative(j).constant_term();
    }
    for (size_t j = 0; j < r; ++j) A[j][j] = ((A[j][j] - 1) % p + p) % p;
    auto kernel = solve_linear_fp(p, A, std::vector<int64_t>(r, 0), true).kernel;

    // Each constant solution extends uniquely: the degree-e slice of
    // xi(omega) only involves omega below degree e (xi contracts degrees).
    std::vector<OneForm> basis;
    for (const auto& c : kernel) {
        OneForm omega = zero_form(p, r, D);
        for (size_t j = 0; j < r; ++j)
            omega.comp[j].set_coeff(Exp(r, 0), c[j]);
        for (int64_t e = 1; e <= D; ++e) {
            OneForm img = xi_apply(F, omega);
            for (size_t j = 0; j < r; ++j)
                omega.comp[j] = omega.comp[j] + img.comp[j].graded_piece(e);
        }
        OneForm img = xi_apply(F, omega);
        if (!(img == omega))
            fail("internal", "fixed-form extension failed to converge");
        if (!is_closed(omega))
            fail("internal", "fixed form is not closed");
        basis.push_back(std::move(omega));
    }
    if (basis.size() < r)
        fail("dimension_deficit",
             "fixed-form space has dimension " + std::to_string(basis.size()) +
                 " < r = " + std::to_string(r) + " at truncation D = " + std::to_string(D),
             "D=" + std::to_string(D));
    return basis;
}

TruncSeries dlog_solve(const OneForm& omega, int64_t tie_break) {
    const size_t r = omega.comp.size();
    if (r == 0) fail("bad_form", "empty form");
    const TruncSeries& c0 = omega.comp[0];
    int64_t p = c0.modulus().p;
    int64_t D = c0.bound();
    auto mp = Modulus::make(p, 1);
    if (!is_closed(omega)) fail("non_integrable", "d(omega) != 0");

    TruncSeries q = TruncSeries::constant(mp, r, D, 1);
    for (int64_t e = 1; e <= D; ++e) {
        // dq = q * omega at coefficient degree e-1 determines the degree-e
        // slice of q up to d-flat monomials
        std::vector<TruncSeries> rhs;
        for (size_t j = 0; j < r; ++j) rhs.push_back((q * omega.comp[j]).graded_piece(e - 1));
        // for each degree-e monomial alpha: alpha_j q_alpha = rhs_j[alpha - e_j]
        TruncSeries slice(mp, r, D);
        // enumerate degree-e monomials via the rhs supports and the flat set
        // (collect candidates from rhs shifted up, plus p-flat monomials)
        std::map<Exp, int64_t, TermOrder> values;
        auto consider = [&](const Exp& alpha) {
            if (values.count(alpha)) return;
            bool flat = true;
            for (uint32_t a : alpha)
                if (a % uint32_t(p) != 0) flat = false;
            if (flat) {
                values[alpha] = tie_break;
                return;
            }
            // pick j with alpha_j invertible
            size_t j = 0;
            while (alpha[j] % uint32_t(p) == 0) ++j;
            Exp below = alpha;
            below[j] -= 1;
            int64_t aj = alpha[j] % p;
            int64_t inv;
            {
                int64_t a = aj, r0 = p, r1 = a, s0 = 0, s1 = 1;
                while (r1) {
                    int64_t k = r0 / r1;
                    int64_t r2 = r0 - k * r1, s2 = s0 - k * s1;
                    r0 = r1; r1 = r2;
                    s0 = s1; s1 = s2;
                }
                inv = ((s0 % p) + p) % p;
            }
            values[alpha] = (rhs[j].coeff(below) * inv) % p;
        };
        for (size_t j = 0; j < r; ++j) {
            for (const auto& [e_lo, c] : rhs[j].terms()) {
                (void)c;
                Exp alpha = e_lo;
                alpha[j] += 1;
                if (exp_total_degree(alpha) == e) consider(alpha);
            }
        }
        if (tie_break != 0 && e % p == 0) {
            // fill the d-flat monomials (all exponents divisible by p) too
            Exp cur(r, 0);
            int64_t target = e / p;
            std::function<void(size_t, int64_t)> rec = [&](size_t idx, int64_t left) {
                if (idx + 1 == r) {
                    cur[idx] = uint32_t(left * p);
                    consider(cur);
                    return;
                }
                for (int64_t k = 0; k <= left; ++k) {
                    cur[idx] = uint32_t(k * p);
                    rec(idx + 1, left - k);
                }
            };
            rec(0, target);
        }
        for (auto& [alpha, v] : values) slice.set_coeff(alpha, v);
        // consistency: d(slice) must reproduce every rhs component at e-1
        for (size_t j = 0; j < r; ++j) {
            if (!(slice.derivative(j).graded_piece(e - 1) == rhs[j]))
                fail("non_integrable", "no unit series integrates the form",
                     "degree=" + std::to_string(e));
        }
        q = q + slice;
    }
    return q;
}

TruncSeries lift_multiplicative(const FrobeniusLift& F, const TruncSeries& q) {
    int64_t p = F.p();
    int64_t D = q.bound();
    if (q.modulus().e != 1) fail("bad_input", "q lives in characteristic p");
    if (q.constant_term() != 1) fail("bad_input", "q must be a 1-unit");
    Modulus w2 = Modulus::working(p, 2);

    // q is exact polynomial data: work at bound pD where both sides of
    // F~*(q~) = q~^p live
    int64_t big = p * D;
    TruncSeries qhat(w2, q.nvars(), big);
    for (const auto& [e, c] : q.terms()) qhat.set_coeff(e, c);

    std::vector<TruncSeries> args;
    for (size_t i = 0; i < F.rank(); ++i) args.push_back(F.image(i, w2, big));
    TruncSeries rhs = qhat.pow(uint64_t(p)) - qhat.compose(args);
    // q is exact only to degree D, which keeps rhs trustworthy to degree D;
    // the resulting identity F~*(q~) = q~^p holds to the truncation bound
    TruncSeries h_big = series_div_p(rhs).truncated(D);
    TruncSeries h;
    try {
        h = h_big.exponents_divided(uint32_t(p));
    } catch (const Error&) {
        fail("inconsistent_input", "d log q is not fixed by xi: no multiplicative lift");
    }
    TruncSeries out = qhat.truncated(D);
    TruncSeries h_trunc = h.truncated(D);
    TruncSeries hp(w2, q.nvars(), D);
    for (const auto& [e, c] : h_trunc.terms()) hp.set_coeff(e, c);
    return out + hp.scaled(p);
}

TruncSeries theta_map(const TruncSeries& x0, const TruncSeries& x1) {
    if (x0.modulus().e != 1 || x1.modulus().e != 1)
        fail("bad_input", "theta takes characteristic-p series");
    Modulus w2 = Modulus::working(x0.modulus().p, 2);
    return x0.lift_to(w2).pow(uint64_t(x0.modulus().p)) + x1.lift_to(w2).scaled(x0.modulus().p);
}

std::pair<TruncSeries, TruncSeries> cartier_section(const FrobeniusLift& F,
                                                    const TruncSeries& y) {
    if (y.modulus().e != 1) fail("bad_input", "cartier_section takes a char-p series");
    int64_t p = F.p();
    Modulus w2 = Modulus::working(p, 2);
    TruncSeries yhat = y.lift_to(w2);
    TruncSeries delta = series_div_p(F.pullback(yhat) - yhat.pow(uint64_t(p)));
    return {y, delta};
}

bool in_power_ideal(const TruncSeries& z, const std::vector<TruncSeries>& gens,
                    bool plus_p_jsquare) {
    // Generators g_i = q~_i^p - 1 over Z/p^2 with g_i mod p = v_i^p for the
    // maximal-ideal coordinates v_i = q_i - 1. Change coordinates t -> s
    // with s_i = v_i(t); in s-coordinates membership mod p is monomial-wise
    // divisibility by some s_i^p, and a two-stage solve decides mod p^2.
    if (gens.empty()) return z.is_zero();
    int64_t p = z.modulus().p;
    int64_t D = z.bound();
    const size_t r = gens.size();
    auto mp = Modulus::make(p, 1);
    Modulus w2 = Modulus::working(p, 2);
    if (z.nvars() != r) fail("bad_input", "rank mismatch in ideal membership");

    // v_i = (g_i mod p)^(1/p): char-p coordinates with unit linear part
    std::vector<TruncSeries> v;
    for (const auto& g : gens) v.push_back(g.reduce_to(mp).exponents_divided(uint32_t(p)));
    // invert the coordinate change t -> v(t) degree by degree: find s(t)
    // with v(s(t)) = t ... we need the opposite direction: express series in
    // the v-coordinates, i.e. find t_i = T_i(s) with s = v(t). Solve by
    // Newton-free iteration: T = linear part inverse of v, then correct.
    // Build the substitution phi(w) := w expressed in s: phi(w) = w(T(s)).
    std::vector<std::vector<int64_t>> L(r, std::vector<int64_t>(r, 0));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) {
            Exp e(r, 0);
            e[j] = 1;
            L[i][j] = v[i].coeff(e);
        }
    // invert L over F_p
    std::vector<std::vector<int64_t>> Linv(r, std::vector<int64_t>(r, 0));
    {
        std::vector<std::vector<int64_t>> M = L;
        for (size_t i = 0; i < r; ++i) Linv[i][i] = 1;
        for (size_t c = 0; c < r; ++c) {
            size_t piv = c;
            while (piv < r && M[piv][c] % p == 0) ++piv;
            if (piv == r) fail("bad_input", "coordinates q_i - 1 are degenerate");
            std::swap(M[piv], M[c]);
            std::swap(Linv[piv], Linv[c]);
            int64_t a = M[c][c] % p, r0 = p, r1 = a, s0 = 0, s1 = 1;
            while (r1) {
                int64_t k = r0 / r1;
                int64_t r2 = r0 - k * r1, s2 = s0 - k * s1;
                r0 = r1; r1 = r2;
                s0 = s1; s1 = s2;
            }
            int64_t inv = ((s0 % p) + p) % p;
            for (size_t j = 0; j < r; ++j) {
                M[c][j] = (M[c][j] * inv) % p;
                Linv[c][j] = (Linv[c][j] * inv) % p;
            }
            for (size_t i = 0; i < r; ++i) {
                if (i == c) continue;
                int64_t f = M[i][c] % p;
                if (!f) continue;
                for (size_t j = 0; j < r; ++j) {
                    M[i][j] = ((M[i][j] - f * M[c][j]) % p + p) % p;
                    Linv[i][j] = ((Linv[i][j] - f * Linv[c][j]) % p + p) % p;
                }
            }
        }
    }
    // T_i(s) with v(T(s)) = s, iteratively: T <- T - Linv (v(T) - s)
    std::vector<TruncSeries> T;
    for (size_t i = 0; i < r; ++i) {
        TruncSeries ti(mp, r, D);
        for (size_t j = 0; j < r; ++j) {
            Exp e(r, 0);
            e[j] = 1;
            ti.set_coeff(e, Linv[i][j]);
        }
        T.push_back(ti);
    }
    for (int64_t it = 0; it <= D; ++it) {
        std::vector<TruncSeries> err;
        bool done = true;
        for (size_t i = 0; i < r; ++i) {
            TruncSeries e = v[i].compose(T) - TruncSeries::variable(mp, r, D, i);
            if (!e.is_zero()) done = false;
            err.push_back(e);
        }
        if (done) break;
        for (size_t i = 0; i < r; ++i) {
            TruncSeries corr(mp, r, D);
            for (size_t j = 0; j < r; ++j) corr = corr + err[j].scaled(Linv[i][j]);
            T[i] = T[i] - corr;
        }
    }
    auto to_s_coords = [&](const TruncSeries& g) { return g.compose(T); };

    // stage A: z mod p in (s_i^p): split monomial-wise
    TruncSeries zs = to_s_coords(z.reduce_to(mp));
    std::vector<TruncSeries> cof; // cofactors in s-coordinates
    for (size_t i = 0; i < r; ++i) cof.emplace_back(mp, r, D);
    for (const auto& [e, c] : zs.terms()) {
        size_t pick = r;
        for (size_t i = 0; i < r; ++i)
            if (e[i] >= uint32_t(p)) {
                pick = i;
                break;
            }
        if (pick == r) return false; // a monomial in the box survives
        Exp d = e;
        d[pick] -= uint32_t(p);
        cof[pick].set_coeff(d, c);
    }
    // map cofactors back to t-coordinates: cof_i(v(t))
    std::vector<TruncSeries> voft = v;
    std::vector<TruncSeries> cof_t;
    for (size_t i = 0; i < r; ++i) cof_t.push_back(cof[i].compose(voft));

    // z1 = (z - sum cof_i g_i)/p
    TruncSeries acc = z;
    for (size_t i = 0; i < r; ++i) {
        TruncSeries ci(w2, r, D);
        for (const auto& [e, c] : cof_t[i].terms()) ci.set_coeff(e, c);
        acc = acc - ci * gens[i];
    }
    TruncSeries z1 = series_div_p(acc); // throws if stage A failed numerically

    // stage B: z1 mod p in (v_i^p) -- or, in the sharpened form, in
    // (v_i^p) + J^2 where J^2 is spanned by all s-monomials of degree >= 2
    TruncSeries z1s = to_s_coords(z1);
    for (const auto& [e, c] : z1s.terms()) {
        (void)c;
        if (plus_p_jsquare && exp_total_degree(e) >= 2) continue;
        bool divisible = false;
        for (size_t i = 0; i < r; ++i)
            if (e[i] >= uint32_t(p)) divisible = true;
        if (!divisible) return false;
    }
    return true;
}

// ------------------------------------------------------------- CLI parsing

namespace {

struct LiftParser {
    std::string_view src;
    size_t pos = 0;
    int64_t p;
    size_t nvars;
    int64_t bound;
    Modulus w3;

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }
    [[noreturn]] void syntax(const std::string& what) {
        fail("syntax", what + " at offset " + std::to_string(pos), std::to_string(pos));
    }

    TruncSeries constant(int64_t c) { return TruncSeries::constant(w3, nvars, bound, c); }

    uint64_t exponent() {
        skip_ws();
        if (peek() == 'p') {
            ++pos;
            return uint64_t(p);
        }
        if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos])))
            syntax("expected exponent");
        uint64_t v = 0;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
            v = v * 10 + uint64_t(src[pos] - '0');
            if (v > 4096) fail("exponent_overflow", "exponent too large for a series");
            ++pos;
        }
        return v;
    }

    TruncSeries primary() {
        skip_ws();
        if (pos >= src.size()) syntax("unexpected end of input");
        char c = src[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            int64_t v = 0;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
                v = w3.reduce(v * 10 + (src[pos] - '0'));
                ++pos;
            }
            return constant(v);
        }
        if (c == 'p') {
            ++pos;
            return constant(p);
        }
        static const char* names = "tuv";
        for (size_t i = 0; i < nvars && i < 3; ++i) {
            if (c == names[i]) {
                ++pos;
                return TruncSeries::variable(w3, nvars, bound, i);
            }
        }
        if (c == '(') {
            ++pos;
            TruncSeries r = expr();
            if (peek() != ')') syntax("expected ')'");
            ++pos;
            return r;
        }
        fail("unknown_character", std::string("unknown character '") + c + "'",
             std::to_string(pos));
    }

    TruncSeries factor() {
        TruncSeries r = primary();
        while (peek() == '^') {
            ++pos;
            r = r.pow(exponent());
        }
        return r;
    }

    TruncSeries term() {
        TruncSeries r = factor();
        while (true) {
            char c = peek();
            if (c == '*') {
                ++pos;
                r = r * factor();
            } else if (c == '/') {
                ++pos;
                TruncSeries d = factor();
                // only exact division by the prime (possibly repeated)
                if (!d.terms().empty() && d.terms().size() == 1 &&
                    exp_total_degree(d.terms().begin()->first) == 0) {
                    int64_t dv = d.constant_term();
                    if (dv == p) {
                        r = series_div_p(r).lift_to(w3);
                        continue;
                    }
                }
                fail("syntax", "only division by p is supported", std::to_string(pos));
            } else {
                break;
            }
        }
        return r;
    }

    TruncSeries expr() {
        TruncSeries r = term();
        while (true) {
            char c = peek();
            if (c == '+' || c == '-') {
                ++pos;
                TruncSeries t = term();
                r = (c == '+') ? r + t : r - t;
            } else {
                break;
            }
        }
        return r;
    }

    TruncSeries run() {
        TruncSeries r = expr();
        skip_ws();
        if (pos < src.size()) syntax("trailing input");
        return r;
    }
};

} // namespace

TruncSeries parse_lift_p_part(std::string_view src, int64_t p, size_t nvars, int64_t bound) {
    LiftParser lp{src, 0, p, nvars, bound, Modulus::working(p, 3)};
    return lp.run().reduce_to(Modulus::working(p, 2));
}

FrobeniusLift parse_frobenius_lift(std::string_view s, int64_t p, int64_t bound) {
    std::vector<std::string_view> parts;
    size_t start = 0;
    for (size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == ';') {
            parts.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    if (parts.empty() || parts.size() > 3)
        fail("bad_lift", "expected between 1 and 3 semicolon-separated p-parts");
    std::vector<TruncSeries> f;
    for (auto part : parts) f.push_back(parse_lift_p_part(part, p, parts.size(), bound));
    return FrobeniusLift(p, bound, std::move(f));
}

} // namespace wittlift
