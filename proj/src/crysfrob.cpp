#include "wittlift/crysfrob.hpp"

#include <algorithm>

#include "wittlift/fsplit.hpp"

namespace wittlift {

namespace {

// Dense univariate arithmetic over Z/p^N for the cohomology reductions.
struct Zq {
    int64_t p = 0;
    int64_t q = 0; // p^N
    int N = 0;

    Zq(int64_t p_, int N_) : p(p_), N(N_) {
        q = 1;
        for (int i = 0; i < N; ++i) {
            if (q > (int64_t(1) << 31) / p_)
                fail("modulus_overflow", "working modulus exceeds 2^31");
            q *= p_;
        }
    }
    int64_t norm(int64_t v) const {
        int64_t r = v % q;
        return r < 0 ? r + q : r;
    }
    int64_t mul(int64_t a, int64_t b) const { return norm(a * b); }
    int64_t inv(int64_t a) const {
        int64_t r0 = q, r1 = norm(a), s0 = 0, s1 = 1;
        while (r1 != 0) {
            int64_t k = r0 / r1;
            int64_t r2 = r0 - k * r1, s2 = s0 - k * s1;
            r0 = r1; r1 = r2;
            s0 = s1; s1 = s2;
        }
        if (r0 != 1) fail("not_a_unit", "non-invertible scalar in Z/p^N");
        return norm(s0);
    }
};

struct Poly {
    std::vector<int64_t> c; // c[i] coeff of x^i

    int64_t deg() const { return int64_t(c.size()) - 1; }
    int64_t at(size_t i) const { return i < c.size() ? c[i] : 0; }
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
};

Poly add(const Zq& R, const Poly& a, const Poly& b) {
    Poly r;
    r.c.assign(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = R.norm(a.at(i) + b.at(i));
    r.trim();
    return r;
}

Poly sub(const Zq& R, const Poly& a, const Poly& b) {
    Poly r;
    r.c.assign(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = R.norm(a.at(i) - b.at(i));
    r.trim();
    return r;
}

Poly mul(const Zq& R, const Poly& a, const Poly& b) {
    if (a.c.empty() || b.c.empty()) return {};
    Poly r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = R.norm(r.c[i + j] + a.c[i] * b.c[j]);
    }
    r.trim();
    return r;
}

Poly scale(const Zq& R, const Poly& a, int64_t k) {
    Poly r = a;
    for (auto& v : r.c) v = R.mul(v, k);
    r.trim();
    return r;
}

Poly deriv(const Zq& R, const Poly& a) {
    Poly r;
    if (a.c.size() <= 1) return r;
    r.c.assign(a.c.size() - 1, 0);
    for (size_t i = 1; i < a.c.size(); ++i) r.c[i - 1] = R.mul(a.c[i], int64_t(i));
    r.trim();
    return r;
}

Poly shift(const Poly& a, size_t k) { // multiply by x^k
    if (a.c.empty()) return a;
    Poly r;
    r.c.assign(a.c.size() + k, 0);
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i + k] = a.c[i];
    return r;
}

// remainder and quotient by a monic divisor
void divmod_monic(const Zq& R, const Poly& a, const Poly& m, Poly& quo, Poly& rem) {
    rem = a;
    quo = {};
    if (m.c.empty() || m.c.back() != 1) fail("internal", "divisor must be monic");
    if (a.c.size() >= m.c.size()) quo.c.assign(a.c.size() - m.c.size() + 1, 0);
    while (true) {
        rem.trim();
        if (rem.c.size() < m.c.size()) break;
        size_t sh = rem.c.size() - m.c.size();
        int64_t f = rem.c.back();
        quo.c[sh] = f;
        for (size_t i = 0; i < m.c.size(); ++i)
            rem.c[sh + i] = R.norm(rem.c[sh + i] - f * m.c[i]);
    }
    quo.trim();
}

Poly pow_poly(const Zq& R, Poly a, uint64_t n) {
    Poly r;
    r.c = {1};
    while (n) {
        if (n & 1) r = mul(R, r, a);
        if (n >>= 1) a = mul(R, a, a);
    }
    return r;
}

// substitute x -> x^p
Poly subst_xp(const Poly& a, int64_t p) {
    Poly r;
    if (a.c.empty()) return r;
    r.c.assign((a.c.size() - 1) * size_t(p) + 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i * size_t(p)] = a.c[i];
    return r;
}

// checked exact division of every coefficient by p^v
Poly div_p_checked(const Zq& R, const Poly& a, int v, const char* where) {
    Poly r = a;
    int64_t pv = 1;
    for (int i = 0; i < v; ++i) pv *= R.p;
    for (auto& x : r.c) {
        if (x % pv != 0)
            fail("precision_loss", std::string("interim coefficient not divisible by p^v in ") + where);
        x /= pv;
    }
    return r;
}

// One differential form A(x) / y^(2s+1) dx, reduced in place to the basis
// (dx/y, x dx/y) of the odd part of Monsky-Washnitzer cohomology.
struct Reducer {
    const Zq& R;
    Poly Q;      // monic cubic
    Poly dQ;     // Q'
    Poly u, v;   // Bezout: u*Q + v*dQ = 1
    int64_t inv2;

    Reducer(const Zq& R_, const Poly& Q_) : R(R_), Q(Q_) {
        dQ = deriv(R, Q);
        bezout();
        inv2 = R.inv(2);
    }

    // Solve u*Q + v*dQ = 1 with deg u <= 1, deg v <= 2 as a Sylvester-type
    // linear system over Z/p^N. The system matrix is invertible because the
    // resultant of (Q, Q') is a unit mod p for a smooth curve, so unit
    // pivots always exist.
    void bezout() {
        constexpr int n = 5; // unknowns u0,u1,v0,v1,v2; equations deg 0..4
        int64_t A[n][n] = {};
        int64_t b[n] = {1, 0, 0, 0, 0};
        for (int i = 0; i <= 1; ++i)
            for (size_t j = 0; j < Q.c.size(); ++j) A[i + j][i] = Q.c[j];
        for (int i = 0; i <= 2; ++i)
            for (size_t j = 0; j < dQ.c.size(); ++j) A[i + j][2 + i] = dQ.c[j];
        for (int col = 0; col < n; ++col) {
            int pick = -1;
            for (int row = col; row < n; ++row) {
                if (A[row][col] % R.p != 0) {
                    pick = row;
                    break;
                }
            }
            if (pick < 0) fail("singular_curve", "Sylvester system degenerate: curve is singular");
            for (int j = 0; j < n; ++j) std::swap(A[col][j], A[pick][j]);
            std::swap(b[col], b[pick]);
            int64_t inv = R.inv(A[col][col]);
            for (int j = 0; j < n; ++j) A[col][j] = R.mul(A[col][j], inv);
            b[col] = R.mul(b[col], inv);
            for (int row = 0; row < n; ++row) {
                if (row == col || A[row][col] == 0) continue;
                int64_t f = A[row][col];
                for (int j = 0; j < n; ++j) A[row][j] = R.norm(A[row][j] - f * A[col][j]);
                b[row] = R.norm(b[row] - f * b[col]);
            }
        }
        u.c = {b[0], b[1]};
        v.c = {b[2], b[3], b[4]};
        u.trim();
        v.trim();
    }

    // reduce A / y^(2s+1) dx to the basis; returns (c0, c1)
    std::pair<int64_t, int64_t> reduce(Poly A, int64_t s) {
        while (s > 0) {
            // A = alpha*Q + beta*dQ, beta = (A*v) mod Q
            Poly beta, alpha, tmpq;
            divmod_monic(R, mul(R, A, v), Q, tmpq, beta);
            Poly rest = sub(R, A, mul(R, beta, dQ));
            divmod_monic(R, rest, Q, alpha, tmpq);
            tmpq.trim();
            if (!tmpq.c.empty()) fail("internal", "Bezout split failed");
            // A/y^(2s+1) == (alpha + 2 beta'/(2s-1)) / y^(2s-1)  mod exact forms
            int64_t den = 2 * s - 1;
            int vp = 0;
            while (den % R.p == 0) {
                den /= R.p;
                ++vp;
            }
            Poly db = deriv(R, beta);
            Poly corr = scale(R, db, R.mul(2, R.inv(den)));
            if (vp > 0) corr = div_p_checked(R, corr, vp, "pole reduction");
            A = add(R, alpha, corr);
            --s;
        }
        // degree reduction: d(x^m y) = (m x^(m-1) Q + x^m Q'/2) dx/y
        while (A.deg() >= 2) {
            int64_t d = A.deg();
            int64_t m = d - 2;
            // leading coefficient of the exact form is (2m+3)/2
            int64_t den = 2 * m + 3;
            int vp = 0;
            while (den % R.p == 0) {
                den /= R.p;
                ++vp;
            }
            int64_t top = A.c.back();
            if (vp > 0) {
                int64_t pv = 1;
                for (int i = 0; i < vp; ++i) pv *= R.p;
                if (top % pv != 0)
                    fail("precision_loss", "interim coefficient not divisible by p in degree reduction");
                top /= pv;
            }
            int64_t fac = R.mul(R.mul(top, 2), R.inv(den));
            Poly exact = scale(R, shift(dQ, size_t(m)), inv2);
            if (m > 0) exact = add(R, exact, scale(R, shift(Q, size_t(m - 1)), R.norm(m)));
            A = sub(R, A, scale(R, exact, fac));
            if (A.deg() >= d) fail("internal", "degree reduction did not progress");
        }
        return {A.at(0), A.at(1)};
    }
};

FrobMatrix2 frobenius_matrix_at(int64_t a_t, int64_t b_t, int64_t p, int delta) {
    const int N = 2 + delta;
    Zq R(p, N);
    Zq Rhi(p, N + 1);

    Poly Q;
    Q.c = {R.norm(b_t), R.norm(a_t), 0, 1};

    // Delta = (Q(x^p) - Q(x)^p)/p, known mod p^N from one extra digit
    Poly Qhi;
    Qhi.c = {Rhi.norm(b_t), Rhi.norm(a_t), 0, 1};
    Poly numer = sub(Rhi, subst_xp(Qhi, p), pow_poly(Rhi, Qhi, uint64_t(p)));
    Poly Delta;
    Delta.c.assign(numer.c.size(), 0);
    for (size_t i = 0; i < numer.c.size(); ++i) {
        if (numer.c[i] % p != 0) fail("internal", "Frobenius discrepancy not divisible by p");
        Delta.c[i] = R.norm(numer.c[i] / p);
    }
    Delta.trim();

    // binomial coefficients of (1+eps)^(-1/2): c_k = (-1)^k C(2k,k) / 4^k
    std::vector<int64_t> ck(size_t(N), 0);
    {
        int64_t inv4 = R.inv(4);
        int64_t binom = 1; // C(0,0)
        int64_t pw = 1;
        for (int k = 0; k < N; ++k) {
            int64_t val = R.mul(binom % R.q, pw);
            ck[size_t(k)] = (k % 2 == 0) ? val : R.norm(-val);
            // C(2k+2,k+1) = C(2k,k) * 2(2k+1)/(k+1): keep exact in int64 (k small)
            binom = binom * 2 * (2 * k + 1) / (k + 1);
            pw = R.mul(pw, inv4);
        }
    }

    Poly Qpow = pow_poly(R, Q, uint64_t((p - 1) / 2)); // Q^((p-1)/2)

    FrobMatrix2 out;
    out.p = p;
    out.a_tilde = a_t % (p * p);
    out.b_tilde = b_t % (p * p);
    out.delta = delta;

    Reducer red(R, Q);
    int64_t p2 = p * p;
    for (int i = 0; i < 2; ++i) {
        // phi(x^i dx/y) = p x^(pi+p-1) sum_k c_k p^k Delta^k / y^(2s_k+1),
        // s_k = pk + (p-1)/2; fold Q^((p-1)/2) into the numerator so every
        // term sits at the common pole order s = p(N-1) + (p-1)/2.
        int64_t smax = p * int64_t(N - 1) + (p - 1) / 2;
        Poly acc; // numerator at pole order smax
        Poly Dk;
        Dk.c = {1};
        for (int k = 0; k < N; ++k) {
            // term_k = c_k p^(k+1) x^(pi+p-1) Delta^k Q^(-(pk+(p-1)/2)) dx/y
            int64_t pk1 = 1;
            bool dead = false;
            for (int j = 0; j < k + 1; ++j) {
                pk1 *= p;
                if (pk1 >= R.q) {
                    dead = true;
                    break;
                }
            }
            if (dead) break;
            Poly t = scale(R, Dk, R.mul(ck[size_t(k)], pk1));
            // raise to the common pole order: multiply by Q^(p(N-1-k))
            Poly lift = mul(R, t, pow_poly(R, Q, uint64_t(p) * uint64_t(N - 1 - k)));
            acc = add(R, acc, lift);
            Dk = mul(R, Dk, Delta);
        }
        acc = shift(acc, size_t(p * i + p - 1));
        auto [c0, c1] = red.reduce(acc, smax);
        out.entry[0][i] = ((c0 % p2) + p2) % p2;
        out.entry[1][i] = ((c1 % p2) + p2) % p2;
    }
    return out;
}

} // namespace

int64_t FrobMatrix2::trace_mod_p2() const {
    int64_t p2 = p * p;
    return (entry[0][0] + entry[1][1]) % p2;
}

int64_t FrobMatrix2::det_mod_p2() const {
    int64_t p2 = p * p;
    int64_t d = (entry[0][0] * entry[1][1] - entry[0][1] * entry[1][0]) % p2;
    return d < 0 ? d + p2 : d;
}

bool curve_is_smooth(int64_t a, int64_t b, int64_t p) {
    int64_t d = (4 * ((a % p) * (a % p) % p) % p * (a % p) + 27 * (b % p) * (b % p)) % p;
    d = (d % p + p) % p;
    return d != 0;
}

FrobMatrix2 frobenius_matrix(int64_t a_t, int64_t b_t, int64_t p, int delta) {
    if (p < 5) fail("bad_prime", "frobenius_matrix requires p >= 5");
    if (delta < 1) fail("bad_delta", "precision slack must be >= 1");
    if (!curve_is_smooth(a_t, b_t, p)) fail("singular_curve", "curve is singular mod p");
    FrobMatrix2 lo = frobenius_matrix_at(a_t, b_t, p, delta);
    FrobMatrix2 hi = frobenius_matrix_at(a_t, b_t, p, delta + 1);
    if (lo.entry != hi.entry)
        fail("precision_validation", "Frobenius matrix differs between slack delta and delta+1",
             "delta=" + std::to_string(delta));
    return lo;
}

int64_t point_count_ap(int64_t a, int64_t b, int64_t p) {
    if (!curve_is_smooth(a, b, p)) fail("singular_curve", "curve is singular mod p");
    auto mod = [p](int64_t v) { return ((v % p) + p) % p; };
    std::vector<int> is_square(size_t(p), 0);
    for (int64_t y = 0; y < p; ++y) is_square[size_t(mod(y * y))] += 1;
    int64_t count = 1; // point at infinity
    for (int64_t x = 0; x < p; ++x) {
        int64_t rhs = mod(x * x % p * x + a * x + b);
        count += is_square[size_t(rhs)];
    }
    return p + 1 - count;
}

bool f1_preserved(const FrobMatrix2& m) { return m.entry[1][0] % (m.p * m.p) == 0; }

int64_t beta_scalar(const FrobMatrix2& m) {
    if (!f1_preserved(m))
        fail("f1_not_preserved", "beta is only defined when phi preserves F^1");
    if (m.entry[0][0] % m.p != 0)
        fail("divisibility", "phi(F^1) not contained in pH");
    return (m.entry[0][0] / m.p) % m.p;
}

std::vector<std::pair<int64_t, int64_t>> enumerate_f1_lifts(int64_t a, int64_t b, int64_t p,
                                                            int delta) {
    if (p != 5 && p != 7)
        fail("bad_prime", "exhaustive lift enumeration is sized for p in {5,7}");
    if (hasse_invariant_classical(a, b, p) == 0)
        fail("not_ordinary", "lift enumeration requires an ordinary curve");
    std::vector<std::pair<int64_t, int64_t>> hits;
    for (int64_t i = 0; i < p; ++i) {
        for (int64_t j = 0; j < p; ++j) {
            int64_t at = ((a % p) + p) % p + p * i;
            int64_t bt = ((b % p) + p) % p + p * j;
            FrobMatrix2 m = frobenius_matrix(at, bt, p, delta);
            if (f1_preserved(m)) hits.emplace_back(at, bt);
        }
    }
    std::sort(hits.begin(), hits.end());
    return hits;
}

std::vector<std::pair<int64_t, int64_t>> twist_orbit(int64_t a_tilde, int64_t b_tilde, int64_t p) {
    int64_t p2 = p * p;
    std::vector<std::pair<int64_t, int64_t>> orbit;
    for (int64_t k = 0; k < p; ++k) {
        int64_t u = 1 + p * k;
        int64_t u2 = (u * u) % p2;
        int64_t u4 = (u2 * u2) % p2;
        int64_t u6 = (u4 * u2) % p2;
        orbit.emplace_back((a_tilde * u4) % p2, (b_tilde * u6) % p2);
    }
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    return orbit;
}

} // namespace wittlift
