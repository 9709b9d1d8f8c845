#include "wittlift/fsplit.hpp"

#include <algorithm>

#include "wittlift/linalg.hpp"

namespace wittlift {

FpSolveResult solve_linear_fp(int64_t p, std::vector<std::vector<int64_t>> A,
                              std::vector<int64_t> b, bool want_kernel) {
    const size_t rows = A.size();
    const size_t cols = rows ? A[0].size() : 0;
    auto norm = [p](int64_t v) {
        int64_t r = v % p;
        return r < 0 ? r + p : r;
    };
    auto inv = [&](int64_t a) {
        int64_t r0 = p, r1 = norm(a), s0 = 0, s1 = 1;
        while (r1 != 0) {
            int64_t k = r0 / r1;
            int64_t r2 = r0 - k * r1, s2 = s0 - k * s1;
            r0 = r1; r1 = r2;
            s0 = s1; s1 = s2;
        }
        return norm(s0);
    };

    std::vector<size_t> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t sel = r;
        while (sel < rows && norm(A[sel][c]) == 0) ++sel;
        if (sel == rows) continue;
        std::swap(A[sel], A[r]);
        std::swap(b[sel], b[r]);
        int64_t f = inv(A[r][c]);
        for (size_t j = c; j < cols; ++j) A[r][j] = norm(A[r][j] * f);
        b[r] = norm(b[r] * f);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            int64_t g = norm(A[i][c]);
            if (g == 0) continue;
            for (size_t j = c; j < cols; ++j) A[i][j] = norm(A[i][j] - g * A[r][j]);
            b[i] = norm(b[i] - g * b[r]);
        }
        pivot_col.push_back(c);
        ++r;
    }

    FpSolveResult out;
    for (size_t i = r; i < rows; ++i)
        if (norm(b[i]) != 0) return out; // inconsistent
    out.consistent = true;
    out.solution.assign(cols, 0);
    for (size_t i = 0; i < pivot_col.size(); ++i) out.solution[pivot_col[i]] = b[i];
    if (want_kernel) {
        std::vector<bool> is_pivot(cols, false);
        for (size_t c : pivot_col) is_pivot[c] = true;
        for (size_t c = 0; c < cols; ++c) {
            if (is_pivot[c]) continue;
            std::vector<int64_t> v(cols, 0);
            v[c] = 1;
            for (size_t i = 0; i < pivot_col.size(); ++i)
                v[pivot_col[i]] = norm(-A[i][c]);
            out.kernel.push_back(std::move(v));
        }
    }
    return out;
}

ModPoly frobenius_trace(const ModPoly& g) {
    if (g.modulus().e != 1) fail("bad_modulus", "frobenius_trace requires char p");
    int64_t p = g.modulus().p;
    ModPoly r(g.modulus(), g.vars());
    for (const auto& [e, c] : g.terms()) {
        bool keep = true;
        for (uint32_t x : e) {
            if (x % p != uint32_t(p - 1)) {
                keep = false;
                break;
            }
        }
        if (!keep) continue;
        Exp d = e;
        for (auto& x : d) x = (x - uint32_t(p - 1)) / uint32_t(p);
        r.set_coeff(d, r.coeff(d) + c);
    }
    return r;
}

FedderResult fedder_fsplit_test(const ModPoly& f) {
    if (f.modulus().e != 1) fail("bad_modulus", "Fedder test requires char p");
    size_t n1 = f.nvars();
    if (!f.is_homogeneous() || f.total_degree() != int64_t(n1))
        fail("wrong_degree", "expected a homogeneous Calabi-Yau hypersurface (degree = #vars)",
             "degree=" + std::to_string(f.total_degree()));
    int64_t p = f.modulus().p;
    ModPoly power = f.pow(uint64_t(p - 1));
    Exp target(n1, uint32_t(p - 1));
    FedderResult r;
    r.hasse_scalar = power.coeff(target);
    r.split = r.hasse_scalar != 0;
    return r;
}

SplittingData build_splitting(const ModPoly& f) {
    FedderResult fr = fedder_fsplit_test(f);
    if (!fr.split)
        fail("not_f_split", "hypersurface is not F-split (Hasse scalar vanishes)");
    SplittingData s;
    s.f_ = f;
    s.multiplier_ = f.pow(uint64_t(f.modulus().p - 1));
    s.hasse_scalar_ = fr.hasse_scalar;

    // Solve sigma(theta) = 1 over monomials of degree < p.  sigma(1) = 1 by
    // the normalization, so the ascending-basis solve lands on theta = 1;
    // keeping the solve makes the section property a computation, not an
    // assumption.
    int64_t p = f.modulus().p;
    std::vector<Exp> basis;
    std::vector<Exp> outputs;
    {
        // odometer over exponents < p, keeping total degree < p
        Exp cur(f.nvars(), 0);
        while (true) {
            if (exp_total_degree(cur) < p) basis.push_back(cur);
            size_t i = 0;
            while (i < cur.size()) {
                if (++cur[i] <= uint32_t(p - 1)) break;
                cur[i] = 0;
                ++i;
            }
            if (i == cur.size()) break;
        }
        std::sort(basis.begin(), basis.end(), [](const Exp& a, const Exp& b) {
            TermOrder lt;
            return lt(b, a); // ascending: constant first
        });
    }
    std::vector<ModPoly> images;
    images.reserve(basis.size());
    for (const auto& e : basis) {
        ModPoly mu = ModPoly::monomial(f.modulus(), f.vars(), e, 1);
        images.push_back(s.sigma(mu));
        for (const auto& [oe, oc] : images.back().terms()) {
            (void)oc;
            if (std::find(outputs.begin(), outputs.end(), oe) == outputs.end())
                outputs.push_back(oe);
        }
    }
    std::vector<std::vector<int64_t>> A(outputs.size(), std::vector<int64_t>(basis.size(), 0));
    std::vector<int64_t> rhs(outputs.size(), 0);
    for (size_t j = 0; j < basis.size(); ++j)
        for (size_t i = 0; i < outputs.size(); ++i) A[i][j] = images[j].coeff(outputs[i]);
    Exp zero(f.nvars(), 0);
    for (size_t i = 0; i < outputs.size(); ++i)
        if (outputs[i] == zero) rhs[i] = 1;
    auto sol = solve_linear_fp(p, A, rhs);
    if (!sol.consistent)
        fail("internal", "section solve failed although the splitting exists");
    ModPoly theta(f.modulus(), f.vars());
    for (size_t j = 0; j < basis.size(); ++j)
        if (sol.solution[j] != 0) theta.set_coeff(basis[j], sol.solution[j]);
    s.theta_ = theta;
    if (!(s.sigma(theta) == ModPoly::constant(f.modulus(), f.vars(), 1)))
        fail("internal", "sigma(theta) != 1 after solving");
    return s;
}

ModPoly SplittingData::sigma(const ModPoly& g) const {
    ModPoly t = frobenius_trace(multiplier_ * g);
    return t.scaled(g.modulus().inv(hasse_scalar_));
}

ModPoly SplittingData::sigma_chart(size_t chart_var, const ModPoly& a) const {
    if (a.vars() != f_.vars() || a.modulus() != f_.modulus())
        fail("ring_mismatch", "chart element lives in a different ring");
    if (a.degree_in(chart_var) != 0 && !a.is_zero())
        fail("bad_chart_element", "dehomogenized element must not use the chart variable");
    if (a.is_zero()) return a;
    int64_t p = f_.modulus().p;
    int64_t d = a.total_degree();
    int64_t target = ((d + p - 1) / p) * p; // smallest multiple of p >= d
    ModPoly g = a.homogenize(chart_var, target);
    return sigma(g).dehomogenize(chart_var);
}

ModPoly weierstrass_cubic(int64_t a, int64_t b, Modulus m) {
    std::vector<std::string> vars{"x", "y", "z"};
    ModPoly f(m, vars);
    f.set_coeff({0, 2, 1}, 1);              // z y^2
    f.set_coeff({3, 0, 0}, m.reduce(-1));   // -x^3
    f.set_coeff({1, 0, 2}, m.reduce(-a));   // -a x z^2
    f.set_coeff({0, 0, 3}, m.reduce(-b));   // -b z^3
    return f;
}

int64_t hasse_invariant_classical(int64_t a, int64_t b, int64_t p) {
    auto m = Modulus::make(p, 1);
    std::vector<std::string> vars{"x"};
    ModPoly q(m, vars);
    q.set_coeff({3}, 1);
    q.set_coeff({1}, m.reduce(a));
    q.set_coeff({0}, m.reduce(b));
    ModPoly pw = q.pow(uint64_t((p - 1) / 2));
    return pw.coeff({uint32_t(p - 1)});
}

} // namespace wittlift
