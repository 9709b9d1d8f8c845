#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wittlift/error.hpp"

namespace wittlift {

// ---------------------------------------------------------------------------
// Coefficient ring Z/p^e.
//
// Public values use e in {1,2}; higher exponents exist only as internal
// working precision (carry divisions, Kedlaya-style reductions) and are
// created through Modulus::working.
// ---------------------------------------------------------------------------
struct Modulus {
    int64_t p = 0;
    int e = 0;
    int64_t q = 0; // p^e

    static Modulus make(int64_t p, int e);    // validates p odd prime, e in {1,2}
    static Modulus working(int64_t p, int e); // internal precision, e >= 1

    Modulus raised(int de) const { return working(p, e + de); }
    Modulus lowered(int de) const { return working(p, e - de); }

    int64_t reduce(int64_t v) const {
        int64_t r = v % q;
        return r < 0 ? r + q : r;
    }
    int64_t add(int64_t a, int64_t b) const { return reduce(a + b); }
    int64_t sub(int64_t a, int64_t b) const { return reduce(a - b); }
    int64_t mul(int64_t a, int64_t b) const { return reduce(a * b); }
    int64_t inv(int64_t a) const; // fails on non-units
    int64_t pow(int64_t a, int64_t n) const;

    bool operator==(const Modulus&) const = default;
};

bool is_prime(int64_t n);

// Exponent vector; entry i is the exponent of variable i.
using Exp = std::vector<uint32_t>;

int64_t exp_total_degree(const Exp& e);

// Graded lexicographic order, leading (highest) terms first, so map
// iteration is the canonical serialization order.
struct TermOrder {
    bool operator()(const Exp& a, const Exp& b) const;
};

using TermMap = std::map<Exp, int64_t, TermOrder>;

// ---------------------------------------------------------------------------
// Sparse multivariate polynomial over Z/p^e. No zero coefficients are
// stored; all arithmetics keep coefficients reduced into [0, p^e).
// ---------------------------------------------------------------------------
class ModPoly {
public:
    ModPoly() = default;
    ModPoly(Modulus m, std::vector<std::string> vars) : mod_(m), vars_(std::move(vars)) {}

    static ModPoly zero(Modulus m, std::vector<std::string> vars) { return ModPoly(m, std::move(vars)); }
    static ModPoly constant(Modulus m, std::vector<std::string> vars, int64_t c);
    static ModPoly variable(Modulus m, std::vector<std::string> vars, size_t index, uint32_t power = 1);
    static ModPoly monomial(Modulus m, std::vector<std::string> vars, Exp e, int64_t c);

    const Modulus& modulus() const { return mod_; }
    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    size_t nvars() const { return vars_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    int64_t constant_value() const; // coefficient of the empty monomial

    int64_t coeff(const Exp& e) const;
    void set_coeff(const Exp& e, int64_t c); // reduces, erases zeros

    int64_t total_degree() const; // -1 for the zero polynomial
    int64_t degree_in(size_t var) const;
    bool is_homogeneous() const;

    ModPoly operator+(const ModPoly& o) const;
    ModPoly operator-(const ModPoly& o) const;
    ModPoly operator*(const ModPoly& o) const;
    ModPoly operator-() const;
    ModPoly& operator+=(const ModPoly& o) { return *this = *this + o; }
    ModPoly& operator-=(const ModPoly& o) { return *this = *this - o; }
    ModPoly& operator*=(const ModPoly& o) { return *this = *this * o; }
    bool operator==(const ModPoly& o) const;

    ModPoly scaled(int64_t c) const;
    ModPoly pow(uint64_t n) const;
    ModPoly derivative(size_t var) const;

    // Substitute variable `var` by `value` (same modulus/var list).
    ModPoly substitute(size_t var, const ModPoly& value) const;
    // Evaluate at a full point.
    int64_t eval(const std::vector<int64_t>& point) const;

    // Map every exponent vector through a p-fold scaling (x_i -> x_i^k).
    ModPoly exponents_scaled(uint32_t k) const;

    // Coefficient lifts/reductions between Z/p^e levels of the same p.
    ModPoly lift_to(Modulus higher) const;
    ModPoly reduce_to(Modulus lower) const;

    // Homogenization helpers (single grading on all variables).
    ModPoly dehomogenize(size_t var) const;              // set x_var = 1
    ModPoly homogenize(size_t var, int64_t degree) const; // pad with x_var powers

    std::string to_string() const;

private:
    Modulus mod_;
    std::vector<std::string> vars_;
    TermMap terms_;

    void check_compatible(const ModPoly& o) const;
};

// ---------------------------------------------------------------------------
// Text parser. Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := primary ('^' natural)*
//   primary:= integer | variable | '(' expr ')'
// Variables are single lowercase letters; whitespace is ignored. Rejects
// anything else, reporting the byte offset into the raw input.
// ---------------------------------------------------------------------------
ModPoly parse_poly(std::string_view src, Modulus m);
// Same, but force the variable list (parse fails on letters outside it).
ModPoly parse_poly(std::string_view src, Modulus m, std::vector<std::string> vars);

// Exact division by p of a polynomial whose coefficients are integer lifts
// (working modulus p^m, m >= 2); result has modulus p^(m-1). Reports the
// offending monomial when a coefficient is not divisible.
ModPoly lift_div_p(const ModPoly& q);

// g^p in its own ring (honest exponentiation; works for any e).
ModPoly frobenius_power(const ModPoly& g);

int64_t coeff_extract(const ModPoly& g, const Exp& monomial);

// ---------------------------------------------------------------------------
// Hypersurface chart ring A = R[x...]/(relation), relation monic in one
// distinguished variable after normalizing its leading coefficient to a
// unit. normal_form reduces the v-degree below deg_v(relation).
// A trivial chart (no relation) leaves elements untouched.
// ---------------------------------------------------------------------------
class ChartRing {
public:
    ChartRing() = default; // trivial chart
    ChartRing(ModPoly relation, size_t v_index);

    static ChartRing trivial() { return ChartRing(); }

    bool is_trivial() const { return !relation_.has_value(); }
    const ModPoly& relation() const;
    size_t v_index() const { return v_index_; }
    int64_t v_degree() const { return v_degree_; }

    ModPoly normal_form(const ModPoly& g) const;

    bool operator==(const ChartRing& o) const;

private:
    std::optional<ModPoly> relation_; // leading v-coefficient normalized to 1
    size_t v_index_ = 0;
    int64_t v_degree_ = 0;
};

ModPoly normal_form(const ModPoly& g, const ChartRing& ring);

} // namespace wittlift
