#include "wittlift/exactring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace wittlift {

// ---------------------------------------------------------------- Modulus

bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

static int64_t ipow_checked(int64_t p, int e) {
    int64_t q = 1;
    for (int i = 0; i < e; ++i) {
        if (q > (int64_t(1) << 31) / p)
            fail("modulus_overflow", "working modulus exceeds 2^31",
                 "p=" + std::to_string(p) + " e=" + std::to_string(e));
        q *= p;
    }
    return q;
}

Modulus Modulus::make(int64_t p, int e) {
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        fail("bad_modulus", "p must be an odd prime >= 3", "p=" + std::to_string(p));
    if (e != 1 && e != 2)
        fail("bad_modulus", "e must be 1 or 2", "e=" + std::to_string(e));
    Modulus m;
    m.p = p;
    m.e = e;
    m.q = ipow_checked(p, e);
    return m;
}

Modulus Modulus::working(int64_t p, int e) {
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        fail("bad_modulus", "p must be an odd prime >= 3", "p=" + std::to_string(p));
    if (e < 1)
        fail("bad_modulus", "working exponent must be >= 1", "e=" + std::to_string(e));
    Modulus m;
    m.p = p;
    m.e = e;
    m.q = ipow_checked(p, e);
    return m;
}

int64_t Modulus::inv(int64_t a) const {
    a = reduce(a);
    // extended Euclid against q
    int64_t r0 = q, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
        int64_t k = r0 / r1;
        int64_t r2 = r0 - k * r1;
        int64_t s2 = s0 - k * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    if (r0 != 1)
        fail("not_a_unit", "element is not invertible",
             "a=" + std::to_string(a) + " mod " + std::to_string(q));
    return reduce(s0);
}

int64_t Modulus::pow(int64_t a, int64_t n) const {
    a = reduce(a);
    int64_t r = 1;
    while (n > 0) {
        if (n & 1) r = mul(r, a);
        a = mul(a, a);
        n >>= 1;
    }
    return r;
}

// ---------------------------------------------------------------- term order

int64_t exp_total_degree(const Exp& e) {
    int64_t d = 0;
    for (uint32_t x : e) d += x;
    return d;
}

bool TermOrder::operator()(const Exp& a, const Exp& b) const {
    int64_t da = exp_total_degree(a), db = exp_total_degree(b);
    if (da != db) return da > db;
    return a > b; // lexicographically larger first
}

// ---------------------------------------------------------------- ModPoly

ModPoly ModPoly::constant(Modulus m, std::vector<std::string> vars, int64_t c) {
    ModPoly r(m, std::move(vars));
    r.set_coeff(Exp(r.nvars(), 0), c);
    return r;
}

ModPoly ModPoly::variable(Modulus m, std::vector<std::string> vars, size_t index, uint32_t power) {
    ModPoly r(m, std::move(vars));
    if (index >= r.nvars()) fail("bad_variable", "variable index out of range");
    Exp e(r.nvars(), 0);
    e[index] = power;
    r.set_coeff(e, 1);
    return r;
}

ModPoly ModPoly::monomial(Modulus m, std::vector<std::string> vars, Exp e, int64_t c) {
    ModPoly r(m, std::move(vars));
    if (e.size() != r.nvars()) fail("bad_exponent", "exponent vector length mismatch");
    r.set_coeff(e, c);
    return r;
}

bool ModPoly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && exp_total_degree(terms_.begin()->first) == 0;
}

int64_t ModPoly::constant_value() const { return coeff(Exp(nvars(), 0)); }

int64_t ModPoly::coeff(const Exp& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0 : it->second;
}

void ModPoly::set_coeff(const Exp& e, int64_t c) {
    if (e.size() != nvars()) fail("bad_exponent", "exponent vector length mismatch");
    c = mod_.reduce(c);
    if (c == 0)
        terms_.erase(e);
    else
        terms_[e] = c;
}

int64_t ModPoly::total_degree() const {
    if (terms_.empty()) return -1;
    return exp_total_degree(terms_.begin()->first); // leading term has max degree
}

int64_t ModPoly::degree_in(size_t var) const {
    int64_t d = -1;
    for (const auto& [e, c] : terms_) d = std::max<int64_t>(d, e[var]);
    return d;
}

bool ModPoly::is_homogeneous() const {
    if (terms_.empty()) return true;
    int64_t d = total_degree();
    for (const auto& [e, c] : terms_)
        if (exp_total_degree(e) != d) return false;
    return true;
}

void ModPoly::check_compatible(const ModPoly& o) const {
    if (mod_ != o.mod_ || vars_ != o.vars_)
        fail("ring_mismatch", "polynomials live in different rings");
}

ModPoly ModPoly::operator+(const ModPoly& o) const {
    check_compatible(o);
    ModPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.set_coeff(e, r.coeff(e) + c);
    return r;
}

ModPoly ModPoly::operator-(const ModPoly& o) const {
    check_compatible(o);
    ModPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.set_coeff(e, r.coeff(e) - c);
    return r;
}

ModPoly ModPoly::operator-() const {
    ModPoly r(mod_, vars_);
    for (const auto& [e, c] : terms_) r.set_coeff(e, -c);
    return r;
}

ModPoly ModPoly::operator*(const ModPoly& o) const {
    check_compatible(o);
    ModPoly r(mod_, vars_);
    const size_t n = nvars();
    Exp e(n, 0);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
            r.set_coeff(e, r.coeff(e) + mod_.mul(ca, cb));
        }
    }
    return r;
}

bool ModPoly::operator==(const ModPoly& o) const {
    return mod_ == o.mod_ && vars_ == o.vars_ && terms_ == o.terms_;
}

ModPoly ModPoly::scaled(int64_t c) const {
    ModPoly r(mod_, vars_);
    for (const auto& [e, v] : terms_) r.set_coeff(e, mod_.mul(v, c));
    return r;
}

ModPoly ModPoly::pow(uint64_t n) const {
    ModPoly base = *this;
    ModPoly r = constant(mod_, vars_, 1);
    while (n > 0) {
        if (n & 1) r *= base;
        if (n >>= 1) base *= base;
    }
    return r;
}

ModPoly ModPoly::derivative(size_t var) const {
    ModPoly r(mod_, vars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exp d = e;
        d[var] -= 1;
        r.set_coeff(d, r.coeff(d) + mod_.mul(c, int64_t(e[var])));
    }
    return r;
}

ModPoly ModPoly::substitute(size_t var, const ModPoly& value) const {
    check_compatible(value);
    ModPoly r(mod_, vars_);
    // group by the substituted exponent; cheap at desk scale
    for (const auto& [e, c] : terms_) {
        Exp rest = e;
        uint32_t k = rest[var];
        rest[var] = 0;
        ModPoly term = ModPoly::monomial(mod_, vars_, rest, c);
        if (k > 0) term *= value.pow(k);
        r += term;
    }
    return r;
}

int64_t ModPoly::eval(const std::vector<int64_t>& point) const {
    if (point.size() != nvars()) fail("bad_point", "evaluation point has wrong arity");
    int64_t acc = 0;
    for (const auto& [e, c] : terms_) {
        int64_t t = c;
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) t = mod_.mul(t, mod_.pow(point[i], e[i]));
        acc = mod_.add(acc, t);
    }
    return acc;
}

ModPoly ModPoly::exponents_scaled(uint32_t k) const {
    ModPoly r(mod_, vars_);
    for (const auto& [e, c] : terms_) {
        Exp s = e;
        for (auto& x : s) x *= k;
        r.set_coeff(s, c);
    }
    return r;
}

ModPoly ModPoly::lift_to(Modulus higher) const {
    if (higher.p != mod_.p || higher.e < mod_.e)
        fail("bad_lift", "lift target must share p and have larger exponent");
    ModPoly r(higher, vars_);
    for (const auto& [e, c] : terms_) r.set_coeff(e, c);
    return r;
}

ModPoly ModPoly::reduce_to(Modulus lower) const {
    if (lower.p != mod_.p || lower.e > mod_.e)
        fail("bad_reduce", "reduction target must share p and have smaller exponent");
    ModPoly r(lower, vars_);
    for (const auto& [e, c] : terms_) r.set_coeff(e, r.coeff(e) + c);
    return r;
}

ModPoly ModPoly::dehomogenize(size_t var) const {
    ModPoly r(mod_, vars_);
    for (const auto& [e, c] : terms_) {
        Exp d = e;
        d[var] = 0;
        r.set_coeff(d, r.coeff(d) + c);
    }
    return r;
}

ModPoly ModPoly::homogenize(size_t var, int64_t degree) const {
    ModPoly r(mod_, vars_);
    for (const auto& [e, c] : terms_) {
        int64_t d = exp_total_degree(e) - e[var];
        if (e[var] != 0) fail("bad_homogenize", "input already uses the padding variable");
        if (d > degree) fail("bad_homogenize", "degree bound below term degree");
        Exp h = e;
        h[var] = uint32_t(degree - d);
        r.set_coeff(h, c);
    }
    return r;
}

std::string ModPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        bool wrote = false;
        if (c != 1 || exp_total_degree(e) == 0) {
            os << c;
            wrote = true;
        }
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (wrote) os << "*";
            os << vars_[i];
            if (e[i] > 1) os << "^" << e[i];
            wrote = true;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------- parser

namespace {

struct Parser {
    std::string_view src;
    size_t pos = 0;
    Modulus mod;
    std::vector<std::string> vars;
    bool fixed_vars;

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    bool at_end() {
        skip_ws();
        return pos >= src.size();
    }
    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }
    [[noreturn]] void syntax(const std::string& what) {
        skip_ws();
        fail("syntax", what + " at offset " + std::to_string(pos), std::to_string(pos));
    }

    size_t var_index(char c) {
        std::string name(1, c);
        for (size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == name) return i;
        if (fixed_vars)
            fail("syntax", std::string("unknown variable '") + c + "' at offset " + std::to_string(pos),
                 std::to_string(pos));
        vars.push_back(name);
        return vars.size() - 1;
    }

    // Raw terms with placeholder-width exponents; widened at the end.
    struct RawPoly {
        std::map<std::map<size_t, uint32_t>, int64_t> terms;
    };

    RawPoly raw_const(int64_t c) {
        RawPoly r;
        c = mod.reduce(c);
        if (c != 0) r.terms[{}] = c;
        return r;
    }

    RawPoly add(const RawPoly& a, const RawPoly& b, int64_t sign) {
        RawPoly r = a;
        for (const auto& [e, c] : b.terms) {
            int64_t v = mod.reduce((r.terms.count(e) ? r.terms[e] : 0) + sign * c);
            if (v == 0)
                r.terms.erase(e);
            else
                r.terms[e] = v;
        }
        return r;
    }

    RawPoly mul(const RawPoly& a, const RawPoly& b) {
        RawPoly r;
        for (const auto& [ea, ca] : a.terms)
            for (const auto& [eb, cb] : b.terms) {
                auto e = ea;
                for (const auto& [v, k] : eb) {
                    uint64_t s = uint64_t(e.count(v) ? e[v] : 0) + k;
                    if (s > (uint64_t(1) << 31))
                        fail("exponent_overflow", "exponent exceeds 2^31", std::to_string(pos));
                    e[v] = uint32_t(s);
                }
                int64_t v = mod.reduce((r.terms.count(e) ? r.terms[e] : 0) + mod.mul(ca, cb));
                if (v == 0)
                    r.terms.erase(e);
                else
                    r.terms[e] = v;
            }
        return r;
    }

    RawPoly pow(RawPoly base, uint64_t n) {
        RawPoly r = raw_const(1);
        while (n > 0) {
            if (n & 1) r = mul(r, base);
            n >>= 1;
            if (n) base = mul(base, base);
        }
        return r;
    }

    uint64_t natural() {
        skip_ws();
        if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos])))
            syntax("expected exponent");
        uint64_t v = 0;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
            v = v * 10 + uint64_t(src[pos] - '0');
            if (v > (uint64_t(1) << 31))
                fail("exponent_overflow", "exponent exceeds 2^31", std::to_string(pos));
            ++pos;
        }
        return v;
    }

    RawPoly primary() {
        skip_ws();
        if (pos >= src.size()) syntax("unexpected end of input");
        char c = src[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            int64_t v = 0;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
                v = mod.reduce(v * 10 + (src[pos] - '0'));
                ++pos;
            }
            return raw_const(v);
        }
        if (c >= 'a' && c <= 'z') {
            size_t idx = var_index(c);
            ++pos;
            RawPoly r;
            r.terms[{{idx, 1}}] = 1;
            return r;
        }
        if (c == '(') {
            ++pos;
            RawPoly r = expr();
            if (peek() != ')') syntax("expected ')'");
            ++pos;
            return r;
        }
        if (std::string_view("+-*^()").find(c) == std::string_view::npos)
            fail("unknown_character", std::string("unknown character '") + c + "' at offset " + std::to_string(pos),
                 std::to_string(pos));
        syntax("unexpected character");
    }

    RawPoly factor() {
        RawPoly r = primary();
        while (peek() == '^') {
            ++pos;
            r = pow(r, natural());
        }
        return r;
    }

    RawPoly term() {
        RawPoly r = factor();
        while (peek() == '*') {
            ++pos;
            r = mul(r, factor());
        }
        return r;
    }

    RawPoly expr() {
        RawPoly r = term();
        while (true) {
            char c = peek();
            if (c == '+' || c == '-') {
                ++pos;
                r = add(r, term(), c == '+' ? 1 : -1);
            } else {
                break;
            }
        }
        return r;
    }

    ModPoly run() {
        RawPoly r = expr();
        if (!at_end()) syntax("trailing input");
        if (!fixed_vars) std::sort(vars.begin(), vars.end());
        ModPoly out(mod, vars);
        for (const auto& [e, c] : r.terms) {
            Exp full(vars.size(), 0);
            for (const auto& [v, k] : e) {
                // var_index handed out indices in discovery order; map by name
                full[v] = k;
            }
            out.set_coeff(full, out.coeff(full) + c);
        }
        return out;
    }
};

} // namespace

ModPoly parse_poly(std::string_view src, Modulus m) {
    // two passes: discover variables, then reparse with the sorted list so
    // exponent indices match the canonical alphabetical order
    Parser discover{src, 0, m, {}, false};
    discover.run();
    std::vector<std::string> vars = discover.vars;
    std::sort(vars.begin(), vars.end());
    Parser p{src, 0, m, vars, true};
    return p.run();
}

ModPoly parse_poly(std::string_view src, Modulus m, std::vector<std::string> vars) {
    Parser p{src, 0, m, std::move(vars), true};
    return p.run();
}

// ---------------------------------------------------------------- lift_div_p

ModPoly lift_div_p(const ModPoly& q) {
    const Modulus& m = q.modulus();
    if (m.e < 2)
        fail("bad_lift_div", "lift_div_p needs working exponent >= 2");
    Modulus lower = m.lowered(1);
    ModPoly r(lower, q.vars());
    for (const auto& [e, c] : q.terms()) {
        if (c % m.p != 0) {
            ModPoly mon = ModPoly::monomial(m, q.vars(), e, 1);
            fail("not_divisible", "coefficient not divisible by p on monomial " + mon.to_string(),
                 mon.to_string());
        }
        r.set_coeff(e, c / m.p);
    }
    return r;
}

ModPoly frobenius_power(const ModPoly& g) { return g.pow(uint64_t(g.modulus().p)); }

int64_t coeff_extract(const ModPoly& g, const Exp& monomial) { return g.coeff(monomial); }

// ---------------------------------------------------------------- ChartRing

ChartRing::ChartRing(ModPoly relation, size_t v_index) : v_index_(v_index) {
    if (relation.is_zero()) fail("bad_chart", "chart relation must be nonzero");
    v_degree_ = relation.degree_in(v_index);
    if (v_degree_ < 1) fail("bad_chart", "relation must involve the distinguished variable");
    // normalize the leading v-coefficient to 1; it must be a unit constant
    ModPoly lead(relation.modulus(), relation.vars());
    for (const auto& [e, c] : relation.terms()) {
        if (int64_t(e[v_index]) == v_degree_) {
            Exp rest = e;
            rest[v_index] = 0;
            lead.set_coeff(rest, c);
        }
    }
    if (!lead.is_constant())
        fail("bad_chart", "relation is not monic in the distinguished variable");
    int64_t u = relation.modulus().inv(lead.constant_value());
    relation_ = relation.scaled(u);
}

const ModPoly& ChartRing::relation() const {
    if (!relation_) fail("bad_chart", "trivial chart has no relation");
    return *relation_;
}

bool ChartRing::operator==(const ChartRing& o) const {
    if (is_trivial() != o.is_trivial()) return false;
    if (is_trivial()) return true;
    return *relation_ == *o.relation_ && v_index_ == o.v_index_;
}

ModPoly ChartRing::normal_form(const ModPoly& g) const {
    if (is_trivial()) return g;
    const ModPoly& f = *relation_;
    if (g.modulus() != f.modulus() || g.vars() != f.vars())
        fail("ring_mismatch", "element and chart live in different rings");
    ModPoly r = g;
    while (true) {
        int64_t d = r.degree_in(v_index_);
        if (d < v_degree_) break;
        // collect the top v-slab  c(x) * v^d
        ModPoly slab(r.modulus(), r.vars());
        for (const auto& [e, c] : r.terms()) {
            if (int64_t(e[v_index_]) == d) {
                Exp rest = e;
                rest[v_index_] = uint32_t(d - v_degree_);
                slab.set_coeff(rest, c);
            }
        }
        r -= slab * f;
    }
    return r;
}

ModPoly normal_form(const ModPoly& g, const ChartRing& ring) { return ring.normal_form(g); }

} // namespace wittlift
