#include "wittlift/series.hpp"

#include <sstream>

namespace wittlift {

TruncSeries::TruncSeries(Modulus m, size_t nvars, int64_t bound)
    : mod_(m), nvars_(nvars), bound_(bound) {
    if (bound < 0) fail("bad_bound", "truncation bound must be >= 0");
}

TruncSeries TruncSeries::constant(Modulus m, size_t nvars, int64_t bound, int64_t c) {
    TruncSeries r(m, nvars, bound);
    r.set_coeff(Exp(nvars, 0), c);
    return r;
}

TruncSeries TruncSeries::variable(Modulus m, size_t nvars, int64_t bound, size_t index) {
    TruncSeries r(m, nvars, bound);
    if (index >= nvars) fail("bad_variable", "variable index out of range");
    Exp e(nvars, 0);
    e[index] = 1;
    r.set_coeff(e, 1);
    return r;
}

TruncSeries TruncSeries::from_poly(const ModPoly& g, int64_t bound) {
    TruncSeries r(g.modulus(), g.nvars(), bound);
    for (const auto& [e, c] : g.terms()) r.set_coeff(e, c);
    return r;
}

int64_t TruncSeries::coeff(const Exp& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0 : it->second;
}

void TruncSeries::set_coeff(const Exp& e, int64_t c) {
    if (e.size() != nvars_) fail("bad_exponent", "exponent vector length mismatch");
    if (exp_total_degree(e) > bound_) return; // truncated away
    c = mod_.reduce(c);
    if (c == 0)
        terms_.erase(e);
    else
        terms_[e] = c;
}

void TruncSeries::check_compatible(const TruncSeries& o) const {
    if (mod_ != o.mod_ || nvars_ != o.nvars_ || bound_ != o.bound_)
        fail("ring_mismatch", "series live in different truncated rings");
}

TruncSeries TruncSeries::operator+(const TruncSeries& o) const {
    check_compatible(o);
    TruncSeries r = *this;
    for (const auto& [e, c] : o.terms_) r.set_coeff(e, r.coeff(e) + c);
    return r;
}

TruncSeries TruncSeries::operator-(const TruncSeries& o) const {
    check_compatible(o);
    TruncSeries r = *this;
    for (const auto& [e, c] : o.terms_) r.set_coeff(e, r.coeff(e) - c);
    return r;
}

TruncSeries TruncSeries::operator-() const {
    TruncSeries r(mod_, nvars_, bound_);
    for (const auto& [e, c] : terms_) r.set_coeff(e, -c);
    return r;
}

TruncSeries TruncSeries::operator*(const TruncSeries& o) const {
    check_compatible(o);
    TruncSeries r(mod_, nvars_, bound_);
    Exp e(nvars_, 0);
    for (const auto& [ea, ca] : terms_) {
        int64_t da = exp_total_degree(ea);
        for (const auto& [eb, cb] : o.terms_) {
            if (da + exp_total_degree(eb) > bound_) continue;
            for (size_t i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
            r.set_coeff(e, r.coeff(e) + mod_.mul(ca, cb));
        }
    }
    return r;
}

bool TruncSeries::operator==(const TruncSeries& o) const {
    return mod_ == o.mod_ && nvars_ == o.nvars_ && bound_ == o.bound_ && terms_ == o.terms_;
}

TruncSeries TruncSeries::scaled(int64_t c) const {
    TruncSeries r(mod_, nvars_, bound_);
    for (const auto& [e, v] : terms_) r.set_coeff(e, mod_.mul(v, c));
    return r;
}

TruncSeries TruncSeries::pow(uint64_t n) const {
    TruncSeries r = constant(mod_, nvars_, bound_, 1), b = *this;
    while (n) {
        if (n & 1) r = r * b;
        if (n >>= 1) b = b * b;
    }
    return r;
}

TruncSeries TruncSeries::derivative(size_t var) const {
    TruncSeries r(mod_, nvars_, bound_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exp d = e;
        d[var] -= 1;
        r.set_coeff(d, r.coeff(d) + mod_.mul(c, int64_t(e[var])));
    }
    return r;
}

TruncSeries TruncSeries::truncated(int64_t new_bound) const {
    TruncSeries r(mod_, nvars_, new_bound);
    for (const auto& [e, c] : terms_) r.set_coeff(e, c);
    return r;
}

TruncSeries TruncSeries::lift_to(Modulus higher) const {
    if (higher.p != mod_.p || higher.e < mod_.e) fail("bad_lift", "bad series lift target");
    TruncSeries r(higher, nvars_, bound_);
    for (const auto& [e, c] : terms_) r.set_coeff(e, c);
    return r;
}

TruncSeries TruncSeries::reduce_to(Modulus lower) const {
    if (lower.p != mod_.p || lower.e > mod_.e) fail("bad_reduce", "bad series reduction target");
    TruncSeries r(lower, nvars_, bound_);
    for (const auto& [e, c] : terms_) r.set_coeff(e, r.coeff(e) + c);
    return r;
}

TruncSeries TruncSeries::inverse() const {
    int64_t c0 = constant_term();
    int64_t u = mod_.inv(c0); // throws on non-unit
    TruncSeries rest = *this - constant(mod_, nvars_, bound_, c0); // maximal-ideal part
    // geometric series: a^{-1} = u * sum ((-u)*rest)^k
    TruncSeries term = constant(mod_, nvars_, bound_, 1);
    TruncSeries acc = constant(mod_, nvars_, bound_, 1);
    TruncSeries factor = rest.scaled(mod_.reduce(-u));
    for (int64_t k = 1; k <= bound_; ++k) {
        term = term * factor;
        if (term.is_zero()) break;
        acc = acc + term;
    }
    return acc.scaled(u);
}

TruncSeries TruncSeries::compose(const std::vector<TruncSeries>& args) const {
    if (args.size() != nvars_) fail("bad_compose", "wrong number of substitution arguments");
    for (const auto& a : args) {
        if (a.modulus() != mod_ || a.nvars() != nvars_ || a.bound() != bound_)
            fail("ring_mismatch", "substitution arguments in a different ring");
    }
    TruncSeries r(mod_, nvars_, bound_);
    for (const auto& [e, c] : terms_) {
        TruncSeries t = constant(mod_, nvars_, bound_, c);
        for (size_t i = 0; i < nvars_; ++i)
            if (e[i] > 0) t = t * args[i].pow(e[i]);
        r = r + t;
    }
    return r;
}

TruncSeries TruncSeries::exponents_divided(uint32_t k) const {
    TruncSeries r(mod_, nvars_, bound_);
    for (const auto& [e, c] : terms_) {
        Exp d = e;
        for (auto& x : d) {
            if (x % k != 0)
                fail("not_power_shaped", "series has exponents not divisible by " + std::to_string(k));
            x /= k;
        }
        r.set_coeff(d, c);
    }
    return r;
}

TruncSeries TruncSeries::exponents_scaled(uint32_t k) const {
    TruncSeries r(mod_, nvars_, bound_);
    for (const auto& [e, c] : terms_) {
        Exp d = e;
        for (auto& x : d) x *= k;
        r.set_coeff(d, c);
    }
    return r;
}

TruncSeries TruncSeries::graded_piece(int64_t d) const {
    TruncSeries r(mod_, nvars_, bound_);
    for (const auto& [e, c] : terms_)
        if (exp_total_degree(e) == d) r.set_coeff(e, c);
    return r;
}

std::string TruncSeries::to_string(const std::vector<std::string>& names) const {
    std::vector<std::string> vs;
    if (names.empty()) {
        for (size_t i = 0; i < nvars_; ++i) vs.push_back("t" + std::to_string(i + 1));
    } else {
        vs = names;
    }
    ModPoly h(mod_, vs);
    for (const auto& [e, c] : terms_) h.set_coeff(e, c);
    return h.to_string();
}

TruncSeries series_div_p(const TruncSeries& q) {
    const Modulus& m = q.modulus();
    if (m.e < 2) fail("bad_lift_div", "series_div_p needs working exponent >= 2");
    TruncSeries r(m.lowered(1), q.nvars(), q.bound());
    for (const auto& [e, c] : q.terms()) {
        if (c % m.p != 0)
            fail("not_divisible", "series coefficient not divisible by p");
        r.set_coeff(e, c / m.p);
    }
    return r;
}

} // namespace wittlift
