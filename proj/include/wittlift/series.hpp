#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wittlift/exactring.hpp"

namespace wittlift {

// Truncated multivariate power series in t_1..t_r over Z/p^e: every stored
// term has total degree <= bound, and all arithmetic re-truncates.
class TruncSeries {
public:
    TruncSeries() = default;
    TruncSeries(Modulus m, size_t nvars, int64_t bound);

    static TruncSeries constant(Modulus m, size_t nvars, int64_t bound, int64_t c);
    static TruncSeries variable(Modulus m, size_t nvars, int64_t bound, size_t index);
    static TruncSeries from_poly(const ModPoly& g, int64_t bound);

    const Modulus& modulus() const { return mod_; }
    size_t nvars() const { return nvars_; }
    int64_t bound() const { return bound_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    int64_t coeff(const Exp& e) const;
    void set_coeff(const Exp& e, int64_t c);
    int64_t constant_term() const { return coeff(Exp(nvars_, 0)); }

    TruncSeries operator+(const TruncSeries& o) const;
    TruncSeries operator-(const TruncSeries& o) const;
    TruncSeries operator*(const TruncSeries& o) const;
    TruncSeries operator-() const;
    bool operator==(const TruncSeries& o) const;

    TruncSeries scaled(int64_t c) const;
    TruncSeries pow(uint64_t n) const;
    TruncSeries derivative(size_t var) const;
    TruncSeries truncated(int64_t new_bound) const;
    TruncSeries lift_to(Modulus higher) const;
    TruncSeries reduce_to(Modulus lower) const;

    // multiplicative inverse; constant term must be a unit
    TruncSeries inverse() const;

    // substitute t_i -> args[i] for all variables simultaneously
    TruncSeries compose(const std::vector<TruncSeries>& args) const;

    // keep only terms whose every exponent is divisible by k, and divide
    // the exponents by k (the inverse of t -> t^k on its image); fails if
    // other terms are present
    TruncSeries exponents_divided(uint32_t k) const;
    TruncSeries exponents_scaled(uint32_t k) const;

    // degree-d homogeneous slice
    TruncSeries graded_piece(int64_t d) const;

    std::string to_string(const std::vector<std::string>& names = {}) const;

private:
    Modulus mod_;
    size_t nvars_ = 0;
    int64_t bound_ = 0;
    TermMap terms_;

    void check_compatible(const TruncSeries& o) const;
};

// Exact division by p at series level (working exponent drops by one).
TruncSeries series_div_p(const TruncSeries& q);

} // namespace wittlift
