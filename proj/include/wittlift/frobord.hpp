#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "wittlift/series.hpp"

namespace wittlift {

// Frobenius lifting F~(t_i) = t_i^p + p f_i on Z/p^2[[t_1..t_r]] truncated
// at total degree D. The p-parts f_i are stored mod p^2 although only their
// char-p reductions enter any formula.
class FrobeniusLift {
public:
    FrobeniusLift() = default;
    FrobeniusLift(int64_t p, int64_t bound, std::vector<TruncSeries> p_parts);

    int64_t p() const { return p_; }
    int64_t bound() const { return bound_; }
    size_t rank() const { return f_.size(); }
    const std::vector<TruncSeries>& p_parts() const { return f_; }
    TruncSeries p_part_char_p(size_t i) const; // f_i mod p

    // the series t_i^p + p f_i at a given working modulus/bound
    TruncSeries image(size_t i, Modulus m, int64_t bound) const;

    // pullback F~*(g) of a series over Z/p^2 (or a working modulus)
    TruncSeries pullback(const TruncSeries& g) const;

private:
    int64_t p_ = 0;
    int64_t bound_ = 0;
    std::vector<TruncSeries> f_;
};

// omega = sum_i comp[i] dt_i with char-p coefficients.
struct OneForm {
    std::vector<TruncSeries> comp;

    bool operator==(const OneForm& o) const { return comp == o.comp; }
    bool is_zero() const;
};

OneForm zero_form(int64_t p, size_t r, int64_t bound);

// xi(omega) = (1/p) F~*(omega~) for an arbitrary coefficient lift omega~;
// the division is the checked series_div_p.
OneForm xi_apply(const FrobeniusLift& F, const OneForm& omega);

// d(omega) components (dt_i wedge dt_j, i<j); used for closedness checks.
std::vector<TruncSeries> exterior_derivative(const OneForm& omega);
bool is_closed(const OneForm& omega);

// ordinarity: det[df_i/dt_j](0) != 0 in F_p
bool is_ordinary_lift(const FrobeniusLift& F);

// Teichmuller point c with c_i in pZ/p^2 and F~(t_i)(c) = c_i; the closed
// form is c_i = p f_i(0).
std::vector<int64_t> teichmuller_point(const FrobeniusLift& F);

// Basis of {omega : xi(omega) = omega} to the truncation bound. Solved
// degree by degree from the constant layer upward; every returned form is
// re-checked to be fixed and closed. Raises "dimension_deficit" (carrying
// the bound) when fewer than rank() independent solutions exist.
std::vector<OneForm> fixed_forms(const FrobeniusLift& F);

// Unit series q with q(0) = 1 and dq/q = omega, solved degree by degree.
// Monomials t^alpha with all alpha_i = 0 mod p are flat for d; the
// tie_break value fills them (0 and 1 give the two independent runs used
// by the ambiguity tests). Requires d(omega) = 0 and raises
// "non_integrable" when no solution exists.
TruncSeries dlog_solve(const OneForm& omega, int64_t tie_break = 0);

// Lift q (char p, unit) to q~ over Z/p^2 with F~*(q~) = q~^p; q is treated
// as exact polynomial data. Raises "inconsistent_input" when d log q is not
// fixed by xi.
TruncSeries lift_multiplicative(const FrobeniusLift& F, const TruncSeries& q);

// theta(x0, x1) = x0~^p + p x1~ (well defined mod p^2).
TruncSeries theta_map(const TruncSeries& x0, const TruncSeries& x1);

// t(F~)(y) = (y, delta(y)) with F~*(y~) = y~^p + p delta(y).
std::pair<TruncSeries, TruncSeries> cartier_section(const FrobeniusLift& F,
                                                    const TruncSeries& y);

// Membership of z in the ideal (gens) over Z/p^2 at the truncation bound,
// for generators of the shape q~^p - 1 whose char-p parts form a regular
// sequence of p-th powers with unit linear parts underneath. With
// plus_p_jsquare the ideal is enlarged by p J^2, J = (q~_i - 1): the sharp
// form of the coordinate-ambiguity containment (the bare (q~^p - 1) ideal
// misses a binomial correction term; see the ambiguity tests).
bool in_power_ideal(const TruncSeries& z, const std::vector<TruncSeries>& gens,
                    bool plus_p_jsquare = false);

// Parse a p-part expression for the CLI: grammar of parse_poly extended
// with '/' (exact division), the symbol p, and '^p'; evaluated over
// truncated series at working precision p^3 and returned mod p^2.
TruncSeries parse_lift_p_part(std::string_view src, int64_t p, size_t nvars, int64_t bound);

FrobeniusLift parse_frobenius_lift(std::string_view semicolon_separated, int64_t p,
                                   int64_t bound);

} // namespace wittlift
