#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wittlift/error.hpp"

namespace wittlift {

// Dense univariate polynomials over F_p, used by the lambda-line solver
// where coefficients are rational functions of the Legendre parameter.
class FpPoly {
public:
    FpPoly() = default;
    FpPoly(int64_t p, std::vector<int64_t> coeffs); // coeffs[i] = coefficient of X^i

    static FpPoly zero(int64_t p) { return FpPoly(p, {}); }
    static FpPoly constant(int64_t p, int64_t c) { return FpPoly(p, {c}); }
    static FpPoly x(int64_t p) { return FpPoly(p, {0, 1}); }

    int64_t p() const { return p_; }
    const std::vector<int64_t>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int64_t degree() const { return int64_t(c_.size()) - 1; }
    int64_t coeff(size_t i) const { return i < c_.size() ? c_[i] : 0; }
    int64_t leading() const { return c_.empty() ? 0 : c_.back(); }

    FpPoly operator+(const FpPoly& o) const;
    FpPoly operator-(const FpPoly& o) const;
    FpPoly operator*(const FpPoly& o) const;
    FpPoly operator-() const;
    bool operator==(const FpPoly& o) const { return p_ == o.p_ && c_ == o.c_; }

    FpPoly scaled(int64_t k) const;
    FpPoly monic() const;
    FpPoly derivative() const;
    FpPoly pow(uint64_t n) const;
    int64_t eval(int64_t x) const;

    // division with remainder; divisor must have unit leading coefficient
    static void divmod(const FpPoly& a, const FpPoly& b, FpPoly& q, FpPoly& r);
    static FpPoly gcd(FpPoly a, FpPoly b); // monic gcd

    std::string to_string(const std::string& var = "l") const;

private:
    int64_t p_ = 0;
    std::vector<int64_t> c_;
    void trim();
};

// Rational functions num/den over F_p, reduced and with monic denominator.
class FpRat {
public:
    FpRat() = default;
    FpRat(FpPoly num, FpPoly den);
    explicit FpRat(FpPoly num);
    static FpRat zero(int64_t p) { return FpRat(FpPoly::zero(p)); }
    static FpRat constant(int64_t p, int64_t c) { return FpRat(FpPoly::constant(p, c)); }

    const FpPoly& num() const { return num_; }
    const FpPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    int64_t p() const { return num_.p(); }

    FpRat operator+(const FpRat& o) const;
    FpRat operator-(const FpRat& o) const;
    FpRat operator*(const FpRat& o) const;
    FpRat operator/(const FpRat& o) const;
    FpRat operator-() const;
    bool operator==(const FpRat& o) const;

    FpRat inverse() const;
    FpRat derivative() const; // quotient rule
    int64_t eval(int64_t x) const; // fails when the denominator vanishes

    std::string to_string(const std::string& var = "l") const;

private:
    FpPoly num_, den_;
    void normalize();
};

// Gaussian elimination over F_p(lambda): solves A h = b; returns false when
// inconsistent. On success h holds one solution (free unknowns set to zero)
// and kernel receives a basis of the homogeneous solution space.
bool solve_linear_ratfunc(std::vector<std::vector<FpRat>> A, std::vector<FpRat> b,
                          std::vector<FpRat>& h, std::vector<std::vector<FpRat>>* kernel = nullptr);

} // namespace wittlift
