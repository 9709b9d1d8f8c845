#include "wittlift/ratfunc.hpp"

#include <algorithm>
#include <sstream>

namespace wittlift {

namespace {
int64_t normp(int64_t v, int64_t p) {
    int64_t r = v % p;
    return r < 0 ? r + p : r;
}
int64_t invp(int64_t a, int64_t p) {
    a = normp(a, p);
    int64_t r0 = p, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
        int64_t k = r0 / r1;
        int64_t r2 = r0 - k * r1, s2 = s0 - k * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    if (r0 != 1) fail("not_a_unit", "non-invertible scalar mod p");
    return normp(s0, p);
}
} // namespace

FpPoly::FpPoly(int64_t p, std::vector<int64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
    for (auto& v : c_) v = normp(v, p_);
    trim();
}

void FpPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly FpPoly::operator+(const FpPoly& o) const {
    std::vector<int64_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = normp(coeff(i) + o.coeff(i), p_);
    return FpPoly(p_, std::move(r));
}

FpPoly FpPoly::operator-(const FpPoly& o) const {
    std::vector<int64_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = normp(coeff(i) - o.coeff(i), p_);
    return FpPoly(p_, std::move(r));
}

FpPoly FpPoly::operator-() const {
    std::vector<int64_t> r = c_;
    for (auto& v : r) v = normp(-v, p_);
    return FpPoly(p_, std::move(r));
}

FpPoly FpPoly::operator*(const FpPoly& o) const {
    if (is_zero() || o.is_zero()) return zero(p_);
    std::vector<int64_t> r(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j)
            r[i + j] = normp(r[i + j] + c_[i] * o.c_[j], p_);
    return FpPoly(p_, std::move(r));
}

FpPoly FpPoly::scaled(int64_t k) const {
    std::vector<int64_t> r = c_;
    k = normp(k, p_);
    for (auto& v : r) v = normp(v * k, p_);
    return FpPoly(p_, std::move(r));
}

FpPoly FpPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(invp(leading(), p_));
}

FpPoly FpPoly::derivative() const {
    if (c_.size() <= 1) return zero(p_);
    std::vector<int64_t> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = normp(c_[i] * int64_t(i), p_);
    return FpPoly(p_, std::move(r));
}

FpPoly FpPoly::pow(uint64_t n) const {
    FpPoly r = constant(p_, 1), b = *this;
    while (n) {
        if (n & 1) r = r * b;
        if (n >>= 1) b = b * b;
    }
    return r;
}

int64_t FpPoly::eval(int64_t x) const {
    int64_t acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = normp(acc * x + c_[i], p_);
    return acc;
}

void FpPoly::divmod(const FpPoly& a, const FpPoly& b, FpPoly& q, FpPoly& r) {
    if (b.is_zero()) fail("div_by_zero", "polynomial division by zero");
    int64_t p = a.p_;
    std::vector<int64_t> rem = a.c_;
    std::vector<int64_t> quo(rem.size() >= b.c_.size() ? rem.size() - b.c_.size() + 1 : 0, 0);
    int64_t linv = invp(b.leading(), p);
    while (true) {
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
        if (rem.size() < b.c_.size()) break;
        size_t shift = rem.size() - b.c_.size();
        int64_t f = normp(rem.back() * linv, p);
        quo[shift] = f;
        for (size_t i = 0; i < b.c_.size(); ++i)
            rem[shift + i] = normp(rem[shift + i] - f * b.c_[i], p);
    }
    q = FpPoly(p, std::move(quo));
    r = FpPoly(p, std::move(rem));
}

FpPoly FpPoly::gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
        FpPoly q, r;
        divmod(a, b, q, r);
        a = b;
        b = r;
    }
    return a.monic();
}

std::string FpPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || c_[i] != 1) os << c_[i];
        if (i > 0) {
            if (c_[i] != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

// -------------------------------------------------------------------- FpRat

FpRat::FpRat(FpPoly num, FpPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) fail("div_by_zero", "rational function with zero denominator");
    normalize();
}

FpRat::FpRat(FpPoly num) : num_(std::move(num)), den_(FpPoly::constant(num_.p(), 1)) {}

void FpRat::normalize() {
    if (num_.is_zero()) {
        den_ = FpPoly::constant(den_.p(), 1);
        return;
    }
    FpPoly g = FpPoly::gcd(num_, den_);
    if (g.degree() > 0) {
        FpPoly q, r;
        FpPoly::divmod(num_, g, q, r);
        num_ = q;
        FpPoly::divmod(den_, g, q, r);
        den_ = q;
    }
    int64_t u = invp(den_.leading(), den_.p());
    num_ = num_.scaled(u);
    den_ = den_.scaled(u);
}

FpRat FpRat::operator+(const FpRat& o) const { return FpRat(num_ * o.den_ + o.num_ * den_, den_ * o.den_); }
FpRat FpRat::operator-(const FpRat& o) const { return FpRat(num_ * o.den_ - o.num_ * den_, den_ * o.den_); }
FpRat FpRat::operator*(const FpRat& o) const { return FpRat(num_ * o.num_, den_ * o.den_); }
FpRat FpRat::operator/(const FpRat& o) const {
    if (o.is_zero()) fail("div_by_zero", "division by zero rational function");
    return FpRat(num_ * o.den_, den_ * o.num_);
}
FpRat FpRat::operator-() const { return FpRat(-num_, den_); }

bool FpRat::operator==(const FpRat& o) const { return num_ == o.num_ && den_ == o.den_; }

FpRat FpRat::inverse() const {
    if (is_zero()) fail("div_by_zero", "inverse of zero");
    return FpRat(den_, num_);
}

FpRat FpRat::derivative() const {
    return FpRat(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

int64_t FpRat::eval(int64_t x) const {
    int64_t d = den_.eval(x);
    if (d == 0) fail("pole", "denominator vanishes at evaluation point", std::to_string(x));
    return normp(num_.eval(x) * invp(d, num_.p()), num_.p());
}

std::string FpRat::to_string(const std::string& var) const {
    if (den_ == FpPoly::constant(den_.p(), 1)) return num_.to_string(var);
    return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

// ------------------------------------------------------------ linear solve

bool solve_linear_ratfunc(std::vector<std::vector<FpRat>> A, std::vector<FpRat> b,
                          std::vector<FpRat>& h, std::vector<std::vector<FpRat>>* kernel) {
    const size_t rows = A.size();
    const size_t cols = rows ? A[0].size() : 0;
    if (rows == 0 || cols == 0) fail("bad_system", "empty linear system");
    int64_t p = b.empty() ? A[0][0].p() : b[0].p();

    std::vector<size_t> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t sel = r;
        while (sel < rows && A[sel][c].is_zero()) ++sel;
        if (sel == rows) continue;
        std::swap(A[sel], A[r]);
        std::swap(b[sel], b[r]);
        FpRat inv = A[r][c].inverse();
        for (size_t j = c; j < cols; ++j) A[r][j] = A[r][j] * inv;
        b[r] = b[r] * inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c].is_zero()) continue;
            FpRat f = A[i][c];
            for (size_t j = c; j < cols; ++j) A[i][j] = A[i][j] - f * A[r][j];
            b[i] = b[i] - f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (!b[i].is_zero()) return false;

    h.assign(cols, FpRat::zero(p));
    for (size_t i = 0; i < pivot_col.size(); ++i) h[pivot_col[i]] = b[i];

    if (kernel) {
        kernel->clear();
        std::vector<bool> is_pivot(cols, false);
        for (size_t c : pivot_col) is_pivot[c] = true;
        for (size_t c = 0; c < cols; ++c) {
            if (is_pivot[c]) continue;
            std::vector<FpRat> v(cols, FpRat::zero(p));
            v[c] = FpRat::constant(p, 1);
            for (size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -A[i][c];
            kernel->push_back(std::move(v));
        }
    }
    return true;
}

} // namespace wittlift
