#pragma once

// Closed real intervals with double endpoints.
//
// Every operation returns an interval containing all pointwise results.
// Outward rounding is done without switching the FPU rounding mode: the
// result is computed in round-to-nearest and an error-free transformation
// (TwoSum, Dekker product, exact remainder) tells which way the nearest
// value missed, so exact operations stay exact and inexact ones are at most
// one ulp wide. Requires strict IEEE evaluation (no -ffast-math and no FMA
// contraction of the helpers below).

#include <algorithm>
#include <cmath>
#include <iosfwd>
#include <limits>

#include "okvalid/error.hpp"

namespace okvalid {

namespace rounding {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kMax = std::numeric_limits<double>::max();
inline constexpr double kTiny = 0x1p-960;   // below this, Dekker's error term may underflow
inline constexpr double kHuge = 0x1p+995;   // above this, Dekker's split may overflow

inline double next_up(double x) { return std::nextafter(x, kInf); }
inline double next_down(double x) { return std::nextafter(x, -kInf); }

// s + e == a + b exactly (Knuth).
inline void two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    const double bb = s - a;
    e = (a - (s - bb)) + (b - bb);
}

inline void split(double a, double& hi, double& lo) {
    const double c = 134217729.0 * a;  // 2^27 + 1
    hi = c - (c - a);
    lo = a - hi;
}

// p + e == a * b exactly, provided no overflow or underflow (Dekker).
inline void two_prod(double a, double b, double& p, double& e) {
    p = a * b;
    double ah, al, bh, bl;
    split(a, ah, al);
    split(b, bh, bl);
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
}

// Direction in which the exact result lies relative to the rounded one:
// +1 above, -1 below, 0 exact.
inline int sign_of(double e) { return (e > 0) - (e < 0); }

inline double overflow_down(double r) { return r > 0 ? kMax : r; }
inline double overflow_up(double r) { return r < 0 ? -kMax : r; }

inline double add_down(double a, double b) {
    double s, e;
    two_sum(a, b, s, e);
    if (!std::isfinite(s)) {
        return std::isfinite(a) && std::isfinite(b) ? overflow_down(s) : s;
    }
    return e < 0 ? next_down(s) : s;
}

inline double add_up(double a, double b) {
    double s, e;
    two_sum(a, b, s, e);
    if (!std::isfinite(s)) {
        return std::isfinite(a) && std::isfinite(b) ? overflow_up(s) : s;
    }
    return e > 0 ? next_up(s) : s;
}

inline double sub_down(double a, double b) { return add_down(a, -b); }
inline double sub_up(double a, double b) { return add_up(a, -b); }

// Returns the rounded product and the direction of the exact product.
inline int mul_direction(double a, double b, double& p) {
    if (a == 0 || b == 0) {
        p = 0;
        return 0;
    }
    p = a * b;
    if (!std::isfinite(p)) {
        return std::isfinite(a) && std::isfinite(b) ? (p > 0 ? 2 : -2) : 0;
    }
    const double ap = std::fabs(p);
    if (ap < kTiny || std::fabs(a) > kHuge || std::fabs(b) > kHuge) {
        return 3;  // unknown direction
    }
    double q, e;
    two_prod(a, b, q, e);
    return sign_of(e);
}

inline double mul_down(double a, double b) {
    double p;
    switch (mul_direction(a, b, p)) {
    case 2: return kMax;
    case -2: return p;
    case 3:
    case -1: return next_down(p);
    default: return p;
    }
}

inline double mul_up(double a, double b) {
    double p;
    switch (mul_direction(a, b, p)) {
    case 2: return p;
    case -2: return -kMax;
    case 3:
    case 1: return next_up(p);
    default: return p;
    }
}

inline int div_direction(double a, double b, double& q) {
    q = a / b;
    if (a == 0) return 0;
    if (!std::isfinite(q)) {
        return std::isfinite(a) && b != 0 ? (q > 0 ? 2 : -2) : 0;
    }
    const double aq = std::fabs(q);
    if (aq < kTiny || aq > kHuge || std::fabs(b) > kHuge || std::fabs(b) < kTiny ||
        std::fabs(a) < kTiny) {
        return 3;
    }
    // r = a - q*b is exact in sign: a - p is exact by Sterbenz, and rounding
    // (a - p) - e cannot change its sign.
    double p, e;
    two_prod(q, b, p, e);
    const double r = (a - p) - e;
    return sign_of(r) * sign_of(b);
}

inline double div_down(double a, double b) {
    double q;
    switch (div_direction(a, b, q)) {
    case 2: return kMax;
    case -2: return q;
    case 3:
    case -1: return next_down(q);
    default: return q;
    }
}

inline double div_up(double a, double b) {
    double q;
    switch (div_direction(a, b, q)) {
    case 2: return q;
    case -2: return -kMax;
    case 3:
    case 1: return next_up(q);
    default: return q;
    }
}

inline int sqrt_direction(double x, double& s) {
    s = std::sqrt(x);
    if (x == 0 || !std::isfinite(s)) return 0;
    if (x < kTiny || x > kHuge) return 3;
    double p, e;
    two_prod(s, s, p, e);
    return sign_of((x - p) - e);
}

inline double sqrt_down(double x) {
    double s;
    const int dir = sqrt_direction(x, s);
    return (dir == -1 || dir == 3) ? std::max(0.0, next_down(s)) : s;
}

inline double sqrt_up(double x) {
    double s;
    const int dir = sqrt_direction(x, s);
    return (dir == 1 || dir == 3) ? next_up(s) : s;
}

}  // namespace rounding

class Interval {
public:
    constexpr Interval() noexcept = default;
    // Implicit so that generic code can mix doubles and intervals.
    constexpr Interval(double x) noexcept : lo_(x), hi_(x) {}  // NOLINT
    Interval(double lo, double hi) : lo_(lo), hi_(hi) {
        if (!(lo <= hi)) {
            throw DomainError("Interval: lower bound exceeds upper bound or is NaN");
        }
    }

    constexpr double lo() const noexcept { return lo_; }
    constexpr double hi() const noexcept { return hi_; }

    // Floating midpoint; not guaranteed to be the exact midpoint.
    double mid() const noexcept { return lo_ == hi_ ? lo_ : 0.5 * lo_ + 0.5 * hi_; }
    // Upper bound on max(hi - mid, mid - lo).
    double rad() const noexcept {
        const double m = mid();
        return std::max(rounding::sub_up(hi_, m), rounding::sub_up(m, lo_));
    }
    double width() const noexcept { return rounding::sub_up(hi_, lo_); }
    // max |x| over the interval.
    double mag() const noexcept { return std::max(std::fabs(lo_), std::fabs(hi_)); }
    // min |x| over the interval.
    double mig() const noexcept {
        if (lo_ <= 0 && hi_ >= 0) return 0;
        return std::min(std::fabs(lo_), std::fabs(hi_));
    }

    bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }
    bool contains_zero() const noexcept { return lo_ <= 0 && 0 <= hi_; }
    bool subset_of(const Interval& other) const noexcept {
        return other.lo_ <= lo_ && hi_ <= other.hi_;
    }
    bool is_point() const noexcept { return lo_ == hi_; }

    Interval& operator+=(const Interval& b) { return *this = *this + b; }
    Interval& operator-=(const Interval& b) { return *this = *this - b; }
    Interval& operator*=(const Interval& b) { return *this = *this * b; }
    Interval& operator/=(const Interval& b) { return *this = *this / b; }

    friend Interval operator+(const Interval& a, const Interval& b) {
        return raw(rounding::add_down(a.lo_, b.lo_), rounding::add_up(a.hi_, b.hi_));
    }
    friend Interval operator-(const Interval& a, const Interval& b) {
        return raw(rounding::sub_down(a.lo_, b.hi_), rounding::sub_up(a.hi_, b.lo_));
    }
    friend Interval operator-(const Interval& a) { return raw(-a.hi_, -a.lo_); }
    friend Interval operator*(const Interval& a, const Interval& b);
    // Throws DomainError if b contains zero.
    friend Interval operator/(const Interval& a, const Interval& b);

    friend bool operator==(const Interval& a, const Interval& b) noexcept {
        return a.lo_ == b.lo_ && a.hi_ == b.hi_;
    }

private:
    static Interval raw(double lo, double hi) noexcept {
        Interval r;
        r.lo_ = lo;
        r.hi_ = hi;
        return r;
    }
    friend Interval hull(const Interval&, const Interval&) noexcept;
    friend Interval sqr(const Interval&);
    friend Interval sqrt(const Interval&);
    friend Interval abs(const Interval&) noexcept;

    double lo_ = 0;
    double hi_ = 0;
};

Interval hull(const Interval& a, const Interval& b) noexcept;
Interval sqr(const Interval& a);
// Throws DomainError if a.lo() < 0.
Interval sqrt(const Interval& a);
Interval abs(const Interval& a) noexcept;
Interval pow(const Interval& a, int n);
Interval max(const Interval& a, const Interval& b);

// Enclosures of constants.
Interval pi();
Interval sqrt2();
Interval inv_sqrt2();

std::ostream& operator<<(std::ostream& os, const Interval& x);

// Point/interval helpers so generic code can treat double and Interval alike.
inline double upper(double x) noexcept { return x; }
inline double upper(const Interval& x) noexcept { return x.hi(); }
inline double lower(double x) noexcept { return x; }
inline double lower(const Interval& x) noexcept { return x.lo(); }
inline double magnitude(double x) noexcept { return std::fabs(x); }
inline double magnitude(const Interval& x) noexcept { return x.mag(); }
inline double midpoint(double x) noexcept { return x; }
inline double midpoint(const Interval& x) noexcept { return x.mid(); }
inline double square(double x) noexcept { return x * x; }
inline Interval square(const Interval& x) { return sqr(x); }

}  // namespace okvalid
