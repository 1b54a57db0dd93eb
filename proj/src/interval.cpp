#include "okvalid/interval.hpp"

#include <ostream>

namespace okvalid {

using namespace rounding;

Interval operator*(const Interval& a, const Interval& b) {
    // Sign-case dispatch keeps point-times-interval products to two roundings.
    if (a.lo_ >= 0 && b.lo_ >= 0) {
        return Interval::raw(mul_down(a.lo_, b.lo_), mul_up(a.hi_, b.hi_));
    }
    if (a.hi_ <= 0 && b.hi_ <= 0) {
        return Interval::raw(mul_down(a.hi_, b.hi_), mul_up(a.lo_, b.lo_));
    }
    if (a.lo_ >= 0 && b.hi_ <= 0) {
        return Interval::raw(mul_down(a.hi_, b.lo_), mul_up(a.lo_, b.hi_));
    }
    if (a.hi_ <= 0 && b.lo_ >= 0) {
        return Interval::raw(mul_down(a.lo_, b.hi_), mul_up(a.hi_, b.lo_));
    }
    const double lo = std::min({mul_down(a.lo_, b.lo_), mul_down(a.lo_, b.hi_),
                                mul_down(a.hi_, b.lo_), mul_down(a.hi_, b.hi_)});
    const double hi = std::max({mul_up(a.lo_, b.lo_), mul_up(a.lo_, b.hi_),
                                mul_up(a.hi_, b.lo_), mul_up(a.hi_, b.hi_)});
    return Interval::raw(lo, hi);
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) {
        throw DomainError("Interval division: divisor contains zero");
    }
    const double lo = std::min({div_down(a.lo_, b.lo_), div_down(a.lo_, b.hi_),
                                div_down(a.hi_, b.lo_), div_down(a.hi_, b.hi_)});
    const double hi = std::max({div_up(a.lo_, b.lo_), div_up(a.lo_, b.hi_),
                                div_up(a.hi_, b.lo_), div_up(a.hi_, b.hi_)});
    return Interval::raw(lo, hi);
}

Interval hull(const Interval& a, const Interval& b) noexcept {
    return Interval::raw(std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_));
}

Interval sqr(const Interval& a) {
    if (a.lo_ >= 0) return Interval::raw(mul_down(a.lo_, a.lo_), mul_up(a.hi_, a.hi_));
    if (a.hi_ <= 0) return Interval::raw(mul_down(a.hi_, a.hi_), mul_up(a.lo_, a.lo_));
    const double m = std::max(-a.lo_, a.hi_);
    return Interval::raw(0.0, mul_up(m, m));
}

Interval sqrt(const Interval& a) {
    if (a.lo_ < 0) {
        throw DomainError("Interval sqrt: negative lower bound");
    }
    return Interval::raw(sqrt_down(a.lo_), sqrt_up(a.hi_));
}

Interval abs(const Interval& a) noexcept {
    if (a.lo_ >= 0) return a;
    if (a.hi_ <= 0) return -a;
    return Interval::raw(0.0, std::max(-a.lo_, a.hi_));
}

Interval pow(const Interval& a, int n) {
    if (n < 0) return Interval(1.0) / pow(a, -n);
    if (n == 0) return Interval(1.0);
    if (n % 2 == 0) {
        // Even powers are monotone in |a|.
        const Interval m = abs(a);
        Interval r(1.0);
        for (int i = 0; i < n; ++i) r = r * m;
        return r;
    }
    // Odd powers are monotone increasing.
    Interval lo(a.lo()), hi(a.hi());
    Interval rl(1.0), rh(1.0);
    for (int i = 0; i < n; ++i) {
        rl = rl * lo;
        rh = rh * hi;
    }
    return Interval(rl.lo(), rh.hi());
}

Interval max(const Interval& a, const Interval& b) {
    return Interval(std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

Interval pi() {
    // M_PI is the double just below pi.
    static const Interval value(3.141592653589793, next_up(3.141592653589793));
    return value;
}

Interval sqrt2() {
    static const Interval value = sqrt(Interval(2.0));
    return value;
}

Interval inv_sqrt2() {
    static const Interval value = Interval(1.0) / sqrt2();
    return value;
}

std::ostream& operator<<(std::ostream& os, const Interval& x) {
    const auto prec = os.precision(17);
    os << '[' << x.lo() << ", " << x.hi() << ']';
    os.precision(prec);
    return os;
}

}  // namespace okvalid
