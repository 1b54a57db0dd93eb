#pragma once

#include <cmath>
#include <initializer_list>
#include <vector>

#include "okvalid/error.hpp"

namespace okvalid {

// Real polynomial with ascending coefficients c[0] + c[1] x + ...
class Polynomial {
public:
    Polynomial() : c_{0.0} {}
    Polynomial(std::initializer_list<double> c) : Polynomial(std::vector<double>(c)) {}
    explicit Polynomial(std::vector<double> c) : c_(std::move(c)) {
        if (c_.empty()) c_.push_back(0.0);
        while (c_.size() > 1 && c_.back() == 0.0) c_.pop_back();
    }

    // f(u) = u - u^3
    static Polynomial cubic() { return Polynomial{0.0, 1.0, 0.0, -1.0}; }

    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    const std::vector<double>& coeffs() const noexcept { return c_; }
    bool is_zero() const noexcept { return c_.size() == 1 && c_[0] == 0.0; }

    Polynomial derivative() const {
        std::vector<double> d;
        for (std::size_t i = 1; i < c_.size(); ++i) {
            const double k = static_cast<double>(i);
            const double v = k * c_[i];
            if (std::fma(k, c_[i], -v) != 0.0) {
                throw DomainError("derivative coefficient is not exactly representable");
            }
            d.push_back(v);
        }
        return Polynomial(std::move(d));
    }

    // Horner evaluation; T is double, Interval or a series type.
    template <typename T>
    T operator()(const T& x) const {
        T r(c_.back());
        for (int i = degree() - 1; i >= 0; --i) r = r * x + T(c_[i]);
        return r;
    }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    std::vector<double> c_;
};

}  // namespace okvalid
