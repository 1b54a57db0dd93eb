#pragma once

// Random generators and exact oracles shared by the test binaries.

#include <cmath>
#include <random>

#include <boost/multiprecision/cpp_int.hpp>

#include "okvalid/interval.hpp"
#include "okvalid/spectral.hpp"

namespace okvalid::testing {

using Rational = boost::multiprecision::cpp_rational;

inline Rational exact(double x) { return Rational(x); }

inline bool encloses(const Interval& iv, const Rational& r) {
    return exact(iv.lo()) <= r && r <= exact(iv.hi());
}

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin() { return integer(0, 1) == 1; }

    // Mix of magnitudes, signs and special small/large values.
    double value() {
        switch (integer(0, 5)) {
        case 0: return uniform(-1, 1);
        case 1: return uniform(-1e6, 1e6);
        case 2: return std::ldexp(uniform(-1, 1), integer(-60, 60));
        case 3: return static_cast<double>(integer(-8, 8));
        case 4: return std::ldexp(uniform(-1, 1), integer(-500, 500));
        default: return uniform(-1e-3, 1e-3);
        }
    }

    Interval interval() {
        const double a = value();
        if (integer(0, 4) == 0) return Interval(a);
        const double b = a + std::fabs(value()) * (coin() ? 1e-8 : 1.0);
        return Interval(std::min(a, b), std::max(a, b));
    }

    double inside(const Interval& iv) {
        if (iv.is_point()) return iv.lo();
        const double t = uniform(0, 1);
        double x = iv.lo() + t * (iv.hi() - iv.lo());
        if (!std::isfinite(x) || x < iv.lo() || x > iv.hi()) x = coin() ? iv.lo() : iv.hi();
        return x;
    }

    // Random series with decaying coefficients; zero mean when requested.
    PointSeries series(int dim, int extent, bool zero_mean, double decay = 1.5) {
        PointSeries u(dim, extent);
        for (std::size_t f = 0; f < u.size(); ++f) {
            const MultiIndex k = u.index_of(f);
            u[f] = uniform(-1, 1) / std::pow(1.0 + static_cast<double>(k.norm_sq()), decay);
        }
        if (zero_mean) u[0] = 0;
        return u;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

// Direct cosine quadrature of (a, b) -> integral over (0,1)^d of u * v,
// composite Gauss-Legendre on each axis.
template <typename F>
double integrate_cube(int dim, int panels, F&& f) {
    static const double gx[] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                0.9061798459386640};
    static const double gw[] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                0.4786286704993665, 0.2369268850561891};
    std::vector<double> nodes, weights;
    const double h = 1.0 / panels;
    for (int p = 0; p < panels; ++p) {
        for (int i = 0; i < 5; ++i) {
            nodes.push_back(h * (p + 0.5 + 0.5 * gx[i]));
            weights.push_back(0.5 * h * gw[i]);
        }
    }
    const std::size_t m = nodes.size();
    double sum = 0;
    if (dim == 1) {
        for (std::size_t i = 0; i < m; ++i) sum += weights[i] * f(nodes[i], 0.0, 0.0);
    } else if (dim == 2) {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) sum += weights[i] * weights[j] * f(nodes[i], nodes[j], 0.0);
    } else {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                for (std::size_t l = 0; l < m; ++l)
                    sum += weights[i] * weights[j] * weights[l] * f(nodes[i], nodes[j], nodes[l]);
    }
    return sum;
}

// Basis function phi_k(x), written out independently of the library.
inline double basis_value(const MultiIndex& k, double x, double y, double z) {
    const double xs[3] = {x, y, z};
    double v = 1;
    for (int i = 0; i < k.dim; ++i) {
        if (k.k[i] != 0) v *= std::sqrt(2.0) * std::cos(k.k[i] * M_PI * xs[i]);
    }
    return v;
}

inline double series_value(const PointSeries& u, double x, double y, double z) {
    double s = 0;
    for (std::size_t f = 0; f < u.size(); ++f) s += u[f] * basis_value(u.index_of(f), x, y, z);
    return s;
}

}  // namespace okvalid::testing
