#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "okvalid/embeddings.hpp"
#include "okvalid/error.hpp"
#include "okvalid/operator.hpp"
#include "support.hpp"

using namespace okvalid;
using okvalid::testing::Gen;

TEST_CASE("table values") {
    CHECK(table_constants(1).CmBar == 0.149072);
    CHECK(table_constants(2).Cb == 1.488231);
    CHECK(table_constants(3).Cm == 1.081202);
    for (int d = 1; d <= 3; ++d) {
        const auto c = table_constants(d);
        CHECK(c.CmBar <= c.equivFactor * c.Cm);
    }
    CHECK_THROWS_AS(table_constants(0), DomainError);
    CHECK_THROWS_AS(table_constants(4), DomainError);
}

TEST_CASE("equivalence factor") {
    using Big = boost::multiprecision::cpp_bin_float_50;
    const Big pi = boost::math::constants::pi<Big>();
    const Big ref = sqrt(1 + pow(pi, 4)) / (pi * pi);
    const Interval e = equiv_factor();
    CHECK(Big(e.lo()) <= ref);
    CHECK(ref <= Big(e.hi()));
    CHECK(e.lo() > 1);
    CHECK(e.mid() == doctest::Approx(1.00513).epsilon(1e-5));
}

TEST_CASE("one-dimensional CmBar") {
    const Interval c = recompute_cmbar(1, 1000);
    CHECK(c.hi() >= 0.1490);
    CHECK(c.hi() <= 0.1492);
    // Closed form: sum_k 2/(pi^4 k^4) = 2 zeta(4)/pi^4 = 1/45.
    using Big = boost::multiprecision::cpp_bin_float_50;
    const Big ref = sqrt(Big(1) / 45);
    CHECK(Big(c.lo()) <= ref);
    CHECK(ref <= Big(c.hi()));
    const double first = std::sqrt(2.0) / (std::numbers::pi * std::numbers::pi);
    CHECK(c.lo() >= first);
}

TEST_CASE("tail shrinks with the cutoff") {
    for (int d = 1; d <= 3; ++d) {
        const Interval a = recompute_cmbar(d, 100);
        const Interval b = recompute_cmbar(d, 200);
        CHECK(b.lo() >= a.lo());
        CHECK(b.hi() <= a.hi());
        CHECK(lattice_tail_bound(d, 200).hi() < lattice_tail_bound(d, 100).hi());
        CHECK(cmbar_partial_sum(d, 50).lo() > 0);
    }
}

TEST_CASE("tail bound dominates an explicit partial tail") {
    // sum over N <= |z| < 2N computed directly must lie below the bound.
    for (int d = 1; d <= 3; ++d) {
        const int n = 20;
        const Interval inner = cmbar_partial_sum(d, 2 * n) - cmbar_partial_sum(d, n);
        CHECK(inner.hi() <= lattice_tail_bound(d, n).lo());
    }
}

TEST_CASE("sup norm embedding on random zero-mean series") {
    Gen g(21);
    for (int d = 1; d <= 3; ++d) {
        const double cbar = table_constants(d).CmBar;
        for (int t = 0; t < 20; ++t) {
            const PointSeries u = g.series(d, d == 3 ? 4 : 6, true, 0.8);
            const double h2 = norm(u, NormTag::hbar(2));
            double smax = 0;
            for (int s = 0; s < 2000; ++s) {
                const double x[3] = {g.uniform(0, 1), g.uniform(0, 1), g.uniform(0, 1)};
                smax = std::max(smax, std::fabs(evaluate(u, std::span<const double>(x, d))));
            }
            CHECK(smax <= cbar * h2);
        }
    }
}

TEST_CASE("Banach algebra and norm equivalence on random series") {
    Gen g(22);
    for (int d = 1; d <= 3; ++d) {
        const auto c = table_constants(d);
        for (int t = 0; t < 20; ++t) {
            const IntervalSeries u = to_interval(g.series(d, 3, false));
            const IntervalSeries v = to_interval(g.series(d, 3, false));
            const Interval lhs = norm(multiply(u, v), NormTag::h(2));
            const Interval rhs = Interval(c.Cb) * norm(u, NormTag::h(2)) * norm(v, NormTag::h(2));
            CHECK(lhs.lo() <= rhs.hi());
            const IntervalSeries z = u.without_mean();
            CHECK(norm(z, NormTag::h(2)).lo() <= (equiv_factor() * norm(z, NormTag::hbar(2))).hi());
        }
    }
}
