#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <limits>

#include <Eigen/SVD>

#include "okvalid/error.hpp"
#include "okvalid/interval_matrix.hpp"
#include "support.hpp"

using namespace okvalid;
using okvalid::testing::encloses;
using okvalid::testing::exact;
using okvalid::testing::Gen;
using okvalid::testing::Rational;

namespace {

double ulp(double x) { return std::nextafter(std::fabs(x), INFINITY) - std::fabs(x); }

}  // namespace

TEST_CASE("scalar examples") {
    CHECK(Interval(1, 2) + Interval(3, 4) == Interval(4, 6));
    CHECK(Interval(-1, 1) * Interval(-1, 1) == Interval(-1, 1));
    CHECK(sqrt(Interval(4, 9)) == Interval(2, 3));
    CHECK(sqrt(Interval(0, 0)) == Interval(0, 0));

    const Interval third = Interval(1.0) / Interval(3.0);
    CHECK(encloses(third, Rational(1, 3)));
    CHECK(third.hi() - third.lo() <= 2 * ulp(1.0 / 3.0));

    const Interval r2 = sqrt(Interval(2.0));
    CHECK(exact(r2.lo()) * exact(r2.lo()) <= 2);
    CHECK(exact(r2.hi()) * exact(r2.hi()) >= 2);
    CHECK(r2.hi() - r2.lo() <= 4 * ulp(1.4142135623730951));
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(Interval(1.0) / Interval(-1, 1), DomainError);
    CHECK_THROWS_AS(Interval(1.0) / Interval(0.0), DomainError);
    CHECK_THROWS_AS(sqrt(Interval(-1, 4)), DomainError);
    CHECK_THROWS_AS(Interval(2, 1), DomainError);
    CHECK_THROWS_AS(Interval(std::nan(""), 1), DomainError);
}

TEST_CASE("constants enclose their values") {
    CHECK(pi().contains(3.141592653589793));
    CHECK(pi().lo() < pi().hi());
    const Interval s = sqrt2();
    CHECK(exact(s.lo()) * exact(s.lo()) <= 2);
    CHECK(exact(s.hi()) * exact(s.hi()) >= 2);
    const Interval h = inv_sqrt2();
    CHECK(exact(h.lo()) * exact(h.lo()) * 2 <= 1);
    CHECK(exact(h.hi()) * exact(h.hi()) * 2 >= 1);
}

TEST_CASE("containment against exact rationals") {
    Gen g(1);
    for (int i = 0; i < 20000; ++i) {
        const Interval a = g.interval();
        const Interval b = g.interval();
        const double x = g.inside(a);
        const double y = g.inside(b);
        const Rational rx = exact(x), ry = exact(y);
        const Interval s = a + b, d = a - b, p = a * b;
        if (std::isfinite(s.lo()) && std::isfinite(s.hi())) REQUIRE(encloses(s, rx + ry));
        if (std::isfinite(d.lo()) && std::isfinite(d.hi())) REQUIRE(encloses(d, rx - ry));
        if (std::isfinite(p.lo()) && std::isfinite(p.hi())) REQUIRE(encloses(p, rx * ry));
        if (!b.contains_zero()) {
            const Interval q = a / b;
            if (std::isfinite(q.lo()) && std::isfinite(q.hi())) REQUIRE(encloses(q, rx / ry));
        }
        const Interval aa = abs(a);
        if (aa.hi() < 1e300) {
            const Interval r = sqrt(aa);
            const Rational rz = exact(std::fabs(x));
            REQUIRE(exact(r.lo()) * exact(r.lo()) <= rz);
            REQUIRE(exact(r.hi()) * exact(r.hi()) >= rz);
        }
    }
}

TEST_CASE("inclusion monotonicity") {
    Gen g(2);
    for (int i = 0; i < 5000; ++i) {
        const Interval a = g.interval();
        const Interval b = g.interval();
        const Interval a2(std::nextafter(a.lo(), -INFINITY) - std::fabs(g.value()), a.hi());
        const Interval b2(b.lo(), b.hi() + std::fabs(g.value()));
        CHECK((a + b).subset_of(a2 + b2));
        CHECK((a - b).subset_of(a2 - b2));
        CHECK((a * b).subset_of(a2 * b2));
        if (!b2.contains_zero()) CHECK((a / b).subset_of(a2 / b2));
    }
}

TEST_CASE("pow, sqr and abs") {
    CHECK(sqr(Interval(-2, 3)) == Interval(0, 9));
    CHECK(abs(Interval(-2, 1)) == Interval(0, 2));
    CHECK(pow(Interval(-2, 1), 3) == Interval(-8, 1));
    CHECK(pow(Interval(2.0), -2).contains(0.25));
    CHECK(pow(Interval(3.0), 0) == Interval(1.0));
}

TEST_CASE("matrix product examples") {
    PointMatrix a(3, 3);
    a << 1, 2, 3, 4, 5, 6, 7, 8, 10;
    const IntervalMatrix ia(a);
    const IntervalMatrix p = multiply(IntervalMatrix::identity(3), ia);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            CHECK(p(i, j).contains(a(i, j)));
            CHECK(p(i, j).width() <= 1e-13 * std::fabs(a(i, j)));
        }
    }
    IntervalMatrix x(1, 1), y(1, 1);
    x(0, 0) = Interval(1, 2);
    y(0, 0) = Interval(-3, 4);
    CHECK((x(0, 0) * y(0, 0)).subset_of(multiply(x, y)(0, 0)));
    CHECK(multiply_entrywise(x, y)(0, 0) == x(0, 0) * y(0, 0));
    CHECK_THROWS_AS(multiply(IntervalMatrix(2, 3), IntervalMatrix(2, 3)), DomainError);
}

TEST_CASE("random matrix products contain the rational product") {
    Gen g(3);
    for (int trial = 0; trial < 20; ++trial) {
        PointMatrix a(5, 5), b(5, 5);
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 5; ++j) {
                a(i, j) = g.uniform(-10, 10);
                b(i, j) = g.uniform(-10, 10);
            }
        }
        const IntervalMatrix p = multiply(a, b);
        const IntervalMatrix pe = multiply_entrywise(IntervalMatrix(a), IntervalMatrix(b));
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 5; ++j) {
                Rational s = 0;
                for (int k = 0; k < 5; ++k) s += exact(a(i, k)) * exact(b(k, j));
                CHECK(encloses(p(i, j), s));
                CHECK(encloses(pe(i, j), s));
            }
        }
    }
}

TEST_CASE("interval matrix product contains sampled products") {
    Gen g(4);
    IntervalMatrix a(4, 6), b(6, 3);
    for (auto& e : a.entries()) e = Interval(g.uniform(-1, 0), g.uniform(0, 1));
    for (auto& e : b.entries()) e = Interval(g.uniform(-1, 0), g.uniform(0, 1));
    const IntervalMatrix p = multiply(a, b);
    for (int s = 0; s < 50; ++s) {
        PointMatrix x(4, 6), y(6, 3);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 6; ++j) x(i, j) = g.inside(a(i, j));
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 3; ++j) y(i, j) = g.inside(b(i, j));
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 3; ++j) {
                Rational r = 0;
                for (int k = 0; k < 6; ++k) r += exact(x(i, k)) * exact(y(k, j));
                CHECK(encloses(p(i, j), r));
            }
        }
    }
}

TEST_CASE("products do not depend on the thread count") {
    Gen g(5);
    PointMatrix a(40, 40);
    IntervalMatrix b(40, 40);
    for (int i = 0; i < 40; ++i) {
        for (int j = 0; j < 40; ++j) {
            a(i, j) = g.uniform(-1, 1);
            const double m = g.uniform(-1, 1);
            b(i, j) = Interval(m, m + 1e-9);
        }
    }
    setenv("OKVALID_THREADS", "1", 1);
    const IntervalMatrix one = multiply(a, b);
    setenv("OKVALID_THREADS", "7", 1);
    const IntervalMatrix seven = multiply(a, b);
    unsetenv("OKVALID_THREADS");
    for (std::size_t i = 0; i < one.entries().size(); ++i) CHECK(one.entries()[i] == seven.entries()[i]);
}

TEST_CASE("2-norm upper bounds") {
    for (int n : {1, 5, 40}) {
        const double u = norm2_upper(IntervalMatrix::identity(n));
        CHECK(u >= 1);
        CHECK(u <= 1 + 1e-12);
    }
    PointMatrix d = PointMatrix::Zero(3, 3);
    d(0, 0) = 1;
    d(1, 1) = 2;
    d(2, 2) = 3;
    const double u = norm2_upper(IntervalMatrix(d), NormRefinement::always);
    CHECK(u >= 3);
    CHECK(u <= 3 * (1 + 1e-12));

    Gen g(6);
    for (int trial = 0; trial < 30; ++trial) {
        PointMatrix m(8, 8);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) m(i, j) = g.uniform(-1, 1);
        const double smax = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0);
        for (auto mode : {NormRefinement::never, NormRefinement::automatic, NormRefinement::always}) {
            CHECK(norm2_upper(IntervalMatrix(m), mode) >= smax);
        }
        CHECK(spectral_norm_upper(m) >= smax);
        CHECK(spectral_norm_upper(m) <= smax * (1 + 1e-8));
        CHECK(spectral_norm_estimate(m) == doctest::Approx(smax).epsilon(1e-6));

        IntervalMatrix im(8, 8);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) im(i, j) = Interval(m(i, j), std::nextafter(m(i, j) + 1e-6, INFINITY));
        CHECK(norm2_upper(im) >= Eigen::JacobiSVD<Eigen::MatrixXd>(im.mid()).singularValues()(0));
    }
}
