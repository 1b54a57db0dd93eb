#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "okvalid/cift.hpp"
#include "okvalid/error.hpp"
#include "support.hpp"

using namespace okvalid;
using okvalid::testing::Gen;

namespace {

ModelParams params(double lambda, double sigma, double mu) {
    ModelParams p;
    p.lambda = lambda;
    p.sigma = sigma;
    p.mu = mu;
    return p;
}

double accuracy(double K, double rho, double L3, double L4, double a) {
    const Interval ai(a);
    return (Interval(2.0) * Interval(K) * (Interval(rho) + Interval(L3) * ai + Interval(L4) * sqr(ai))).hi();
}

}  // namespace

TEST_CASE("linear case against the closed form") {
    const double K = 2, rho = 1e-3, L1 = 1, L2 = 0.5, L3 = 1;
    const Radii r = solve_radii(K, rho, L1, L2, L3, 0, 1, 1);
    const double exact = (1 - 4 * K * K * L1 * rho) / (4 * K * K * L1 * L3 + 2 * K * L2);
    CHECK_FALSE(r.capped);
    CHECK(r.deltaAlpha <= exact);
    CHECK(r.deltaAlpha >= exact * (1 - 1e-7));
    CHECK(r.deltaX == doctest::Approx(2 * K * (rho + L3 * r.deltaAlpha)));
    CHECK(r.bracket > r.deltaAlpha);
    CHECK(r.bracket - r.deltaAlpha <= 1e-8 * r.deltaAlpha);
    CHECK(r.uniquenessX == doctest::Approx((1 - 2 * K * L2 * r.deltaAlpha) / (2 * K * L1)));
}

TEST_CASE("capped and x-bound outcomes") {
    const Radii c = solve_radii(1, 1e-6, 0.1, 0.1, 0.1, 0.1, 1, 0.01);
    CHECK(c.capped);
    CHECK(c.deltaAlpha == 0.01);
    CHECK(c.bracket == 0);

    // The x box binds first: 2K L3 a reaches ell_x long before the line constraint.
    const Radii x = solve_radii(1, 1e-6, 1e-3, 0, 1, 0, 0.01, 1);
    CHECK(x.xBound);
    CHECK(x.deltaAlpha == doctest::Approx(0.005 - 1e-6).epsilon(1e-6));
    CHECK(x.deltaX <= 0.01);
}

TEST_CASE("radius preconditions") {
    auto stage_of = [](auto&& f) {
        try {
            f();
        } catch (const CertificationError& e) {
            return e.stage();
        }
        return Stage::ok;
    };
    CHECK(stage_of([] { solve_radii(1, 0.3, 1, 0, 0, 0, 10, 1); }) == Stage::radii);
    CHECK(stage_of([] { solve_radii(1, 0.1, 0.01, 0, 0, 0, 0.1, 1); }) == Stage::radii);
    CHECK(stage_of([] { solve_radii(-1, 0, 0, 0, 0, 0, 1, 1); }) == Stage::radii);
    CHECK_FALSE(radii_feasible(1, 0, 0, 0, 0, 0, 1, 1, 2, 0.5));
    CHECK_FALSE(radii_feasible(1, 0, 0, 0, 0, 0, 1, 1, 0.5, 2));
    CHECK(radii_feasible(1, 0, 0, 0, 0, 0, 1, 1, 0.5, 0.5));
}

TEST_CASE("radii are feasible and maximal") {
    Gen g(51);
    int tested = 0;
    for (int t = 0; t < 500; ++t) {
        const double K = g.uniform(1, 50);
        const double rho = std::ldexp(g.uniform(0.5, 1), g.integer(-50, -5));
        const double L1 = g.uniform(0, 100), L2 = g.uniform(0, 100);
        const double L3 = g.uniform(0, 100), L4 = g.coin() ? 0.0 : g.uniform(0, 1e4);
        const double ellX = g.uniform(0.01, 1), ellA = g.uniform(0.001, 1);
        Radii r;
        try {
            r = solve_radii(K, rho, L1, L2, L3, L4, ellX, ellA);
        } catch (const CertificationError&) {
            continue;
        }
        ++tested;
        CHECK(radii_feasible(K, rho, L1, L2, L3, L4, ellX, ellA, r.deltaAlpha, r.deltaX));
        CHECK(r.deltaX >= 2 * K * rho);
        CHECK(r.uniquenessX >= r.deltaX * (1 - 1e-12));
        if (!r.capped) {
            const double dx = accuracy(K, rho, L3, L4, r.bracket);
            CHECK_FALSE(radii_feasible(K, rho, L1, L2, L3, L4, ellX, ellA, r.bracket, std::min(dx, ellX)));
            if (r.deltaAlpha > 0) {
                CHECK(r.bracket - r.deltaAlpha <= 1e-8 * r.deltaAlpha);
            } else {
                CHECK(r.bracket <= std::ldexp(ellA, -150));
            }
        }
    }
    CHECK(tested > 100);
}

TEST_CASE("trivial state validates at small lambda") {
    const PointSeries u(1, 4);
    for (Parameter which : {Parameter::lambda, Parameter::sigma, Parameter::mu}) {
        const Certificate c = validate(params(10, 1, 0), u, which);
        REQUIRE(c.valid);
        CHECK(c.rho == 0);
        CHECK(c.stage == Stage::ok);
        CHECK(c.deltaAlpha > 0);
        CHECK(verify_certificate(c).ok);
    }
    PointSeries bad(1, 4);
    bad[0] = 1e-3;
    CHECK_THROWS_AS(validate(params(10, 1, 0), bad, Parameter::lambda), DomainError);
}

TEST_CASE("fixed truncation that is too small reports the inverse stage") {
    const Certificate c = validate(params(150, 6, 0), PointSeries(1, 4), Parameter::lambda, {.N = 4});
    CHECK_FALSE(c.valid);
    CHECK(c.stage == Stage::inverse_bound);
    REQUIRE(c.suggestedN);
    CHECK(*c.suggestedN > 4);
}

TEST_CASE("certificate replay catches tampering") {
    const Certificate good = validate(params(20, 2, 0), PointSeries(1, 4), Parameter::lambda);
    REQUIRE(good.valid);
    REQUIRE(verify_certificate(good).ok);

    Certificate c = good;
    c.K = good.K * 0.5;
    CHECK_FALSE(verify_certificate(c).ok);
    c = good;
    c.tau = 1.5;
    CHECK_FALSE(verify_certificate(c).ok);
    c = good;
    c.deltaAlpha = good.ellAlpha * 2;
    CHECK_FALSE(verify_certificate(c).ok);
    c = good;
    c.L1 = 1e300;
    CHECK_FALSE(verify_certificate(c).ok);
    c = good;
    c.qH2 = good.qH2 * 4 + 1;
    CHECK_FALSE(verify_certificate(c).ok);
    c = good;
    c.valid = false;
    CHECK_FALSE(verify_certificate(c).ok);
}
