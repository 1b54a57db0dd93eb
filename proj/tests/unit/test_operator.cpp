#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include <Eigen/SVD>

#include "okvalid/embeddings.hpp"
#include "okvalid/error.hpp"
#include "okvalid/operator.hpp"
#include "support.hpp"

using namespace okvalid;
using okvalid::testing::Gen;

namespace {

constexpr double kPi = std::numbers::pi;

ModelParams params(double lambda, double sigma, double mu, Polynomial f = Polynomial::cubic()) {
    ModelParams p;
    p.lambda = lambda;
    p.sigma = sigma;
    p.mu = mu;
    p.f = std::move(f);
    return p;
}

double diag_entry(int k, double lambda, double sigma) {
    const double kap = kPi * kPi * k * k;
    return -(1 + lambda * sigma / (kap * kap)) + lambda / kap;
}

double diag_kn(int n, double lambda, double sigma) {
    double m = INFINITY;
    for (int k = 1; k < n; ++k) m = std::min(m, std::fabs(diag_entry(k, lambda, sigma)));
    return 1 / m;
}

// b_{k,l} / (kappa_k kappa_l) by quadrature of (L phi_l, phi_k) for d = 1, 2.
double quadrature_entry(const ModelParams& p, const PointSeries& u, const MultiIndex& k, const MultiIndex& l) {
    const Polynomial fp = p.f.derivative();
    const int d = u.dim();
    const double inner = okvalid::testing::integrate_cube(d, d == 1 ? 40 : 16, [&](double x, double y, double z) {
        const double q = p.lambda * fp(okvalid::testing::series_value(u, x, y, z) + p.mu);
        return q * okvalid::testing::basis_value(l, x, y, z) * okvalid::testing::basis_value(k, x, y, z);
    });
    const double kk = kappa_point(k), kl = kappa_point(l);
    const double b = kk * (-kl * (k == l) + inner) - p.lambda * p.sigma * (k == l);
    return b / (kk * kl);
}

}  // namespace

TEST_CASE("parameter checks") {
    CHECK_THROWS_AS(params(0, 1, 0).check(), DomainError);
    CHECK_THROWS_AS(params(1, -1, 0).check(), DomainError);
    CHECK_THROWS_AS(params(1, 1, 0, Polynomial{2.0}).check(), DomainError);
    CHECK_NOTHROW(params(1, 0, 0.3).check());
    CHECK(parameter_from_string("sigma") == Parameter::sigma);
    CHECK_THROWS_AS(parameter_from_string("nu"), DomainError);
    CHECK(with(params(1, 2, 3), Parameter::mu, 5).mu == 5);
}

TEST_CASE("residual of the trivial state") {
    const PointSeries u(1, 8);
    CHECK(residual(params(10, 1, 0), u) == Interval(0.0));
    PointSeries bad(1, 4);
    bad[0] = 0.1;
    CHECK_THROWS_AS(residual(params(10, 1, 0), bad), DomainError);
}

TEST_CASE("residual of a small single mode") {
    const double eps = 1e-3;
    PointSeries u(1, 2);
    u[1] = eps;
    const ModelParams p = params(1, 1, 0);
    const IntervalSeries f = residual_series(p, to_interval(u));
    const double k1 = kPi * kPi;
    // u - u^3 with u = eps phi_1: phi_1^3 = (3/2) phi_1 + (1/2) phi_3 in this basis.
    const double g1 = eps - eps * eps * eps * 1.5;
    const double g3 = -eps * eps * eps * 0.5;
    CHECK(f[1].contains(k1 * (-k1 * eps + g1) - eps));
    CHECK(f[3].contains(9 * k1 * g3));
    CHECK(f[0] == Interval(0.0));
    CHECK(f[2].contains(0.0));

    const ModelParams lin = params(1, 1, 0, Polynomial{0.0, 1.0});
    const IntervalSeries fl = residual_series(lin, to_interval(u));
    CHECK(fl[1].contains(-eps * (k1 * k1 - k1 + 1)));
}

TEST_CASE("residual matches a quadrature oracle") {
    Gen g(31);
    const ModelParams p = params(5, 2, 0.1);
    const PointSeries u = g.series(1, 5, true);
    const IntervalSeries f = residual_series(p, to_interval(u));
    for (int k = 1; k < f.extent(0); ++k) {
        const MultiIndex mk = make_index({k});
        const double gk = okvalid::testing::integrate_cube(1, 60, [&](double x, double, double) {
            return p.f(okvalid::testing::series_value(u, x, 0, 0) + p.mu) *
                   okvalid::testing::basis_value(mk, x, 0, 0);
        });
        const double kap = kappa_point(mk);
        const double ref = kap * (-kap * u.coeff(mk) + p.lambda * gk) - p.lambda * p.sigma * u.coeff(mk);
        CHECK(f[k].lo() - 1e-8 * (1 + std::fabs(ref)) <= ref);
        CHECK(ref <= f[k].hi() + 1e-8 * (1 + std::fabs(ref)));
    }
}

TEST_CASE("q series") {
    const PointSeries zero(1, 4);
    const QSeries q = q_series(params(3, 1, 0.2), zero);
    CHECK(q.q[0].contains(3 * (1 - 3 * 0.04)));
    for (std::size_t f = 1; f < q.q.size(); ++f) CHECK(q.q[f] == Interval(0.0));

    PointSeries phi(1, 2);
    phi[1] = 1;
    const QSeries q1 = q_series(params(1, 0, 0), phi);
    // 1 - 3 phi_1^2 = 1 - 3 (1 + phi_2 / sqrt 2) = -2 - (3/sqrt2) phi_2
    CHECK(q1.q[0].contains(-2.0));
    CHECK(q1.q[2].contains(-3 / std::numbers::sqrt2));
    double gmax = 0;
    for (int i = 0; i <= 10000; ++i) {
        const double x = i / 10000.0;
        const double v = std::sqrt(2.0) * std::cos(kPi * x);
        gmax = std::max(gmax, std::fabs(1 - 3 * v * v));
    }
    CHECK(q1.sup >= gmax);
}

TEST_CASE("Galerkin matrix of the trivial state is diagonal") {
    for (auto [lambda, sigma] : {std::pair{10.0, 1.0}, std::pair{150.0, 6.0}}) {
        const GalerkinMatrix b = build_galerkin(params(lambda, sigma, 0), PointSeries(1, 4), 12);
        REQUIRE(b.size() == 11);
        for (std::size_t i = 0; i < b.size(); ++i) {
            for (std::size_t j = 0; j < b.size(); ++j) {
                if (i == j) {
                    CHECK(b.entries(i, j).contains(diag_entry(static_cast<int>(i) + 1, lambda, sigma)));
                } else {
                    CHECK(b.entries(i, j) == Interval(0.0));
                }
            }
        }
    }
    const GalerkinMatrix b2 = build_galerkin(params(1, 0, 0, Polynomial{0.0, 1.0, 0.0, -1.0}), PointSeries(2, 2), 3);
    CHECK(b2.size() == 8);
    CHECK(b2.basis.front() == make_index({0, 1}));
    CHECK(b2.basis.back() == make_index({2, 2}));
}

TEST_CASE("zero q gives minus identity") {
    // f(u) = u^2 / 2 at u = 0, mu = 0 has f' = 0 everywhere on the state.
    const ModelParams p = params(1, 0, 0, Polynomial{0.0, 0.0, 0.5});
    const GalerkinMatrix b = build_galerkin(p, PointSeries(1, 3), 8);
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(b.entries(i, i) == Interval(-1.0));
    const KnResult kn = kn_bound(b);
    CHECK(kn.KN >= 1);
    CHECK(kn.KN <= 1 + 1e-10);
    const InverseBound ib = inverse_bound(p, PointSeries(1, 3), 8);
    CHECK(ib.tau == 0);
    CHECK(ib.K == doctest::Approx(std::max(ib.KN, 1.0)));
}

TEST_CASE("Galerkin entries against quadrature") {
    Gen g(32);
    for (int d = 1; d <= 2; ++d) {
        const ModelParams p = params(7, 2, 0.1);
        const PointSeries u = g.series(d, 3, true);
        const int n = d == 1 ? 6 : 3;
        const GalerkinMatrix b = build_galerkin(p, u, n);
        for (std::size_t i = 0; i < b.size(); ++i) {
            for (std::size_t j = 0; j < b.size(); ++j) {
                const double ref = quadrature_entry(p, u, b.basis[i], b.basis[j]);
                CHECK(b.entries(i, j).lo() - 1e-9 <= ref);
                CHECK(ref <= b.entries(i, j).hi() + 1e-9);
            }
        }
    }
}

TEST_CASE("diagonal K_N") {
    for (auto [lambda, sigma] : {std::pair{10.0, 1.0}, std::pair{150.0, 6.0}}) {
        for (int n : {16, 32}) {
            const GalerkinMatrix b = build_galerkin(params(lambda, sigma, 0), PointSeries(1, 2), n);
            const double exact = diag_kn(n, lambda, sigma);
            const KnResult kn = kn_bound(b);
            CHECK(kn.KN >= exact);
            CHECK(kn.KN <= exact * 1.01);
        }
    }
}

TEST_CASE("K_N for random well-conditioned matrices") {
    Gen g(33);
    for (int t = 0; t < 10; ++t) {
        PointMatrix m(20, 20);
        for (int i = 0; i < 20; ++i)
            for (int j = 0; j < 20; ++j) m(i, j) = g.uniform(-0.2, 0.2) + (i == j ? 3.0 : 0.0);
        const double smin = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(19);
        const KnResult kn = kn_bound(IntervalMatrix(m));
        CHECK(kn.KN >= 1 / smin);
        CHECK(kn.KN <= 2.5 / smin);
        IntervalMatrix e = multiply(PointMatrix(Eigen::PartialPivLU<PointMatrix>(m).inverse()), IntervalMatrix(m));
        for (std::size_t i = 0; i < 20; ++i) e(i, i) -= Interval(1.0);
        CHECK(norm2_upper(e) < 1);
    }
    PointMatrix sing = PointMatrix::Zero(3, 3);
    CHECK_THROWS_AS(kn_bound(IntervalMatrix(sing)), CertificationError);
}

TEST_CASE("inverse bound on the trivial state") {
    const ModelParams p = params(150, 6, 0);
    const PointSeries u(1, 2);
    const InverseBound ib = inverse_bound(p, u, 128);
    const double kn = diag_kn(128, 150, 6);
    CHECK(ib.KN >= kn);
    CHECK(ib.KN <= kn * 1.01);
    CHECK(ib.qSup == doctest::Approx(150));
    const double pi2 = kPi * kPi, pi4 = pi2 * pi2;
    const double cb = table_constants(1).Cb;
    const double tau = std::sqrt(ib.KN * ib.KN * 150.0 * 150.0 + cb * cb * (1 + pi4) / pi4 * 150.0 * 150.0) /
                       (pi2 * 128 * 128);
    CHECK(ib.tau == doctest::Approx(tau).epsilon(1e-12));
    CHECK(ib.tau >= tau * (1 - 1e-15));
    CHECK(ib.K == doctest::Approx(std::max(ib.KN, 1.0) / (1 - ib.tau)));

    const InverseBound ib2 = inverse_bound(p, u, 64);
    CHECK(ib2.tau >= 3.9 * ib.tau);

    try {
        inverse_bound(p, u, 8);
        FAIL("expected failure");
    } catch (const CertificationError& e) {
        CHECK(e.stage() == Stage::inverse_bound);
        REQUIRE(e.suggested_n());
        CHECK(*e.suggested_n() > 8);
    }
}

TEST_CASE("tau transcription") {
    Gen g(34);
    for (int t = 0; t < 100; ++t) {
        const int d = g.integer(1, 3);
        const int n = g.integer(2, 200);
        const double kn = g.uniform(1, 50), qs = g.uniform(0, 500), qh = g.uniform(0, 1e5);
        const Interval pi2 = sqr(pi());
        const Interval pi4 = sqr(pi2);
        const Interval cb(table_constants(d).Cb);
        const Interval lit =
            Interval(1.0) / (pi2 * Interval(double(n) * n)) *
            sqrt(sqr(Interval(kn)) * sqr(Interval(qs)) + sqr(cb) * ((Interval(1.0) + pi4) / pi4) * sqr(Interval(qh)));
        const double t1 = tau_bound(d, n, kn, qs, qh);
        CHECK(t1 >= lit.lo());
        CHECK(t1 == doctest::Approx(lit.hi()).epsilon(1e-13));
    }
}

TEST_CASE("linearization outputs have zero mean") {
    Gen g(35);
    const ModelParams p = params(20, 3, 0.1);
    const PointSeries u = g.series(2, 4, true);
    const IntervalSeries v = to_interval(g.series(2, 4, true));
    const IntervalSeries lv = apply_linearization(p, to_interval(u), v);
    CHECK(lv[0] == Interval(0.0));
    CHECK(residual_series(p, to_interval(u))[0] == Interval(0.0));
}
