#pragma once

// The Ohta-Kawasaki operator
//   F(lambda, sigma, mu, u) = -Lap(Lap u + lambda f(u + mu)) - lambda sigma u
// on zero-mean cosine series, its linearization
//   L v = -Lap(Lap v + q v) - lambda sigma v,   q = lambda f'(u + mu),
// and the rigorous bound K >= ||L^-1|| from Hbar^-2 to Hbar^2.

#include <string_view>
#include <vector>

#include "okvalid/interval_matrix.hpp"
#include "okvalid/polynomial.hpp"
#include "okvalid/spectral.hpp"

namespace okvalid {

struct ModelParams {
    double lambda = 1;
    double sigma = 0;
    double mu = 0;
    Polynomial f = Polynomial::cubic();

    // Throws DomainError for lambda <= 0, sigma < 0, non-finite values or deg f < 1.
    void check() const;

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

enum class Parameter { lambda, sigma, mu };

std::string_view to_string(Parameter which);
Parameter parameter_from_string(std::string_view name);
double get(const ModelParams& p, Parameter which);
ModelParams with(const ModelParams& p, Parameter which, double value);

// f(w) by Horner's rule with exact series products.
IntervalSeries compose(const Polynomial& f, const IntervalSeries& w);
PointSeries compose(const Polynomial& f, const PointSeries& w);

// Coefficients of F(p, u); the mean coefficient is zero.
IntervalSeries residual_series(const ModelParams& p, const IntervalSeries& u);
PointSeries residual_series(const ModelParams& p, const PointSeries& u);

// rho: enclosure of ||F(p, u)||_{Hbar^-2}. Requires a zero-mean u.
Interval residual(const ModelParams& p, const IntervalSeries& u);
Interval residual(const ModelParams& p, const PointSeries& u);

struct QSeries {
    IntervalSeries q;
    double sup = 0;  // upper bound of ||q||_inf (l1 bound)
    double h2 = 0;   // upper bound of ||q||_{H^2}
};

QSeries q_series(const ModelParams& p, const IntervalSeries& u);
QSeries q_series(const ModelParams& p, const PointSeries& u);

// Exact enclosure of L v for zero-mean v.
IntervalSeries apply_linearization(const ModelParams& p, const IntervalSeries& u,
                                   const IntervalSeries& v);

// Canonical ordering of {k : 0 < |k|_inf < N}: lexicographic, so the row of
// k is its row-major index in an N^d block minus one.
std::vector<MultiIndex> galerkin_basis(int dim, int n);

struct GalerkinMatrix {
    int N = 0;
    int dim = 1;
    std::vector<MultiIndex> basis;
    IntervalMatrix entries;  // btilde_{k,l} in basis order

    std::size_t size() const noexcept { return basis.size(); }
};

// btilde_{k,l} = -(1 + lambda sigma / kappa_k^2) delta_{k,l} + (q phi_l, phi_k) / kappa_l.
GalerkinMatrix build_galerkin(const ModelParams& p, const IntervalSeries& q, int n);
GalerkinMatrix build_galerkin(const ModelParams& p, const PointSeries& u, int n);

// Floating version for Newton's method (same entries, point arithmetic).
PointMatrix build_galerkin_point(const ModelParams& p, const PointSeries& q, int n);

struct KnResult {
    double KN = 0;      // upper bound of ||Btilde^-1||_2
    double normC = 0;   // upper bound of ||C||_2, C the approximate inverse
    double defect = 0;  // upper bound of ||C Btilde - I||_2
};

// Neumann-series bound through a floating approximate inverse. Throws
// CertificationError(Stage::inverse_bound) when the defect is not below 1.
KnResult kn_bound(const IntervalMatrix& b);
KnResult kn_bound(const GalerkinMatrix& b);

struct InverseBound {
    double KN = 0;
    double tau = 0;
    double K = 0;
    int N = 0;
    double qSup = 0;
    double qH2 = 0;
    double defect = 0;
};

// tau = (1/(pi^2 N^2)) sqrt(KN^2 qSup^2 + Cb^2 (1 + pi^4)/pi^4 qH2^2),
// upper bound. Kept separate so it can be checked on its own.
double tau_bound(int dim, int n, double kn, double q_sup, double q_h2);

// K = max(KN, 1)/(1 - tau) at truncation N. Throws CertificationError with a
// suggested N when tau >= 1.
InverseBound inverse_bound(const ModelParams& p, const PointSeries& u, int n);
InverseBound inverse_bound(const ModelParams& p, const QSeries& q, int n);

// Rule-of-thumb starting truncation ceil(||q||_{H^2}^(1/2)), at least 2.
int suggested_truncation(const QSeries& q);

// Default truncation ceilings for automatic selection.
int truncation_ceiling(int dim);

}  // namespace okvalid
