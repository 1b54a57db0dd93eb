#pragma once

// Lipschitz constants L1..L4 for single-parameter continuation:
//   ||D_uF(p,u) - D_uF(p*,u*)|| <= L1 ||u - u*|| + L2 |p - p*|
//   ||D_pF(p,u) - D_pF(p*,u*)|| <= L3 ||u - u*|| + L4 |p - p*|
// for |p - p*| <= dp and ||u - u*||_{Hbar^2} <= du.

#include "okvalid/operator.hpp"

namespace okvalid {

struct ContinuationChoice {
    Parameter which = Parameter::lambda;
    double dp = 0;  // parameter box radius (ell_alpha)
    double du = 0;  // function box radius in Hbar^2 (ell_x)

    void check() const;
};

struct LipschitzBounds {
    double L1 = 0;
    double L2 = 0;
    double L3 = 0;
    double L4 = 0;
    double fmax1 = 0;   // max |f'| over the range (lambda only)
    double fmax2 = 0;   // max |f''| over the range
    double radius = 0;  // range radius |rho| <= radius used for fmax
    double cmbar = 0;
};

// Upper bound of max_{|r| <= R} |g(r + shift)| by interval evaluation on
// uniform subdivisions, refined until the relative improvement drops below
// 1e-3 or 4096 pieces are used.
double poly_range_max(const Polynomial& g, double R, double shift = 0);

LipschitzBounds bounds_lambda(const ModelParams& p, const PointSeries& u, const ContinuationChoice& c);
LipschitzBounds bounds_sigma(const ModelParams& p, const PointSeries& u, const ContinuationChoice& c);
LipschitzBounds bounds_mu(const ModelParams& p, const PointSeries& u, const ContinuationChoice& c);

// Dispatches on c.which.
LipschitzBounds lipschitz_bounds(const ModelParams& p, const PointSeries& u, const ContinuationChoice& c);

}  // namespace okvalid
