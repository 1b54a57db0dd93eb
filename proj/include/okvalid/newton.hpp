#pragma once

// Floating-point Galerkin Newton iteration for approximate equilibria, and
// natural-parameter stepping along a branch. Nothing here is rigorous; the
// output is a candidate for validation.

#include <string>
#include <utility>
#include <vector>

#include "okvalid/operator.hpp"

namespace okvalid {

struct SolveOptions {
    int N = 64;                 // unknowns are the modes 0 < |k|_inf < N
    int maxIter = 60;
    double tolResidual = 1e-11; // on ||P_N F(u)||_{Hbar^-2}
    double damping = 1.0;       // initial step fraction
};

struct SolveResult {
    PointSeries u;
    int iterations = 0;
    double residual = 0;       // projected residual, floating
    double fullResidual = 0;   // residual of all modes of F(u), floating
};

// Initial guesses:
//   zero                      u = 0
//   mode:K[,A]                u = A phi_K, K = k1[xk2[xk3]], A defaults to 0.2
//   file:PATH                 coefficients of a solution file
PointSeries parse_seed(const std::string& seed, int dim, int n);

// Throws SolverError when the iteration fails to reach tolResidual.
SolveResult newton_solve(const ModelParams& p, const PointSeries& u0, const SolveOptions& opts);

// Floating ||F(p, u)||_{Hbar^-2} over all modes.
double float_residual(const ModelParams& p, const PointSeries& u);

// Steps parameter `which` by `step`, `count` times, warm-starting each solve
// from the previous one. Stops early at the first Newton failure; the first
// entry is the solve at p0.
std::vector<std::pair<ModelParams, SolveResult>> parameter_walk(
    const ModelParams& p0, const PointSeries& u0, Parameter which, double step, int count,
    const SolveOptions& opts);

}  // namespace okvalid
