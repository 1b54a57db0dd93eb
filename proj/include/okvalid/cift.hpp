#pragma once

// Existence and uniqueness radii from the constructive implicit function
// theorem, and the full validation pipeline producing a Certificate.

#include <optional>
#include <string>
#include <vector>

#include "okvalid/error.hpp"
#include "okvalid/lipschitz.hpp"
#include "okvalid/operator.hpp"

namespace okvalid {

inline constexpr const char* kToolVersion = "okvalid 1.0.0";
inline constexpr const char* kBasisOrdering = "lexicographic";

struct Radii {
    double deltaAlpha = 0;
    double deltaX = 0;       // accuracy radius 2K rho + 2K L3 da + 2K L4 da^2, rounded up
    double uniquenessX = 0;  // min(ell_x, (1 - 2K L2 da)/(2K L1)), rounded down
    double bracket = 0;      // smallest tested infeasible delta_alpha, 0 if capped
    bool capped = false;     // delta_alpha = ell_alpha
    bool xBound = false;     // at the bracket, delta_x > ell_x was the failing condition
};

// Largest feasible delta_alpha in [0, ell_alpha] by bisection, every test done
// in interval arithmetic. Throws CertificationError(Stage::radii) when
// 4 K^2 rho L1 < 1 or 2 K rho < ell_x cannot be confirmed.
Radii solve_radii(double K, double rho, double L1, double L2, double L3, double L4, double ellX,
                  double ellAlpha);

// True when (deltaAlpha, deltaX) satisfies both radius inequalities and the
// box constraints with outward rounding.
bool radii_feasible(double K, double rho, double L1, double L2, double L3, double L4, double ellX,
                    double ellAlpha, double deltaAlpha, double deltaX);

struct Certificate {
    ModelParams params;
    Parameter which = Parameter::lambda;
    int dim = 1;
    int N = 0;
    double rho = 0;
    double KN = 0;
    double tau = 0;
    double K = 0;
    double defect = 0;
    double qSup = 0;
    double qH2 = 0;
    double L1 = 0, L2 = 0, L3 = 0, L4 = 0;
    double cmbar = 0;
    double ellX = 0;
    double ellAlpha = 0;
    double deltaAlpha = 0;
    double deltaX = 0;
    double uniquenessX = 0;
    double bracket = 0;
    bool valid = false;
    bool pointOnly = false;  // delta_alpha = 0
    Stage stage = Stage::ok;
    std::string message;
    std::optional<int> suggestedN;
    int boxRounds = 0;
    std::string provenance = kToolVersion;
    std::string basisOrdering = kBasisOrdering;
    std::string solutionHash;
};

struct ValidateOptions {
    std::optional<int> N;      // fixed truncation; automatic selection when empty
    std::optional<double> du;  // initial ell_x
    std::optional<double> dp;  // initial ell_alpha
    int maxBoxRounds = 5;
    double tauTarget = 0.5;    // automatic N stops once tau <= tauTarget
    std::optional<int> nCeiling;
};

// residual -> inverse bound -> Lipschitz constants -> radii. Failures in a
// stage produce an invalid certificate tagged with that stage. Throws
// DomainError for malformed input (nonzero mean, bad parameters).
Certificate validate(const ModelParams& p, const PointSeries& u, Parameter which,
                     const ValidateOptions& opts = {});

// Validates with a precomputed inverse bound (used by sweeps).
Certificate validate_with_bound(const ModelParams& p, const PointSeries& u, Parameter which,
                                const InverseBound& inv, double rho, const ValidateOptions& opts);

struct CheckReport {
    bool ok = false;
    std::vector<std::string> failures;
};

// Replays every inequality of a valid certificate from its stored fields in
// interval arithmetic.
CheckReport verify_certificate(const Certificate& c);

}  // namespace okvalid
