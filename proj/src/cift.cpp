#include "okvalid/cift.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace okvalid {

namespace {

struct Trial {
    bool ok = false;
    bool xfail = false;
    double dx = 0;
};

struct Consts {
    Interval twoK;
    Interval rho, L1, L2, L3, L4;
    double ellX = 0;
};

Trial trial(const Consts& c, double da) {
    const Interval a(da);
    const Interval g = c.twoK * (c.rho + c.L3 * a + c.L4 * sqr(a));
    Trial t;
    t.dx = g.hi();
    if (t.dx > c.ellX) {
        t.xfail = true;
        return t;
    }
    const Interval lin = c.twoK * (c.L1 * Interval(t.dx) + c.L2 * a);
    t.ok = lin.hi() <= 1.0;
    return t;
}

void check_nonneg(double v, const char* name) {
    if (!(std::isfinite(v) && v >= 0)) {
        throw CertificationError(Stage::radii, std::string(name) + " must be finite and non-negative");
    }
}

}  // namespace

Radii solve_radii(double K, double rho, double L1, double L2, double L3, double L4, double ellX,
                  double ellAlpha) {
    check_nonneg(K, "K");
    check_nonneg(rho, "rho");
    check_nonneg(L1, "L1");
    check_nonneg(L2, "L2");
    check_nonneg(L3, "L3");
    check_nonneg(L4, "L4");
    check_nonneg(ellX, "ell_x");
    check_nonneg(ellAlpha, "ell_alpha");
    const Consts c{Interval(2.0) * Interval(K), Interval(rho), Interval(L1), Interval(L2),
                   Interval(L3), Interval(L4), ellX};
    const Interval Ki(K);
    if (!((Interval(4.0) * sqr(Ki) * c.rho * c.L1).hi() < 1.0)) {
        throw CertificationError(Stage::radii, "4 K^2 rho L1 < 1 does not hold");
    }
    if (!((c.twoK * c.rho).hi() < ellX)) {
        throw CertificationError(Stage::radii, "2 K rho < ell_x does not hold");
    }
    if (!trial(c, 0.0).ok) {
        throw CertificationError(Stage::radii, "no feasible radius at delta_alpha = 0");
    }

    Radii r;
    double lo = 0;
    if (trial(c, ellAlpha).ok) {
        lo = ellAlpha;
        r.capped = true;
    } else {
        double hi = ellAlpha;
        for (int it = 0; it < 200; ++it) {
            if (it >= 50 && hi - lo <= 1e-8 * lo) break;
            const double m = lo + (hi - lo) / 2;
            if (m <= lo || m >= hi) break;
            if (trial(c, m).ok) {
                lo = m;
            } else {
                hi = m;
            }
        }
        r.bracket = hi;
        r.xBound = trial(c, hi).xfail;
    }
    r.deltaAlpha = lo;
    r.deltaX = trial(c, lo).dx;
    if (L1 == 0) {
        r.uniquenessX = ellX;
    } else {
        const Interval h = (Interval(1.0) - c.twoK * c.L2 * Interval(lo)) / (c.twoK * c.L1);
        r.uniquenessX = std::min(ellX, h.lo());
    }
    return r;
}

bool radii_feasible(double K, double rho, double L1, double L2, double L3, double L4, double ellX,
                    double ellAlpha, double deltaAlpha, double deltaX) {
    if (!(deltaAlpha >= 0 && deltaAlpha <= ellAlpha && deltaX >= 0 && deltaX <= ellX)) return false;
    const Interval twoK = Interval(2.0) * Interval(K);
    const Interval a(deltaAlpha);
    const Interval x(deltaX);
    const Interval lin = twoK * (Interval(L1) * x + Interval(L2) * a);
    const Interval quad = twoK * (Interval(rho) + Interval(L3) * a + Interval(L4) * sqr(a));
    return lin.hi() <= 1.0 && quad.hi() <= deltaX;
}

Certificate validate_with_bound(const ModelParams& p, const PointSeries& u, Parameter which,
                                const InverseBound& inv, double rho, const ValidateOptions& opts) {
    Certificate cert;
    cert.params = p;
    cert.which = which;
    cert.dim = u.dim();
    cert.N = inv.N;
    cert.rho = rho;
    cert.KN = inv.KN;
    cert.tau = inv.tau;
    cert.K = inv.K;
    cert.defect = inv.defect;
    cert.qSup = inv.qSup;
    cert.qH2 = inv.qH2;

    double ellX = opts.du.value_or(0.1 * std::max(1.0, norm(u, NormTag::hbar(2))));
    double ellA = opts.dp.value_or(0.05 * std::max(1.0, std::fabs(get(p, which))));
    const int rounds = std::max(1, opts.maxBoxRounds);
    bool have = false;
    Certificate best = cert;
    std::string last_error;
    for (int round = 0; round < rounds; ++round) {
        const LipschitzBounds L = lipschitz_bounds(p, u, ContinuationChoice{which, ellA, ellX});
        Radii r;
        try {
            r = solve_radii(inv.K, rho, L.L1, L.L2, L.L3, L.L4, ellX, ellA);
        } catch (const CertificationError& e) {
            last_error = e.what();
            const bool x_too_small = !((Interval(2.0) * Interval(inv.K) * Interval(rho)).hi() < ellX);
            if (x_too_small && !have) {
                ellX *= 4;
                continue;
            }
            break;
        }
        Certificate c = cert;
        c.L1 = L.L1;
        c.L2 = L.L2;
        c.L3 = L.L3;
        c.L4 = L.L4;
        c.cmbar = L.cmbar;
        c.ellX = ellX;
        c.ellAlpha = ellA;
        c.deltaAlpha = r.deltaAlpha;
        c.deltaX = r.deltaX;
        c.uniquenessX = r.uniquenessX;
        c.bracket = r.bracket;
        c.boxRounds = round + 1;
        if (!have || c.deltaAlpha > best.deltaAlpha) {
            best = c;
            have = true;
        }
        if (r.capped) {
            ellA *= 4;
        } else if (r.xBound) {
            ellX *= 2;
        } else {
            break;
        }
    }
    if (!have) {
        cert.stage = Stage::radii;
        cert.message = last_error.empty() ? "radius inequalities not satisfiable" : last_error;
        cert.valid = false;
        return cert;
    }
    best.valid = true;
    best.stage = Stage::ok;
    best.pointOnly = best.deltaAlpha == 0;
    best.message = best.pointOnly ? "point validation only (delta_alpha = 0)" : "valid";
    return best;
}

Certificate validate(const ModelParams& p, const PointSeries& u, Parameter which,
                     const ValidateOptions& opts) {
    p.check();
    if (!u.zero_mean()) throw DomainError("validate requires a zero-mean solution");
    for (double c : u.coeffs()) {
        if (!std::isfinite(c)) throw DomainError("solution coefficients must be finite");
    }
    Certificate cert;
    cert.params = p;
    cert.which = which;
    cert.dim = u.dim();
    Stage stage = Stage::residual;
    try {
        const double rho = residual(p, u).hi();
        cert.rho = rho;
        if (!std::isfinite(rho)) throw CertificationError(Stage::residual, "residual bound is not finite");

        stage = Stage::inverse_bound;
        const QSeries q = q_series(p, u);
        InverseBound inv;
        if (opts.N) {
            cert.N = *opts.N;
            inv = inverse_bound(p, q, *opts.N);
        } else {
            const int ceiling = opts.nCeiling.value_or(truncation_ceiling(u.dim()));
            int n = std::clamp(suggested_truncation(q), 2, ceiling);
            while (true) {
                cert.N = n;
                try {
                    inv = inverse_bound(p, q, n);
                    if (inv.tau <= opts.tauTarget || n >= ceiling) break;
                    n = std::min(2 * n, ceiling);
                } catch (const CertificationError& e) {
                    if (n >= ceiling) throw;
                    n = std::min(std::max(2 * n, e.suggested_n().value_or(2 * n)), ceiling);
                }
            }
        }
        stage = Stage::lipschitz;
        return validate_with_bound(p, u, which, inv, rho, opts);
    } catch (const CertificationError& e) {
        cert.stage = e.stage();
        cert.message = e.what();
        cert.suggestedN = e.suggested_n();
    } catch (const DomainError& e) {
        cert.stage = stage;
        cert.message = e.what();
    }
    cert.valid = false;
    return cert;
}

CheckReport verify_certificate(const Certificate& c) {
    CheckReport rep;
    auto fail = [&](const std::string& what) { rep.failures.push_back(what); };
    if (!c.valid) {
        fail("certificate is marked invalid (stage " + std::string(to_string(c.stage)) + ")");
        return rep;
    }
    const double vals[] = {c.rho, c.KN, c.tau, c.K, c.qSup, c.qH2, c.L1, c.L2, c.L3, c.L4,
                           c.ellX, c.ellAlpha, c.deltaAlpha, c.deltaX};
    for (double v : vals) {
        if (!(std::isfinite(v) && v >= 0)) {
            fail("stored constants must be finite and non-negative");
            return rep;
        }
    }
    if (c.N < 2) fail("N must be at least 2");
    if (c.dim < 1 || c.dim > 3) {
        fail("dimension must be 1, 2 or 3");
        return rep;
    }

    const Interval K(c.K), rho(c.rho), L1(c.L1), L2(c.L2), L3(c.L3), L4(c.L4);
    const Interval twoK = Interval(2.0) * K;
    const Interval da(c.deltaAlpha), dx(c.deltaX);

    if (!(c.tau < 1)) fail("tau < 1");
    if (c.tau < 1) {
        if (tau_bound(c.dim, c.N, c.KN, c.qSup, c.qH2) > c.tau) fail("tau bound from K_N, q");
        const Interval kk = Interval(std::max(c.KN, 1.0)) / (Interval(1.0) - Interval(c.tau));
        if (kk.hi() > c.K) fail("K >= max(K_N, 1)/(1 - tau)");
    }
    if (!((Interval(4.0) * sqr(K) * rho * L1).hi() < 1)) fail("4 K^2 rho L1 < 1");
    if (!((twoK * rho).hi() < c.ellX)) fail("2 K rho < ell_x");
    if (!((twoK * (L1 * dx + L2 * da)).hi() <= 1)) fail("2 K L1 delta_x + 2 K L2 delta_alpha <= 1");
    if (!((twoK * (rho + L3 * da + L4 * sqr(da))).hi() <= c.deltaX)) {
        fail("2 K rho + 2 K L3 delta_alpha + 2 K L4 delta_alpha^2 <= delta_x");
    }
    if (!(c.deltaAlpha <= c.ellAlpha)) fail("delta_alpha <= ell_alpha");
    if (!(c.deltaX <= c.ellX)) fail("delta_x <= ell_x");
    rep.ok = rep.failures.empty();
    return rep;
}

}  // namespace okvalid
