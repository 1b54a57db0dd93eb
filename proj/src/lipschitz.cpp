#include "okvalid/lipschitz.hpp"

#include <algorithm>
#include <cmath>

#include "okvalid/embeddings.hpp"
#include "okvalid/error.hpp"

namespace okvalid {

void ContinuationChoice::check() const {
    if (!(std::isfinite(dp) && dp > 0)) throw DomainError("parameter box radius must be positive");
    if (!(std::isfinite(du) && du > 0)) throw DomainError("function box radius must be positive");
}

namespace {

double range_max_at(const Polynomial& g, const Interval& lo_end, const Interval& width, int pieces,
                    const Interval& shift) {
    double best = 0;
    const Interval n(static_cast<double>(pieces));
    Interval left = lo_end;
    for (int j = 0; j < pieces; ++j) {
        const Interval right = lo_end + width * Interval(static_cast<double>(j + 1)) / n;
        const Interval piece(left.lo(), std::max(left.hi(), right.hi()));
        best = std::max(best, g(piece + shift).mag());
        left = right;
    }
    return best;
}

struct Common {
    EmbeddingConstants emb;
    Interval cmbar;
    Interval pi2;
    Interval pi4;
};

Common common(const PointSeries& u, const ContinuationChoice& c) {
    c.check();
    if (!u.zero_mean()) throw DomainError("Lipschitz bounds require a zero-mean u");
    Common k;
    k.emb = table_constants(u.dim());
    k.cmbar = Interval(k.emb.CmBar);
    k.pi2 = sqr(pi());
    k.pi4 = sqr(k.pi2);
    return k;
}

}  // namespace

double poly_range_max(const Polynomial& g, double R, double shift) {
    if (!(R >= 0) || !std::isfinite(R)) throw DomainError("range radius must be finite and non-negative");
    const Interval s(shift);
    if (R == 0) return g(s).mag();
    const Interval lo_end(-R);
    const Interval width = Interval(2.0) * Interval(R);
    double prev = range_max_at(g, lo_end, width, 1, s);
    double best = prev;
    for (int pieces = 2; pieces <= 4096; pieces *= 2) {
        const double cur = range_max_at(g, lo_end, width, pieces, s);
        best = std::min(best, cur);
        if (prev - cur <= 1e-3 * cur) break;
        prev = cur;
    }
    return best;
}

LipschitzBounds bounds_lambda(const ModelParams& p, const PointSeries& u, const ContinuationChoice& c) {
    if (c.which != Parameter::lambda) throw DomainError("bounds_lambda needs a lambda continuation");
    p.check();
    const Common k = common(u, c);
    const IntervalSeries ui = to_interval(u);
    const Interval radius = norm(ui, NormTag::sup()) + k.cmbar * Interval(c.du);
    const Polynomial f1 = p.f.derivative();
    const Polynomial f2 = f1.derivative();

    LipschitzBounds b;
    b.cmbar = k.emb.CmBar;
    b.radius = radius.hi();
    b.fmax1 = poly_range_max(f1, b.radius, p.mu);
    b.fmax2 = poly_range_max(f2, b.radius, p.mu);
    const Interval fprime_sup = norm(compose(f1, ui.with_mean(Interval(p.mu))), NormTag::sup());
    const Interval lam = Interval(std::fabs(p.lambda)) + Interval(c.dp);
    const Interval sig_term = Interval(p.sigma) / k.pi4;
    b.L1 = (k.cmbar * Interval(b.fmax2) * lam / k.pi2).hi();
    b.L2 = (Interval(fprime_sup.hi()) / k.pi2 + sig_term).hi();
    b.L3 = (Interval(b.fmax1) / k.pi2 + sig_term).hi();
    b.L4 = 0;
    return b;
}

LipschitzBounds bounds_sigma(const ModelParams& p, const PointSeries& u, const ContinuationChoice& c) {
    if (c.which != Parameter::sigma) throw DomainError("bounds_sigma needs a sigma continuation");
    p.check();
    const Common k = common(u, c);
    const Interval radius = norm(to_interval(u), NormTag::sup()) + k.cmbar * Interval(c.du);
    const Polynomial f2 = p.f.derivative().derivative();

    LipschitzBounds b;
    b.cmbar = k.emb.CmBar;
    b.radius = radius.hi();
    b.fmax2 = poly_range_max(f2, b.radius, p.mu);
    const Interval lam(p.lambda);
    b.L1 = (lam * Interval(b.fmax2) * k.cmbar / k.pi2).hi();
    b.L2 = (lam / k.pi4).hi();
    b.L3 = b.L2;
    b.L4 = 0;
    return b;
}

LipschitzBounds bounds_mu(const ModelParams& p, const PointSeries& u, const ContinuationChoice& c) {
    if (c.which != Parameter::mu) throw DomainError("bounds_mu needs a mu continuation");
    p.check();
    const Common k = common(u, c);
    const IntervalSeries shifted = to_interval(u).with_mean(Interval(p.mu));
    const Interval radius = norm(shifted, NormTag::sup()) + k.cmbar * Interval(c.du) + Interval(c.dp);
    const Polynomial f2 = p.f.derivative().derivative();

    LipschitzBounds b;
    b.cmbar = k.emb.CmBar;
    b.radius = radius.hi();
    b.fmax2 = poly_range_max(f2, b.radius, 0.0);
    const Interval lf = Interval(p.lambda) * Interval(b.fmax2);
    b.L1 = (lf * k.cmbar / k.pi2).hi();
    b.L2 = (lf / k.pi2).hi();
    b.L3 = b.L2;
    b.L4 = lf.hi();
    return b;
}

LipschitzBounds lipschitz_bounds(const ModelParams& p, const PointSeries& u, const ContinuationChoice& c) {
    switch (c.which) {
    case Parameter::lambda: return bounds_lambda(p, u, c);
    case Parameter::sigma: return bounds_sigma(p, u, c);
    case Parameter::mu: return bounds_mu(p, u, c);
    }
    throw DomainError("unknown continuation parameter");
}

}  // namespace okvalid
