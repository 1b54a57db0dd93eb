#include "okvalid/operator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "okvalid/embeddings.hpp"
#include "okvalid/error.hpp"
#include "okvalid/parallel.hpp"

namespace okvalid {

void ModelParams::check() const {
    if (!std::isfinite(lambda) || !std::isfinite(sigma) || !std::isfinite(mu)) {
        throw DomainError("model parameters must be finite");
    }
    if (lambda <= 0) throw DomainError("lambda must be positive");
    if (sigma < 0) throw DomainError("sigma must be non-negative");
    if (f.degree() < 1) throw DomainError("nonlinearity must have degree at least 1");
    for (double c : f.coeffs()) {
        if (!std::isfinite(c)) throw DomainError("nonlinearity coefficients must be finite");
    }
}

std::string_view to_string(Parameter which) {
    switch (which) {
    case Parameter::lambda: return "lambda";
    case Parameter::sigma: return "sigma";
    case Parameter::mu: return "mu";
    }
    return "lambda";
}

Parameter parameter_from_string(std::string_view name) {
    if (name == "lambda") return Parameter::lambda;
    if (name == "sigma") return Parameter::sigma;
    if (name == "mu") return Parameter::mu;
    throw DomainError("unknown parameter '" + std::string(name) + "' (expected lambda, sigma or mu)");
}

double get(const ModelParams& p, Parameter which) {
    switch (which) {
    case Parameter::lambda: return p.lambda;
    case Parameter::sigma: return p.sigma;
    case Parameter::mu: return p.mu;
    }
    return p.lambda;
}

ModelParams with(const ModelParams& p, Parameter which, double value) {
    ModelParams r = p;
    switch (which) {
    case Parameter::lambda: r.lambda = value; break;
    case Parameter::sigma: r.sigma = value; break;
    case Parameter::mu: r.mu = value; break;
    }
    return r;
}

namespace {

template <typename T>
Series<T> compose_impl(const Polynomial& f, const Series<T>& w) {
    const auto& c = f.coeffs();
    Series<T> r = Series<T>::constant(w.dim(), T(c.back()));
    for (int i = f.degree() - 1; i >= 0; --i) {
        r = multiply(r, w);
        r[0] += T(c[i]);
    }
    return r;
}

template <typename T>
T kappa_of(const MultiIndex& k);
template <>
double kappa_of<double>(const MultiIndex& k) { return kappa_point(k); }
template <>
Interval kappa_of<Interval>(const MultiIndex& k) { return kappa(k); }

void require_zero_mean(bool zero_mean, const char* what) {
    if (!zero_mean) throw DomainError(std::string(what) + " requires a zero-mean series");
}

template <typename T>
Series<T> residual_impl(const ModelParams& p, const Series<T>& u) {
    require_zero_mean(u.zero_mean(), "residual");
    const T lambda(p.lambda);
    const T ls = T(p.lambda) * T(p.sigma);
    const Series<T> g = compose_impl(p.f, u.with_mean(T(p.mu)));
    std::array<int, kMaxDim> ext{1, 1, 1};
    for (int i = 0; i < u.dim(); ++i) ext[i] = std::max(u.extent(i), g.extent(i));
    Series<T> r(u.dim(), ext);
    for (std::size_t f = 1; f < r.size(); ++f) {
        const MultiIndex k = r.index_of(f);
        const T kap = kappa_of<T>(k);
        const T a = u.coeff(k);
        r[f] = kap * (lambda * g.coeff(k) - kap * a) - ls * a;
    }
    return r;
}

QSeries q_impl(const ModelParams& p, const IntervalSeries& u) {
    QSeries out;
    out.q = compose_impl(p.f.derivative(), u.with_mean(Interval(p.mu)));
    out.q *= Interval(p.lambda);
    out.sup = norm(out.q, NormTag::sup()).hi();
    out.h2 = norm(out.q, NormTag::h(2)).hi();
    return out;
}

// Per-axis product table: phi_m phi_l has a phi_k component for at most two m.
template <typename T>
struct AxisEntry {
    int count = 0;
    int m[2]{};
    T w[2]{};
};

template <typename T>
T weight(int a, int b, int c);
template <>
double weight<double>(int a, int b, int c) { return triple_weight_point(a, b, c); }
template <>
Interval weight<Interval>(int a, int b, int c) { return triple_weight(a, b, c); }

template <typename T>
std::vector<AxisEntry<T>> axis_table(int n) {
    std::vector<AxisEntry<T>> t(static_cast<std::size_t>(n) * n);
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            AxisEntry<T>& e = t[static_cast<std::size_t>(k) * n + l];
            const int sum = k + l;
            const int diff = k > l ? k - l : l - k;
            e.m[e.count] = sum;
            e.w[e.count++] = weight<T>(sum, l, k);
            if (diff != sum) {
                e.m[e.count] = diff;
                e.w[e.count++] = weight<T>(diff, l, k);
            }
        }
    }
    return t;
}

template <typename T, typename Store>
void assemble(const ModelParams& p, const Series<T>& q, int n,
              const std::vector<MultiIndex>& basis, Store&& store) {
    const int d = q.dim();
    const auto table = axis_table<T>(n);
    const T ls = T(p.lambda) * T(p.sigma);
    std::vector<T> kap(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) kap[i] = kappa_of<T>(basis[i]);

    parallel_for(basis.size(), [&](std::size_t row) {
        const MultiIndex& k = basis[row];
        for (std::size_t col = 0; col < basis.size(); ++col) {
            const MultiIndex& l = basis[col];
            const AxisEntry<T>* ax[kMaxDim];
            int combos = 1;
            for (int i = 0; i < d; ++i) {
                ax[i] = &table[static_cast<std::size_t>(k.k[i]) * n + l.k[i]];
                combos *= ax[i]->count;
            }
            T inner(0.0);
            for (int c = 0; c < combos; ++c) {
                int rem = c;
                MultiIndex m;
                m.dim = d;
                T w(1.0);
                for (int i = 0; i < d; ++i) {
                    const int pick = rem % ax[i]->count;
                    rem /= ax[i]->count;
                    m.k[i] = ax[i]->m[pick];
                    w = w * ax[i]->w[pick];
                }
                if (!q.in_range(m)) continue;
                inner += q.coeff(m) * w;
            }
            T entry = inner / kap[col];
            if (row == col) entry -= T(1.0) + ls / (kap[row] * kap[row]);
            store(row, col, entry);
        }
    });
}

}  // namespace

IntervalSeries compose(const Polynomial& f, const IntervalSeries& w) { return compose_impl(f, w); }
PointSeries compose(const Polynomial& f, const PointSeries& w) { return compose_impl(f, w); }

IntervalSeries residual_series(const ModelParams& p, const IntervalSeries& u) {
    return residual_impl(p, u);
}
PointSeries residual_series(const ModelParams& p, const PointSeries& u) {
    return residual_impl(p, u);
}

Interval residual(const ModelParams& p, const IntervalSeries& u) {
    return norm(residual_series(p, u), NormTag::hbar(-2));
}
Interval residual(const ModelParams& p, const PointSeries& u) {
    return residual(p, to_interval(u));
}

QSeries q_series(const ModelParams& p, const IntervalSeries& u) { return q_impl(p, u); }
QSeries q_series(const ModelParams& p, const PointSeries& u) { return q_impl(p, to_interval(u)); }

IntervalSeries apply_linearization(const ModelParams& p, const IntervalSeries& u,
                                   const IntervalSeries& v) {
    require_zero_mean(v.zero_mean(), "linearization");
    const QSeries q = q_series(p, u);
    const IntervalSeries qv = multiply(q.q, v);
    const Interval ls = Interval(p.lambda) * Interval(p.sigma);
    IntervalSeries r(v.dim(), qv.extent());
    for (std::size_t f = 1; f < r.size(); ++f) {
        const MultiIndex k = r.index_of(f);
        const Interval kap = kappa(k);
        const Interval a = v.coeff(k);
        r[f] = kap * (qv.coeff(k) - kap * a) - ls * a;
    }
    return r;
}

std::vector<MultiIndex> galerkin_basis(int dim, int n) {
    if (dim < 1 || dim > kMaxDim) throw DomainError("dimension must be 1, 2 or 3");
    if (n < 2) throw DomainError("Galerkin truncation must be at least 2");
    const PointSeries shape(dim, n);
    std::vector<MultiIndex> basis;
    basis.reserve(shape.size() - 1);
    for (std::size_t f = 1; f < shape.size(); ++f) basis.push_back(shape.index_of(f));
    return basis;
}

GalerkinMatrix build_galerkin(const ModelParams& p, const IntervalSeries& q, int n) {
    GalerkinMatrix g;
    g.N = n;
    g.dim = q.dim();
    g.basis = galerkin_basis(q.dim(), n);
    g.entries = IntervalMatrix(g.basis.size(), g.basis.size());
    assemble(p, q, n, g.basis,
             [&](std::size_t r, std::size_t c, const Interval& v) { g.entries(r, c) = v; });
    return g;
}

GalerkinMatrix build_galerkin(const ModelParams& p, const PointSeries& u, int n) {
    return build_galerkin(p, q_series(p, u).q, n);
}

PointMatrix build_galerkin_point(const ModelParams& p, const PointSeries& q, int n) {
    const auto basis = galerkin_basis(q.dim(), n);
    PointMatrix m(basis.size(), basis.size());
    assemble(p, q, n, basis, [&](std::size_t r, std::size_t c, double v) {
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
    });
    return m;
}

KnResult kn_bound(const IntervalMatrix& b) {
    const PointMatrix mid = b.mid();
    Eigen::PartialPivLU<PointMatrix> lu(mid);
    const PointMatrix c = lu.inverse();
    if (!c.allFinite()) {
        throw CertificationError(Stage::inverse_bound, "finite inverse not certified: matrix is singular");
    }
    IntervalMatrix e = multiply(c, b);
    for (std::size_t i = 0; i < e.rows(); ++i) e(i, i) -= Interval(1.0);
    KnResult r;
    r.defect = norm2_upper(e);
    if (!(r.defect < 1)) {
        throw CertificationError(Stage::inverse_bound,
                                 "finite inverse not certified: ||C B - I|| bound is " +
                                     std::to_string(r.defect));
    }
    r.normC = norm2_upper(IntervalMatrix(c));
    r.KN = (Interval(r.normC) / (Interval(1.0) - Interval(r.defect))).hi();
    return r;
}

KnResult kn_bound(const GalerkinMatrix& b) { return kn_bound(b.entries); }

double tau_bound(int dim, int n, double kn, double q_sup, double q_h2) {
    const Interval pi2 = sqr(pi());
    const Interval pi4 = sqr(pi2);
    const Interval cb(table_constants(dim).Cb);
    const Interval nn(static_cast<double>(n));
    const Interval a = Interval(kn) * Interval(q_sup);
    const Interval b = cb * sqrt((Interval(1.0) + pi4) / pi4) * Interval(q_h2);
    return (sqrt(sqr(a) + sqr(b)) / (pi2 * sqr(nn))).hi();
}

int suggested_truncation(const QSeries& q) {
    return std::max(2, static_cast<int>(std::ceil(std::sqrt(q.h2))));
}

int truncation_ceiling(int dim) {
    switch (dim) {
    case 1: return 256;
    case 2: return 96;
    default: return 32;
    }
}

InverseBound inverse_bound(const ModelParams& p, const QSeries& q, int n) {
    const GalerkinMatrix g = build_galerkin(p, q.q, n);
    const KnResult kn = kn_bound(g);
    InverseBound r;
    r.N = n;
    r.KN = kn.KN;
    r.defect = kn.defect;
    r.qSup = q.sup;
    r.qH2 = q.h2;
    r.tau = tau_bound(q.q.dim(), n, kn.KN, q.sup, q.h2);
    if (!(r.tau < 1)) {
        // tau scales like N^-2 for fixed K_N.
        const int grow = static_cast<int>(std::ceil(n * std::sqrt(r.tau / 0.5)));
        const int suggestion = std::max({n + 1, grow, suggested_truncation(q)});
        throw CertificationError(Stage::inverse_bound,
                                 "tau = " + std::to_string(r.tau) + " >= 1 at N = " +
                                     std::to_string(n) + "; increase N",
                                 suggestion);
    }
    r.K = (Interval(std::max(r.KN, 1.0)) / (Interval(1.0) - Interval(r.tau))).hi();
    return r;
}

InverseBound inverse_bound(const ModelParams& p, const PointSeries& u, int n) {
    return inverse_bound(p, q_series(p, u), n);
}

}  // namespace okvalid
