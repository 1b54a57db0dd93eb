#include "okvalid/spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace okvalid {

MultiIndex make_index(std::initializer_list<int> k) {
    if (k.size() == 0 || k.size() > kMaxDim) {
        throw DomainError("multi-index dimension must be 1, 2 or 3");
    }
    MultiIndex m;
    m.dim = static_cast<int>(k.size());
    int i = 0;
    for (int v : k) {
        if (v < 0) throw DomainError("multi-index entries must be non-negative");
        m.k[i++] = v;
    }
    return m;
}

namespace {

const Interval& pi_squared() {
    static const Interval value = sqr(pi());
    return value;
}

Interval kappa_of(long long norm_sq) {
    return Interval(static_cast<double>(norm_sq)) * pi_squared();
}

double c_point(int nonzero) {
    double c = 1;
    for (int i = 0; i < nonzero; ++i) c *= std::numbers::sqrt2;
    return c;
}

Interval c_interval(int nonzero) {
    switch (nonzero) {
    case 0: return Interval(1.0);
    case 1: return sqrt2();
    case 2: return Interval(2.0);
    default: return Interval(2.0) * sqrt2();
    }
}

template <typename T>
T c_factor(int nonzero);
template <>
double c_factor<double>(int nonzero) { return c_point(nonzero); }
template <>
Interval c_factor<Interval>(int nonzero) { return c_interval(nonzero); }

template <typename T>
T kappa_t(long long norm_sq);
template <>
double kappa_t<double>(long long norm_sq) {
    return std::numbers::pi * std::numbers::pi * static_cast<double>(norm_sq);
}
template <>
Interval kappa_t<Interval>(long long norm_sq) { return kappa_of(norm_sq); }

template <typename T>
T half_sqrt2();
template <>
double half_sqrt2<double>() { return 1.0 / std::numbers::sqrt2; }
template <>
Interval half_sqrt2<Interval>() { return inv_sqrt2(); }

template <typename T>
T t_sqrt(const T& x);
template <>
double t_sqrt<double>(const double& x) { return std::sqrt(x); }
template <>
Interval t_sqrt<Interval>(const Interval& x) {
    // Squares summed in interval arithmetic stay non-negative.
    return sqrt(Interval(std::max(0.0, x.lo()), x.hi()));
}

template <typename T>
T t_abs(const T& x);
template <>
double t_abs<double>(const double& x) { return std::fabs(x); }
template <>
Interval t_abs<Interval>(const Interval& x) { return abs(x); }

template <typename T>
T int_pow(const T& x, int n) {
    T r(1.0);
    if (n >= 0) {
        for (int i = 0; i < n; ++i) r = r * x;
        return r;
    }
    for (int i = 0; i < -n; ++i) r = r * x;
    return T(1.0) / r;
}

}  // namespace

Interval kappa(const MultiIndex& k) { return kappa_of(k.norm_sq()); }

double kappa_point(const MultiIndex& k) { return kappa_t<double>(k.norm_sq()); }

Interval phi_sup(const MultiIndex& k) { return c_interval(k.nonzero_count()); }

// --- Series -------------------------------------------------------------

template <typename T>
Series<T>::Series(int dim, std::array<int, kMaxDim> extent) : dim_(dim), extent_(extent) {
    check_dim(dim);
    std::size_t n = 1;
    for (int i = 0; i < kMaxDim; ++i) {
        if (i >= dim) extent_[i] = 1;
        if (extent_[i] < 1) throw DomainError("series extent must be positive");
        n *= static_cast<std::size_t>(extent_[i]);
    }
    coeffs_.assign(n, T(0.0));
}

template <typename T>
Series<T>::Series(int dim, int extent) : Series(dim, {extent, extent, extent}) {}

template <typename T>
Series<T> Series<T>::constant(int dim, T value) {
    Series s(dim, 1);
    s.coeffs_[0] = value;
    return s;
}

template <typename T>
void Series<T>::check_dim(int dim) const {
    if (dim < 1 || dim > kMaxDim) {
        throw DomainError("series dimension must be 1, 2 or 3, got " + std::to_string(dim));
    }
}

template <typename T>
bool Series<T>::zero_mean() const {
    return lower(coeffs_[0]) == 0 && upper(coeffs_[0]) == 0;
}

template <typename T>
bool Series<T>::in_range(const MultiIndex& k) const noexcept {
    for (int i = 0; i < dim_; ++i) {
        if (k.k[i] < 0 || k.k[i] >= extent_[i]) return false;
    }
    return true;
}

template <typename T>
std::size_t Series<T>::flat_index(const MultiIndex& k) const noexcept {
    std::size_t idx = 0;
    for (int i = 0; i < dim_; ++i) idx = idx * static_cast<std::size_t>(extent_[i]) + k.k[i];
    return idx;
}

template <typename T>
MultiIndex Series<T>::index_of(std::size_t flat) const noexcept {
    MultiIndex m;
    m.dim = dim_;
    for (int i = dim_ - 1; i >= 0; --i) {
        m.k[i] = static_cast<int>(flat % static_cast<std::size_t>(extent_[i]));
        flat /= static_cast<std::size_t>(extent_[i]);
    }
    return m;
}

template <typename T>
T Series<T>::coeff(const MultiIndex& k) const {
    if (k.dim != dim_) throw DomainError("multi-index dimension does not match series");
    return in_range(k) ? coeffs_[flat_index(k)] : T(0.0);
}

template <typename T>
T& Series<T>::at(const MultiIndex& k) {
    if (k.dim != dim_ || !in_range(k)) throw DomainError("multi-index outside series extent");
    return coeffs_[flat_index(k)];
}

template <typename T>
Series<T> Series<T>::without_mean() const {
    return with_mean(T(0.0));
}

template <typename T>
Series<T> Series<T>::with_mean(T value) const {
    Series r = *this;
    r.coeffs_[0] = value;
    return r;
}

template <typename T>
Series<T> Series<T>::resized(std::array<int, kMaxDim> extent) const {
    Series r(dim_, extent);
    for (std::size_t f = 0; f < coeffs_.size(); ++f) {
        const MultiIndex k = index_of(f);
        if (r.in_range(k)) r.coeffs_[r.flat_index(k)] = coeffs_[f];
    }
    return r;
}

template <typename T>
Series<T>& Series<T>::operator+=(const Series& other) {
    if (other.dim_ != dim_) throw DomainError("series dimension mismatch");
    if (other.extent_ != extent_) {
        std::array<int, kMaxDim> e{};
        for (int i = 0; i < kMaxDim; ++i) e[i] = std::max(extent_[i], other.extent_[i]);
        if (e != extent_) *this = resized(e);
        for (std::size_t f = 0; f < other.coeffs_.size(); ++f) {
            coeffs_[flat_index(other.index_of(f))] += other.coeffs_[f];
        }
        return *this;
    }
    for (std::size_t f = 0; f < coeffs_.size(); ++f) coeffs_[f] += other.coeffs_[f];
    return *this;
}

template <typename T>
Series<T>& Series<T>::operator-=(const Series& other) {
    Series neg = other;
    for (auto& c : neg.coeffs_) c = -c;
    return *this += neg;
}

template <typename T>
Series<T>& Series<T>::operator*=(const T& s) {
    for (auto& c : coeffs_) c = c * s;
    return *this;
}

template class Series<double>;
template class Series<Interval>;

IntervalSeries to_interval(const PointSeries& u) {
    IntervalSeries r(u.dim(), u.extent());
    for (std::size_t f = 0; f < u.size(); ++f) r[f] = Interval(u[f]);
    return r;
}

PointSeries to_point(const IntervalSeries& u) {
    PointSeries r(u.dim(), u.extent());
    for (std::size_t f = 0; f < u.size(); ++f) r[f] = u[f].mid();
    return r;
}

// --- norms --------------------------------------------------------------

namespace {

template <typename T>
T norm_impl(const Series<T>& u, NormTag tag) {
    T sum(0.0);
    switch (tag.space) {
    case Space::l2:
        for (std::size_t f = 0; f < u.size(); ++f) sum += square(u[f]);
        return t_sqrt(sum);
    case Space::sup:
        for (std::size_t f = 0; f < u.size(); ++f) {
            sum += t_abs(u[f]) * c_factor<T>(u.index_of(f).nonzero_count());
        }
        return sum;
    case Space::h:
        if (tag.ell < 0 || tag.ell > 4) throw DomainError("H norm order must lie in 0..4");
        if (tag.ell == 0) return norm_impl(u, NormTag::l2());
        for (std::size_t f = 0; f < u.size(); ++f) {
            const long long n2 = u.index_of(f).norm_sq();
            const T weight = n2 == 0 ? T(1.0) : T(1.0) + int_pow(kappa_t<T>(n2), tag.ell);
            sum += weight * square(u[f]);
        }
        return t_sqrt(sum);
    case Space::hbar:
        if (tag.ell < -2 || tag.ell > 4) throw DomainError("H-bar norm order must lie in -2..4");
        if (tag.ell < 0 && !u.zero_mean()) {
            throw DomainError("H-bar norm of negative order requires a zero-mean series");
        }
        for (std::size_t f = 1; f < u.size(); ++f) {
            const long long n2 = u.index_of(f).norm_sq();
            sum += int_pow(kappa_t<T>(n2), tag.ell) * square(u[f]);
        }
        return t_sqrt(sum);
    }
    return sum;
}

template <typename T>
Series<T> laplacian_impl(const Series<T>& u, int power) {
    if (power != -2 && power != -1 && power != 1 && power != 2) {
        throw DomainError("laplacian power must be one of -2, -1, 1, 2");
    }
    if (power < 0 && !u.zero_mean()) {
        throw DomainError("inverse Laplacian requires a zero-mean series");
    }
    Series<T> r = u;
    r[0] = T(0.0);
    for (std::size_t f = 1; f < u.size(); ++f) {
        const T mk = -kappa_t<T>(u.index_of(f).norm_sq());
        r[f] = u[f] * int_pow(mk, power);
    }
    return r;
}

// Per-axis targets of phi_a * phi_b: (index, uses 1/sqrt2 weight).
struct AxisTargets {
    int count = 0;
    int index[2]{};
    bool half[2]{};
};

AxisTargets axis_targets(int a, int b) {
    AxisTargets t;
    if (a == 0 || b == 0) {
        t.count = 1;
        t.index[0] = a + b;
        t.half[0] = false;
    } else if (a == b) {
        t.count = 2;
        t.index[0] = 2 * a;
        t.half[0] = true;
        t.index[1] = 0;
        t.half[1] = false;
    } else {
        t.count = 2;
        t.index[0] = a + b;
        t.half[0] = true;
        t.index[1] = a > b ? a - b : b - a;
        t.half[1] = true;
    }
    return t;
}

template <typename T>
Series<T> multiply_impl(const Series<T>& u, const Series<T>& v) {
    if (u.dim() != v.dim()) throw DomainError("multiply: series dimension mismatch");
    const int d = u.dim();
    std::array<int, kMaxDim> ext{1, 1, 1};
    for (int i = 0; i < d; ++i) ext[i] = u.extent(i) + v.extent(i) - 1;
    Series<T> r(d, ext);

    std::array<T, kMaxDim + 1> hpow;
    hpow[0] = T(1.0);
    for (int j = 1; j <= kMaxDim; ++j) hpow[j] = hpow[j - 1] * half_sqrt2<T>();

    std::vector<MultiIndex> vidx(v.size());
    for (std::size_t g = 0; g < v.size(); ++g) vidx[g] = v.index_of(g);

    std::array<AxisTargets, kMaxDim> axes;
    for (std::size_t f = 0; f < u.size(); ++f) {
        const T& a = u[f];
        if (lower(a) == 0 && upper(a) == 0) continue;
        const MultiIndex ka = u.index_of(f);
        for (std::size_t g = 0; g < v.size(); ++g) {
            const T& b = v[g];
            if (lower(b) == 0 && upper(b) == 0) continue;
            const MultiIndex& kb = vidx[g];
            int combos = 1;
            for (int i = 0; i < d; ++i) {
                axes[i] = axis_targets(ka.k[i], kb.k[i]);
                combos *= axes[i].count;
            }
            const T ab = a * b;
            std::array<T, kMaxDim + 1> scaled;
            std::array<bool, kMaxDim + 1> have{};
            for (int c = 0; c < combos; ++c) {
                int rem = c;
                std::size_t flat = 0;
                int halves = 0;
                for (int i = 0; i < d; ++i) {
                    const AxisTargets& t = axes[i];
                    const int pick = rem % t.count;
                    rem /= t.count;
                    flat = flat * static_cast<std::size_t>(ext[i]) + t.index[pick];
                    halves += t.half[pick];
                }
                if (!have[halves]) {
                    scaled[halves] = ab * hpow[halves];
                    have[halves] = true;
                }
                r[flat] += scaled[halves];
            }
        }
    }
    return r;
}

template <typename T>
double evaluate_impl(const Series<T>& u, std::span<const double> x) {
    if (static_cast<int>(x.size()) != u.dim()) {
        throw DomainError("evaluate: point dimension does not match series");
    }
    std::array<std::vector<double>, kMaxDim> cosines;
    for (int i = 0; i < u.dim(); ++i) {
        cosines[i].resize(static_cast<std::size_t>(u.extent(i)));
        for (int k = 0; k < u.extent(i); ++k) {
            cosines[i][k] = (k == 0 ? 1.0 : std::numbers::sqrt2) *
                            std::cos(static_cast<double>(k) * std::numbers::pi * x[i]);
        }
    }
    double s = 0;
    for (std::size_t f = 0; f < u.size(); ++f) {
        const MultiIndex k = u.index_of(f);
        double term = midpoint(u[f]);
        for (int i = 0; i < u.dim(); ++i) term *= cosines[i][k.k[i]];
        s += term;
    }
    return s;
}

}  // namespace

Interval norm(const IntervalSeries& u, NormTag tag) { return norm_impl(u, tag); }
double norm(const PointSeries& u, NormTag tag) { return norm_impl(u, tag); }

IntervalSeries laplacian(const IntervalSeries& u, int power) { return laplacian_impl(u, power); }
PointSeries laplacian(const PointSeries& u, int power) { return laplacian_impl(u, power); }

template <typename T>
Series<T> project(const Series<T>& u, int n) {
    if (n < 1) throw DomainError("projection order must be at least 1");
    Series<T> r = u;
    for (std::size_t f = 0; f < u.size(); ++f) {
        if (u.index_of(f).norm_inf() >= n) r[f] = T(0.0);
    }
    return r;
}

template <typename T>
Series<T> tail(const Series<T>& u, int n) {
    if (n < 1) throw DomainError("projection order must be at least 1");
    Series<T> r = u;
    for (std::size_t f = 0; f < u.size(); ++f) {
        if (u.index_of(f).norm_inf() < n) r[f] = T(0.0);
    }
    return r;
}

template Series<double> project(const Series<double>&, int);
template Series<Interval> project(const Series<Interval>&, int);
template Series<double> tail(const Series<double>&, int);
template Series<Interval> tail(const Series<Interval>&, int);

IntervalSeries multiply(const IntervalSeries& u, const IntervalSeries& v) {
    return multiply_impl(u, v);
}
PointSeries multiply(const PointSeries& u, const PointSeries& v) { return multiply_impl(u, v); }

double evaluate(const PointSeries& u, std::span<const double> x) { return evaluate_impl(u, x); }
double evaluate(const IntervalSeries& u, std::span<const double> x) {
    return evaluate_impl(u, x);
}

namespace {

template <typename T>
T triple_weight_impl(int a, int b, int c) {
    if (a < 0 || b < 0 || c < 0) return T(0.0);
    // integral of cos(a)cos(b)cos(c) over (0,1) is 1/4 times the number of
    // sign choices with a +- b +- c = 0.
    int hits = 0;
    for (int sb : {1, -1}) {
        for (int sc : {1, -1}) hits += (a + sb * b + sc * c) == 0;
    }
    if (hits == 0) return T(0.0);
    const int nonzero = (a != 0) + (b != 0) + (c != 0);
    return c_factor<T>(nonzero) * T(static_cast<double>(hits) / 4.0);
}

}  // namespace

Interval triple_weight(int a, int b, int c) { return triple_weight_impl<Interval>(a, b, c); }
double triple_weight_point(int a, int b, int c) { return triple_weight_impl<double>(a, b, c); }

}  // namespace okvalid
