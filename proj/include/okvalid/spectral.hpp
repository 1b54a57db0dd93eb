#pragma once

// Cosine series on the unit cube (0,1)^d, d = 1, 2, 3.
//
// A function is stored by its coefficients alpha_k in the orthonormal
// Neumann basis phi_k(x) = c_k prod_i cos(k_i pi x_i), c_0 = 1, c_l = sqrt(2).
// Coefficients live in a dense row-major array over 0 <= k_i < extent_i,
// which is also the lexicographic order on multi-indices.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "okvalid/interval.hpp"

namespace okvalid {

inline constexpr int kMaxDim = 3;

struct MultiIndex {
    int dim = 1;
    std::array<int, kMaxDim> k{0, 0, 0};

    // |k|^2
    long long norm_sq() const noexcept {
        long long s = 0;
        for (int i = 0; i < dim; ++i) s += static_cast<long long>(k[i]) * k[i];
        return s;
    }
    // |k|_inf
    int norm_inf() const noexcept {
        int m = 0;
        for (int i = 0; i < dim; ++i) m = std::max(m, k[i]);
        return m;
    }
    bool is_zero() const noexcept { return norm_sq() == 0; }
    int nonzero_count() const noexcept {
        int c = 0;
        for (int i = 0; i < dim; ++i) c += k[i] != 0;
        return c;
    }

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

MultiIndex make_index(std::initializer_list<int> k);

// Laplacian eigenvalue pi^2 |k|^2 of phi_k.
Interval kappa(const MultiIndex& k);
double kappa_point(const MultiIndex& k);

// ||phi_k||_inf = c_k.
Interval phi_sup(const MultiIndex& k);

// Norm selector.
enum class Space {
    hbar,  // zero-mean space with (sum kappa^l alpha^2)^(1/2), l in -2..4
    h,     // (sum (1 + kappa^l) alpha^2)^(1/2), l in 0..4; l = 0 is L2
    l2,
    sup,   // upper bound sum |alpha_k| c_k of the sup norm
};

struct NormTag {
    Space space = Space::l2;
    int ell = 0;

    static NormTag hbar(int ell) { return {Space::hbar, ell}; }
    static NormTag h(int ell) { return {Space::h, ell}; }
    static NormTag l2() { return {Space::l2, 0}; }
    static NormTag sup() { return {Space::sup, 0}; }
};

template <typename T>
class Series {
public:
    using value_type = T;

    Series() = default;
    // Zero series with the given per-axis extents (unused axes get extent 1).
    Series(int dim, std::array<int, kMaxDim> extent);
    Series(int dim, int extent);

    static Series constant(int dim, T value);

    int dim() const noexcept { return dim_; }
    const std::array<int, kMaxDim>& extent() const noexcept { return extent_; }
    int extent(int axis) const noexcept { return extent_[axis]; }
    std::size_t size() const noexcept { return coeffs_.size(); }

    // True when the mean coefficient is zero (element of the H-bar spaces).
    bool zero_mean() const;

    std::span<const T> coeffs() const noexcept { return coeffs_; }
    std::span<T> coeffs() noexcept { return coeffs_; }

    const T& operator[](std::size_t flat) const { return coeffs_[flat]; }
    T& operator[](std::size_t flat) { return coeffs_[flat]; }

    // Coefficient of phi_k; zero outside the stored block.
    T coeff(const MultiIndex& k) const;
    T& at(const MultiIndex& k);
    bool in_range(const MultiIndex& k) const noexcept;

    std::size_t flat_index(const MultiIndex& k) const noexcept;
    MultiIndex index_of(std::size_t flat) const noexcept;

    // Copy with the mean coefficient set to zero.
    Series without_mean() const;
    // Copy with the mean coefficient replaced.
    Series with_mean(T value) const;
    // Copy resized to new extents (truncating or zero-padding).
    Series resized(std::array<int, kMaxDim> extent) const;

    Series& operator+=(const Series& other);
    Series& operator-=(const Series& other);
    Series& operator*=(const T& s);

    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator*(Series a, const T& s) { return a *= s; }
    friend Series operator*(const T& s, Series a) { return a *= s; }

private:
    void check_dim(int dim) const;

    int dim_ = 1;
    std::array<int, kMaxDim> extent_{1, 1, 1};
    std::vector<T> coeffs_;
};

using IntervalSeries = Series<Interval>;
using PointSeries = Series<double>;

// Exact interval copy of a point series.
IntervalSeries to_interval(const PointSeries& u);
// Midpoints of an interval series.
PointSeries to_point(const IntervalSeries& u);

// Norms. For interval series the result encloses the exact norm (for Space::sup
// it encloses the l1 bound). HbarL with any ell requires zero mean only when
// ell < 0; for ell >= 0 the mean mode is simply ignored.
Interval norm(const IntervalSeries& u, NormTag tag);
double norm(const PointSeries& u, NormTag tag);

// Laplacian power Delta^p for p in {-2, -1, 1, 2}: alpha_k -> (-kappa_k)^p alpha_k.
// Inverse powers require zero mean; positive powers annihilate the mean mode.
IntervalSeries laplacian(const IntervalSeries& u, int power);
PointSeries laplacian(const PointSeries& u, int power);

// P_N u: modes with |k|_inf < N. tail = u - P_N u.
template <typename T>
Series<T> project(const Series<T>& u, int n);
template <typename T>
Series<T> tail(const Series<T>& u, int n);

// Exact product of two cosine series; the output extent per axis is the sum of
// the input extents minus one.
IntervalSeries multiply(const IntervalSeries& u, const IntervalSeries& v);
PointSeries multiply(const PointSeries& u, const PointSeries& v);

// Pointwise value at x in [0,1]^d. Non-rigorous.
double evaluate(const PointSeries& u, std::span<const double> x);
double evaluate(const IntervalSeries& u, std::span<const double> x);

// 1-d weight of phi_c in phi_a * phi_b, i.e. the L2 product (phi_a phi_b, phi_c)
// on (0,1). Nonzero only for c = a + b or c = |a - b|.
Interval triple_weight(int a, int b, int c);
double triple_weight_point(int a, int b, int c);

}  // namespace okvalid
