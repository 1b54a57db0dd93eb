#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "okvalid/interval.hpp"

namespace okvalid {

using PointMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Dense row-major matrix of intervals.
class IntervalMatrix {
public:
    IntervalMatrix() = default;
    IntervalMatrix(std::size_t rows, std::size_t cols);
    explicit IntervalMatrix(const PointMatrix& m);

    static IntervalMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Interval& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Interval& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Interval> entries() const noexcept { return data_; }
    std::span<Interval> entries() noexcept { return data_; }

    // Floating midpoints, and radii such that every entry lies in mid +- rad.
    PointMatrix mid() const;
    PointMatrix rad() const;
    // Entrywise max |x|.
    PointMatrix mag() const;

    bool is_point() const;

    friend IntervalMatrix operator+(const IntervalMatrix& a, const IntervalMatrix& b);
    friend IntervalMatrix operator-(const IntervalMatrix& a, const IntervalMatrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Interval> data_;
};

// Enclosure of {A*B : A in a, B in b}. Midpoint-radius evaluation: one
// floating product of the midpoints plus a priori rounding-error bounds, so
// the cost is a few plain matrix products. Throws DomainError on dimension
// mismatch.
IntervalMatrix multiply(const IntervalMatrix& a, const IntervalMatrix& b);
IntervalMatrix multiply(const PointMatrix& a, const IntervalMatrix& b);
IntervalMatrix multiply(const PointMatrix& a, const PointMatrix& b);

// Textbook entrywise interval product; slower and usually wider, kept as an
// independent route for cross-checks.
IntervalMatrix multiply_entrywise(const IntervalMatrix& a, const IntervalMatrix& b);

enum class NormRefinement {
    never,   // sqrt(|A|_1 |A|_inf) only
    automatic,  // refine when the cheap bound exceeds a floating estimate by 10%
    always,
};

double norm1_upper(const IntervalMatrix& a);
double norminf_upper(const IntervalMatrix& a);

// Upper bound u with ||M||_2 <= u for every real M in a.
double norm2_upper(const IntervalMatrix& a, NormRefinement mode = NormRefinement::automatic);

// Rigorous bound on the largest singular value of a point matrix through a
// verified Gershgorin test on a congruence of M^T M. Returns +inf when the
// verification does not succeed.
double spectral_norm_upper(const PointMatrix& m);

// Non-rigorous largest singular value estimate (power iteration).
double spectral_norm_estimate(const PointMatrix& m, int iterations = 200);

}  // namespace okvalid
