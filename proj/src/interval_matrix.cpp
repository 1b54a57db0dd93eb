#include "okvalid/interval_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "okvalid/parallel.hpp"

namespace okvalid {

using namespace rounding;

IntervalMatrix::IntervalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntervalMatrix::IntervalMatrix(const PointMatrix& m)
    : rows_(static_cast<std::size_t>(m.rows())), cols_(static_cast<std::size_t>(m.cols())) {
    data_.assign(m.data(), m.data() + m.size());
}

IntervalMatrix IntervalMatrix::identity(std::size_t n) {
    IntervalMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i) r(i, i) = 1.0;
    return r;
}

PointMatrix IntervalMatrix::mid() const {
    PointMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data()[i] = data_[i].mid();
    return m;
}

PointMatrix IntervalMatrix::rad() const {
    PointMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data()[i] = data_[i].rad();
    return m;
}

PointMatrix IntervalMatrix::mag() const {
    PointMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data()[i] = data_[i].mag();
    return m;
}

bool IntervalMatrix::is_point() const {
    return std::all_of(data_.begin(), data_.end(), [](const Interval& x) { return x.is_point(); });
}

IntervalMatrix operator+(const IntervalMatrix& a, const IntervalMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
        throw DomainError("IntervalMatrix addition: dimension mismatch");
    }
    IntervalMatrix r(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] + b.data_[i];
    return r;
}

IntervalMatrix operator-(const IntervalMatrix& a, const IntervalMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
        throw DomainError("IntervalMatrix subtraction: dimension mismatch");
    }
    IntervalMatrix r(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] - b.data_[i];
    return r;
}

namespace {

// Core of the midpoint-radius product. Radii may be null for point operands.
//
// For a length-n dot product evaluated in floating point,
//   |fl(x.y) - x.y| <= gamma_n |x|.|y| + n * eta,
// gamma_n = n u / (1 - n u), eta the smallest subnormal. The same bound
// controls how far the computed |A||B| and the radius product can fall below
// their exact values, so the total is bounded by
//   g f^2 S + f T + c,   g = gamma_{2n+2}, f = 1 / (1 - g),
// with S = fl(|Am||Bm|), T = fl(|Am| Br + Ar (|Bm| + Br)) and c an underflow
// allowance; every step of this final combination is rounded upward.
IntervalMatrix midrad_product(std::size_t m, std::size_t n, std::size_t p, const double* am,
                              const double* ar, const double* bm, const double* br) {
    constexpr double u = 0x1p-53;
    const double k = static_cast<double>(2 * n + 2);
    const Interval ku = Interval(k) * u;
    const Interval gamma = ku / (Interval(1.0) - ku);
    const Interval factor = Interval(1.0) / (Interval(1.0) - gamma);
    const double g_f2 = (gamma * factor * factor).hi();
    const double f = factor.hi();
    const double eta = std::numeric_limits<double>::denorm_min();
    const double underflow = mul_up(8.0 * static_cast<double>(n + 1), eta);

    // |Bm| + Br rounded up.
    std::vector<double> bu;
    if (ar != nullptr) {
        bu.resize(n * p);
        for (std::size_t i = 0; i < n * p; ++i) {
            bu[i] = add_up(std::fabs(bm[i]), br != nullptr ? br[i] : 0.0);
        }
    }

    IntervalMatrix out(m, p);
    parallel_for(m, [&](std::size_t i) {
        std::vector<double> mid(p, 0.0), absm(p, 0.0), radius(p, 0.0);
        for (std::size_t kk = 0; kk < n; ++kk) {
            const double a = am[i * n + kk];
            const double aa = std::fabs(a);
            const double* brow = bm + kk * p;
            for (std::size_t j = 0; j < p; ++j) {
                mid[j] += a * brow[j];
                absm[j] += aa * std::fabs(brow[j]);
            }
            if (br != nullptr) {
                const double* rrow = br + kk * p;
                for (std::size_t j = 0; j < p; ++j) radius[j] += aa * rrow[j];
            }
            if (ar != nullptr) {
                const double r = ar[i * n + kk];
                if (r != 0) {
                    const double* urow = bu.data() + kk * p;
                    for (std::size_t j = 0; j < p; ++j) radius[j] += r * urow[j];
                }
            }
        }
        for (std::size_t j = 0; j < p; ++j) {
            double rad = add_up(mul_up(g_f2, absm[j]), underflow);
            if (radius[j] != 0) rad = add_up(rad, mul_up(f, radius[j]));
            out(i, j) = Interval(sub_down(mid[j], rad), add_up(mid[j], rad));
        }
    });
    return out;
}

void require_inner(std::size_t acols, std::size_t brows) {
    if (acols != brows) {
        throw DomainError("matrix product: inner dimensions do not match");
    }
}

}  // namespace

IntervalMatrix multiply(const IntervalMatrix& a, const IntervalMatrix& b) {
    require_inner(a.cols(), b.rows());
    const PointMatrix am = a.mid();
    const PointMatrix bm = b.mid();
    const bool a_point = a.is_point();
    const bool b_point = b.is_point();
    PointMatrix ar, br;
    if (!a_point) ar = a.rad();
    if (!b_point) br = b.rad();
    return midrad_product(a.rows(), a.cols(), b.cols(), am.data(), a_point ? nullptr : ar.data(),
                          bm.data(), b_point ? nullptr : br.data());
}

IntervalMatrix multiply(const PointMatrix& a, const IntervalMatrix& b) {
    require_inner(static_cast<std::size_t>(a.cols()), b.rows());
    const PointMatrix bm = b.mid();
    const bool b_point = b.is_point();
    PointMatrix br;
    if (!b_point) br = b.rad();
    return midrad_product(static_cast<std::size_t>(a.rows()), b.rows(), b.cols(), a.data(),
                          nullptr, bm.data(), b_point ? nullptr : br.data());
}

IntervalMatrix multiply(const PointMatrix& a, const PointMatrix& b) {
    require_inner(static_cast<std::size_t>(a.cols()), static_cast<std::size_t>(b.rows()));
    return midrad_product(static_cast<std::size_t>(a.rows()), static_cast<std::size_t>(a.cols()),
                          static_cast<std::size_t>(b.cols()), a.data(), nullptr, b.data(),
                          nullptr);
}

IntervalMatrix multiply_entrywise(const IntervalMatrix& a, const IntervalMatrix& b) {
    require_inner(a.cols(), b.rows());
    IntervalMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Interval s(0.0);
            for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
            out(i, j) = s;
        }
    }
    return out;
}

double norm1_upper(const IntervalMatrix& a) {
    double best = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        double s = 0;
        for (std::size_t i = 0; i < a.rows(); ++i) s = add_up(s, a(i, j).mag());
        best = std::max(best, s);
    }
    return best;
}

double norminf_upper(const IntervalMatrix& a) {
    double best = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0;
        for (std::size_t j = 0; j < a.cols(); ++j) s = add_up(s, a(i, j).mag());
        best = std::max(best, s);
    }
    return best;
}

namespace {

double cheap_norm2(const IntervalMatrix& a) {
    return sqrt_up(mul_up(norm1_upper(a), norminf_upper(a)));
}

}  // namespace

double spectral_norm_estimate(const PointMatrix& m, int iterations) {
    if (m.size() == 0) return 0;
    Eigen::VectorXd x = Eigen::VectorXd::Ones(m.cols());
    // Deterministic perturbation avoids starting orthogonal to the top singular vector.
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> dist(0.5, 1.5);
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = dist(rng);
    double sigma = 0;
    for (int it = 0; it < iterations; ++it) {
        const double nx = x.norm();
        if (nx == 0) return 0;
        x /= nx;
        Eigen::VectorXd y = m * x;
        sigma = y.norm();
        x = m.transpose() * y;
    }
    return sigma;
}

double spectral_norm_upper(const PointMatrix& m) {
    const auto n = static_cast<std::size_t>(m.cols());
    if (m.size() == 0) return 0;
    const IntervalMatrix gram = multiply(PointMatrix(m.transpose()), m);
    const PointMatrix gram_mid = gram.mid();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram_mid);
    if (eig.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
    const double lmax = eig.eigenvalues().maxCoeff();
    if (lmax <= 0) {
        // Gram matrix numerically zero: fall back to the Frobenius bound.
        double s = 0;
        for (Eigen::Index i = 0; i < m.size(); ++i) s = add_up(s, mul_up(m.data()[i], m.data()[i]));
        return sqrt_up(s);
    }
    const PointMatrix v = eig.eigenvectors();

    // V must be nonsingular for the congruence to preserve definiteness.
    IntervalMatrix vtv = multiply(PointMatrix(v.transpose()), v);
    for (std::size_t i = 0; i < n; ++i) vtv(i, i) -= 1.0;
    if (norminf_upper(vtv) >= 1.0) return std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) vtv(i, i) += 1.0;

    const IntervalMatrix av = multiply(gram, IntervalMatrix(v));
    const IntervalMatrix vtav = multiply(PointMatrix(v.transpose()), av);

    // s I - M^T M is positive definite iff V^T (s I - M^T M) V = s V^T V - V^T M^T M V
    // is; the latter is checked by Gershgorin with strict diagonal dominance.
    for (double margin : {1e-14, 1e-12, 1e-10, 1e-8, 1e-6, 1e-4, 1e-2}) {
        const double s = mul_up(lmax, add_up(1.0, margin));
        bool dominant = true;
        for (std::size_t i = 0; i < n && dominant; ++i) {
            const Interval gii = Interval(s) * vtv(i, i) - vtav(i, i);
            double off = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                off = add_up(off, (Interval(s) * vtv(i, j) - vtav(i, j)).mag());
            }
            dominant = gii.lo() > off;
        }
        if (dominant) return sqrt_up(s);
    }
    return std::numeric_limits<double>::infinity();
}

double norm2_upper(const IntervalMatrix& a, NormRefinement mode) {
    const double cheap = cheap_norm2(a);
    if (mode == NormRefinement::never || cheap == 0 || a.rows() == 0) return cheap;
    const PointMatrix mid = a.mid();
    if (mode == NormRefinement::automatic) {
        const double estimate = spectral_norm_estimate(mid);
        if (cheap <= 1.1 * estimate) return cheap;
    }
    double refined = spectral_norm_upper(mid);
    if (!a.is_point()) {
        // ||M|| <= ||mid|| + || |M - mid| ||, and |M - mid| <= rad entrywise.
        refined = add_up(refined, cheap_norm2(IntervalMatrix(a.rad())));
    }
    return std::min(cheap, refined);
}

}  // namespace okvalid
