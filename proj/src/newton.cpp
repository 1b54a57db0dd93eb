#include "okvalid/newton.hpp"

#include <charconv>
#include <cmath>
#include <string_view>

#include "okvalid/error.hpp"
#include "okvalid/io.hpp"

namespace okvalid {

namespace {

int parse_int(std::string_view s, const std::string& seed) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v < 0) {
        throw DomainError("bad seed '" + seed + "'");
    }
    return v;
}

double parse_double(std::string_view s, const std::string& seed) {
    double v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw DomainError("bad seed amplitude in '" + seed + "'");
    }
    return v;
}

// Scaled projected residual y_k = F_k / kappa_k on the Galerkin basis.
Eigen::VectorXd scaled_residual(const ModelParams& p, const PointSeries& u,
                                const std::vector<MultiIndex>& basis) {
    const PointSeries f = residual_series(p, u);
    Eigen::VectorXd y(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
        y(static_cast<Eigen::Index>(i)) = f.coeff(basis[i]) / kappa_point(basis[i]);
    }
    return y;
}

}  // namespace

PointSeries parse_seed(const std::string& seed, int dim, int n) {
    if (n < 2) throw DomainError("truncation must be at least 2");
    PointSeries u(dim, n);
    if (seed == "zero") return u;
    if (seed.rfind("file:", 0) == 0) {
        const SolutionFile s = read_solution(seed.substr(5));
        if (s.u.dim() != dim) throw DomainError("seed file dimension does not match --dim");
        std::array<int, kMaxDim> ext{1, 1, 1};
        for (int i = 0; i < dim; ++i) ext[i] = n;
        return s.u.resized(ext);
    }
    if (seed.rfind("mode:", 0) != 0) throw DomainError("bad seed '" + seed + "'");
    std::string_view body(seed);
    body.remove_prefix(5);
    double amp = 0.2;
    if (const auto comma = body.find(','); comma != std::string_view::npos) {
        amp = parse_double(body.substr(comma + 1), seed);
        body = body.substr(0, comma);
    }
    MultiIndex k;
    k.dim = dim;
    int axis = 0;
    while (true) {
        const auto x = body.find('x');
        if (axis >= dim) throw DomainError("seed mode has more entries than dimensions");
        k.k[axis++] = parse_int(body.substr(0, x), seed);
        if (x == std::string_view::npos) break;
        body.remove_prefix(x + 1);
    }
    if (k.is_zero()) throw DomainError("seed mode must not be the mean mode");
    if (!u.in_range(k)) throw DomainError("seed mode lies outside the truncation");
    u.at(k) = amp;
    return u;
}

double float_residual(const ModelParams& p, const PointSeries& u) {
    return norm(residual_series(p, u), NormTag::hbar(-2));
}

SolveResult newton_solve(const ModelParams& p, const PointSeries& u0, const SolveOptions& opts) {
    p.check();
    if (!(opts.tolResidual > 0)) throw DomainError("tolResidual must be positive");
    if (!(opts.damping > 0 && opts.damping <= 1)) throw DomainError("damping must lie in (0, 1]");
    if (!u0.zero_mean()) throw DomainError("Newton initial guess must have zero mean");
    const int n = opts.N;
    const auto basis = galerkin_basis(u0.dim(), n);
    std::array<int, kMaxDim> ext{1, 1, 1};
    for (int i = 0; i < u0.dim(); ++i) ext[i] = n;
    PointSeries u = u0.resized(ext);

    const Polynomial fp = p.f.derivative();
    Eigen::VectorXd y = scaled_residual(p, u, basis);
    double res = y.norm();
    SolveResult out;
    for (int it = 0; it <= opts.maxIter; ++it) {
        if (!std::isfinite(res)) throw SolverError("Newton iteration diverged");
        if (res <= opts.tolResidual) {
            out.u = u;
            out.iterations = it;
            out.residual = res;
            out.fullResidual = float_residual(p, u);
            return out;
        }
        if (it == opts.maxIter) break;
        PointSeries q = compose(fp, u.with_mean(p.mu));
        q *= p.lambda;
        const PointMatrix b = build_galerkin_point(p, q, n);
        Eigen::PartialPivLU<PointMatrix> lu(b);
        const Eigen::VectorXd dx = lu.solve(-y);
        if (!dx.allFinite()) throw SolverError("singular Jacobian in Newton iteration");

        // Backtrack on the projected residual.
        double t = opts.damping;
        bool accepted = false;
        for (int half = 0; half < 12; ++half, t *= 0.5) {
            PointSeries trial = u;
            for (std::size_t i = 0; i < basis.size(); ++i) {
                trial.at(basis[i]) += t * dx(static_cast<Eigen::Index>(i)) / kappa_point(basis[i]);
            }
            Eigen::VectorXd ty = scaled_residual(p, trial, basis);
            const double tres = ty.norm();
            if (std::isfinite(tres) && (tres < res || half == 11)) {
                u = std::move(trial);
                y = std::move(ty);
                res = tres;
                accepted = true;
                break;
            }
        }
        if (!accepted) throw SolverError("Newton line search failed");
    }
    throw SolverError("Newton iteration did not converge in " + std::to_string(opts.maxIter) +
                      " steps (residual " + std::to_string(res) + ")");
}

std::vector<std::pair<ModelParams, SolveResult>> parameter_walk(
    const ModelParams& p0, const PointSeries& u0, Parameter which, double step, int count,
    const SolveOptions& opts) {
    if (!(step != 0) && count > 0) throw DomainError("walk step must be nonzero");
    if (count < 0) throw DomainError("walk count must be non-negative");
    std::vector<std::pair<ModelParams, SolveResult>> out;
    out.emplace_back(p0, newton_solve(p0, u0, opts));
    for (int i = 1; i <= count; ++i) {
        const ModelParams p = with(p0, which, get(p0, which) + step * i);
        try {
            out.emplace_back(p, newton_solve(p, out.back().second.u, opts));
        } catch (const SolverError&) {
            break;
        } catch (const DomainError&) {
            break;
        }
    }
    return out;
}

}  // namespace okvalid
