// okvalid: solve, validate and inspect Ohta-Kawasaki equilibria.
//
// Exit codes: 0 success / valid, 1 usage or input error, 2 solver failure,
// 3 certification failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "okvalid/cift.hpp"
#include "okvalid/embeddings.hpp"
#include "okvalid/io.hpp"
#include "okvalid/newton.hpp"
#include "okvalid/parallel.hpp"

using namespace okvalid;
using nlohmann::json;

namespace {

constexpr int kExitValid = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSolver = 2;
constexpr int kExitCert = 3;

struct ModelArgs {
    double lambda = 150;
    double sigma = 6;
    double mu = 0;
    std::vector<double> f{0, 1, 0, -1};

    ModelParams params() const {
        ModelParams p;
        p.lambda = lambda;
        p.sigma = sigma;
        p.mu = mu;
        p.f = Polynomial(f);
        p.check();
        return p;
    }
};

void add_model_options(CLI::App* cmd, ModelArgs& m) {
    cmd->add_option("--lambda", m.lambda, "Short-range repulsion lambda > 0")->capture_default_str();
    cmd->add_option("--sigma", m.sigma, "Long-range elasticity sigma >= 0")->capture_default_str();
    cmd->add_option("--mu", m.mu, "Mass mu")->capture_default_str();
    cmd->add_option("--f", m.f, "Nonlinearity coefficients, ascending (default u - u^3)")
        ->delimiter(',');
}

int default_truncation(int dim) {
    switch (dim) {
    case 1: return 64;
    case 2: return 24;
    default: return 12;
    }
}

std::ostream& out_stream(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw DomainError("cannot write '" + path + "'");
    return file;
}

std::string fmt(double x) {
    std::ostringstream ss;
    ss << std::setprecision(5) << x;
    return ss.str();
}

void print_summary(const Certificate& c, std::ostream& os) {
    os << "  K        N     P        delta_alpha    delta_x\n";
    os << "  " << std::left << std::setw(8) << fmt(c.K) << " " << std::setw(5) << c.N << " "
       << std::setw(8) << to_string(c.which) << " " << std::setw(14) << fmt(c.deltaAlpha) << " "
       << fmt(c.deltaX) << "\n";
    os << "  rho = " << fmt(c.rho) << ", K_N = " << fmt(c.KN) << ", tau = " << fmt(c.tau)
       << ", L1..L4 = " << fmt(c.L1) << ", " << fmt(c.L2) << ", " << fmt(c.L3) << ", "
       << fmt(c.L4) << "\n";
    os << "  status: " << (c.valid ? "VALID" : "INVALID") << " (" << to_string(c.stage) << ") "
       << c.message;
    if (c.suggestedN) os << "; suggested N = " << *c.suggestedN;
    os << "\n";
}

// --- constants ------------------------------------------------------------

int cmd_constants(int dim, int ncut) {
    json out = json::array();
    for (int d = 1; d <= 3; ++d) {
        if (dim != 0 && d != dim) continue;
        const EmbeddingConstants t = table_constants(d);
        const Interval cm = recompute_cmbar(d, ncut);
        const Interval eq = equiv_factor();
        out.push_back(json{{"dim", d},
                           {"Cm", format_double(t.Cm)},
                           {"CmBar", format_double(t.CmBar)},
                           {"Cb", format_double(t.Cb)},
                           {"CmBar_recomputed", {format_double(cm.lo()), format_double(cm.hi())}},
                           {"ncut", ncut},
                           {"equivFactor", {format_double(eq.lo()), format_double(eq.hi())}}});
    }
    std::cout << out.dump(2) << "\n";
    return kExitValid;
}

// --- solve ----------------------------------------------------------------

struct SolveArgs {
    int dim = 0;
    int N = 0;
    std::string seed = "mode:1";
    std::string out;
    int maxIter = 60;
    double tol = 1e-11;
    double damping = 1.0;
};

SolveOptions solve_options(const SolveArgs& a, int dim) {
    SolveOptions o;
    o.N = a.N > 0 ? a.N : default_truncation(dim);
    o.maxIter = a.maxIter;
    o.tolResidual = a.tol;
    o.damping = a.damping;
    return o;
}

int cmd_solve(const SolveArgs& a, const ModelArgs& m) {
    const ModelParams p = m.params();
    const SolveOptions o = solve_options(a, a.dim);
    const PointSeries u0 = parse_seed(a.seed, a.dim, o.N);
    const SolveResult r = newton_solve(p, u0, o);
    SolutionFile s;
    s.params = p;
    s.u = r.u;
    s.created = utc_timestamp();
    s.residualFloat = r.fullResidual;
    if (a.out.empty()) {
        std::cout << solution_to_json(s) << "\n";
    } else {
        write_solution(a.out, s);
    }
    std::cerr << "converged in " << r.iterations << " iterations, residual " << fmt(r.fullResidual)
              << "\n";
    return kExitValid;
}

// --- validate / sweep --------------------------------------------------------

struct ValidateArgs {
    std::string in;
    std::string param = "lambda";
    int N = 0;
    double du = 0;
    double dp = 0;
    int ceiling = 0;
    std::string out;
};

ValidateOptions validate_options(const ValidateArgs& a) {
    ValidateOptions o;
    if (a.N > 0) o.N = a.N;
    if (a.du > 0) o.du = a.du;
    if (a.dp > 0) o.dp = a.dp;
    if (a.ceiling > 0) o.nCeiling = a.ceiling;
    return o;
}

int cmd_validate(const ValidateArgs& a) {
    const SolutionFile s = read_solution(a.in);
    const Parameter which = parameter_from_string(a.param);
    Certificate c = validate(s.params, s.u, which, validate_options(a));
    c.solutionHash = solution_hash(s);
    if (!a.out.empty()) write_certificate(a.out, c);
    print_summary(c, std::cout);
    return c.valid ? kExitValid : kExitCert;
}

int cmd_check(const std::string& cert_path, const std::string& in) {
    const Certificate c = read_certificate(cert_path);
    if (!in.empty()) {
        const SolutionFile s = read_solution(in);
        if (solution_hash(s) != c.solutionHash) {
            std::cout << "FAIL solution hash does not match certificate\n";
            return kExitCert;
        }
    }
    const CheckReport rep = verify_certificate(c);
    if (rep.ok) {
        std::cout << "OK all certificate inequalities hold\n";
        return kExitValid;
    }
    for (const auto& f : rep.failures) std::cout << "FAIL " << f << "\n";
    return kExitCert;
}

int cmd_sweep(const ValidateArgs& a, const std::vector<int>& nlist) {
    const SolutionFile s = read_solution(a.in);
    const Parameter which = parameter_from_string(a.param);
    std::ofstream file;
    std::ostream& os = out_stream(a.out, file);
    os << "N,K_N,tau,K,deltaAlpha,deltaX,wall_ms,status\n";
    const ValidateOptions base = validate_options(a);
    struct Row {
        Certificate cert;
        double ms = 0;
    };
    std::vector<Row> rows(nlist.size());
    parallel_for(nlist.size(), [&](std::size_t i) {
        const auto t0 = std::chrono::steady_clock::now();
        ValidateOptions o = base;
        o.N = nlist[i];
        rows[i].cert = validate(s.params, s.u, which, o);
        rows[i].ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    });
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Certificate& c = rows[i].cert;
        os << nlist[i] << "," << format_double(c.KN) << "," << format_double(c.tau) << ","
           << format_double(c.K) << "," << format_double(c.deltaAlpha) << ","
           << format_double(c.deltaX) << "," << std::fixed << std::setprecision(1) << rows[i].ms
           << std::defaultfloat << std::setprecision(6) << ","
           << (c.valid ? "valid" : "failed:" + std::string(to_string(c.stage))) << "\n";
    }
    return kExitValid;
}

// --- render ---------------------------------------------------------------

int cmd_render(const std::string& in, int grid, double slice, const std::string& out) {
    if (grid < 2) throw DomainError("--grid must be at least 2");
    const SolutionFile s = read_solution(in);
    std::ofstream file;
    std::ostream& os = out_stream(out, file);
    os << std::setprecision(17);
    const int d = s.u.dim();
    auto x_at = [&](int i) { return static_cast<double>(i) / (grid - 1); };
    if (d == 1) {
        os << "x,u\n";
        for (int i = 0; i < grid; ++i) {
            const double x[1] = {x_at(i)};
            os << x[0] << "," << evaluate(s.u, x) << "\n";
        }
    } else {
        os << (d == 2 ? "x,y,u\n" : "x,y,z,u\n");
        for (int i = 0; i < grid; ++i) {
            for (int j = 0; j < grid; ++j) {
                const double x[3] = {x_at(i), x_at(j), slice};
                os << x[0] << "," << x[1] << ",";
                if (d == 3) os << slice << ",";
                os << evaluate(s.u, std::span<const double>(x, static_cast<std::size_t>(d))) << "\n";
            }
        }
    }
    return kExitValid;
}

// --- walk -----------------------------------------------------------------

int cmd_walk(const std::string& in, const std::string& param, double step, int count,
             const SolveArgs& a, const std::string& out_dir) {
    const SolutionFile s = read_solution(in);
    const Parameter which = parameter_from_string(param);
    SolveOptions o = solve_options(a, s.u.dim());
    if (a.N <= 0) o.N = s.u.extent(0);
    const auto walk = parameter_walk(s.params, s.u, which, step, count, o);
    if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
    std::cout << "index," << to_string(which) << ",residual_float,file\n";
    for (std::size_t i = 0; i < walk.size(); ++i) {
        std::string path;
        if (!out_dir.empty()) {
            char name[32];
            std::snprintf(name, sizeof name, "walk_%03zu.json", i);
            path = (std::filesystem::path(out_dir) / name).string();
            SolutionFile w;
            w.params = walk[i].first;
            w.u = walk[i].second.u;
            w.created = utc_timestamp();
            w.residualFloat = walk[i].second.fullResidual;
            write_solution(path, w);
        }
        std::cout << i << "," << format_double(get(walk[i].first, which)) << ","
                  << format_double(walk[i].second.fullResidual) << "," << path << "\n";
    }
    return static_cast<int>(walk.size()) == count + 1 ? kExitValid : kExitSolver;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Validated equilibria of the Ohta-Kawasaki equation on the unit cube"};
    app.require_subcommand(1);

    int c_dim = 0;
    int c_ncut = 1000;
    auto* constants = app.add_subcommand("constants", "Print embedding constants as JSON");
    constants->add_option("--dim", c_dim, "Dimension 1-3 (default: all)")->check(CLI::Range(1, 3));
    constants->add_option("--ncut", c_ncut, "Lattice cutoff for the recomputed CmBar")
        ->check(CLI::Range(2, 100000))
        ->capture_default_str();

    SolveArgs sa;
    ModelArgs ma;
    auto* solve = app.add_subcommand("solve", "Newton solve for an approximate equilibrium");
    solve->add_option("--dim", sa.dim, "Dimension 1-3")->required()->check(CLI::Range(1, 3));
    solve->add_option("--N", sa.N, "Truncation: modes 0 < |k|_inf < N (default 64/24/12)")
        ->check(CLI::Range(2, 4096));
    add_model_options(solve, ma);
    solve->add_option("--seed", sa.seed,
                      "Initial guess: zero | mode:K[,A] with K = k1[xk2[xk3]] | file:PATH")
        ->capture_default_str();
    solve->add_option("--out", sa.out, "Output solution file (default stdout)");
    solve->add_option("--max-iter", sa.maxIter, "Newton iteration limit")->capture_default_str();
    solve->add_option("--tol", sa.tol, "Projected residual tolerance")->capture_default_str();
    solve->add_option("--damping", sa.damping, "Initial Newton step fraction")->capture_default_str();

    ValidateArgs va;
    auto* val = app.add_subcommand("validate", "Certify a solution file");
    val->add_option("--in", va.in, "Solution file")->required();
    val->add_option("--param", va.param, "Continuation parameter: lambda | sigma | mu")
        ->check(CLI::IsMember({"lambda", "sigma", "mu"}))
        ->capture_default_str();
    val->add_option("--N", va.N, "Fixed truncation (default: automatic)")->check(CLI::Range(2, 4096));
    val->add_option("--du", va.du, "Initial function box radius ell_x");
    val->add_option("--dp", va.dp, "Initial parameter box radius ell_alpha");
    val->add_option("--ceiling", va.ceiling, "Largest automatic truncation");
    val->add_option("--out", va.out, "Output certificate file");

    std::string ck_cert, ck_in;
    auto* check = app.add_subcommand("check", "Replay the inequalities of a certificate");
    check->add_option("--cert", ck_cert, "Certificate file")->required();
    check->add_option("--in", ck_in, "Solution file whose hash must match");

    ValidateArgs sw;
    std::vector<int> nlist;
    auto* sweep = app.add_subcommand("sweep", "Validate over a list of truncations (CSV)");
    sweep->add_option("--in", sw.in, "Solution file")->required();
    sweep->add_option("--param", sw.param, "Continuation parameter")
        ->check(CLI::IsMember({"lambda", "sigma", "mu"}))
        ->capture_default_str();
    sweep->add_option("--Nlist", nlist, "Comma-separated truncations")
        ->required()
        ->delimiter(',')
        ->check(CLI::Range(2, 4096));
    sweep->add_option("--du", sw.du, "Initial function box radius");
    sweep->add_option("--dp", sw.dp, "Initial parameter box radius");
    sweep->add_option("--out", sw.out, "Output CSV (default stdout)");

    std::string r_in, r_out;
    int r_grid = 101;
    double r_slice = 0.5;
    auto* render = app.add_subcommand("render", "Sample a solution on a grid (CSV)");
    render->add_option("--in", r_in, "Solution file")->required();
    render->add_option("--grid", r_grid, "Points per axis")->capture_default_str();
    render->add_option("--slice", r_slice, "x3 of the slice for d = 3")->capture_default_str();
    render->add_option("--out", r_out, "Output CSV (default stdout)");

    std::string w_in, w_param = "lambda", w_dir;
    double w_step = 0;
    int w_count = 0;
    SolveArgs wa;
    auto* walk = app.add_subcommand("walk", "Natural-parameter stepping from a solution");
    walk->add_option("--in", w_in, "Starting solution file")->required();
    walk->add_option("--param", w_param, "Parameter to step")
        ->check(CLI::IsMember({"lambda", "sigma", "mu"}))
        ->capture_default_str();
    walk->add_option("--step", w_step, "Parameter increment")->required();
    walk->add_option("--count", w_count, "Number of steps")->required()->check(CLI::NonNegativeNumber);
    walk->add_option("--N", wa.N, "Truncation (default: that of the input)");
    walk->add_option("--out-dir", w_dir, "Directory for walk_NNN.json files");
    walk->add_option("--tol", wa.tol, "Projected residual tolerance")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitValid : kExitUsage;
    }

    try {
        if (*constants) return cmd_constants(c_dim, c_ncut);
        if (*solve) return cmd_solve(sa, ma);
        if (*val) return cmd_validate(va);
        if (*check) return cmd_check(ck_cert, ck_in);
        if (*sweep) return cmd_sweep(sw, nlist);
        if (*render) return cmd_render(r_in, r_grid, r_slice, r_out);
        if (*walk) return cmd_walk(w_in, w_param, w_step, w_count, wa, w_dir);
    } catch (const SolverError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolver;
    } catch (const CertificationError& e) {
        std::cerr << "certification failure: " << e.what() << "\n";
        return kExitCert;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
