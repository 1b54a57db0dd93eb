#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "okvalid/cift.hpp"
#include "okvalid/embeddings.hpp"
#include "okvalid/error.hpp"
#include "okvalid/io.hpp"
#include "okvalid/newton.hpp"
#include "okvalid/operator.hpp"

namespace py = pybind11;
using namespace okvalid;

namespace {

PointSeries make_series(int dim, const std::vector<int>& extent, const std::vector<double>& coeffs) {
    if (static_cast<int>(extent.size()) != dim) throw DomainError("extent must list one entry per dimension");
    std::array<int, kMaxDim> e{1, 1, 1};
    for (int i = 0; i < dim; ++i) e[i] = extent[i];
    PointSeries u(dim, e);
    if (coeffs.size() != u.size()) throw DomainError("coeffs length does not match extent");
    std::copy(coeffs.begin(), coeffs.end(), u.coeffs().begin());
    return u;
}

std::string repr(const Interval& x) {
    std::ostringstream os;
    os.precision(17);
    os << "Interval(" << x.lo() << ", " << x.hi() << ")";
    return os.str();
}

}  // namespace

PYBIND11_MODULE(_okvalid, m) {
    m.doc() = "Validated Ohta-Kawasaki equilibria on the unit cube";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<CertificationError>(m, "CertificationError", error.ptr());
    py::register_exception<SolverError>(m, "SolverError", error.ptr());

    py::class_<Interval>(m, "Interval")
        .def(py::init<double>())
        .def(py::init<double, double>())
        .def_property_readonly("lo", &Interval::lo)
        .def_property_readonly("hi", &Interval::hi)
        .def("mid", &Interval::mid)
        .def("rad", &Interval::rad)
        .def("width", &Interval::width)
        .def("mag", &Interval::mag)
        .def("contains", &Interval::contains)
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(py::self / py::self)
        .def(-py::self)
        .def("sqrt", [](const Interval& x) { return sqrt(x); })
        .def("__repr__", &repr);

    py::class_<EmbeddingConstants>(m, "EmbeddingConstants")
        .def_readonly("dim", &EmbeddingConstants::dim)
        .def_readonly("Cm", &EmbeddingConstants::Cm)
        .def_readonly("CmBar", &EmbeddingConstants::CmBar)
        .def_readonly("Cb", &EmbeddingConstants::Cb)
        .def_readonly("equiv_factor", &EmbeddingConstants::equivFactor);
    m.def("table_constants", &table_constants, py::arg("dim"));
    m.def("recompute_cmbar", &recompute_cmbar, py::arg("dim"), py::arg("ncut") = 1000);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](double lambda, double sigma, double mu, std::optional<std::vector<double>> f) {
                 ModelParams p;
                 p.lambda = lambda;
                 p.sigma = sigma;
                 p.mu = mu;
                 if (f) p.f = Polynomial(*f);
                 p.check();
                 return p;
             }),
             py::arg("lambda_") = 1.0, py::arg("sigma") = 0.0, py::arg("mu") = 0.0, py::arg("f") = py::none())
        .def_readwrite("lambda_", &ModelParams::lambda)
        .def_readwrite("sigma", &ModelParams::sigma)
        .def_readwrite("mu", &ModelParams::mu)
        .def_property_readonly("f", [](const ModelParams& p) { return p.f.coeffs(); })
        .def("__eq__", [](const ModelParams& a, const ModelParams& b) { return a == b; });

    py::class_<PointSeries>(m, "Series")
        .def(py::init(&make_series), py::arg("dim"), py::arg("extent"), py::arg("coeffs"))
        .def_property_readonly("dim", &PointSeries::dim)
        .def_property_readonly("extent", [](const PointSeries& u) {
            return std::vector<int>(u.extent().begin(), u.extent().begin() + u.dim());
        })
        .def_property_readonly("coeffs", [](const PointSeries& u) {
            return std::vector<double>(u.coeffs().begin(), u.coeffs().end());
        })
        .def("coeff", [](const PointSeries& u, const std::vector<int>& k) {
            if (static_cast<int>(k.size()) != u.dim()) throw DomainError("index length must equal dim");
            MultiIndex mi;
            mi.dim = u.dim();
            for (int i = 0; i < u.dim(); ++i) mi.k[i] = k[i];
            return u.coeff(mi);
        })
        .def("evaluate", [](const PointSeries& u, const std::vector<double>& x) {
            if (static_cast<int>(x.size()) != u.dim()) throw DomainError("point length must equal dim");
            return evaluate(u, x);
        })
        .def("norm_hbar", [](const PointSeries& u, int ell) { return norm(u, NormTag::hbar(ell)); },
             py::arg("ell"));

    py::class_<SolveResult>(m, "SolveResult")
        .def_readonly("u", &SolveResult::u)
        .def_readonly("iterations", &SolveResult::iterations)
        .def_readonly("residual", &SolveResult::residual)
        .def_readonly("full_residual", &SolveResult::fullResidual);

    m.def("parse_seed", &parse_seed, py::arg("seed"), py::arg("dim"), py::arg("N"));
    m.def(
        "solve",
        [](const ModelParams& p, int dim, const std::string& seed, int n, int max_iter, double tol) {
            SolveOptions o;
            o.N = n;
            o.maxIter = max_iter;
            o.tolResidual = tol;
            py::gil_scoped_release release;
            return newton_solve(p, parse_seed(seed, dim, n), o);
        },
        py::arg("params"), py::arg("dim"), py::arg("seed") = "mode:1", py::arg("N") = 64, py::arg("max_iter") = 60,
        py::arg("tol") = 1e-11);
    m.def(
        "residual", [](const ModelParams& p, const PointSeries& u) { return residual(p, u); }, py::arg("params"),
        py::arg("u"));

    py::class_<InverseBound>(m, "InverseBound")
        .def_readonly("KN", &InverseBound::KN)
        .def_readonly("tau", &InverseBound::tau)
        .def_readonly("K", &InverseBound::K)
        .def_readonly("N", &InverseBound::N)
        .def_readonly("q_sup", &InverseBound::qSup)
        .def_readonly("q_h2", &InverseBound::qH2);
    m.def(
        "inverse_bound", [](const ModelParams& p, const PointSeries& u, int n) { return inverse_bound(p, u, n); },
        py::arg("params"), py::arg("u"), py::arg("N"));

    py::class_<Certificate>(m, "Certificate")
        .def_readonly("params", &Certificate::params)
        .def_property_readonly("param", [](const Certificate& c) { return std::string(to_string(c.which)); })
        .def_readonly("dim", &Certificate::dim)
        .def_readonly("N", &Certificate::N)
        .def_readonly("rho", &Certificate::rho)
        .def_readonly("KN", &Certificate::KN)
        .def_readonly("tau", &Certificate::tau)
        .def_readonly("K", &Certificate::K)
        .def_readonly("L1", &Certificate::L1)
        .def_readonly("L2", &Certificate::L2)
        .def_readonly("L3", &Certificate::L3)
        .def_readonly("L4", &Certificate::L4)
        .def_readonly("ell_x", &Certificate::ellX)
        .def_readonly("ell_alpha", &Certificate::ellAlpha)
        .def_readonly("delta_alpha", &Certificate::deltaAlpha)
        .def_readonly("delta_x", &Certificate::deltaX)
        .def_readonly("valid", &Certificate::valid)
        .def_readonly("point_only", &Certificate::pointOnly)
        .def_property_readonly("stage", [](const Certificate& c) { return std::string(to_string(c.stage)); })
        .def_readonly("message", &Certificate::message)
        .def_readonly("suggested_N", &Certificate::suggestedN)
        .def("to_json", &certificate_to_json);

    m.def(
        "validate",
        [](const ModelParams& p, const PointSeries& u, const std::string& param, std::optional<int> n,
           std::optional<double> du, std::optional<double> dp) {
            ValidateOptions o;
            o.N = n;
            o.du = du;
            o.dp = dp;
            const Parameter which = parameter_from_string(param);
            py::gil_scoped_release release;
            return validate(p, u, which, o);
        },
        py::arg("params"), py::arg("u"), py::arg("param") = "lambda", py::arg("N") = py::none(),
        py::arg("du") = py::none(), py::arg("dp") = py::none());
    m.def(
        "check",
        [](const Certificate& c) {
            const CheckReport r = verify_certificate(c);
            return py::make_tuple(r.ok, r.failures);
        },
        py::arg("certificate"));
    m.def("certificate_from_json", &certificate_from_json, py::arg("text"));

    m.def(
        "write_solution",
        [](const std::string& path, const ModelParams& p, const PointSeries& u) {
            SolutionFile s;
            s.params = p;
            s.u = u;
            s.created = utc_timestamp();
            s.residualFloat = float_residual(p, u);
            write_solution(path, s);
        },
        py::arg("path"), py::arg("params"), py::arg("u"));
    m.def(
        "read_solution",
        [](const std::string& path) {
            const SolutionFile s = read_solution(path);
            return py::make_tuple(s.params, s.u);
        },
        py::arg("path"));
    m.def(
        "solution_hash",
        [](const ModelParams& p, const PointSeries& u) {
            SolutionFile s;
            s.params = p;
            s.u = u;
            return solution_hash(s);
        },
        py::arg("params"), py::arg("u"));

    m.attr("__version__") = kToolVersion;
}
