#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "antieig/antieigen.hpp"
#include "antieig/dissipativity.hpp"
#include "antieig/ou_kernel.hpp"
#include "antieig/regions.hpp"

namespace py = pybind11;
using namespace antieig;

namespace {

using PyMatrix = std::vector<std::vector<Complex>>;

ComplexMatrix to_matrix(const PyMatrix& rows) {
    if (rows.empty()) throw InputError("matrix must be non-empty");
    ComplexMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows; ++i) {
        if (static_cast<int>(rows[i].size()) != m.cols)
            throw InputError("matrix rows have inconsistent lengths");
        for (int j = 0; j < m.cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

PyMatrix from_matrix(const ComplexMatrix& m) {
    PyMatrix rows(m.rows, std::vector<Complex>(m.cols));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) rows[i][j] = m(i, j);
    return rows;
}

RealMatrix to_real_matrix(const PyMatrix& rows) {
    ComplexMatrix m = to_matrix(rows);
    if (!is_real_entried(m)) throw InputError("expected a real matrix");
    return real_part(m);
}

py::dict antieigen_dict(const AntieigenResult& r) {
    py::dict d;
    d["mu1"] = r.mu1;
    d["angle_rad"] = r.angle_rad;
    d["method"] = to_string(r.method);
    d["witness"] = r.antieigenvector;
    d["restarts_used"] = r.restarts_used;
    return d;
}

Mu1Dispatch method_from_string(const std::string& m) {
    if (m == "auto") return Mu1Dispatch::automatic;
    if (m == "brute") return Mu1Dispatch::brute;
    if (m == "hermitian") return Mu1Dispatch::hermitian;
    if (m == "normal") return Mu1Dispatch::normal;
    throw InputError("unknown method: " + m);
}

}  // namespace

PYBIND11_MODULE(_antieig, m) {
    m.doc() = "Antieigenvalues, Lp-dissipativity, and Ornstein-Uhlenbeck heat-kernel probes";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    m.def(
        "mu1",
        [](const PyMatrix& A, const std::string& method, int restarts, double tol,
           uint64_t seed) {
            BruteOptions opts;
            opts.restarts = restarts;
            opts.tol = tol;
            opts.seed = seed;
            return antieigen_dict(mu1(to_matrix(A), method_from_string(method), opts));
        },
        py::arg("A"), py::arg("method") = "auto", py::arg("restarts") = 64,
        py::arg("tol") = 1e-10, py::arg("seed") = 12345,
        "First antieigenvalue, witness antieigenvector, and real angle.");

    m.def(
        "angle", [](const PyMatrix& A) { return angle(to_matrix(A)); }, py::arg("A"),
        "Real angle arccos(mu1(A)).");

    m.def(
        "gamma_best",
        [](const PyMatrix& A, double p, int restarts, double tol, uint64_t seed) {
            GammaOptions opts;
            opts.restarts = restarts;
            opts.tol = tol;
            opts.seed = seed;
            DissipativityReport r = gamma_best(to_matrix(A), p, opts);
            py::dict d;
            d["p"] = r.p;
            d["b"] = r.b;
            d["gamma_best"] = r.gamma_best;
            d["witness_w"] = r.witness_w;
            d["threshold"] = r.threshold;
            d["mu1"] = r.mu1;
            d["margin"] = r.margin;
            d["verdict"] = r.verdict;
            d["accretivity_constant"] = r.accretivity_constant;
            d["tol_decide"] = r.tol_decide;
            return d;
        },
        py::arg("A"), py::arg("p"), py::arg("restarts") = 64, py::arg("tol") = 1e-10,
        py::arg("seed") = 12345, "Best constant in the reduced Lp-dissipativity functional.");

    m.def(
        "check_equivalence",
        [](const PyMatrix& A, double p) {
            EquivalenceResult r = check_equivalence(to_matrix(A), p);
            py::dict d;
            d["verdict_dissipativity"] = r.verdict_dissipativity;
            d["verdict_antieigen"] = r.verdict_antieigen;
            d["agree"] = r.agree;
            d["margin"] = r.margin;
            d["gamma_best"] = r.gamma;
            d["threshold"] = r.threshold;
            d["mu1"] = r.mu1;
            d["invertible"] = r.invertible;
            d["boundary_indeterminate"] = r.indeterminate;
            return d;
        },
        py::arg("A"), py::arg("p"));

    m.def(
        "check_two_vector",
        [](const PyMatrix& A, double p, int samples, uint64_t seed) {
            TwoVectorResult r = check_two_vector(to_matrix(A), p, samples, seed);
            py::dict d;
            d["min_found"] = r.min_found;
            d["witness_w"] = r.witness_w;
            d["witness_z"] = r.witness_z;
            return d;
        },
        py::arg("A"), py::arg("p"), py::arg("samples") = 256, py::arg("seed") = 12345);

    m.def(
        "lagrange_stationary",
        [](const PyMatrix& A, const RealVector& w, double b) {
            LagrangeTrace t = lagrange_stationary(to_real_matrix(A), w, b);
            py::dict d;
            d["q"] = t.q;
            d["r"] = t.r;
            d["alpha"] = t.alpha;
            d["beta"] = t.beta;
            d["multiplier_mu"] = t.multiplier_mu;
            d["z_star"] = t.z_star;
            d["f_at_star"] = t.f_at_star;
            d["stationarity_residual"] = t.stationarity_residual;
            return d;
        },
        py::arg("A"), py::arg("w"), py::arg("b"));

    m.def(
        "p_range",
        [](const PyMatrix& A) {
            PRange r = p_range(to_matrix(A));
            py::dict d;
            d["empty"] = r.empty;
            d["p_lower"] = r.empty ? py::object(py::none()) : py::object(py::float_(r.p_lower));
            d["p_upper"] = (r.empty || r.upper_unbounded) ? py::object(py::none())
                                                          : py::object(py::float_(r.p_upper));
            d["upper_unbounded"] = !r.empty && r.upper_unbounded;
            d["mu1"] = r.mu1;
            return d;
        },
        py::arg("A"));

    m.def(
        "structural_predicates",
        [](const PyMatrix& A) {
            StructuralFlags f = structural_predicates(to_matrix(A));
            py::dict d;
            d["hermitian"] = f.hermitian;
            d["normal"] = f.normal;
            d["accretive"] = f.accretive;
            d["strictly_accretive"] = f.strictly_accretive;
            d["invertible"] = f.invertible;
            return d;
        },
        py::arg("A"));

    m.def(
        "hermitian_eigen",
        [](const PyMatrix& A) {
            HermitianEigenSystem es = hermitian_eigen(to_matrix(A));
            return py::make_tuple(es.eigenvalues, from_matrix(es.eigenvectors));
        },
        py::arg("A"));

    m.def(
        "real_embed",
        [](const PyMatrix& A) { return from_matrix(complexify(real_embed_matrix(to_matrix(A)))); },
        py::arg("A"));

    m.def(
        "expm_skew",
        [](const PyMatrix& S, double t) {
            return from_matrix(complexify(expm_skew(to_real_matrix(S), t)));
        },
        py::arg("S"), py::arg("t"));

    m.def(
        "cone_test", [](Complex alpha, double p) { return cone_test_scalar(alpha, p); },
        py::arg("alpha"), py::arg("p"));

    m.def(
        "sector_membership", [](Complex lam, double p) { return sector_membership(lam, p); },
        py::arg("lam"), py::arg("p"));

    m.def(
        "kappa_window",
        [](double p) {
            KappaWindow w = kappa_window(p);
            return py::make_tuple(w.C_L, w.C_R);
        },
        py::arg("p"));

    py::class_<OUOperatorSpec>(m, "OUSpec")
        .def_property_readonly("d", [](const OUOperatorSpec& s) { return s.d; })
        .def_property_readonly("beta_B", [](const OUOperatorSpec& s) { return s.beta_B; })
        .def_property_readonly("lambda_A", [](const OUOperatorSpec& s) { return s.lambda_A; })
        .def_property_readonly("lambda_B", [](const OUOperatorSpec& s) { return s.lambda_B; });

    m.def(
        "make_ou_spec",
        [](const PyMatrix& A, const PyMatrix& B, const PyMatrix& S, int d) {
            return make_ou_spec(to_matrix(A), to_matrix(B), to_real_matrix(S), d);
        },
        py::arg("A"), py::arg("B"), py::arg("S"), py::arg("d"));

    m.def(
        "kernel_eval",
        [](const OUOperatorSpec& spec, const RealVector& x, const RealVector& xi, double t) {
            return from_matrix(kernel_eval(spec, x, xi, t));
        },
        py::arg("spec"), py::arg("x"), py::arg("xi"), py::arg("t"));

    m.def(
        "mass_check",
        [](const OUOperatorSpec& spec, const RealVector& x, double t, double L, int n) {
            MassCheckResult r = mass_check(spec, x, t, GridSpec{spec.d, L, n});
            py::dict d;
            d["deviation"] = r.deviation;
            d["computed"] = from_matrix(r.computed);
            d["expected"] = from_matrix(r.expected);
            return d;
        },
        py::arg("spec"), py::arg("x"), py::arg("t"), py::arg("L") = 12.0, py::arg("n") = 48);

    m.def(
        "chapman_check",
        [](const OUOperatorSpec& spec, double t, double s, double L, int n) {
            return chapman_check(spec, t, s, GridSpec{spec.d, L, n});
        },
        py::arg("spec"), py::arg("t"), py::arg("s"), py::arg("L") = 12.0, py::arg("n") = 48);

    m.def(
        "resolvent_probe",
        [](const OUOperatorSpec& spec, Complex lambda, double p, double L, int n, double T_max,
           int n_time, double g_sigma) {
            GridSpec grid{spec.d, L, n};
            GridFn g = sample_grid_fn(grid, spec.N(), [&](const RealVector& x) {
                double r2 = 0.0;
                for (double c : x) r2 += c * c;
                return ComplexVector(spec.N(),
                                     Complex(std::exp(-r2 / (2.0 * g_sigma * g_sigma)), 0.0));
            });
            ResolventProbeResult r = resolvent_probe(spec, lambda, g, p, T_max, n_time);
            py::dict d;
            d["ratio"] = r.ratio;
            d["bound"] = r.bound;
            d["tail"] = r.tail;
            return d;
        },
        py::arg("spec"), py::arg("lam"), py::arg("p"), py::arg("L") = 12.0, py::arg("n") = 40,
        py::arg("T_max") = 14.0, py::arg("n_time") = 48, py::arg("g_sigma") = 1.0);
}
