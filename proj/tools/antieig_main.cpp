// antieig: antieigenvalues, Lp-dissipativity verdicts, and heat-kernel
// probes for perturbed Ornstein-Uhlenbeck operators.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "antieig/antieigen.hpp"
#include "antieig/dissipativity.hpp"
#include "antieig/json_io.hpp"
#include "antieig/ou_kernel.hpp"
#include "antieig/regions.hpp"

using namespace antieig;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitPrecondition = 4;

RealVector parse_point(const std::string& text, int expected_dim) {
    RealVector v;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            v.push_back(std::stod(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) v.push_back(std::stod(cur));
    if (expected_dim > 0 && static_cast<int>(v.size()) != expected_dim)
        throw InputError("expected " + std::to_string(expected_dim) + " comma-separated values");
    return v;
}

Complex parse_complex_flag(const std::string& text) {
    RealVector v = parse_point(text, 2);
    return Complex(v[0], v[1]);
}

Mu1Dispatch parse_method(const std::string& m) {
    if (m == "auto") return Mu1Dispatch::automatic;
    if (m == "brute") return Mu1Dispatch::brute;
    if (m == "hermitian") return Mu1Dispatch::hermitian;
    if (m == "normal") return Mu1Dispatch::normal;
    throw InputError("unknown method: " + m);
}

GridFn default_gaussian(const OUOperatorSpec& spec, const GridSpec& grid, double sigma) {
    return sample_grid_fn(grid, spec.N(), [&](const RealVector& x) {
        double r2 = 0.0;
        for (double c : x) r2 += c * c;
        return ComplexVector(spec.N(), Complex(std::exp(-r2 / (2.0 * sigma * sigma)), 0.0));
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"antieigenvalue and Lp-dissipativity toolkit"};
    app.require_subcommand(1);

    std::string matrix_path, spec_path, out_format = "json";
    double p = 2.0, t = 1.0, t2 = 1.0, tol = 1e-10, grid_L = 12.0, tmax = 14.0, g_sigma = 1.0;
    int restarts = 64, grid_n = 48, n_time = 48, samples = 256;
    uint64_t seed = 12345;
    std::string method = "auto", lambda_str = "2,0", x_str, xi_str, kind = "sector";
    double p_min = 1.5, p_max = 6.0;
    int p_count = 10;

    auto* c_mu1 = app.add_subcommand("mu1", "first antieigenvalue and real angle");
    c_mu1->add_option("--matrix", matrix_path)->required();
    c_mu1->add_option("--method", method);
    c_mu1->add_option("--restarts", restarts);
    c_mu1->add_option("--tol", tol);
    c_mu1->add_option("--seed", seed);

    auto* c_gamma = app.add_subcommand("gamma", "best Lp-dissipativity constant");
    c_gamma->add_option("--matrix", matrix_path)->required();
    c_gamma->add_option("--p", p)->required();
    c_gamma->add_option("--restarts", restarts);
    c_gamma->add_option("--tol", tol);
    c_gamma->add_option("--seed", seed);

    auto* c_check = app.add_subcommand("check", "dissipativity vs antieigenvalue verdicts");
    c_check->add_option("--matrix", matrix_path)->required();
    c_check->add_option("--p", p)->required();
    c_check->add_option("--restarts", restarts);
    c_check->add_option("--tol", tol);
    c_check->add_option("--seed", seed);

    auto* c_oracle = app.add_subcommand("two-vector", "sampled two-vector oracle minimum");
    c_oracle->add_option("--matrix", matrix_path)->required();
    c_oracle->add_option("--p", p)->required();
    c_oracle->add_option("--samples", samples);
    c_oracle->add_option("--seed", seed);

    auto* c_prange = app.add_subcommand("prange", "admissible p interval");
    c_prange->add_option("--matrix", matrix_path)->required();
    c_prange->add_option("--restarts", restarts);
    c_prange->add_option("--seed", seed);

    auto* c_regions = app.add_subcommand("regions", "sector / condition-number tables");
    c_regions->add_option("--kind", kind)->check(CLI::IsMember({"sector", "kappa"}));
    c_regions->add_option("--p-min", p_min);
    c_regions->add_option("--p-max", p_max);
    c_regions->add_option("--p-count", p_count);
    c_regions->add_option("--out", out_format)->check(CLI::IsMember({"json", "csv"}));

    auto* c_keval = app.add_subcommand("kernel-eval", "heat kernel H(x, xi, t)");
    c_keval->add_option("--spec", spec_path)->required();
    c_keval->add_option("--x", x_str)->required();
    c_keval->add_option("--xi", xi_str)->required();
    c_keval->add_option("--t", t)->required();

    auto* c_kmass = app.add_subcommand("kernel-mass", "int H dxi vs exp(-Bt)");
    c_kmass->add_option("--spec", spec_path)->required();
    c_kmass->add_option("--x", x_str);
    c_kmass->add_option("--t", t)->required();
    c_kmass->add_option("--grid-n", grid_n);
    c_kmass->add_option("--grid-L", grid_L);

    auto* c_kchap = app.add_subcommand("kernel-chapman", "Chapman-Kolmogorov deviation");
    c_kchap->add_option("--spec", spec_path)->required();
    c_kchap->add_option("--t", t)->required();
    c_kchap->add_option("--s", t2)->required();
    c_kchap->add_option("--grid-n", grid_n);
    c_kchap->add_option("--grid-L", grid_L);

    auto* c_kres = app.add_subcommand("kernel-resolvent", "resolvent estimate probe");
    c_kres->add_option("--spec", spec_path)->required();
    c_kres->add_option("--lambda", lambda_str)->required();
    c_kres->add_option("--p", p)->required();
    c_kres->add_option("--grid-n", grid_n);
    c_kres->add_option("--grid-L", grid_L);
    c_kres->add_option("--tmax", tmax);
    c_kres->add_option("--ntime", n_time);
    c_kres->add_option("--g-sigma", g_sigma);

    auto* c_echo = app.add_subcommand("echo", "parse and re-emit a matrix");
    c_echo->add_option("--matrix", matrix_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        BruteOptions bopts;
        bopts.restarts = restarts;
        bopts.tol = tol;
        bopts.seed = seed;
        GammaOptions gopts;
        gopts.restarts = restarts;
        gopts.tol = tol;
        gopts.seed = seed;

        if (c_mu1->parsed()) {
            ComplexMatrix A = load_complex_matrix(matrix_path);
            AntieigenResult r = mu1(A, parse_method(method), bopts);
            std::cout << dump_antieigen_result(r) << "\n";
        } else if (c_gamma->parsed()) {
            ComplexMatrix A = load_complex_matrix(matrix_path);
            std::cout << dump_dissipativity_report(gamma_best(A, p, gopts)) << "\n";
        } else if (c_check->parsed()) {
            ComplexMatrix A = load_complex_matrix(matrix_path);
            std::cout << dump_equivalence_result(check_equivalence(A, p, gopts)) << "\n";
        } else if (c_oracle->parsed()) {
            ComplexMatrix A = load_complex_matrix(matrix_path);
            std::cout << dump_two_vector_result(check_two_vector(A, p, samples, seed)) << "\n";
        } else if (c_prange->parsed()) {
            ComplexMatrix A = load_complex_matrix(matrix_path);
            std::cout << dump_p_range(p_range(A, bopts)) << "\n";
        } else if (c_regions->parsed()) {
            RegionKind k = (kind == "sector") ? RegionKind::sector : RegionKind::kappa;
            RegionTable table = emit_region_table(k, PGrid{p_min, p_max, p_count});
            if (out_format == "csv") {
                std::cout << region_table_csv(table);
            } else {
                std::string s = "{\"kind\":\"" + kind + "\",\"rows\":[";
                for (size_t i = 0; i < table.rows.size(); ++i) {
                    if (i) s += ",";
                    const RegionRow& row = table.rows[i];
                    s += "[" + fmt_double(row.p);
                    if (row.unbounded) {
                        s += ",null,null";
                    } else {
                        for (double v : row.values) s += "," + fmt_double(v);
                    }
                    s += "]";
                }
                std::cout << s << "]}\n";
            }
        } else if (c_keval->parsed()) {
            OUOperatorSpec spec = load_ou_spec(spec_path);
            RealVector x = parse_point(x_str, spec.d);
            RealVector xi = parse_point(xi_str, spec.d);
            std::cout << dump_matrix(kernel_eval(spec, x, xi, t)) << "\n";
        } else if (c_kmass->parsed()) {
            OUOperatorSpec spec = load_ou_spec(spec_path);
            RealVector x = x_str.empty() ? RealVector(spec.d, 0.0) : parse_point(x_str, spec.d);
            GridSpec grid{spec.d, grid_L, grid_n};
            std::cout << dump_mass_check(mass_check(spec, x, t, grid)) << "\n";
        } else if (c_kchap->parsed()) {
            OUOperatorSpec spec = load_ou_spec(spec_path);
            GridSpec grid{spec.d, grid_L, grid_n};
            double dev = chapman_check(spec, t, t2, grid);
            std::cout << "{\"deviation\":" << fmt_double(dev) << "}\n";
        } else if (c_kres->parsed()) {
            OUOperatorSpec spec = load_ou_spec(spec_path);
            GridSpec grid{spec.d, grid_L, grid_n};
            GridFn g = default_gaussian(spec, grid, g_sigma);
            Complex lambda = parse_complex_flag(lambda_str);
            std::cout << dump_resolvent_probe(resolvent_probe(spec, lambda, g, p, tmax, n_time))
                      << "\n";
        } else if (c_echo->parsed()) {
            std::cout << dump_matrix(load_complex_matrix(matrix_path)) << "\n";
        }
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
