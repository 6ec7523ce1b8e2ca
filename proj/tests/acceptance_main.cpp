// Acceptance suite: runs every toolkit-level criterion at its stated
// tolerance and prints one pass/fail line per criterion. Exit code is the
// number of failed criteria.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "antieig/antieigen.hpp"
#include "antieig/dissipativity.hpp"
#include "antieig/json_io.hpp"
#include "antieig/ou_kernel.hpp"
#include "antieig/regions.hpp"
#include "test_helpers.hpp"

using namespace antieig;
using testing::TestRng;
using testing::mat2;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail) {
    std::printf("criterion %02d [%s]: %s (%s)\n", index, name.c_str(), pass ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string cli_path;

struct CliCapture {
    int exit_code = -1;
    std::string out;
};

CliCapture run_cli(const std::string& args) {
    CliCapture r;
    std::string cmd = cli_path + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

// ---------------------------------------------------------------------------

void criterion_1_and_7() {
    auto start = std::chrono::steady_clock::now();
    TestRng rng(20250101);
    const int cases = 500;
    int checked = 0, conj_checked = 0, disagreements = 0, conj_disagreements = 0;

    GammaOptions gopts;
    BruteOptions bopts;
    for (int k = 0; k < cases; ++k) {
        int n = 1 + static_cast<int>(rng.next() % 5);
        ComplexMatrix A = rng.complex_matrix(n);
        double p = rng.uniform(1.05, 12.0);
        double pc = p / (p - 1.0);

        double m = mu1(A, Mu1Dispatch::automatic, bopts).mu1;
        bool invertible = structural_predicates(A).invertible;
        double gamma_p = gamma_minimize(A, p - 2.0, gopts).first;
        double gamma_pc = gamma_minimize(A, pc - 2.0, gopts).first;

        double margin = m - lp_threshold(p);
        bool verdict_anti = invertible && margin > 0.0;

        if (std::abs(gamma_p) > 1e-6 && std::abs(margin) > 1e-6) {
            ++checked;
            if ((gamma_p > 1e-10) != verdict_anti) ++disagreements;
        }
        if (std::abs(gamma_p) > 1e-6 && std::abs(gamma_pc) > 1e-6 &&
            std::abs(margin) > 1e-6) {
            ++conj_checked;
            if ((gamma_p > 1e-10) != (gamma_pc > 1e-10)) ++conj_disagreements;
        }
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    char d1[160];
    std::snprintf(d1, sizeof(d1), "%d/%d decidable cases agree, %d disagreements, %.1f s",
                  checked, cases, disagreements, secs);
    report(1, "Theorem 3.1 equivalence", disagreements == 0 && checked > 300 && secs < 120.0, d1);

    char d7[160];
    std::snprintf(d7, sizeof(d7), "%d conjugate pairs decidable, %d verdict mismatches",
                  conj_checked, conj_disagreements);
    report(7, "Hoelder-conjugate symmetry", conj_disagreements == 0 && conj_checked > 300, d7);
}

void criterion_2() {
    TestRng rng(20250202);
    BruteOptions bopts;
    int bad_value = 0, bad_witness = 0;
    double worst_gap = 0.0;
    for (int k = 0; k < 200; ++k) {
        int n = 2 + static_cast<int>(rng.next() % 4);
        ComplexMatrix A = rng.hermitian_pd(n, rng.uniform(0.5, 8.0));
        AntieigenResult closed = mu1_hermitian_pd(A);
        AntieigenResult brute = mu1_brute(A, bopts);
        double gap = std::abs(closed.mu1 - brute.mu1);
        worst_gap = std::max(worst_gap, gap);
        if (gap > 1e-6) ++bad_value;

        ComplexVector Aw = matvec(A, closed.antieigenvector);
        double quotient = inner(closed.antieigenvector, Aw).real() /
                          (norm(closed.antieigenvector) * norm(Aw));
        if (std::abs(quotient - closed.mu1) > 1e-9) ++bad_witness;
    }
    char d[160];
    std::snprintf(d, sizeof(d), "200 matrices, worst |closed-brute| = %.2e, witness failures %d",
                  worst_gap, bad_witness);
    report(2, "Hermitian closed form", bad_value == 0 && bad_witness == 0, d);
}

void criterion_3() {
    TestRng rng(20250303);
    BruteOptions bopts;
    int bad = 0;
    double worst_gap = 0.0;
    for (int k = 0; k < 200; ++k) {
        int n = 2 + static_cast<int>(rng.next() % 4);
        ComplexMatrix A = rng.normal_accretive(n);
        double closed = mu1_normal_accretive(A).first.mu1;
        double brute = mu1_brute(A, bopts).mu1;
        double gap = std::abs(closed - brute);
        worst_gap = std::max(worst_gap, gap);
        if (gap > 1e-6) ++bad;
    }

    ComplexMatrix D = mat2(1, 0, 0, Complex(3, 4));
    auto [res, trace] = mu1_normal_accretive(D);
    double brute_fixed = mu1_brute(D, bopts).mu1;
    bool fixed_ok = std::abs(res.mu1 - brute_fixed) <= 1e-8 && trace.F.size() == 1 &&
                    std::abs(trace.F[0].interiority - 7.0 / 12.0) < 1e-12 &&
                    trace.F[0].value < trace.E[0] && trace.F[0].value < trace.E[1];

    char d[200];
    std::snprintf(d, sizeof(d),
                  "200 matrices, worst |closed-brute| = %.2e; diag(1,3+4i) interiority 7/12 %s",
                  worst_gap, fixed_ok ? "confirmed" : "violated");
    report(3, "Normal closed form", bad == 0 && fixed_ok, d);
}

void criterion_4() {
    TestRng rng(20250404);
    int tested = 0, mismatches = 0;
    for (int k = 0; k < 10000; ++k) {
        Complex alpha(rng.uniform(-2.0, 3.0), rng.uniform(-3.0, 3.0));
        if (std::abs(alpha) < 1e-6) continue;
        double p = rng.uniform(1.02, 15.0);

        double margin8 = alpha.real() - (std::abs(p - 2.0) / (2.0 * std::sqrt(p - 1.0))) *
                                            std::abs(alpha.imag());
        double margin9 = std::acos(lp_threshold(p)) - std::abs(std::arg(alpha));
        double margin_mu = alpha.real() / std::abs(alpha) - lp_threshold(p);
        if (std::abs(margin8) < 1e-9 || std::abs(margin9) < 1e-9 || std::abs(margin_mu) < 1e-9)
            continue;

        bool f8 = cone_test_scalar(alpha, p);
        bool f9 = sector_membership(alpha, p);
        bool fmu = margin_mu > 0.0;
        ++tested;
        if (f8 != f9 || f8 != fmu) ++mismatches;
    }
    char d[160];
    std::snprintf(d, sizeof(d), "%d samples outside the 1e-9 band, %d mismatches", tested,
                  mismatches);
    report(4, "Scalar cone equivalence", mismatches == 0 && tested > 8000, d);
}

void criterion_5() {
    TestRng rng(20250505);
    GammaOptions gopts;
    int checked = 0, mismatches = 0, reciprocity_failures = 0;
    for (int k = 0; k < 100; ++k) {
        int n = 2 + static_cast<int>(rng.next() % 4);
        ComplexVector diag(n);
        for (int i = 0; i < n; ++i) diag[i] = rng.uniform(0.2, 5.0);
        ComplexMatrix A = ComplexMatrix::diag(diag);
        double lo = diag[0].real(), hi = diag[0].real();
        for (int i = 1; i < n; ++i) {
            lo = std::min(lo, diag[i].real());
            hi = std::max(hi, diag[i].real());
        }
        double kappa = hi / lo;
        double m = mu1_hermitian_pd(A).mu1;

        for (double p = 1.25; p <= 10.0; p += 0.75) {
            if (std::abs(p - 2.0) < 1e-9) continue;
            KappaWindow w = kappa_window(p);
            if (std::abs(w.C_L * w.C_R - 1.0) > 1e-9) ++reciprocity_failures;
            double gamma = gamma_minimize(A, p - 2.0, gopts).first;
            double margin = m - lp_threshold(p);
            if (std::abs(gamma) <= 1e-6 || std::abs(margin) <= 1e-6) continue;
            bool window_ok = (w.C_L < kappa) && (kappa < w.C_R);
            ++checked;
            if ((gamma > 1e-10) != window_ok) ++mismatches;
        }
    }
    char d[160];
    std::snprintf(d, sizeof(d), "%d (matrix, p) pairs decidable, %d mismatches, C_L*C_R ok",
                  checked, mismatches);
    report(5, "Spectral condition-number window", mismatches == 0 && reciprocity_failures == 0,
           d);
}

void criterion_6() {
    TestRng rng(20250606);
    int done = 0, norm_fail = 0, stat_fail = 0, min_fail = 0;
    while (done < 1000) {
        int n = 2 + static_cast<int>(rng.next() % 4);
        RealMatrix A(n, n);
        for (auto& x : A.a) x = rng.normal();
        double lmin = hermitian_part_min_eigenvalue(complexify(A));
        for (int i = 0; i < n; ++i) A(i, i) += std::abs(lmin) + 0.4;

        RealVector w = rng.real_unit(n);
        double b = rng.uniform() < 0.5 ? rng.uniform(-0.95, -0.05) : rng.uniform(0.05, 5.0);
        LagrangeTrace tr;
        try {
            tr = lagrange_stationary(A, w, b);
        } catch (const PreconditionError&) {
            continue;
        }
        if (std::abs(norm(tr.z_star) - 1.0) > 1e-10) ++norm_fail;
        if (tr.stationarity_residual > 1e-9) ++stat_fail;

        RealVector u = matvec(A, w);
        for (int j = 0; j < 1000; ++j) {
            RealVector z = rng.real_unit(n);
            double f = tr.q + b * dot(w, z) * dot(z, u);
            if (tr.f_at_star > f + 1e-8) {
                ++min_fail;
                break;
            }
        }
        ++done;
    }
    char d[160];
    std::snprintf(d, sizeof(d),
                  "1000 traces: |z*| failures %d, stationarity failures %d, minimality failures %d",
                  norm_fail, stat_fail, min_fail);
    report(6, "Lagrange machinery", norm_fail == 0 && stat_fail == 0 && min_fail == 0, d);
}

OUOperatorSpec coupled_spec() {
    ComplexMatrix A = mat2(1.0, Complex(0.25, 0.5), 0.0, Complex(1.25, 0.5));
    ComplexMatrix B = mat2(0.2, 0.2, 0.0, 0.4);
    RealMatrix S(2, 2);
    S(0, 1) = -1.0;
    S(1, 0) = 1.0;
    return make_ou_spec(A, B, S, 2);
}

void criterion_8() {
    OUOperatorSpec spec = coupled_spec();
    GridSpec grid{2, 12.0, 48};
    double dev_a = mass_check(spec, {0.3, -0.2}, 0.25, grid).deviation;
    double dev_b = mass_check(spec, {0.3, -0.2}, 1.0, grid).deviation;

    double coarse = mass_check(spec, {0.3, -0.2}, 0.25, GridSpec{2, 12.0, 17}).deviation;
    double fine = mass_check(spec, {0.3, -0.2}, 0.25, GridSpec{2, 12.0, 33}).deviation;
    bool shrink_ok = fine * 4.0 <= coarse && coarse > 0.0;

    char d[200];
    std::snprintf(d, sizeof(d),
                  "deviation %.2e (t=0.25), %.2e (t=1.0); refinement factor %.1fx",
                  dev_a, dev_b, coarse / std::max(fine, 1e-300));
    report(8, "Kernel mass identity", dev_a < 1e-6 && dev_b < 1e-6 && shrink_ok, d);
}

void criterion_9() {
    ComplexMatrix A(1, 1), B(1, 1);
    A(0, 0) = Complex(1.0, 0.5);
    RealMatrix S(2, 2);
    S(0, 1) = -1.0;
    S(1, 0) = 1.0;
    OUOperatorSpec spec = make_ou_spec(A, B, S, 2);

    GridSpec grid{2, 12.0, 40};
    GridFn g = sample_grid_fn(grid, 1, [](const RealVector& x) {
        double r2 = x[0] * x[0] + x[1] * x[1];
        return ComplexVector{Complex(std::exp(-r2 / 2.0), 0.0)};
    });

    struct Combo {
        double re_lambda, p, t_max;
        int n_time;
    };
    const Combo combos[3] = {{0.5, 2.0, 28.0, 64}, {1.0, 2.5, 14.0, 56}, {2.0, 3.0, 8.0, 48}};
    bool ok = true;
    std::string detail;
    for (const Combo& c : combos) {
        ResolventProbeResult r =
            resolvent_probe(spec, Complex(c.re_lambda, 0.0), g, c.p, c.t_max, c.n_time);
        bool pass = r.ratio <= r.bound * 1.01;
        ok = ok && pass;
        char piece[80];
        std::snprintf(piece, sizeof(piece), "%sgap %.1f: ratio %.4f <= %.4f",
                      detail.empty() ? "" : "; ", c.re_lambda, r.ratio, r.bound * 1.01);
        detail += piece;
    }
    report(9, "Resolvent estimate", ok, detail);
}

void criterion_10() {
    namespace fs = std::filesystem;
    fs::create_directories("acceptance_regression");

    const std::string matrix_json =
        R"({"rows":3,"cols":3,"entries":[[[0.4,1.2],[-0.3,0.7],[1.1,0]],)"
        R"([[0.2,-0.5],[0.9,0.1],[-0.8,0.3]],[[0,0.6],[0.5,-0.2],[1.3,0.4]]]})";
    {
        std::ofstream f("acceptance_regression/input.json", std::ios::binary);
        f << matrix_json;
    }

    // in-process: two independent runs of every report writer
    auto produce = [&]() {
        ComplexMatrix A = parse_complex_matrix(matrix_json);
        std::string s;
        s += dump_antieigen_result(mu1(A)) + "\n";
        s += dump_dissipativity_report(gamma_best(A, 3.5)) + "\n";
        s += dump_equivalence_result(check_equivalence(A, 3.5)) + "\n";
        s += dump_p_range(p_range(A)) + "\n";
        s += dump_two_vector_result(check_two_vector(A, 3.5)) + "\n";
        return s;
    };
    std::string run1 = produce();
    std::string run2 = produce();
    {
        std::ofstream f1("acceptance_regression/reports_run1.json", std::ios::binary);
        f1 << run1;
        std::ofstream f2("acceptance_regression/reports_run2.json", std::ios::binary);
        f2 << run2;
    }
    bool inproc_ok = (run1 == run2);

    bool cli_ok = true;
    if (!cli_path.empty()) {
        CliCapture a = run_cli("mu1 --matrix acceptance_regression/input.json --seed 7");
        CliCapture b = run_cli("mu1 --matrix acceptance_regression/input.json --seed 7");
        CliCapture c = run_cli("check --matrix acceptance_regression/input.json --p 3.5");
        CliCapture d = run_cli("check --matrix acceptance_regression/input.json --p 3.5");
        cli_ok = a.exit_code == 0 && c.exit_code == 0 && a.out == b.out && c.out == d.out;
    }

    report(10, "Determinism", inproc_ok && cli_ok,
           std::string("in-process runs ") + (inproc_ok ? "identical" : "differ") + ", CLI runs " +
               (cli_ok ? "identical" : "differ"));
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--cli") cli_path = argv[i + 1];

    criterion_1_and_7();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_8();
    criterion_9();
    criterion_10();

    if (g_failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criteria FAILED\n", g_failures);
    return g_failures;
}
