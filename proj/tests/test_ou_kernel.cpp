#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "antieig/ou_kernel.hpp"
#include "test_helpers.hpp"

using namespace antieig;
using testing::TestRng;
using testing::mat2;

namespace {

ComplexMatrix scalar1(Complex a) {
    ComplexMatrix m(1, 1);
    m(0, 0) = a;
    return m;
}

RealMatrix rotation_generator() {
    RealMatrix s(2, 2);
    s(0, 1) = -1.0;
    s(1, 0) = 1.0;
    return s;
}

RealMatrix zero2() { return RealMatrix(2, 2); }

OUOperatorSpec heat_spec() {
    return make_ou_spec(scalar1(1.0), scalar1(0.0), zero2(), 2);
}

OUOperatorSpec rotating_spec() {
    return make_ou_spec(scalar1(1.0), scalar1(0.0), rotation_generator(), 2);
}

// P diag(1, 1.25+0.5i) P^{-1} and P diag(0.2, 0.4) P^{-1} with P = [[1,1],[0,1]]:
// a simultaneously diagonalizable, non-normal pair with exact float entries.
OUOperatorSpec coupled_spec() {
    ComplexMatrix A = mat2(1.0, Complex(0.25, 0.5), 0.0, Complex(1.25, 0.5));
    ComplexMatrix B = mat2(0.2, 0.2, 0.0, 0.4);
    return make_ou_spec(A, B, rotation_generator(), 2);
}

}  // namespace

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(make_ou_spec(scalar1(1.0), scalar1(0.0), zero2(), 1), InputError);

    RealMatrix notskew(2, 2);
    notskew(0, 1) = 1.0;
    notskew(1, 0) = 1.0;
    CHECK_THROWS_AS(make_ou_spec(scalar1(1.0), scalar1(0.0), notskew, 2), PreconditionError);

    // Re sigma(A) > 0 violated
    CHECK_THROWS_AS(make_ou_spec(scalar1(Complex(0.0, 1.0)), scalar1(0.0), zero2(), 2),
                    PreconditionError);
    CHECK_THROWS_AS(make_ou_spec(mat2(-1, 0, 0, 2), ComplexMatrix::identity(2), zero2(), 2),
                    PreconditionError);

    // not simultaneously diagonalizable
    CHECK_THROWS_AS(make_ou_spec(mat2(1, 0, 0, 2), mat2(1, 1, 0, 2), zero2(), 2),
                    PreconditionError);
    CHECK_THROWS_AS(make_ou_spec(ComplexMatrix::identity(2), mat2(1, 1, 0, 1), zero2(), 2),
                    PreconditionError);

    // beta_B: B = delta I with Re delta = 1 shifts the half-plane by -1
    OUOperatorSpec s = make_ou_spec(scalar1(1.0), scalar1(Complex(1.0, 0.3)), zero2(), 2);
    CHECK(s.beta_B == doctest::Approx(-1.0).epsilon(1e-12));

    // repeated eigenvalues of A are split by B
    OUOperatorSpec s2 =
        make_ou_spec(ComplexMatrix::identity(2), mat2(1, 0, 0, 2), zero2(), 2);
    CHECK(s2.lambda_B[0].real() + s2.lambda_B[1].real() == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("joint diagonalization residuals") {
    OUOperatorSpec s = coupled_spec();
    ComplexMatrix LA = ComplexMatrix::diag(s.lambda_A);
    ComplexMatrix LB = ComplexMatrix::diag(s.lambda_B);
    CHECK(frob(sub(matmul(s.A, s.V), matmul(s.V, LA))) < 1e-9 * std::max(1.0, frob(s.A)));
    CHECK(frob(sub(matmul(s.B, s.V), matmul(s.V, LB))) < 1e-9 * std::max(1.0, frob(s.B)));
    for (const Complex& lam : s.lambda_A) CHECK(lam.real() > 0.0);
}

TEST_CASE("scalar kernel is the classical heat kernel") {
    OUOperatorSpec s = heat_spec();
    RealVector x = {0.4, -0.3}, xi = {-0.2, 0.5};
    for (double t : {0.1, 0.7, 2.0}) {
        ComplexMatrix H = kernel_eval(s, x, xi, t);
        double d2 = 0.0;
        for (int k = 0; k < 2; ++k) d2 += (x[k] - xi[k]) * (x[k] - xi[k]);
        double expect = std::exp(-d2 / (4.0 * t)) / (4.0 * M_PI * t);
        CHECK(H(0, 0).real() == doctest::Approx(expect).epsilon(1e-13));
        CHECK(std::abs(H(0, 0).imag()) < 1e-18);
    }
    CHECK_THROWS_AS(kernel_eval(s, x, xi, 0.0), InputError);
    CHECK_THROWS_AS(kernel_eval(s, x, xi, -1.0), InputError);
}

TEST_CASE("kernel peak value with drift") {
    OUOperatorSpec s = rotating_spec();
    double t = 0.6;
    RealMatrix E = expm_skew(s.S, t);
    RealVector x = {0.7, 0.2};
    RealVector xi = matvec(E, x);  // xi = e^{tS} x makes s = 0
    ComplexMatrix H = kernel_eval(s, x, xi, t);
    CHECK(H(0, 0).real() == doctest::Approx(1.0 / (4.0 * M_PI * t)).epsilon(1e-13));
}

TEST_CASE("system kernel factors through the eigenbasis") {
    OUOperatorSpec s = coupled_spec();
    OUOperatorSpec s0 = make_ou_spec(scalar1(s.lambda_A[0]), scalar1(s.lambda_B[0]),
                                     rotation_generator(), 2);
    OUOperatorSpec s1 = make_ou_spec(scalar1(s.lambda_A[1]), scalar1(s.lambda_B[1]),
                                     rotation_generator(), 2);
    RealVector x = {0.3, -0.4}, xi = {0.1, 0.6};
    for (double t : {0.25, 1.0}) {
        ComplexMatrix H = kernel_eval(s, x, xi, t);
        ComplexVector h = {kernel_eval(s0, x, xi, t)(0, 0), kernel_eval(s1, x, xi, t)(0, 0)};
        ComplexMatrix Hd = matmul(s.V, matmul(ComplexMatrix::diag(h), s.V_inv));
        CHECK(frob(sub(H, Hd)) < 1e-12 * std::max(1.0, frob(H)));
    }
}

TEST_CASE("kernel is invariant under the drift rotation") {
    OUOperatorSpec s = rotating_spec();
    double t = 0.8, tau = 0.5;
    RealMatrix Q = expm_skew(s.S, tau);
    RealVector x = {0.5, -0.2}, xi = {-0.3, 0.4};
    ComplexMatrix H1 = kernel_eval(s, x, xi, t);
    ComplexMatrix H2 = kernel_eval(s, matvec(Q, x), matvec(Q, xi), t);
    CHECK(std::abs(H1(0, 0) - H2(0, 0)) < 1e-14 * std::abs(H1(0, 0)));
}

TEST_CASE("apply_semigroup: identity at t = 0 and constants are preserved") {
    OUOperatorSpec s = rotating_spec();
    GridSpec grid{2, 12.0, 48};
    GridFn v = sample_grid_fn(grid, 1, [](const RealVector& x) {
        return ComplexVector{Complex(std::sin(x[0]) * std::exp(-x[1] * x[1]), 0.0)};
    });
    GridFn v0 = apply_semigroup(s, v, 0.0);
    for (size_t i = 0; i < v.values.size(); ++i) CHECK(v0.values[i] == v.values[i]);

    // constant input, B = 0: the mass identity forces T(t)c = c away from the
    // boundary
    GridFn c = sample_grid_fn(grid, 1, [](const RealVector&) {
        return ComplexVector{Complex(0.7, 0.0)};
    });
    GridFn ct = apply_semigroup(s, c, 0.5);
    const size_t npts = grid_point_count(grid);
    for (size_t pt = 0; pt < npts; ++pt) {
        RealVector x = grid_point(grid, pt);
        if (std::abs(x[0]) > 4.0 || std::abs(x[1]) > 4.0) continue;
        CHECK(std::abs(ct.at(pt, 0) - Complex(0.7, 0.0)) < 1e-6);
    }

    CHECK_THROWS_AS(apply_semigroup(s, v, -0.5), InputError);
    // kernel wider than the box is rejected with the required extent
    CHECK_THROWS_AS(apply_semigroup(s, v, 40.0), InputError);
}

TEST_CASE("gaussian transported through the rotating semigroup") {
    OUOperatorSpec s = rotating_spec();
    GridSpec grid{2, 12.0, 64};
    double a = 1.3;  // input variance
    GridFn v = sample_grid_fn(grid, 1, [a](const RealVector& x) {
        double r2 = x[0] * x[0] + x[1] * x[1];
        return ComplexVector{Complex(std::exp(-r2 / (2.0 * a)), 0.0)};
    });
    double t = 0.7;
    GridFn out = apply_semigroup(s, v, t);

    // closed form: heat convolution then rotation; amplitude a/(a+2t)
    RealMatrix E = expm_skew(s.S, t);
    const size_t npts = grid_point_count(grid);
    double worst = 0.0;
    for (size_t pt = 0; pt < npts; ++pt) {
        RealVector x = grid_point(grid, pt);
        if (std::abs(x[0]) > 5.0 || std::abs(x[1]) > 5.0) continue;
        RealVector y = matvec(E, x);
        double r2 = y[0] * y[0] + y[1] * y[1];
        double expect = (a / (a + 2.0 * t)) * std::exp(-r2 / (2.0 * (a + 2.0 * t)));
        worst = std::max(worst, std::abs(out.at(pt, 0).real() - expect));
        worst = std::max(worst, std::abs(out.at(pt, 0).imag()));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("semigroup property on the grid") {
    OUOperatorSpec s = rotating_spec();
    GridSpec grid{2, 12.0, 48};
    GridFn v = sample_grid_fn(grid, 1, [](const RealVector& x) {
        double r2 = x[0] * x[0] + x[1] * x[1];
        return ComplexVector{Complex(std::exp(-r2 / 2.0), 0.2 * std::exp(-r2 / 3.0))};
    });
    double t = 0.4, u = 0.35;
    GridFn two_step = apply_semigroup(s, apply_semigroup(s, v, t), u);
    GridFn one_step = apply_semigroup(s, v, t + u);
    const size_t npts = grid_point_count(grid);
    double worst = 0.0;
    for (size_t pt = 0; pt < npts; ++pt) {
        RealVector x = grid_point(grid, pt);
        if (std::abs(x[0]) > 4.0 || std::abs(x[1]) > 4.0) continue;
        worst = std::max(worst, std::abs(two_step.at(pt, 0) - one_step.at(pt, 0)));
    }
    CHECK(worst < 1e-4);
}

TEST_CASE("mass identity: int H dxi = exp(-Bt)") {
    OUOperatorSpec heat = heat_spec();
    MassCheckResult m0 = mass_check(heat, {0.0, 0.0}, 0.5, GridSpec{2, 12.0, 48});
    CHECK(m0.expected(0, 0) == Complex(1.0, 0.0));
    CHECK(m0.deviation < 1e-10);

    OUOperatorSpec sB = make_ou_spec(ComplexMatrix::identity(2), mat2(1, 0, 0, 2), zero2(), 2);
    MassCheckResult mB = mass_check(sB, {0.3, -0.1}, 0.5, GridSpec{2, 12.0, 48});
    CHECK(std::abs(mB.expected(0, 0) - Complex(std::exp(-0.5), 0.0)) < 1e-9);
    CHECK(std::abs(mB.expected(1, 1) - Complex(std::exp(-1.0), 0.0)) < 1e-9);
    CHECK(mB.deviation < 1e-6);

    OUOperatorSpec sc = coupled_spec();
    for (double t : {0.25, 1.0}) {
        MassCheckResult mc = mass_check(sc, {0.3, -0.2}, t, GridSpec{2, 12.0, 48});
        CHECK(mc.deviation < 1e-6);
    }
}

TEST_CASE("mass deviation shrinks at least 4x when the spacing halves") {
    OUOperatorSpec sc = coupled_spec();
    // deliberately under-resolved so the trapezoid error dominates
    double coarse = mass_check(sc, {0.3, -0.2}, 0.25, GridSpec{2, 12.0, 17}).deviation;
    double fine = mass_check(sc, {0.3, -0.2}, 0.25, GridSpec{2, 12.0, 33}).deviation;
    CHECK(coarse > 1e-12);
    CHECK(fine * 4.0 <= coarse);
}

TEST_CASE("chapman-kolmogorov composition") {
    OUOperatorSpec heat = heat_spec();
    CHECK(chapman_check(heat, 0.5, 0.4, GridSpec{2, 12.0, 48}) < 1e-6);
    CHECK_THROWS_AS(chapman_check(heat, 1e-4, 0.5, GridSpec{2, 12.0, 48}), InputError);
    CHECK_THROWS_AS(chapman_check(heat, 0.5, 1e-4, GridSpec{2, 12.0, 48}), InputError);

    OUOperatorSpec sc = coupled_spec();
    CHECK(chapman_check(sc, 0.5, 0.4, GridSpec{2, 14.0, 72}) < 1e-4);
}

TEST_CASE("resolvent probe: classical heat case obeys the Fourier bound") {
    OUOperatorSpec heat = heat_spec();
    GridSpec grid{2, 12.0, 40};
    double sigma = 1.0;
    GridFn g = sample_grid_fn(grid, 1, [sigma](const RealVector& x) {
        double r2 = x[0] * x[0] + x[1] * x[1];
        return ComplexVector{Complex(std::exp(-r2 / (2.0 * sigma * sigma)), 0.0)};
    });
    ResolventProbeResult r = resolvent_probe(heat, Complex(1.0, 0.0), g, 2.0, 16.0, 64);
    CHECK(r.bound == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.ratio <= 1.0 * 1.01);

    // Fourier-side oracle: ratio^2 = int e^{-k^2} k / (1+k^2)^2 dk / int e^{-k^2} k dk
    double num = 0.0, den = 0.0;
    const int nk = 200000;
    const double kmax = 16.0;
    for (int i = 0; i <= nk; ++i) {
        double k = kmax * i / nk;
        double w = (i == 0 || i == nk) ? 0.5 : 1.0;
        double base = std::exp(-k * k * sigma * sigma) * k;
        num += w * base / ((1.0 + k * k) * (1.0 + k * k));
        den += w * base;
    }
    double fourier_ratio = std::sqrt(num / den);
    CHECK(r.ratio == doctest::Approx(fourier_ratio).epsilon(5e-3));

    CHECK_THROWS_AS(resolvent_probe(heat, Complex(0.05, 0.0), g, 2.0, 16.0, 64), InputError);
    CHECK_THROWS_AS(resolvent_probe(heat, Complex(1.0, 0.0), g, 2.0, 2.0, 64), InputError);
}

TEST_CASE("resolvent probe: rotating complex diffusion regression") {
    OUOperatorSpec s =
        make_ou_spec(scalar1(Complex(1.0, 0.5)), scalar1(0.0), rotation_generator(), 2);
    GridSpec grid{2, 12.0, 40};
    GridFn g = sample_grid_fn(grid, 1, [](const RealVector& x) {
        double r2 = x[0] * x[0] + x[1] * x[1];
        return ComplexVector{Complex(std::exp(-r2 / 2.0), 0.0)};
    });
    ResolventProbeResult r = resolvent_probe(s, Complex(2.0, 0.0), g, 3.0, 8.0, 48);
    CHECK(r.bound == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.ratio <= 0.5 * 1.01);
    // regression value pinned from the first run of this configuration
    CHECK(r.ratio == doctest::Approx(0.34566).epsilon(1e-3));
}

TEST_CASE("grid lp norm sanity") {
    GridSpec grid{2, 6.0, 32};
    GridFn one = sample_grid_fn(grid, 1, [](const RealVector&) {
        return ComplexVector{Complex(1.0, 0.0)};
    });
    // ||1||_p over the box equals (area)^{1/p}
    for (double p : {1.0, 2.0, 3.0}) {
        CHECK(grid_lp_norm(one, p) == doctest::Approx(std::pow(144.0, 1.0 / p)).epsilon(1e-12));
    }
}
