#pragma once

#include <functional>
#include <vector>

#include "antieig/linalg.hpp"
#include "antieig/types.hpp"

namespace antieig {

// Operator data for L = A*Laplace + <Sx, grad> - B with A, B simultaneously
// diagonalizable and S skew-symmetric. V diagonalizes both A and B; beta_B is
// -lambda_min of the Hermitian part of B.
struct OUOperatorSpec {
    ComplexMatrix A;
    ComplexMatrix B;
    RealMatrix S;
    int d = 0;  // spatial dimension >= 2
    ComplexMatrix V;
    ComplexMatrix V_inv;
    ComplexVector lambda_A;
    ComplexVector lambda_B;
    double beta_B = 0.0;

    int N() const { return A.rows; }
};

// Validates shapes, skew-symmetry of S, Re(sigma(A)) > 0, and simultaneous
// diagonalizability; fails fast when the eigenvector matrix of A does not
// diagonalize B to 1e-9 relative residual.
OUOperatorSpec make_ou_spec(const ComplexMatrix& A, const ComplexMatrix& B, const RealMatrix& S,
                            int d);

struct GridSpec {
    int d = 2;
    double L = 12.0;  // per-axis extent [-L, L]
    int n = 48;       // per-axis point count (>= 8), uniform trapezoid rule
};

// Grid function: values[point * ncomp + c] over the row-major tensor grid.
struct GridFn {
    GridSpec grid;
    int ncomp = 1;
    std::vector<Complex> values;

    size_t points() const;
    Complex& at(size_t point, int comp) { return values[point * ncomp + comp]; }
    const Complex& at(size_t point, int comp) const { return values[point * ncomp + comp]; }
};

size_t grid_point_count(const GridSpec& g);
RealVector grid_point(const GridSpec& g, size_t index);
double grid_weight(const GridSpec& g, size_t index);
double grid_spacing(const GridSpec& g);

GridFn sample_grid_fn(const GridSpec& g, int ncomp,
                      const std::function<ComplexVector(const RealVector&)>& f);

// Heat kernel H(x, xi, t) = (4 pi t A)^{-d/2} exp(-Bt - (4tA)^{-1}|e^{tS}x - xi|^2),
// evaluated in the joint eigenbasis with principal-branch complex powers.
ComplexMatrix kernel_eval(const OUOperatorSpec& spec, const RealVector& x, const RealVector& xi,
                          double t);

// Tensor-grid trapezoid quadrature of [T(t)v](x) = int H(x,xi,t) v(xi) dxi.
// Checks that the kernel mass outside the box is below 1e-8 before running.
GridFn apply_semigroup(const OUOperatorSpec& spec, const GridFn& v, double t);

struct MassCheckResult {
    ComplexMatrix computed;  // int H(x, xi, t) dxi
    ComplexMatrix expected;  // exp(-B t)
    double deviation = 0.0;  // Frobenius distance
};

MassCheckResult mass_check(const OUOperatorSpec& spec, const RealVector& x, double t,
                           const GridSpec& grid);

// Sup-norm Chapman-Kolmogorov deviation between H(.,.,t+s) and the composed
// kernel, over a small deterministic set of (x, xi) pairs.
double chapman_check(const OUOperatorSpec& spec, double t, double s, const GridSpec& grid);

struct ResolventProbeResult {
    double ratio = 0.0;  // ||v||_{Lp,grid} / ||g||_{Lp,grid}
    double bound = 0.0;  // 1 / (Re(lambda) - beta_B)
    double tail = 0.0;   // e^{-(Re(lambda)-beta_B) T_max}, must be < 1e-6
};

// v = int_0^{T_max} e^{-lambda t} T(t) g dt by composite trapezoid in t.
ResolventProbeResult resolvent_probe(const OUOperatorSpec& spec, Complex lambda, const GridFn& g,
                                     double p, double T_max, int n_time);

double grid_lp_norm(const GridFn& f, double p);

// exp(-B t) through the joint eigenbasis.
ComplexMatrix matrix_exp_minus_Bt(const OUOperatorSpec& spec, double t);

}  // namespace antieig
