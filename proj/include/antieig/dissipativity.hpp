#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "antieig/antieigen.hpp"
#include "antieig/linalg.hpp"
#include "antieig/types.hpp"

namespace antieig {

// |p-2|/p, computed as |1 - 2/p| so Hoelder-conjugate pairs agree exactly.
double lp_threshold(double p);

struct DissipativityReport {
    double p = 0.0;
    double b = 0.0;                 // p - 2
    double gamma_best = 0.0;        // min over unit w of (1+b/2) Re<w,Aw> - (|b|/2)|Aw|
    ComplexVector witness_w;        // unit minimizer
    double threshold = 0.0;         // |p-2|/p
    double mu1 = 0.0;
    double margin = 0.0;            // mu1 - threshold
    bool verdict = false;           // gamma_best > tol_decide
    double accretivity_constant = 0.0;  // gamma_best at p = 2, i.e. lambda_min of the Hermitian part
    double tol_decide = 1e-10;
};

struct GammaOptions {
    int restarts = 64;
    int max_iters = 10000;
    double tol = 1e-10;
    uint64_t seed = 12345;
};

DissipativityReport gamma_best(const ComplexMatrix& A, double p, const GammaOptions& opts = {});

// Minimum of the reduced functional only (no report assembly).
std::pair<double, ComplexVector> gamma_minimize(const ComplexMatrix& A, double b,
                                                const GammaOptions& opts = {});

struct TwoVectorResult {
    double min_found = 0.0;
    ComplexVector witness_w;
    ComplexVector witness_z;
};

// Independent oracle for the two-vector form: samples unit w, closes the
// inner z-minimum with the Lagrange solution, then refines the best samples
// by alternating exact coordinate minimization (z: closed form, w: smallest
// eigenvector of the z-frozen quadratic form).
TwoVectorResult check_two_vector(const ComplexMatrix& A, double p, int samples = 256,
                                 uint64_t seed = 12345);

struct LagrangeTrace {
    RealVector w;
    double q = 0.0;       // <w, Aw>
    double r = 0.0;       // |Aw|
    double alpha = 0.0;   // <z, Aw>
    double beta = 0.0;    // <w, z>
    double multiplier_mu = 0.0;  // -b*alpha*beta
    RealVector z_star;
    double f_at_star = 0.0;      // (1+b/2) q - (|b|/2) r
    double stationarity_residual = 0.0;
};

// Stationary inner minimizer for real matrices and real unit w with w, Aw
// linearly independent. alpha and beta follow the sign rule: the
// (-sqrt(r(r-q)/2), +sqrt((r-q)/(2r))) family for b > 0 and the
// (+sqrt(r(r+q)/2), +sqrt((r+q)/(2r))) family for b < 0.
LagrangeTrace lagrange_stationary(const RealMatrix& A, const RealVector& w, double b);
LagrangeTrace lagrange_stationary(const ComplexMatrix& A, const RealVector& w, double b);

struct EquivalenceResult {
    bool verdict_dissipativity = false;
    bool verdict_antieigen = false;
    bool agree = false;
    double margin = 0.0;     // mu1 - threshold
    double gamma = 0.0;
    double threshold = 0.0;
    double mu1 = 0.0;
    bool invertible = false;
    bool indeterminate = false;  // within the decision band around either zero
    double decision_band = 1e-6;
};

EquivalenceResult check_equivalence(const ComplexMatrix& A, double p,
                                    const GammaOptions& opts = {});

struct PRange {
    bool empty = true;
    double p_lower = 0.0;
    double p_upper = 0.0;
    bool upper_unbounded = false;
    double mu1 = 0.0;
};

// Interval of p with mu1(A) > |p-2|/p: (2/(1+m), 2/(1-m)) for 0 < m < 1,
// all of (1, inf) for m >= 1, empty for m <= 0 or singular A.
PRange p_range(const ComplexMatrix& A, const BruteOptions& opts = {});

}  // namespace antieig
