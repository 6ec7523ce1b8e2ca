#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "antieig/linalg.hpp"
#include "antieig/types.hpp"

namespace antieig {

enum class Mu1Method { brute, hermitian_pd, normal_accretive, scalar };

const char* to_string(Mu1Method m);

struct AntieigenResult {
    double mu1 = 0.0;                  // in [-1, 1]
    ComplexVector antieigenvector;     // unit norm witness
    double angle_rad = 0.0;            // arccos(mu1)
    Mu1Method method = Mu1Method::brute;
    int restarts_used = 0;
    std::optional<std::vector<double>> best_objective_history;
};

struct BruteOptions {
    int restarts = 64;
    int max_iters = 10000;
    double tol = 1e-10;
    uint64_t seed = 12345;
    bool keep_history = false;
};

struct FCandidate {
    int i = 0;
    int j = 0;
    double value = 0.0;
    double interiority = 0.0;  // |w_i|^2, strictly inside (0,1)
};

struct NormalFormTrace {
    std::vector<double> E;
    std::vector<FCandidate> F;
    RealMatrix rho;                 // rho(i,j) = |lambda_j| / |lambda_i|
    std::vector<double> r_values;   // r_k = a_k / |lambda_k|
    ComplexVector eigenvalues;
};

// Smallest value of Re<w,Aw>/|Aw| over unit w with Aw != 0, by multi-start
// projected gradient descent on the real-embedded sphere S^{2N-1}.
AntieigenResult mu1_brute(const ComplexMatrix& A, const BruteOptions& opts = {});

// Same objective for a real matrix over S^{n-1} (no embedding).
AntieigenResult mu1_brute_real(const RealMatrix& A, const BruteOptions& opts = {});

// Closed form for Hermitian positive definite A:
// mu1 = sqrt(l1*lN) / ((l1+lN)/2), witness along sqrt(lN) u1 + sqrt(l1) uN.
AntieigenResult mu1_hermitian_pd(const ComplexMatrix& A);

// Closed form for normal accretive A: mu1 = min(E u F) over the eigenvalue
// candidates, with the two-component antieigenvector when the minimizer sits
// in F.
std::pair<AntieigenResult, NormalFormTrace> mu1_normal_accretive(const ComplexMatrix& A);

enum class Mu1Dispatch { automatic, brute, hermitian, normal };

// Dispatcher: hermitian_pd when the structure allows, else normal_accretive,
// else brute force. Closed-form results are confirmed by a reduced-restart
// brute run to 1e-6.
AntieigenResult mu1(const ComplexMatrix& A, Mu1Dispatch method = Mu1Dispatch::automatic,
                    const BruteOptions& opts = {});

double angle(const ComplexMatrix& A);

// Eigendecomposition of a normal matrix via its commuting Hermitian and
// skew-Hermitian parts (clustered Jacobi refinement). Columns of vectors are
// orthonormal.
struct NormalEigenSystem {
    ComplexVector eigenvalues;
    ComplexMatrix eigenvectors;
};
NormalEigenSystem normal_eigen(const ComplexMatrix& A);

}  // namespace antieig
