#pragma once

#include "antieig/types.hpp"

namespace antieig {

// Standard inner product <u,v> = conj(u)^T v, conjugate-linear in the first
// argument. Throws InputError on dimension mismatch.
Complex inner(const ComplexVector& u, const ComplexVector& v);

double norm(const ComplexVector& v);
double norm(const RealVector& v);
double dot(const RealVector& u, const RealVector& v);

ComplexVector matvec(const ComplexMatrix& A, const ComplexVector& x);
RealVector matvec(const RealMatrix& A, const RealVector& x);
ComplexMatrix matmul(const ComplexMatrix& A, const ComplexMatrix& B);
RealMatrix matmul(const RealMatrix& A, const RealMatrix& B);
ComplexMatrix adjoint(const ComplexMatrix& A);
RealMatrix transpose(const RealMatrix& A);

double frob(const ComplexMatrix& A);
double frob(const RealMatrix& A);

ComplexMatrix scale(const ComplexMatrix& A, Complex c);
ComplexMatrix add(const ComplexMatrix& A, const ComplexMatrix& B);
ComplexMatrix sub(const ComplexMatrix& A, const ComplexMatrix& B);

// Hermitian and skew-Hermitian parts: A = herm(A) + i*skewherm(A), both Hermitian.
ComplexMatrix hermitian_part(const ComplexMatrix& A);
ComplexMatrix skewhermitian_part_over_i(const ComplexMatrix& A);

bool is_real_entried(const ComplexMatrix& A, double tol = 0.0);
ComplexMatrix complexify(const RealMatrix& A);
RealMatrix real_part(const ComplexMatrix& A);

// Real embedding of proof Case 2: A = A1 + i*A2 maps to the 2N x 2N block
// matrix [[A1, -A2], [A2, A1]], and w = w1 + i*w2 maps to (w1; w2). These
// satisfy Re<w,z> = <w_R,z_R>, Re<w,Aw> = <w_R, A_R w_R>, |Aw| = |A_R w_R|.
RealMatrix real_embed_matrix(const ComplexMatrix& A);
RealVector real_embed_vector(const ComplexVector& w);
ComplexVector complex_from_embedded(const RealVector& w);

struct HermitianEigenSystem {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // unitary, columns are eigenvectors
};

// Cyclic Jacobi eigensolver for Hermitian matrices. Residual contract:
// ||A u_j - lambda_j u_j|| <= 1e-10 ||A||_F and U unitary to 1e-12.
HermitianEigenSystem hermitian_eigen(const ComplexMatrix& A);

// e^{tS} for skew-symmetric S via scaling-and-squaring with a [6/6] Pade
// approximant. Result is orthogonal to 1e-12.
RealMatrix expm_skew(const RealMatrix& S, double t);

struct StructuralFlags {
    bool hermitian = false;
    bool normal = false;
    bool accretive = false;
    bool strictly_accretive = false;
    bool invertible = false;
};

StructuralFlags structural_predicates(const ComplexMatrix& A);

double smallest_singular_value(const ComplexMatrix& A);
double hermitian_part_min_eigenvalue(const ComplexMatrix& A);

// LU factorization with partial pivoting for square complex systems.
struct ComplexLU {
    ComplexMatrix lu;
    std::vector<int> perm;
    bool singular = false;
};

ComplexLU lu_factor(const ComplexMatrix& A);
ComplexVector lu_solve(const ComplexLU& f, ComplexVector b);
ComplexMatrix lu_solve_matrix(const ComplexLU& f, const ComplexMatrix& B);
ComplexMatrix inverse(const ComplexMatrix& A);

RealMatrix real_lu_solve_matrix(const RealMatrix& A, const RealMatrix& B);

}  // namespace antieig
