#include "antieig/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace antieig {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

void require_finite(const ComplexMatrix& m, const std::string& what) {
    for (const Complex& z : m.a)
        if (!finite(z)) throw InputError(what + ": non-finite entry");
}

void require_finite(const RealMatrix& m, const std::string& what) {
    for (double x : m.a)
        if (!std::isfinite(x)) throw InputError(what + ": non-finite entry");
}

void require_finite(const ComplexVector& v, const std::string& what) {
    for (const Complex& z : v)
        if (!finite(z)) throw InputError(what + ": non-finite entry");
}

void require_square(const ComplexMatrix& m, const std::string& what) {
    if (!m.square()) throw InputError(what + ": matrix must be square and non-empty");
}

Complex inner(const ComplexVector& u, const ComplexVector& v) {
    if (u.size() != v.size()) throw InputError("inner: dimension mismatch");
    Complex s = 0.0;
    for (size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
    return s;
}

double norm(const ComplexVector& v) {
    double s = 0.0;
    for (const Complex& z : v) s += std::norm(z);
    return std::sqrt(s);
}

double norm(const RealVector& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double dot(const RealVector& u, const RealVector& v) {
    double s = 0.0;
    for (size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
}

ComplexVector matvec(const ComplexMatrix& A, const ComplexVector& x) {
    if (static_cast<size_t>(A.cols) != x.size()) throw InputError("matvec: dimension mismatch");
    ComplexVector y(A.rows, Complex(0.0));
    for (int i = 0; i < A.rows; ++i) {
        Complex s = 0.0;
        for (int j = 0; j < A.cols; ++j) s += A(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

RealVector matvec(const RealMatrix& A, const RealVector& x) {
    if (static_cast<size_t>(A.cols) != x.size()) throw InputError("matvec: dimension mismatch");
    RealVector y(A.rows, 0.0);
    for (int i = 0; i < A.rows; ++i) {
        double s = 0.0;
        for (int j = 0; j < A.cols; ++j) s += A(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

ComplexMatrix matmul(const ComplexMatrix& A, const ComplexMatrix& B) {
    if (A.cols != B.rows) throw InputError("matmul: dimension mismatch");
    ComplexMatrix C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            Complex aik = A(i, k);
            if (aik == Complex(0.0)) continue;
            for (int j = 0; j < B.cols; ++j) C(i, j) += aik * B(k, j);
        }
    return C;
}

RealMatrix matmul(const RealMatrix& A, const RealMatrix& B) {
    if (A.cols != B.rows) throw InputError("matmul: dimension mismatch");
    RealMatrix C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            double aik = A(i, k);
            for (int j = 0; j < B.cols; ++j) C(i, j) += aik * B(k, j);
        }
    return C;
}

ComplexMatrix adjoint(const ComplexMatrix& A) {
    ComplexMatrix B(A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) B(j, i) = std::conj(A(i, j));
    return B;
}

RealMatrix transpose(const RealMatrix& A) {
    RealMatrix B(A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) B(j, i) = A(i, j);
    return B;
}

double frob(const ComplexMatrix& A) {
    double s = 0.0;
    for (const Complex& z : A.a) s += std::norm(z);
    return std::sqrt(s);
}

double frob(const RealMatrix& A) {
    double s = 0.0;
    for (double x : A.a) s += x * x;
    return std::sqrt(s);
}

ComplexMatrix scale(const ComplexMatrix& A, Complex c) {
    ComplexMatrix B = A;
    for (Complex& z : B.a) z *= c;
    return B;
}

ComplexMatrix add(const ComplexMatrix& A, const ComplexMatrix& B) {
    if (A.rows != B.rows || A.cols != B.cols) throw InputError("add: shape mismatch");
    ComplexMatrix C = A;
    for (size_t i = 0; i < C.a.size(); ++i) C.a[i] += B.a[i];
    return C;
}

ComplexMatrix sub(const ComplexMatrix& A, const ComplexMatrix& B) {
    if (A.rows != B.rows || A.cols != B.cols) throw InputError("sub: shape mismatch");
    ComplexMatrix C = A;
    for (size_t i = 0; i < C.a.size(); ++i) C.a[i] -= B.a[i];
    return C;
}

ComplexMatrix hermitian_part(const ComplexMatrix& A) {
    require_square(A, "hermitian_part");
    ComplexMatrix H(A.rows, A.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) H(i, j) = 0.5 * (A(i, j) + std::conj(A(j, i)));
    return H;
}

ComplexMatrix skewhermitian_part_over_i(const ComplexMatrix& A) {
    require_square(A, "skewhermitian_part_over_i");
    ComplexMatrix K(A.rows, A.cols);
    const Complex half_over_i(0.0, -0.5);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) K(i, j) = half_over_i * (A(i, j) - std::conj(A(j, i)));
    return K;
}

bool is_real_entried(const ComplexMatrix& A, double tol) {
    for (const Complex& z : A.a)
        if (std::abs(z.imag()) > tol) return false;
    return true;
}

ComplexMatrix complexify(const RealMatrix& A) {
    ComplexMatrix B(A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) B.a[i] = A.a[i];
    return B;
}

RealMatrix real_part(const ComplexMatrix& A) {
    RealMatrix B(A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) B.a[i] = A.a[i].real();
    return B;
}

RealMatrix real_embed_matrix(const ComplexMatrix& A) {
    require_square(A, "real_embed_matrix");
    const int n = A.rows;
    RealMatrix R(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double re = A(i, j).real();
            double im = A(i, j).imag();
            R(i, j) = re;
            R(i, j + n) = -im;
            R(i + n, j) = im;
            R(i + n, j + n) = re;
        }
    return R;
}

RealVector real_embed_vector(const ComplexVector& w) {
    const int n = static_cast<int>(w.size());
    RealVector r(2 * n);
    for (int i = 0; i < n; ++i) {
        r[i] = w[i].real();
        r[i + n] = w[i].imag();
    }
    return r;
}

ComplexVector complex_from_embedded(const RealVector& w) {
    if (w.size() % 2 != 0) throw InputError("complex_from_embedded: odd dimension");
    const int n = static_cast<int>(w.size() / 2);
    ComplexVector z(n);
    for (int i = 0; i < n; ++i) z[i] = Complex(w[i], w[i + n]);
    return z;
}

HermitianEigenSystem hermitian_eigen(const ComplexMatrix& A) {
    require_square(A, "hermitian_eigen");
    require_finite(A, "hermitian_eigen");
    const int n = A.rows;
    const double scale_a = frob(A);
    const double herm_dev = frob(sub(A, adjoint(A)));
    if (herm_dev > 1e-12 * std::max(1.0, scale_a))
        throw PreconditionError("hermitian_eigen: matrix is not Hermitian");

    // Work on the symmetrized copy so the Jacobi updates see an exactly
    // Hermitian matrix.
    ComplexMatrix M = hermitian_part(A);
    ComplexMatrix V = ComplexMatrix::identity(n);

    auto offdiag = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) s += std::norm(M(i, j));
        return std::sqrt(s);
    };

    const double stop = 1e-14 * std::max(1.0, scale_a);
    const int max_sweeps = 60;
    bool converged = (n == 1) || offdiag() <= stop;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                Complex apq = M(p, q);
                double m = std::abs(apq);
                if (m <= 1e-300) {
                    M(p, q) = 0.0;
                    M(q, p) = 0.0;
                    continue;
                }
                Complex f = apq / m;  // unit phase
                double app = M(p, p).real();
                double aqq = M(q, q).real();
                double tau = (aqq - app) / (2.0 * m);
                double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                        : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;

                // Unitary pair rotation R: R(p,p)=c, R(p,q)=s*f,
                // R(q,p)=-s*conj(f), R(q,q)=c; apply M <- R^* M R, V <- V R.
                for (int k = 0; k < n; ++k) {
                    Complex mpk = M(p, k);
                    Complex mqk = M(q, k);
                    M(p, k) = c * mpk - s * f * mqk;
                    M(q, k) = s * std::conj(f) * mpk + c * mqk;
                }
                for (int k = 0; k < n; ++k) {
                    Complex mkp = M(k, p);
                    Complex mkq = M(k, q);
                    M(k, p) = c * mkp - s * std::conj(f) * mkq;
                    M(k, q) = s * f * mkp + c * mkq;
                }
                M(p, p) = Complex(app - t * m, 0.0);
                M(q, q) = Complex(aqq + t * m, 0.0);
                M(p, q) = 0.0;
                M(q, p) = 0.0;
                for (int k = 0; k < n; ++k) {
                    Complex vkp = V(k, p);
                    Complex vkq = V(k, q);
                    V(k, p) = c * vkp - s * std::conj(f) * vkq;
                    V(k, q) = s * f * vkp + c * vkq;
                }
            }
        }
        if (offdiag() <= stop) converged = true;
    }
    if (!converged) throw NumericalError("hermitian_eigen: Jacobi sweeps did not converge");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return M(i, i).real() < M(j, j).real(); });

    HermitianEigenSystem out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (int j = 0; j < n; ++j) {
        out.eigenvalues[j] = M(order[j], order[j]).real();
        for (int i = 0; i < n; ++i) out.eigenvectors(i, j) = V(i, order[j]);
    }
    return out;
}

RealMatrix expm_skew(const RealMatrix& S, double t) {
    if (!S.square()) throw InputError("expm_skew: matrix must be square");
    require_finite(S, "expm_skew");
    if (!std::isfinite(t)) throw InputError("expm_skew: non-finite t");
    const int n = S.rows;
    double skew_dev = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) skew_dev += (S(i, j) + S(j, i)) * (S(i, j) + S(j, i));
    skew_dev = std::sqrt(skew_dev);
    if (skew_dev > 1e-12 * std::max(1.0, frob(S)))
        throw PreconditionError("expm_skew: matrix is not skew-symmetric");

    RealMatrix X(n, n);
    for (size_t i = 0; i < X.a.size(); ++i) X.a[i] = t * S.a[i];

    double nrm = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += std::abs(X(i, j));
        nrm = std::max(nrm, row);
    }
    int squarings = 0;
    if (nrm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
    const double factor = std::ldexp(1.0, -squarings);
    for (double& x : X.a) x *= factor;

    // [6/6] Pade of exp; for skew X the result is orthogonal by construction.
    static const double b[7] = {1.0,        1.0 / 2.0,     5.0 / 44.0, 1.0 / 66.0,
                                1.0 / 792.0, 1.0 / 15840.0, 1.0 / 665280.0};
    RealMatrix P = RealMatrix::identity(n);  // X^0
    RealMatrix N(n, n), D(n, n);
    for (int i = 0; i < n; ++i) {
        N(i, i) = b[0];
        D(i, i) = b[0];
    }
    double sign = 1.0;
    for (int k = 1; k <= 6; ++k) {
        P = matmul(P, X);
        sign = -sign;
        for (size_t i = 0; i < P.a.size(); ++i) {
            N.a[i] += b[k] * P.a[i];
            D.a[i] += sign * b[k] * P.a[i];
        }
    }
    RealMatrix E = real_lu_solve_matrix(D, N);
    for (int k = 0; k < squarings; ++k) E = matmul(E, E);
    return E;
}

double smallest_singular_value(const ComplexMatrix& A) {
    require_square(A, "smallest_singular_value");
    ComplexMatrix AtA = matmul(adjoint(A), A);
    HermitianEigenSystem es = hermitian_eigen(AtA);
    return std::sqrt(std::max(0.0, es.eigenvalues.front()));
}

double hermitian_part_min_eigenvalue(const ComplexMatrix& A) {
    HermitianEigenSystem es = hermitian_eigen(hermitian_part(A));
    return es.eigenvalues.front();
}

StructuralFlags structural_predicates(const ComplexMatrix& A) {
    require_square(A, "structural_predicates");
    require_finite(A, "structural_predicates");
    const double s = frob(A);
    const double tol = 1e-12 * std::max(1.0, s);
    StructuralFlags flags;
    flags.hermitian = frob(sub(A, adjoint(A))) <= tol;
    ComplexMatrix Ah = adjoint(A);
    flags.normal = frob(sub(matmul(A, Ah), matmul(Ah, A))) <= 1e-12 * std::max(1.0, s * s);
    double lmin = hermitian_part_min_eigenvalue(A);
    flags.accretive = lmin >= -tol;
    flags.strictly_accretive = lmin > tol;
    flags.invertible = smallest_singular_value(A) > 1e-12 * std::max(1.0, s);
    return flags;
}

ComplexLU lu_factor(const ComplexMatrix& A) {
    require_square(A, "lu_factor");
    const int n = A.rows;
    ComplexLU f;
    f.lu = A;
    f.perm.resize(n);
    std::iota(f.perm.begin(), f.perm.end(), 0);
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(f.lu(k, k));
        for (int i = k + 1; i < n; ++i) {
            double m = std::abs(f.lu(i, k));
            if (m > best) {
                best = m;
                piv = i;
            }
        }
        if (best == 0.0) {
            f.singular = true;
            continue;
        }
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(piv, j));
            std::swap(f.perm[k], f.perm[piv]);
        }
        for (int i = k + 1; i < n; ++i) {
            Complex l = f.lu(i, k) / f.lu(k, k);
            f.lu(i, k) = l;
            for (int j = k + 1; j < n; ++j) f.lu(i, j) -= l * f.lu(k, j);
        }
    }
    return f;
}

ComplexVector lu_solve(const ComplexLU& f, ComplexVector b) {
    const int n = f.lu.rows;
    if (f.singular) throw NumericalError("lu_solve: singular matrix");
    if (static_cast<int>(b.size()) != n) throw InputError("lu_solve: dimension mismatch");
    ComplexVector x(n);
    for (int i = 0; i < n; ++i) x[i] = b[f.perm[i]];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
    for (int i = n - 1; i >= 0; --i) {
        for (int j = i + 1; j < n; ++j) x[i] -= f.lu(i, j) * x[j];
        x[i] /= f.lu(i, i);
    }
    return x;
}

ComplexMatrix lu_solve_matrix(const ComplexLU& f, const ComplexMatrix& B) {
    const int n = f.lu.rows;
    if (B.rows != n) throw InputError("lu_solve_matrix: dimension mismatch");
    ComplexMatrix X(n, B.cols);
    for (int j = 0; j < B.cols; ++j) {
        ComplexVector col(n);
        for (int i = 0; i < n; ++i) col[i] = B(i, j);
        ComplexVector x = lu_solve(f, col);
        for (int i = 0; i < n; ++i) X(i, j) = x[i];
    }
    return X;
}

ComplexMatrix inverse(const ComplexMatrix& A) {
    return lu_solve_matrix(lu_factor(A), ComplexMatrix::identity(A.rows));
}

RealMatrix real_lu_solve_matrix(const RealMatrix& A, const RealMatrix& B) {
    ComplexMatrix X = lu_solve_matrix(lu_factor(complexify(A)), complexify(B));
    return real_part(X);
}

}  // namespace antieig
