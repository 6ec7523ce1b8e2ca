#include "antieig/ou_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sphere_min.hpp"

namespace antieig {

namespace {

// ---- desk-scale eigendecomposition of a general (diagonalizable) matrix ----
//
// Characteristic polynomial by Faddeev-LeVerrier, roots by Durand-Kerner,
// eigenvectors by inverse iteration (clustered eigenvalues take the
// eliminated null space instead). Adequate for the small N this module works
// at; accuracy is enforced afterwards by the residual checks in make_ou_spec.

ComplexVector char_poly(const ComplexMatrix& A) {
    const int n = A.rows;
    ComplexVector c(n + 1, Complex(0.0));
    c[0] = 1.0;  // coefficient of lambda^n
    ComplexMatrix M = A;
    for (int k = 1; k <= n; ++k) {
        Complex tr = 0.0;
        for (int i = 0; i < n; ++i) tr += M(i, i);
        c[k] = -tr / static_cast<double>(k);
        if (k == n) break;
        for (int i = 0; i < n; ++i) M(i, i) += c[k];
        M = matmul(A, M);
    }
    return c;
}

Complex poly_eval(const ComplexVector& c, Complex z) {
    Complex v = 0.0;
    for (const Complex& ck : c) v = v * z + ck;
    return v;
}

ComplexVector durand_kerner(const ComplexVector& c) {
    const int n = static_cast<int>(c.size()) - 1;
    double radius = 1.0;
    for (int k = 1; k <= n; ++k)
        radius = std::max(radius, std::pow(std::abs(c[k]), 1.0 / k));
    radius *= 2.0;

    ComplexVector z(n);
    const Complex seed(0.4, 0.9);
    Complex w = radius * seed / std::abs(seed);
    Complex cur = w;
    for (int i = 0; i < n; ++i) {
        z[i] = cur;
        cur *= seed;
    }

    for (int iter = 0; iter < 500; ++iter) {
        double moved = 0.0;
        for (int i = 0; i < n; ++i) {
            Complex denom = 1.0;
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= (z[i] - z[j]);
            if (std::abs(denom) < 1e-300) denom = 1e-300;
            Complex delta = poly_eval(c, z[i]) / denom;
            z[i] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-15 * std::max(1.0, radius)) break;
    }
    return z;
}

struct GeneralEigen {
    ComplexVector values;
    ComplexMatrix vectors;
};

ComplexVector inverse_iteration(const ComplexMatrix& A, Complex lambda, uint64_t stream) {
    const int n = A.rows;
    const double scale = std::max(1.0, frob(A));
    ComplexMatrix shifted = A;
    Complex shift = lambda + Complex(1e-12 * scale, 1e-12 * scale);
    for (int i = 0; i < n; ++i) shifted(i, i) -= shift;
    ComplexLU f = lu_factor(shifted);

    detail::Rng rng(detail::mix_seed(0xe16e5ULL, stream));
    ComplexVector v(n);
    for (int i = 0; i < n; ++i) v[i] = Complex(rng.normal(), rng.normal());
    for (int it = 0; it < 4; ++it) {
        ComplexVector w = f.singular ? v : lu_solve(f, v);
        double nw = norm(w);
        if (!(nw > 0.0) || !std::isfinite(nw)) break;
        for (Complex& x : w) x /= nw;
        v = std::move(w);
    }
    return v;
}

GeneralEigen general_eigen(const ComplexMatrix& A);

// Null-space basis of (A - lambda I) of dimension m via column-pivoted
// elimination; used for clustered eigenvalues.
std::vector<ComplexVector> null_space(const ComplexMatrix& A, Complex lambda, int m) {
    const int n = A.rows;
    ComplexMatrix M = A;
    for (int i = 0; i < n; ++i) M(i, i) -= lambda;

    std::vector<int> col_of_row;
    std::vector<bool> used(n, false);
    int row = 0;
    for (int k = 0; k < n && row < n; ++k) {
        int pr = -1, pc = -1;
        double best = 0.0;
        for (int i = row; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (used[j]) continue;
                double v = std::abs(M(i, j));
                if (v > best) {
                    best = v;
                    pr = i;
                    pc = j;
                }
            }
        if (pr < 0 || best <= 1e-9 * std::max(1.0, frob(A))) break;
        if (pr != row)
            for (int j = 0; j < n; ++j) std::swap(M(row, j), M(pr, j));
        used[pc] = true;
        col_of_row.push_back(pc);
        for (int i = 0; i < n; ++i) {
            if (i == row) continue;
            Complex l = M(i, pc) / M(row, pc);
            if (l == Complex(0.0)) continue;
            for (int j = 0; j < n; ++j) M(i, j) -= l * M(row, j);
        }
        ++row;
    }

    std::vector<int> free_cols;
    for (int j = 0; j < n; ++j)
        if (!used[j]) free_cols.push_back(j);

    std::vector<ComplexVector> basis;
    for (int fc : free_cols) {
        ComplexVector v(n, Complex(0.0));
        v[fc] = 1.0;
        for (int r = 0; r < row; ++r) {
            int pc = col_of_row[r];
            v[pc] = -M(r, fc) / M(r, pc);
        }
        double nv = norm(v);
        for (Complex& x : v) x /= nv;
        basis.push_back(std::move(v));
        if (static_cast<int>(basis.size()) == m) break;
    }
    // Gram-Schmidt for numerical orthogonality within the cluster.
    for (size_t i = 0; i < basis.size(); ++i) {
        for (size_t j = 0; j < i; ++j) {
            Complex c = inner(basis[j], basis[i]);
            for (int k = 0; k < n; ++k) basis[i][k] -= c * basis[j][k];
        }
        double nv = norm(basis[i]);
        if (nv > 0.0)
            for (Complex& x : basis[i]) x /= nv;
    }
    return basis;
}

GeneralEigen general_eigen(const ComplexMatrix& A) {
    const int n = A.rows;
    GeneralEigen out;
    out.vectors = ComplexMatrix(n, n);
    if (n == 1) {
        out.values = {A(0, 0)};
        out.vectors(0, 0) = 1.0;
        return out;
    }

    const double scale = std::max(1.0, frob(A));
    ComplexVector roots = durand_kerner(char_poly(A));
    std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });

    out.values.resize(n);
    int idx = 0;
    while (idx < n) {
        int end = idx + 1;
        while (end < n && std::abs(roots[end] - roots[idx]) <= 1e-8 * scale) ++end;
        int m = end - idx;
        if (m == 1) {
            ComplexVector v = inverse_iteration(A, roots[idx], static_cast<uint64_t>(idx));
            ComplexVector Av = matvec(A, v);
            Complex lam = inner(v, Av);
            out.values[idx] = lam;
            for (int i = 0; i < n; ++i) out.vectors(i, idx) = v[i];
        } else {
            Complex lam = 0.0;
            for (int k = idx; k < end; ++k) lam += roots[k];
            lam /= static_cast<double>(m);
            std::vector<ComplexVector> basis = null_space(A, lam, m);
            if (static_cast<int>(basis.size()) < m)
                throw NumericalError("general_eigen: defective or ill-conditioned eigenspace");
            for (int k = 0; k < m; ++k) {
                out.values[idx + k] = lam;
                for (int i = 0; i < n; ++i) out.vectors(i, idx + k) = basis[k][i];
            }
        }
        idx = end;
    }
    return out;
}

double erfc_outside_mass(double margin, double sigma) {
    if (sigma <= 0.0) return 0.0;
    return std::erfc(margin / (sigma * std::sqrt(2.0)));
}

// Largest per-axis deviation scale of |exp(-s^2/(4 t lambda))|, which decays
// like a Gaussian of variance sigma^2 = 2 t |lambda|^2 / Re(lambda).
double kernel_sigma(const OUOperatorSpec& spec, double t) {
    double s2 = 0.0;
    for (const Complex& lam : spec.lambda_A)
        s2 = std::max(s2, 2.0 * t * std::norm(lam) / lam.real());
    return std::sqrt(s2);
}

double required_extent(double sigma, int d) {
    // smallest L with d * erfc(L / (sigma sqrt(2))) < 1e-8
    double lo = 0.0, hi = 64.0 * sigma + 1.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (d * erfc_outside_mass(mid, sigma) < 1e-8)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

void check_grid(const GridSpec& g) {
    if (g.d < 2 || g.d > 3) throw InputError("grid: d must be 2 or 3 for grid probes");
    if (g.n < 8) throw InputError("grid: need at least 8 points per axis");
    if (!(g.L > 0.0)) throw InputError("grid: L must be positive");
}

void check_truncation(const OUOperatorSpec& spec, double t, const GridSpec& g, double margin) {
    double sigma = kernel_sigma(spec, t);
    if (spec.d * erfc_outside_mass(margin, sigma) >= 1e-8) {
        double need = required_extent(sigma, spec.d) + (g.L - margin);
        throw InputError("grid extent too small for kernel scale; need L >= " +
                         std::to_string(need));
    }
}

// Diagonal kernel factors h_j(s2) = (4 pi t lambda_j)^{-d/2}
// exp(-lambda_j^B t - s2 / (4 t lambda_j)) = exp(c0_j + c1_j * s2),
// principal branch (valid since Re lambda_j > 0 keeps 4 pi t lambda_j off
// the cut).
struct KernelDiag {
    std::vector<Complex> c0;
    std::vector<Complex> c1;

    KernelDiag(const OUOperatorSpec& spec, double t) : c0(spec.N()), c1(spec.N()) {
        const double half_d = 0.5 * spec.d;
        for (int j = 0; j < spec.N(); ++j) {
            Complex lamA = spec.lambda_A[j];
            c0[j] = -half_d * std::log(4.0 * M_PI * t * lamA) - spec.lambda_B[j] * t;
            c1[j] = -1.0 / (4.0 * t * lamA);
        }
    }

    Complex factor(int j, double s2) const { return std::exp(c0[j] + c1[j] * s2); }
};

ComplexVector kernel_factors(const OUOperatorSpec& spec, double t, double s2) {
    KernelDiag kd(spec, t);
    ComplexVector h(spec.N());
    for (int j = 0; j < spec.N(); ++j) h[j] = kd.factor(j, s2);
    return h;
}

ComplexMatrix assemble_from_diag(const OUOperatorSpec& spec, const ComplexVector& h) {
    const int N = spec.N();
    ComplexMatrix D(N, N);
    for (int j = 0; j < N; ++j) D(j, j) = h[j];
    return matmul(spec.V, matmul(D, spec.V_inv));
}

GridFn apply_semigroup_unchecked(const OUOperatorSpec& spec, const GridFn& v, double t) {
    const GridSpec& g = v.grid;
    const int N = spec.N();
    const size_t npts = grid_point_count(g);

    GridFn out;
    out.grid = g;
    out.ncomp = N;
    out.values.assign(npts * N, Complex(0.0));
    if (t == 0.0) {
        out.values = v.values;
        return out;
    }

    RealMatrix E = expm_skew(spec.S, t);

    // u(xi) = V^{-1} v(xi), weighted by the quadrature weight
    std::vector<Complex> u(npts * N);
    for (size_t pt = 0; pt < npts; ++pt) {
        ComplexVector vi(N);
        for (int c = 0; c < N; ++c) vi[c] = v.at(pt, c);
        ComplexVector ui = matvec(spec.V_inv, vi);
        double wq = grid_weight(g, pt);
        for (int c = 0; c < N; ++c) u[pt * N + c] = wq * ui[c];
    }

    std::vector<RealVector> coords(npts);
    for (size_t pt = 0; pt < npts; ++pt) coords[pt] = grid_point(g, pt);

    const KernelDiag kd(spec, t);
    ComplexVector acc(N), outv(N);
    for (size_t ox = 0; ox < npts; ++ox) {
        RealVector y = matvec(E, coords[ox]);
        std::fill(acc.begin(), acc.end(), Complex(0.0));
        for (size_t pt = 0; pt < npts; ++pt) {
            double s2 = 0.0;
            const double* cp = coords[pt].data();
            for (int k = 0; k < g.d; ++k) {
                double dk = y[k] - cp[k];
                s2 += dk * dk;
            }
            for (int c = 0; c < N; ++c) acc[c] += kd.factor(c, s2) * u[pt * N + c];
        }
        for (int i = 0; i < N; ++i) {
            Complex s = 0.0;
            for (int c = 0; c < N; ++c) s += spec.V(i, c) * acc[c];
            out.at(ox, i) = s;
        }
    }
    return out;
}

}  // namespace

size_t GridFn::points() const { return grid_point_count(grid); }

size_t grid_point_count(const GridSpec& g) {
    size_t n = 1;
    for (int k = 0; k < g.d; ++k) n *= static_cast<size_t>(g.n);
    return n;
}

double grid_spacing(const GridSpec& g) { return 2.0 * g.L / (g.n - 1); }

RealVector grid_point(const GridSpec& g, size_t index) {
    RealVector x(g.d);
    const double h = grid_spacing(g);
    for (int k = g.d - 1; k >= 0; --k) {
        size_t i = index % g.n;
        index /= g.n;
        x[k] = -g.L + h * static_cast<double>(i);
    }
    return x;
}

double grid_weight(const GridSpec& g, size_t index) {
    const double h = grid_spacing(g);
    double w = 1.0;
    for (int k = g.d - 1; k >= 0; --k) {
        size_t i = index % g.n;
        index /= g.n;
        w *= (i == 0 || i == static_cast<size_t>(g.n) - 1) ? 0.5 * h : h;
    }
    return w;
}

GridFn sample_grid_fn(const GridSpec& g, int ncomp,
                      const std::function<ComplexVector(const RealVector&)>& f) {
    check_grid(g);
    GridFn fn;
    fn.grid = g;
    fn.ncomp = ncomp;
    const size_t npts = grid_point_count(g);
    fn.values.resize(npts * ncomp);
    for (size_t pt = 0; pt < npts; ++pt) {
        ComplexVector v = f(grid_point(g, pt));
        if (static_cast<int>(v.size()) != ncomp)
            throw InputError("sample_grid_fn: component count mismatch");
        for (int c = 0; c < ncomp; ++c) fn.at(pt, c) = v[c];
    }
    return fn;
}

OUOperatorSpec make_ou_spec(const ComplexMatrix& A, const ComplexMatrix& B, const RealMatrix& S,
                            int d) {
    require_square(A, "make_ou_spec: A");
    require_square(B, "make_ou_spec: B");
    require_finite(A, "make_ou_spec: A");
    require_finite(B, "make_ou_spec: B");
    require_finite(S, "make_ou_spec: S");
    if (B.rows != A.rows) throw InputError("make_ou_spec: A and B must have equal size");
    if (d < 2) throw InputError("make_ou_spec: spatial dimension d must be >= 2");
    if (!S.square() || S.rows != d) throw InputError("make_ou_spec: S must be d x d");

    double skew_dev = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) skew_dev += (S(i, j) + S(j, i)) * (S(i, j) + S(j, i));
    if (std::sqrt(skew_dev) > 1e-12 * std::max(1.0, frob(S)))
        throw PreconditionError("make_ou_spec: S is not skew-symmetric");

    OUOperatorSpec spec;
    spec.A = A;
    spec.B = B;
    spec.S = S;
    spec.d = d;

    const int N = A.rows;
    GeneralEigen ea = general_eigen(A);
    spec.V = ea.vectors;
    spec.lambda_A = ea.values;

    const double scale_b = std::max(1.0, frob(B));

    // B in the A-eigenbasis; refine clustered A-eigenspaces so B becomes
    // diagonal there too, then fail fast if off-diagonal mass remains.
    auto compute_W = [&]() {
        ComplexLU f = lu_factor(spec.V);
        if (f.singular) throw NumericalError("make_ou_spec: eigenvector matrix is singular");
        spec.V_inv = lu_solve_matrix(f, ComplexMatrix::identity(N));
        return matmul(spec.V_inv, matmul(B, spec.V));
    };
    ComplexMatrix W = compute_W();

    int idx = 0;
    bool refined = false;
    const double scale_a = std::max(1.0, frob(A));
    while (idx < N) {
        int end = idx + 1;
        while (end < N && std::abs(spec.lambda_A[end] - spec.lambda_A[idx]) <= 1e-8 * scale_a)
            ++end;
        int m = end - idx;
        if (m > 1) {
            ComplexMatrix Wc(m, m);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) Wc(i, j) = W(idx + i, idx + j);
            GeneralEigen ec;
            try {
                ec = general_eigen(Wc);
            } catch (const NumericalError&) {
                throw PreconditionError(
                    "make_ou_spec: A and B are not simultaneously diagonalizable");
            }
            ComplexMatrix Vc(N, m);
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < m; ++j) Vc(i, j) = spec.V(i, idx + j);
            ComplexMatrix Vn = matmul(Vc, ec.vectors);
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < m; ++j) spec.V(i, idx + j) = Vn(i, j);
            refined = true;
        }
        idx = end;
    }
    if (refined) W = compute_W();

    spec.lambda_B.resize(N);
    double offdiag = 0.0;
    for (int i = 0; i < N; ++i) {
        spec.lambda_B[i] = W(i, i);
        for (int j = 0; j < N; ++j)
            if (i != j) offdiag += std::norm(W(i, j));
    }
    if (std::sqrt(offdiag) > 1e-9 * scale_b)
        throw PreconditionError("make_ou_spec: A and B are not simultaneously diagonalizable");

    // residual contracts on both factorizations
    ComplexMatrix LA = ComplexMatrix::diag(spec.lambda_A);
    ComplexMatrix LB = ComplexMatrix::diag(spec.lambda_B);
    double resA = frob(sub(matmul(A, spec.V), matmul(spec.V, LA)));
    double resB = frob(sub(matmul(B, spec.V), matmul(spec.V, LB)));
    if (resA > 1e-9 * scale_a || resB > 1e-9 * scale_b)
        throw PreconditionError("make_ou_spec: diagonalization residual too large");

    for (const Complex& lam : spec.lambda_A)
        if (!(lam.real() > 0.0))
            throw PreconditionError("make_ou_spec: Re(sigma(A)) > 0 is violated");

    spec.beta_B = -hermitian_part_min_eigenvalue(B);
    return spec;
}

ComplexMatrix kernel_eval(const OUOperatorSpec& spec, const RealVector& x, const RealVector& xi,
                          double t) {
    if (!(t > 0.0)) throw InputError("kernel_eval: t must be positive");
    if (static_cast<int>(x.size()) != spec.d || static_cast<int>(xi.size()) != spec.d)
        throw InputError("kernel_eval: point dimension mismatch");
    RealMatrix E = expm_skew(spec.S, t);
    RealVector y = matvec(E, x);
    double s2 = 0.0;
    for (int k = 0; k < spec.d; ++k) {
        double dk = y[k] - xi[k];
        s2 += dk * dk;
    }
    return assemble_from_diag(spec, kernel_factors(spec, t, s2));
}

GridFn apply_semigroup(const OUOperatorSpec& spec, const GridFn& v, double t) {
    check_grid(v.grid);
    if (v.grid.d != spec.d) throw InputError("apply_semigroup: grid dimension mismatch");
    if (v.ncomp != spec.N()) throw InputError("apply_semigroup: component count mismatch");
    if (t < 0.0) throw InputError("apply_semigroup: t must be nonnegative");
    if (t > 0.0) check_truncation(spec, t, v.grid, v.grid.L);
    return apply_semigroup_unchecked(spec, v, t);
}

ComplexMatrix matrix_exp_minus_Bt(const OUOperatorSpec& spec, double t) {
    ComplexVector h(spec.N());
    for (int j = 0; j < spec.N(); ++j) h[j] = std::exp(-spec.lambda_B[j] * t);
    return assemble_from_diag(spec, h);
}

MassCheckResult mass_check(const OUOperatorSpec& spec, const RealVector& x, double t,
                           const GridSpec& grid) {
    check_grid(grid);
    if (grid.d != spec.d) throw InputError("mass_check: grid dimension mismatch");
    if (!(t > 0.0)) throw InputError("mass_check: t must be positive");
    if (static_cast<int>(x.size()) != spec.d) throw InputError("mass_check: point dimension");

    RealMatrix E = expm_skew(spec.S, t);
    RealVector y = matvec(E, x);
    double ymax = 0.0;
    for (double c : y) ymax = std::max(ymax, std::abs(c));
    check_truncation(spec, t, grid, grid.L - ymax);

    const size_t npts = grid_point_count(grid);
    const KernelDiag kd(spec, t);
    ComplexVector acc(spec.N(), Complex(0.0));
    for (size_t pt = 0; pt < npts; ++pt) {
        RealVector xi = grid_point(grid, pt);
        double s2 = 0.0;
        for (int k = 0; k < grid.d; ++k) {
            double dk = y[k] - xi[k];
            s2 += dk * dk;
        }
        double wq = grid_weight(grid, pt);
        for (int c = 0; c < spec.N(); ++c) acc[c] += wq * kd.factor(c, s2);
    }

    MassCheckResult out;
    out.computed = assemble_from_diag(spec, acc);
    out.expected = matrix_exp_minus_Bt(spec, t);
    out.deviation = frob(sub(out.computed, out.expected));
    return out;
}

double chapman_check(const OUOperatorSpec& spec, double t, double s, const GridSpec& grid) {
    check_grid(grid);
    if (grid.d != spec.d) throw InputError("chapman_check: grid dimension mismatch");
    if (t < 1e-3 || s < 1e-3)
        throw InputError("chapman_check: times below 1e-3 are too peaked for the grid");
    // sample pairs stay within the inner quarter box, so the intermediate
    // integral keeps a 0.6 L margin to the boundary even after rotation
    check_truncation(spec, t, grid, 0.6 * grid.L);
    check_truncation(spec, s, grid, 0.6 * grid.L);

    std::vector<std::pair<RealVector, RealVector>> pairs;
    detail::Rng rng(detail::mix_seed(0xc4a93ULL, 7));
    for (int k = 0; k < 5; ++k) {
        RealVector x(spec.d), xi(spec.d);
        for (int i = 0; i < spec.d; ++i) {
            x[i] = (rng.uniform() - 0.5) * 0.5 * grid.L;
            xi[i] = (rng.uniform() - 0.5) * 0.5 * grid.L;
        }
        pairs.emplace_back(std::move(x), std::move(xi));
    }

    const size_t npts = grid_point_count(grid);
    double worst = 0.0;
    for (const auto& [x, xi] : pairs) {
        ComplexMatrix direct = kernel_eval(spec, x, xi, t + s);
        ComplexMatrix composed(spec.N(), spec.N());
        RealMatrix Et = expm_skew(spec.S, t);
        RealVector yx = matvec(Et, x);
        RealMatrix Es = expm_skew(spec.S, s);
        // int H(x,y,t) H(y,xi,s) dy in the joint eigenbasis: the factors
        // multiply diagonally, so accumulate per-eigenvalue products.
        const KernelDiag kda(spec, t);
        const KernelDiag kdb(spec, s);
        ComplexVector acc(spec.N(), Complex(0.0));
        for (size_t pt = 0; pt < npts; ++pt) {
            RealVector ypt = grid_point(grid, pt);
            double s2a = 0.0;
            for (int k = 0; k < spec.d; ++k) {
                double dk = yx[k] - ypt[k];
                s2a += dk * dk;
            }
            RealVector ys = matvec(Es, ypt);
            double s2b = 0.0;
            for (int k = 0; k < spec.d; ++k) {
                double dk = ys[k] - xi[k];
                s2b += dk * dk;
            }
            double wq = grid_weight(grid, pt);
            for (int c = 0; c < spec.N(); ++c)
                acc[c] += wq * kda.factor(c, s2a) * kdb.factor(c, s2b);
        }
        composed = assemble_from_diag(spec, acc);
        double dev = 0.0;
        for (int i = 0; i < spec.N(); ++i)
            for (int j = 0; j < spec.N(); ++j)
                dev = std::max(dev, std::abs(direct(i, j) - composed(i, j)));
        worst = std::max(worst, dev);
    }
    return worst;
}

double grid_lp_norm(const GridFn& f, double p) {
    if (!(p >= 1.0)) throw InputError("grid_lp_norm: p must be >= 1");
    const size_t npts = f.points();
    double acc = 0.0;
    for (size_t pt = 0; pt < npts; ++pt) {
        double mag2 = 0.0;
        for (int c = 0; c < f.ncomp; ++c) mag2 += std::norm(f.at(pt, c));
        acc += grid_weight(f.grid, pt) * std::pow(std::sqrt(mag2), p);
    }
    return std::pow(acc, 1.0 / p);
}

ResolventProbeResult resolvent_probe(const OUOperatorSpec& spec, Complex lambda, const GridFn& g,
                                     double p, double T_max, int n_time) {
    check_grid(g.grid);
    if (g.grid.d != spec.d) throw InputError("resolvent_probe: grid dimension mismatch");
    if (g.ncomp != spec.N()) throw InputError("resolvent_probe: component count mismatch");
    if (n_time < 4) throw InputError("resolvent_probe: need at least 4 time nodes");
    double gap = lambda.real() - spec.beta_B;
    if (gap <= 0.1)
        throw InputError("resolvent_probe: Re(lambda) must exceed beta_B + 0.1");
    ResolventProbeResult out;
    out.bound = 1.0 / gap;
    out.tail = std::exp(-gap * T_max);
    if (out.tail >= 1e-6)
        throw InputError("resolvent_probe: T_max too small, semigroup tail not negligible");

    const size_t npts = grid_point_count(g.grid);
    const int N = spec.N();
    GridFn v;
    v.grid = g.grid;
    v.ncomp = N;
    v.values.assign(npts * N, Complex(0.0));

    const double dt = T_max / n_time;
    for (int k = 0; k <= n_time; ++k) {
        double t = k * dt;
        double wt = (k == 0 || k == n_time) ? 0.5 * dt : dt;
        Complex damp = std::exp(-lambda * t) * wt;
        // Large-t kernels overflow the box; their contribution is controlled
        // by the e^{-lambda t} weight, so the truncation precheck is not
        // applied inside the probe.
        GridFn Tg = apply_semigroup_unchecked(spec, g, t);
        for (size_t i = 0; i < v.values.size(); ++i) v.values[i] += damp * Tg.values[i];
    }

    out.ratio = grid_lp_norm(v, p) / grid_lp_norm(g, p);
    return out;
}

}  // namespace antieig
