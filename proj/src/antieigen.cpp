#include "antieig/antieigen.hpp"

#include <algorithm>
#include <cmath>

#include "sphere_min.hpp"

namespace antieig {

const char* to_string(Mu1Method m) {
    switch (m) {
        case Mu1Method::brute: return "brute";
        case Mu1Method::hermitian_pd: return "hermitian_pd";
        case Mu1Method::normal_accretive: return "normal_accretive";
        case Mu1Method::scalar: return "scalar";
    }
    return "?";
}

namespace {

double clamp_mu(double v) { return std::clamp(v, -1.0, 1.0); }

// Minimize <w, Sym(G) w> / |G w| over the unit sphere in R^n.
detail::SphereMinResult minimize_quotient(const RealMatrix& G, const BruteOptions& opts) {
    const int n = G.rows;
    const double scale = frob(G);
    if (scale == 0.0) throw InputError("mu1: zero matrix has no admissible direction");
    const double floor_r = 1e-14 * scale;

    RealMatrix M(n, n);  // symmetric part of G
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = 0.5 * (G(i, j) + G(j, i));
    RealMatrix GtG = matmul(transpose(G), G);

    detail::SphereObjective objective =
        [n, floor_r, M = std::move(M), G, GtG = std::move(GtG), Mw = RealVector(n),
         Gw = RealVector(n)](const std::vector<double>& w, double& value,
                             std::vector<double>* grad) mutable {
            double q = 0.0, r2 = 0.0;
            for (int i = 0; i < n; ++i) {
                double mi = 0.0, gi = 0.0;
                const double* Mrow = &M.a[static_cast<size_t>(i) * n];
                const double* Grow = &G.a[static_cast<size_t>(i) * n];
                for (int j = 0; j < n; ++j) {
                    mi += Mrow[j] * w[j];
                    gi += Grow[j] * w[j];
                }
                Mw[i] = mi;
                Gw[i] = gi;
                q += mi * w[i];
                r2 += gi * gi;
            }
            double r = std::sqrt(r2);
            if (r < floor_r) return false;
            value = q / r;
            if (grad) {
                grad->resize(n);
                double inv_r = 1.0 / r;
                double c = q * inv_r * inv_r * inv_r;
                for (int i = 0; i < n; ++i) {
                    double ti = 0.0;
                    const double* Trow = &GtG.a[static_cast<size_t>(i) * n];
                    for (int j = 0; j < n; ++j) ti += Trow[j] * w[j];
                    (*grad)[i] = 2.0 * Mw[i] * inv_r - c * ti;
                }
            }
            return true;
        };

    detail::SphereMinOptions sopts;
    sopts.restarts = opts.restarts;
    sopts.max_iters = opts.max_iters;
    sopts.tol = opts.tol;
    sopts.seed = opts.seed;
    // The quotient is scale-free, so the gradient stop is absolute.
    return detail::sphere_minimize(n, objective, sopts, 1.0);
}

}  // namespace

AntieigenResult mu1_brute(const ComplexMatrix& A, const BruteOptions& opts) {
    require_square(A, "mu1_brute");
    require_finite(A, "mu1_brute");
    RealMatrix G = real_embed_matrix(A);
    detail::SphereMinResult r = minimize_quotient(G, opts);
    AntieigenResult out;
    out.mu1 = clamp_mu(r.value);
    out.antieigenvector = complex_from_embedded(r.argmin);
    out.angle_rad = std::acos(out.mu1);
    out.method = Mu1Method::brute;
    out.restarts_used = r.restarts_used;
    if (opts.keep_history) out.best_objective_history = r.best_per_restart;
    return out;
}

AntieigenResult mu1_brute_real(const RealMatrix& A, const BruteOptions& opts) {
    if (!A.square()) throw InputError("mu1_brute_real: matrix must be square");
    require_finite(A, "mu1_brute_real");
    detail::SphereMinResult r = minimize_quotient(A, opts);
    AntieigenResult out;
    out.mu1 = clamp_mu(r.value);
    out.antieigenvector.assign(r.argmin.begin(), r.argmin.end());
    out.angle_rad = std::acos(out.mu1);
    out.method = Mu1Method::brute;
    out.restarts_used = r.restarts_used;
    if (opts.keep_history) out.best_objective_history = r.best_per_restart;
    return out;
}

AntieigenResult mu1_hermitian_pd(const ComplexMatrix& A) {
    require_square(A, "mu1_hermitian_pd");
    StructuralFlags flags = structural_predicates(A);
    if (!flags.hermitian) throw PreconditionError("mu1_hermitian_pd: matrix is not Hermitian");
    HermitianEigenSystem es = hermitian_eigen(A);
    const int n = A.rows;
    double l1 = es.eigenvalues.front();
    double lN = es.eigenvalues.back();
    if (l1 <= 1e-12 * std::max(1.0, frob(A)))
        throw PreconditionError("mu1_hermitian_pd: matrix is not positive definite");

    AntieigenResult out;
    double kappa = lN / l1;
    out.mu1 = clamp_mu(2.0 * std::sqrt(kappa) / (kappa + 1.0));
    out.angle_rad = std::acos(out.mu1);
    out.method = Mu1Method::hermitian_pd;
    ComplexVector w(n, Complex(0.0));
    double s1 = std::sqrt(lN), sN = std::sqrt(l1);
    double nrm = std::sqrt(l1 + lN);
    for (int i = 0; i < n; ++i)
        w[i] = (s1 * es.eigenvectors(i, 0) + sN * es.eigenvectors(i, n - 1)) / nrm;
    out.antieigenvector = w;
    return out;
}

NormalEigenSystem normal_eigen(const ComplexMatrix& A) {
    require_square(A, "normal_eigen");
    const int n = A.rows;
    const double scale_a = std::max(1.0, frob(A));
    ComplexMatrix H = hermitian_part(A);
    ComplexMatrix K = skewhermitian_part_over_i(A);
    HermitianEigenSystem eh = hermitian_eigen(H);

    ComplexMatrix U = eh.eigenvectors;
    // Refine each H-eigenspace so that K is diagonal on it as well.
    int start = 0;
    while (start < n) {
        int end = start + 1;
        while (end < n && std::abs(eh.eigenvalues[end] - eh.eigenvalues[end - 1]) <= 1e-9 * scale_a)
            ++end;
        int m = end - start;
        if (m > 1) {
            ComplexMatrix Uc(n, m);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < m; ++j) Uc(i, j) = U(i, start + j);
            ComplexMatrix Kc = matmul(adjoint(Uc), matmul(K, Uc));
            HermitianEigenSystem ek = hermitian_eigen(Kc);
            ComplexMatrix Un = matmul(Uc, ek.eigenvectors);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < m; ++j) U(i, start + j) = Un(i, j);
        }
        start = end;
    }

    NormalEigenSystem out;
    out.eigenvectors = U;
    out.eigenvalues.resize(n);
    ComplexMatrix AU = matmul(A, U);
    double max_res = 0.0;
    for (int j = 0; j < n; ++j) {
        ComplexVector uj(n), Auj(n);
        for (int i = 0; i < n; ++i) {
            uj[i] = U(i, j);
            Auj[i] = AU(i, j);
        }
        Complex lam = inner(uj, Auj);
        out.eigenvalues[j] = lam;
        double res = 0.0;
        for (int i = 0; i < n; ++i) res += std::norm(Auj[i] - lam * uj[i]);
        max_res = std::max(max_res, std::sqrt(res));
    }
    if (max_res > 1e-9 * scale_a)
        throw PreconditionError("normal_eigen: matrix is not normal to working tolerance");
    return out;
}

std::pair<AntieigenResult, NormalFormTrace> mu1_normal_accretive(const ComplexMatrix& A) {
    require_square(A, "mu1_normal_accretive");
    require_finite(A, "mu1_normal_accretive");
    StructuralFlags flags = structural_predicates(A);
    if (!flags.normal) throw PreconditionError("mu1_normal_accretive: matrix is not normal");
    if (!flags.accretive) throw PreconditionError("mu1_normal_accretive: matrix is not accretive");

    NormalEigenSystem es = normal_eigen(A);
    const int n = A.rows;
    const double scale_a = std::max(1.0, frob(A));

    NormalFormTrace trace;
    trace.eigenvalues = es.eigenvalues;
    trace.E.resize(n);
    trace.r_values.resize(n);
    trace.rho = RealMatrix(n, n);
    std::vector<double> amod(n), are(n);
    for (int j = 0; j < n; ++j) {
        amod[j] = std::abs(es.eigenvalues[j]);
        are[j] = es.eigenvalues[j].real();
        if (amod[j] <= 1e-12 * scale_a)
            throw PreconditionError("mu1_normal_accretive: zero eigenvalue");
    }
    for (int j = 0; j < n; ++j) {
        trace.E[j] = are[j] / amod[j];
        trace.r_values[j] = trace.E[j];
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) trace.rho(i, j) = amod[j] / amod[i];

    int best_e = 0;
    for (int j = 1; j < n; ++j)
        if (trace.E[j] < trace.E[best_e]) best_e = j;

    // The two-component candidates: the interior stationary point of
    // phi(s) = (a_i s + a_j (1-s)) / sqrt(|l_i|^2 s + |l_j|^2 (1-s)),
    // with s = |w_i|^2 given by the closed form.
    int best_f = -1;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double mi2 = amod[i] * amod[i], mj2 = amod[j] * amod[j];
            double gap = std::abs(amod[i] - amod[j]);
            if (gap <= 1e-10 * std::max(amod[i], amod[j])) continue;
            double denom = (mi2 - mj2) * (are[i] - are[j]);
            if (std::abs(are[i] - are[j]) <= 1e-14 * scale_a) continue;
            double s = (are[j] * mj2 - 2.0 * are[i] * mj2 + are[j] * mi2) / denom;
            if (!(s > 0.0 && s < 1.0)) continue;
            double val = (are[i] * s + are[j] * (1.0 - s)) /
                         std::sqrt(mi2 * s + mj2 * (1.0 - s));
            FCandidate cand{i, j, val, s};
            trace.F.push_back(cand);
            if (best_f < 0 || val < trace.F[best_f].value)
                best_f = static_cast<int>(trace.F.size()) - 1;
        }
    }

    AntieigenResult out;
    out.method = Mu1Method::normal_accretive;
    ComplexVector w(n, Complex(0.0));
    if (best_f >= 0 && trace.F[best_f].value < trace.E[best_e]) {
        const FCandidate& c = trace.F[best_f];
        double si = std::sqrt(c.interiority);
        double sj = std::sqrt(1.0 - c.interiority);
        for (int k = 0; k < n; ++k)
            w[k] = si * es.eigenvectors(k, c.i) + sj * es.eigenvectors(k, c.j);
        out.mu1 = clamp_mu(c.value);
    } else {
        for (int k = 0; k < n; ++k) w[k] = es.eigenvectors(k, best_e);
        out.mu1 = clamp_mu(trace.E[best_e]);
    }
    out.antieigenvector = w;
    out.angle_rad = std::acos(out.mu1);
    return {out, trace};
}

AntieigenResult mu1(const ComplexMatrix& A, Mu1Dispatch method, const BruteOptions& opts) {
    require_square(A, "mu1");
    require_finite(A, "mu1");
    if (frob(A) == 0.0) throw InputError("mu1: zero matrix has no admissible direction");

    switch (method) {
        case Mu1Dispatch::brute:
            return mu1_brute(A, opts);
        case Mu1Dispatch::hermitian:
            return mu1_hermitian_pd(A);
        case Mu1Dispatch::normal:
            return mu1_normal_accretive(A).first;
        case Mu1Dispatch::automatic:
            break;
    }

    if (A.rows == 1) {
        Complex alpha = A(0, 0);
        AntieigenResult out;
        out.mu1 = clamp_mu(alpha.real() / std::abs(alpha));
        out.angle_rad = std::acos(out.mu1);
        out.method = Mu1Method::scalar;
        out.antieigenvector = {Complex(1.0)};
        return out;
    }

    StructuralFlags flags = structural_predicates(A);
    AntieigenResult closed;
    bool have_closed = false;
    if (flags.hermitian && flags.strictly_accretive) {
        closed = mu1_hermitian_pd(A);
        have_closed = true;
    } else if (flags.normal && flags.accretive &&
               smallest_singular_value(A) > 1e-12 * std::max(1.0, frob(A))) {
        closed = mu1_normal_accretive(A).first;
        have_closed = true;
    }
    if (!have_closed) return mu1_brute(A, opts);

    BruteOptions confirm = opts;
    confirm.restarts = std::max(4, opts.restarts / 4);
    AntieigenResult brute = mu1_brute(A, confirm);
    if (std::abs(brute.mu1 - closed.mu1) > 1e-6)
        throw NumericalError("mu1: closed form and brute-force confirmation disagree");
    closed.restarts_used = brute.restarts_used;
    return closed;
}

double angle(const ComplexMatrix& A) { return mu1(A).angle_rad; }

}  // namespace antieig
