#include "antieig/dissipativity.hpp"

#include <algorithm>
#include <cmath>

#include "sphere_min.hpp"

namespace antieig {

namespace {

void check_p(double p) {
    if (!(p > 1.0) || !std::isfinite(p)) throw InputError("p must lie in (1, infinity)");
}

void normalize(RealVector& v) {
    double n = norm(v);
    for (double& x : v) x /= n;
}

// Inner minimum over unit z of <w,Gw> + b <w,z><z,Gw> for a real matrix G and
// real unit w: the reduced value (1+b/2) q - (|b|/2) r with q = <w,Gw>,
// r = |Gw|. Returns the minimizing z as well.
double inner_z_minimum(const RealMatrix& G, const RealVector& w, double b, RealVector* z_out) {
    const int n = G.rows;
    RealVector u = matvec(G, w);
    double q = dot(w, u);
    double r = norm(u);

    RealVector z;
    double dep = 0.0;  // sine of the angle between w and u
    if (r > 0.0) {
        RealVector perp = u;
        for (int i = 0; i < n; ++i) perp[i] -= q * w[i];
        dep = norm(perp) / r;
    }
    if (r == 0.0 || dep <= 1e-8) {
        // Aw = lambda w: minimum of lambda + lambda b <w,z>^2.
        double lambda = q;
        if (lambda * b <= 0.0) {
            z = w;
        } else {
            // any unit z orthogonal to w
            int k = 0;
            for (int i = 1; i < n; ++i)
                if (std::abs(w[i]) < std::abs(w[k])) k = i;
            z.assign(n, 0.0);
            z[k] = 1.0;
            double c = dot(z, w);
            for (int i = 0; i < n; ++i) z[i] -= c * w[i];
            normalize(z);
        }
        if (z_out) *z_out = z;
        double zw = dot(z, w);
        return lambda + lambda * b * zw * zw;
    }

    if (b == 0.0) {
        if (z_out) *z_out = w;
        return q;
    }

    double alpha, beta;
    if (b > 0.0) {
        alpha = -std::sqrt(r * (r - q) / 2.0);
        beta = std::sqrt((r - q) / (2.0 * r));
    } else {
        alpha = std::sqrt(r * (r + q) / 2.0);
        beta = std::sqrt((r + q) / (2.0 * r));
    }
    z.resize(n);
    for (int i = 0; i < n; ++i) z[i] = w[i] / (2.0 * beta) + u[i] / (2.0 * alpha);
    normalize(z);
    if (z_out) *z_out = z;
    return (1.0 + b / 2.0) * q - (std::abs(b) / 2.0) * r;
}

double two_vector_value(const RealMatrix& G, const RealVector& w, const RealVector& z, double b) {
    RealVector u = matvec(G, w);
    return dot(w, u) + b * dot(w, z) * dot(z, u);
}

}  // namespace

double lp_threshold(double p) {
    check_p(p);
    return std::abs(1.0 - 2.0 / p);
}

std::pair<double, ComplexVector> gamma_minimize(const ComplexMatrix& A, double b,
                                                const GammaOptions& opts) {
    require_square(A, "gamma_minimize");
    require_finite(A, "gamma_minimize");

    if (b == 0.0) {
        HermitianEigenSystem es = hermitian_eigen(hermitian_part(A));
        ComplexVector w(A.rows);
        for (int i = 0; i < A.rows; ++i) w[i] = es.eigenvectors(i, 0);
        return {es.eigenvalues.front(), w};
    }

    RealMatrix G = real_embed_matrix(A);
    const int n = G.rows;
    const double scale = std::max(1.0, frob(G));
    const double c1 = 1.0 + b / 2.0;
    const double c2 = std::abs(b) / 2.0;

    RealMatrix M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = 0.5 * (G(i, j) + G(j, i));
    RealMatrix GtG = matmul(transpose(G), G);

    detail::SphereObjective objective =
        [n, c1, c2, M = std::move(M), G = std::move(G), GtG = std::move(GtG),
         Mw = RealVector(n)](const std::vector<double>& w, double& value,
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
                q += mi * w[i];
                r2 += gi * gi;
            }
            double r = std::sqrt(r2);
            value = c1 * q - c2 * r;
            if (grad) {
                grad->resize(n);
                double inv_r = 1.0 / std::max(r, 1e-300);
                for (int i = 0; i < n; ++i) {
                    double ti = 0.0;
                    const double* Trow = &GtG.a[static_cast<size_t>(i) * n];
                    for (int j = 0; j < n; ++j) ti += Trow[j] * w[j];
                    (*grad)[i] = 2.0 * c1 * Mw[i] - c2 * ti * inv_r;
                }
            }
            return true;
        };

    detail::SphereMinOptions sopts;
    sopts.restarts = opts.restarts;
    sopts.max_iters = opts.max_iters;
    sopts.tol = opts.tol;
    sopts.seed = opts.seed;
    detail::SphereMinResult r = detail::sphere_minimize(n, objective, sopts, scale);
    return {r.value, complex_from_embedded(r.argmin)};
}

DissipativityReport gamma_best(const ComplexMatrix& A, double p, const GammaOptions& opts) {
    check_p(p);
    DissipativityReport rep;
    rep.p = p;
    rep.b = p - 2.0;
    rep.threshold = lp_threshold(p);
    auto [gamma, w] = gamma_minimize(A, rep.b, opts);
    rep.gamma_best = gamma;
    rep.witness_w = w;
    rep.verdict = gamma > rep.tol_decide;
    rep.accretivity_constant = hermitian_part_min_eigenvalue(A);
    BruteOptions bopts;
    bopts.restarts = opts.restarts;
    bopts.max_iters = opts.max_iters;
    bopts.tol = opts.tol;
    bopts.seed = opts.seed;
    rep.mu1 = mu1(A, Mu1Dispatch::automatic, bopts).mu1;
    rep.margin = rep.mu1 - rep.threshold;
    return rep;
}

TwoVectorResult check_two_vector(const ComplexMatrix& A, double p, int samples, uint64_t seed) {
    check_p(p);
    require_square(A, "check_two_vector");
    require_finite(A, "check_two_vector");
    const double b = p - 2.0;

    // Scalar real case: the sphere in R^1 is {-1, +1}, so <w,z>^2 = 1 and the
    // two-vector form collapses to (1+b) a = (p-1) a for either sign of z.
    if (A.rows == 1 && std::abs(A(0, 0).imag()) == 0.0) {
        TwoVectorResult out;
        double a = A(0, 0).real();
        out.min_found = (1.0 + b) * a;
        out.witness_w = {Complex(1.0)};
        out.witness_z = {Complex(1.0)};
        return out;
    }

    RealMatrix G = real_embed_matrix(A);
    const int n = G.rows;
    samples = std::max(8, samples);

    detail::Rng rng(detail::mix_seed(seed, 0x7f00dULL));
    double best_seeded = 0.0;
    RealVector best_w;
    const int keep = 8;
    std::vector<std::pair<double, RealVector>> top;
    for (int s = 0; s < samples; ++s) {
        RealVector w = rng.unit_vector(n);
        double val = inner_z_minimum(G, w, b, nullptr);
        top.emplace_back(val, std::move(w));
    }
    std::sort(top.begin(), top.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    if (static_cast<int>(top.size()) > keep) top.resize(keep);

    // Alternating exact refinement. The w-step minimizes the z-frozen
    // quadratic form <w, Q_z w>, hence its smallest eigenvector.
    RealMatrix Sym(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) Sym(i, j) = 0.5 * (G(i, j) + G(j, i));

    best_seeded = top.front().first;
    best_w = top.front().second;
    RealVector best_z;
    inner_z_minimum(G, best_w, b, &best_z);

    for (auto& [val0, w0] : top) {
        RealVector w = w0;
        RealVector z;
        double val = inner_z_minimum(G, w, b, &z);
        for (int it = 0; it < 100; ++it) {
            // w-step: Q_z = Sym(G) + (b/2) (z (G^T z)^T + (G^T z) z^T)
            RealVector Gtz = matvec(transpose(G), z);
            ComplexMatrix Q(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    Q(i, j) = Sym(i, j) + 0.5 * b * (z[i] * Gtz[j] + Gtz[i] * z[j]);
            HermitianEigenSystem es = hermitian_eigen(Q);
            RealVector w_new(n);
            for (int i = 0; i < n; ++i) w_new[i] = es.eigenvectors(i, 0).real();
            normalize(w_new);
            double prev = val;
            double val_new = inner_z_minimum(G, w_new, b, &z);
            if (val_new < val) {
                w = w_new;
                val = val_new;
            }
            if (prev - val <= 1e-14 * std::max(1.0, std::abs(prev))) break;
        }
        if (val < best_seeded) {
            best_seeded = val;
            best_w = w;
            inner_z_minimum(G, best_w, b, &best_z);
        }
    }

    TwoVectorResult out;
    out.min_found = two_vector_value(G, best_w, best_z, b);
    out.witness_w = complex_from_embedded(best_w);
    out.witness_z = complex_from_embedded(best_z);
    return out;
}

LagrangeTrace lagrange_stationary(const RealMatrix& A, const RealVector& w, double b) {
    if (!A.square()) throw InputError("lagrange_stationary: matrix must be square");
    if (static_cast<size_t>(A.rows) != w.size())
        throw InputError("lagrange_stationary: dimension mismatch");
    if (b == 0.0) throw InputError("lagrange_stationary: b must be nonzero");
    if (std::abs(norm(w) - 1.0) > 1e-10)
        throw InputError("lagrange_stationary: w must be a unit vector");

    const int n = A.rows;
    RealVector u = matvec(A, w);
    double q = dot(w, u);
    double r = norm(u);
    if (!(q > 0.0) || !(r > 0.0))
        throw PreconditionError("lagrange_stationary: requires q > 0 and r > 0");
    RealVector perp = u;
    for (int i = 0; i < n; ++i) perp[i] -= q * w[i];
    if (norm(perp) / r <= 1e-8)
        throw PreconditionError("lagrange_stationary: w and Aw are linearly dependent");

    LagrangeTrace tr;
    tr.w = w;
    tr.q = q;
    tr.r = r;
    if (b > 0.0) {
        tr.alpha = -std::sqrt(r * (r - q) / 2.0);
        tr.beta = std::sqrt((r - q) / (2.0 * r));
    } else {
        tr.alpha = std::sqrt(r * (r + q) / 2.0);
        tr.beta = std::sqrt((r + q) / (2.0 * r));
    }
    tr.multiplier_mu = -b * tr.alpha * tr.beta;
    tr.z_star.resize(n);
    for (int i = 0; i < n; ++i) tr.z_star[i] = w[i] / (2.0 * tr.beta) + u[i] / (2.0 * tr.alpha);
    tr.f_at_star = (1.0 + b / 2.0) * q - (std::abs(b) / 2.0) * r;

    // residual of b<z,Aw>w + b<w,z>Aw + 2 mu z at the computed z_star
    double zu = dot(tr.z_star, u);
    double wz = dot(w, tr.z_star);
    double res = 0.0;
    for (int i = 0; i < n; ++i) {
        double g = b * zu * w[i] + b * wz * u[i] + 2.0 * tr.multiplier_mu * tr.z_star[i];
        res += g * g;
    }
    tr.stationarity_residual = std::sqrt(res);
    return tr;
}

LagrangeTrace lagrange_stationary(const ComplexMatrix& A, const RealVector& w, double b) {
    if (!is_real_entried(A)) throw PreconditionError("lagrange_stationary: matrix must be real");
    return lagrange_stationary(real_part(A), w, b);
}

EquivalenceResult check_equivalence(const ComplexMatrix& A, double p, const GammaOptions& opts) {
    check_p(p);
    EquivalenceResult out;
    out.threshold = lp_threshold(p);
    out.gamma = gamma_minimize(A, p - 2.0, opts).first;
    BruteOptions bopts;
    bopts.restarts = opts.restarts;
    bopts.max_iters = opts.max_iters;
    bopts.tol = opts.tol;
    bopts.seed = opts.seed;
    out.mu1 = mu1(A, Mu1Dispatch::automatic, bopts).mu1;
    out.invertible = structural_predicates(A).invertible;
    out.margin = out.mu1 - out.threshold;
    out.verdict_dissipativity = out.gamma > 1e-10;
    out.verdict_antieigen = out.invertible && out.margin > 0.0;
    out.agree = out.verdict_dissipativity == out.verdict_antieigen;
    out.indeterminate =
        std::abs(out.gamma) <= out.decision_band || std::abs(out.margin) <= out.decision_band;
    return out;
}

PRange p_range(const ComplexMatrix& A, const BruteOptions& opts) {
    PRange out;
    StructuralFlags flags = structural_predicates(A);
    if (!flags.invertible) {
        out.mu1 = mu1(A, Mu1Dispatch::automatic, opts).mu1;
        return out;
    }
    double m = mu1(A, Mu1Dispatch::automatic, opts).mu1;
    out.mu1 = m;
    if (m <= 0.0) return out;
    out.empty = false;
    if (m >= 1.0 - 1e-12) {
        out.p_lower = 1.0;
        out.upper_unbounded = true;
        return out;
    }
    out.p_lower = 2.0 / (1.0 + m);
    out.p_upper = 2.0 / (1.0 - m);
    return out;
}

}  // namespace antieig
