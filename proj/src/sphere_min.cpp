#include "sphere_min.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

namespace antieig::detail {

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

std::vector<double> Rng::unit_vector(int n) {
    std::vector<double> v(n);
    double nrm = 0.0;
    do {
        for (double& x : v) x = normal();
        nrm = 0.0;
        for (double x : v) nrm += x * x;
        nrm = std::sqrt(nrm);
    } while (nrm < 1e-12);
    for (double& x : v) x /= nrm;
    return v;
}

int worker_count() {
    if (const char* env = std::getenv("ANTIEIG_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

namespace {

void normalize(std::vector<double>& v) {
    double n = 0.0;
    for (double x : v) n += x * x;
    n = std::sqrt(n);
    for (double& x : v) x /= n;
}

struct RestartOutcome {
    bool valid = false;
    double value = 0.0;
    std::vector<double> w;
};

RestartOutcome run_restart(int n, SphereObjective& objective, const SphereMinOptions& opts,
                           double scale, uint64_t stream_seed) {
    Rng rng(stream_seed);
    RestartOutcome out;
    const double grad_stop = opts.tol * std::max(1.0, scale);

    std::vector<double> w, grad(n), gt(n), cand(n), w_prev(n), gt_prev(n);
    double f = 0.0;

    // The objective may reject a region (|Aw| ~ 0); re-randomize the start
    // until a feasible point appears.
    bool started = false;
    for (int attempt = 0; attempt < 128 && !started; ++attempt) {
        w = rng.unit_vector(n);
        started = objective(w, f, &grad);
    }
    if (!started) return out;

    out.valid = true;
    out.value = f;
    out.w = w;

    bool have_prev = false;
    double step = 1.0;
    for (int iter = 0; iter < opts.max_iters; ++iter) {
        double gw = 0.0;
        for (int i = 0; i < n; ++i) gw += grad[i] * w[i];
        double ng2 = 0.0;
        for (int i = 0; i < n; ++i) {
            gt[i] = grad[i] - gw * w[i];
            ng2 += gt[i] * gt[i];
        }
        double ng = std::sqrt(ng2);
        if (ng <= grad_stop) break;

        double t = step;
        if (have_prev) {
            // Barzilai-Borwein step from the last accepted move
            double sy = 0.0, ss = 0.0;
            for (int i = 0; i < n; ++i) {
                double si = w[i] - w_prev[i];
                double yi = gt[i] - gt_prev[i];
                ss += si * si;
                sy += si * yi;
            }
            if (sy > 1e-300) t = std::clamp(ss / sy, 1e-12, 1e8);
        }

        w_prev = w;
        gt_prev = gt;

        bool accepted = false;
        double fc = 0.0;
        for (int bt = 0; bt < 60; ++bt) {
            for (int i = 0; i < n; ++i) cand[i] = w[i] - t * gt[i];
            normalize(cand);
            if (objective(cand, fc, nullptr) && fc <= f - 1e-4 * t * ng2) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) break;  // stationary to line-search resolution

        w = cand;
        f = fc;
        if (!objective(w, f, &grad)) break;
        have_prev = true;
        step = t;
        if (f < out.value) {
            out.value = f;
            out.w = w;
        }
    }
    return out;
}

}  // namespace

SphereMinResult sphere_minimize(int n, const SphereObjective& objective,
                                const SphereMinOptions& opts, double scale) {
    if (n < 1) throw InputError("sphere_minimize: empty problem");
    const int restarts = std::max(1, opts.restarts);
    std::vector<RestartOutcome> outcomes(restarts);

    auto work = [&](int begin, int end) {
        SphereObjective local = objective;  // independent scratch per worker
        for (int k = begin; k < end; ++k)
            outcomes[k] = run_restart(n, local, opts, scale, mix_seed(opts.seed, k));
    };

    int workers = std::min(worker_count(), restarts);
    if (workers <= 1) {
        work(0, restarts);
    } else {
        std::vector<std::thread> pool;
        int chunk = (restarts + workers - 1) / workers;
        for (int t = 0; t < workers; ++t) {
            int begin = t * chunk;
            int end = std::min(restarts, begin + chunk);
            if (begin < end) pool.emplace_back(work, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    SphereMinResult result;
    result.restarts_used = restarts;
    result.best_per_restart.reserve(restarts);
    for (int k = 0; k < restarts; ++k) {
        const RestartOutcome& o = outcomes[k];
        result.best_per_restart.push_back(o.valid ? o.value
                                                  : std::numeric_limits<double>::quiet_NaN());
        if (!o.valid) continue;
        if (result.best_restart < 0 || o.value < result.value) {
            result.value = o.value;
            result.argmin = o.w;
            result.best_restart = k;
        }
    }
    if (result.best_restart < 0)
        throw NumericalError("sphere_minimize: no restart found a feasible point");
    return result;
}

}  // namespace antieig::detail
