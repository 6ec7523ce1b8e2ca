#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "antieig/types.hpp"

namespace antieig::detail {

// Deterministic stream: splitmix64 with Box-Muller normals. Avoids the
// implementation-defined std distributions so identical seeds give identical
// results everywhere.
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) : state(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in (0,1)
    double uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

    double normal();

    std::vector<double> unit_vector(int n);

  private:
    bool has_spare_ = false;
    double spare_ = 0.0;
};

inline uint64_t mix_seed(uint64_t seed, uint64_t stream) {
    Rng r(seed ^ (0x6a09e667f3bcc909ULL + stream * 0x9e3779b97f4a7c15ULL));
    return r.next_u64();
}

// Objective on the unit sphere. Returns false when w is infeasible (the
// caller-defined rejection region); otherwise fills value, and the Euclidean
// gradient when grad is non-null. Copies of the callable must be independent:
// each worker thread operates on its own copy, so captured scratch buffers
// are safe.
using SphereObjective =
    std::function<bool(const std::vector<double>& w, double& value, std::vector<double>* grad)>;

struct SphereMinOptions {
    int restarts = 64;
    int max_iters = 10000;
    double tol = 1e-10;
    uint64_t seed = 12345;
};

struct SphereMinResult {
    double value = 0.0;
    std::vector<double> argmin;
    int best_restart = -1;
    int restarts_used = 0;
    std::vector<double> best_per_restart;
};

// Multi-start projected gradient descent on S^{n-1}: tangent projection of
// the Euclidean gradient, normalization retraction, Barzilai-Borwein step
// with Armijo backtracking. Restart k draws from the stream (seed, k); the
// winner is the lexicographic minimum of (objective, restart index), so
// results do not depend on the execution order of restarts.
SphereMinResult sphere_minimize(int n, const SphereObjective& objective,
                                const SphereMinOptions& opts, double scale);

int worker_count();

}  // namespace antieig::detail
