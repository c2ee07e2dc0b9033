#include "dogfight/baselines.hpp"

#include <algorithm>
#include <stdexcept>

namespace dogfight {

void PsoParams::validate() const {
    if (swarm_size < 2) throw std::invalid_argument("pso: swarm size must be >= 2");
    if (!(velocity_clamp_fraction > 0.0 && velocity_clamp_fraction <= 1.0))
        throw std::invalid_argument("pso: velocity clamp fraction must lie in (0, 1]");
}

RunRecord pso_optimize(const Problem& problem, const PsoParams& params, const Budget& budget, std::uint64_t seed) {
    params.validate();
    if (budget.max_evaluations < params.swarm_size) throw std::invalid_argument("pso: budget smaller than swarm");
    const double start = wall_seconds();
    const long stride = budget.checkpoint_stride > 0 ? budget.checkpoint_stride : params.swarm_size;
    Evaluator eval(problem, budget.max_evaluations, stride);
    Rng rng = seeded_rng(seed);

    const int n = params.swarm_size;
    const int d = problem.dimension();
    const VectorXd& lo = problem.bounds.lower;
    const VectorXd& hi = problem.bounds.upper;
    const VectorXd vmax = params.velocity_clamp_fraction * problem.bounds.width();

    MatrixXd x(n, d), v(n, d), pbest(n, d);
    VectorXd pbest_f(n);
    for (int i = 0; i < n; ++i) {
        x.row(i) = rng.uniform_in(lo, hi).transpose();
        v.row(i) = rng.uniform_in(-vmax, vmax).transpose();
    }
    int g = 0;
    for (int i = 0; i < n; ++i) {
        pbest_f[i] = eval(x.row(i).transpose());
        if (pbest_f[i] < pbest_f[g]) g = i;
    }
    pbest = x;

    bool truncated = false;
    while (!eval.exhausted()) {
        for (int i = 0; i < n; ++i) {
            if (eval.exhausted()) {
                truncated = true;
                break;
            }
            for (int j = 0; j < d; ++j) {
                const double r1 = rng.uniform(), r2 = rng.uniform();
                double vij = params.inertia * v(i, j) + params.cognitive * r1 * (pbest(i, j) - x(i, j)) +
                             params.social * r2 * (pbest(g, j) - x(i, j));
                v(i, j) = std::clamp(vij, -vmax[j], vmax[j]);
                x(i, j) = std::clamp(x(i, j) + v(i, j), lo[j], hi[j]);
            }
            const double f = eval(x.row(i).transpose());
            if (f < pbest_f[i]) {
                pbest_f[i] = f;
                pbest.row(i) = x.row(i);
                if (f < pbest_f[g]) g = i;
            }
        }
    }
    return eval.finish(seed, wall_seconds() - start, truncated);
}

RunRecord random_search(const Problem& problem, const Budget& budget, std::uint64_t seed) {
    if (budget.max_evaluations < 1) throw std::invalid_argument("random search: budget must be >= 1");
    const double start = wall_seconds();
    const long stride = budget.checkpoint_stride > 0 ? budget.checkpoint_stride : 50;
    Evaluator eval(problem, budget.max_evaluations, stride);
    Rng rng = seeded_rng(seed);
    while (!eval.exhausted()) eval(rng.uniform_in(problem.bounds.lower, problem.bounds.upper));
    return eval.finish(seed, wall_seconds() - start, false);
}

}  // namespace dogfight
