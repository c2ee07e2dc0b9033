#pragma once

#include "dogfight/core.hpp"

namespace dogfight {

struct PsoParams {
    int swarm_size = 40;
    double inertia = 0.7298;
    double cognitive = 1.49618;
    double social = 1.49618;
    double velocity_clamp_fraction = 0.2;

    void validate() const;
};

RunRecord pso_optimize(const Problem& problem, const PsoParams& params, const Budget& budget, std::uint64_t seed);

RunRecord random_search(const Problem& problem, const Budget& budget, std::uint64_t seed);

}  // namespace dogfight
