#include <doctest.h>

#include "dogfight/baselines.hpp"

#include <algorithm>
#include <cmath>

using namespace dogfight;

namespace {

Problem sphere_problem(int d, double lo, double hi) {
    Problem p;
    p.name = "sphere";
    p.bounds = Bounds::uniform(d, lo, hi);
    p.objective = [](const VectorXd& x) { return x.squaredNorm(); };
    return p;
}

}  // namespace

TEST_CASE("pso parameter validation") {
    PsoParams p;
    CHECK_NOTHROW(p.validate());
    p.swarm_size = 1;
    CHECK_THROWS(p.validate());
    p = PsoParams{};
    p.velocity_clamp_fraction = 0.0;
    CHECK_THROWS(p.validate());
    p.velocity_clamp_fraction = 1.5;
    CHECK_THROWS(p.validate());
}

TEST_CASE("pso on a one-dimensional parabola") {
    const Problem p = sphere_problem(1, -5, 5);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const RunRecord r = pso_optimize(p, PsoParams{}, {5000, 0}, seed);
        CHECK(r.best_value <= 1e-4);
        CHECK(r.evaluations == 5000);
        CHECK(p.bounds.contains(r.best_point));
    }
}

TEST_CASE("pso with budget equal to the swarm") {
    const Problem p = sphere_problem(3, -1, 1);
    const RunRecord r = pso_optimize(p, PsoParams{}, {40, 0}, 3);
    CHECK(r.evaluations == 40);
    CHECK_THROWS(pso_optimize(p, PsoParams{}, {39, 0}, 3));
}

TEST_CASE("pso determinism and monotone curve") {
    const Problem p = sphere_problem(4, -10, 10);
    const RunRecord a = pso_optimize(p, PsoParams{}, {4000, 0}, 17);
    const RunRecord b = pso_optimize(p, PsoParams{}, {4000, 0}, 17);
    REQUIRE(a.curve.size() == b.curve.size());
    for (std::size_t i = 0; i < a.curve.size(); ++i) CHECK(a.curve[i].best_so_far == b.curve[i].best_so_far);
    for (std::size_t i = 1; i < a.curve.size(); ++i) CHECK(a.curve[i].best_so_far <= a.curve[i - 1].best_so_far);
    CHECK(a.curve.back().evaluations == 4000);
}

TEST_CASE("random search single sample") {
    const Problem p = sphere_problem(2, -1, 1);
    const RunRecord r = random_search(p, {1, 0}, 5);
    CHECK(r.evaluations == 1);
    CHECK(r.best_value == doctest::Approx(r.best_point.squaredNorm()));
}

TEST_CASE("random search on a constant") {
    Problem p = sphere_problem(3, 0, 1);
    p.objective = [](const VectorXd&) { return -2.5; };
    CHECK(random_search(p, {100, 0}, 1).best_value == -2.5);
}

TEST_CASE("random search median on 2-D sphere") {
    // The best of E uniform draws exceeds v with probability exp(-E pi v / 40000),
    // so the median best is 40000 ln 2 / (pi E), about 0.88 for E = 1e4.
    const double analytic = 40000.0 * std::log(2.0) / (std::acos(-1.0) * 1e4);
    const Problem p = sphere_problem(2, -100, 100);
    std::vector<double> best;
    for (std::uint64_t seed = 1; seed <= 300; ++seed) best.push_back(random_search(p, {10000, 0}, seed).best_value);
    std::nth_element(best.begin(), best.begin() + 150, best.end());
    CHECK(best[150] > 0.0);
    CHECK(best[150] <= 1.0);
    CHECK(best[150] == doctest::Approx(analytic).epsilon(0.2));
    const RunRecord a = random_search(p, {500, 0}, 4), b = random_search(p, {500, 0}, 4);
    CHECK(a.best_point == b.best_point);
}
