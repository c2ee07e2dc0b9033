#include <doctest.h>

#include "dogfight/engineering.hpp"
#include "gearbox_reference.hpp"

#include <cmath>

using namespace dogfight;

namespace {

VectorXd vec(std::initializer_list<double> v) {
    VectorXd out(v.size());
    int i = 0;
    for (double x : v) out[i++] = x;
    return out;
}

}  // namespace

TEST_CASE("problem table dimensions") {
    struct Row {
        const char* id;
        int d, g, h;
    };
    const Row rows[] = {{"R1", 7, 14, 0},  {"R2", 3, 3, 0},  {"R3", 4, 7, 0},   {"R4", 4, 4, 0},
                        {"R5", 11, 10, 0},   {"R6", 14, 15, 0}, {"R7", 5, 8, 3},  {"R8", 4, 7, 0},
                        {"R9", 22, 86, 0}, {"R10", 30, 91, 0}};
    for (const Row& r : rows) {
        const ConstrainedProblem p = make_engineering(r.id);
        CAPTURE(r.id);
        CHECK(p.dimension() == r.d);
        CHECK(p.inequality_count == r.g);
        CHECK(p.equality_count == r.h);
        Rng rng = seeded_rng(1);
        for (int k = 0; k < 50; ++k) {
            const RawEvaluation e = evaluate_raw(p, rng.uniform_in(p.bounds.lower, p.bounds.upper));
            REQUIRE(e.g.size() == r.g);
            REQUIRE(e.h.size() == r.h);
        }
    }
    CHECK(engineering_ids().size() == 10);
    CHECK_THROWS(make_engineering("R11"));
}

TEST_CASE("published decision vectors reproduce their objectives") {
    for (const OracleCase& c : oracle_cases()) {
        CAPTURE(c.id);
        const ConstrainedProblem p = make_engineering(c.id);
        const RawEvaluation r = evaluate_raw(p, c.x);
        CHECK(std::abs(r.f - c.reported_best) <= 1e-2 * std::abs(c.reported_best));
        CHECK(is_feasible(p, r, 1e-4));
    }
}

TEST_CASE("out-of-box points are rejected") {
    const ConstrainedProblem p = make_engineering("R4");
    CHECK_THROWS(evaluate_raw(p, vec({0, 1, 50, 50})));
    CHECK_THROWS(evaluate_raw(p, vec({1, 1, 50})));
}

TEST_CASE("snapping") {
    const ConstrainedProblem r2 = make_engineering("R2");
    CHECK(snap_discrete(r2, vec({0.5, -1.0, 0.75209273}))[2] == 1.0);
    const ConstrainedProblem r5 = make_engineering("R5");
    VectorXd x = (r5.bounds.lower + r5.bounds.upper) / 2;
    x[7] = 0.99702629;
    CHECK(snap_discrete(r5, x)[7] == doctest::Approx(0.345));
    const ConstrainedProblem r4 = make_engineering("R4");
    CHECK(snap_discrete(r4, vec({12.49, 7.5, 40, 100}))[0] == 12.0);
    // ties go to the smaller value
    CHECK(snap_discrete(r4, vec({12.49, 7.5, 40, 100}))[1] == 7.0);
    CHECK(snap_discrete(r4, vec({12.49, 7.5, 40, 100}))[2] == 40.0);

    Rng rng = seeded_rng(2);
    for (const std::string& id : engineering_ids()) {
        const ConstrainedProblem p = make_engineering(id);
        for (int k = 0; k < 30; ++k) {
            const VectorXd s = snap_discrete(p, rng.uniform_in(p.bounds.lower, p.bounds.upper));
            REQUIRE(snap_discrete(p, s) == s);
        }
    }
}

TEST_CASE("penalty") {
    ConstrainedProblem p;
    p.id = "toy";
    p.bounds = Bounds::uniform(1, -10, 10);
    p.inequality_count = 1;
    p.equality_count = 1;
    p.discrete = {DiscreteSpec::continuous()};
    p.inequality_scale = VectorXd::Ones(1);
    // f = x, g = x - 1, h = x - 3
    p.model = [](const VectorXd& x) { return RawEvaluation{x[0], VectorXd::Constant(1, x[0] - 1), VectorXd::Constant(1, 0.0)}; };
    const PenaltyConfig cfg;
    CHECK(penalized_objective(p, cfg, vec({0.5})) == 0.5);
    CHECK(penalized_objective(p, cfg, vec({3.0})) == doctest::Approx(3.0 + 1e4 + 2e4));

    p.model = [](const VectorXd& x) { return RawEvaluation{x[0], VectorXd::Constant(1, -1.0), VectorXd::Constant(1, 1e-4)}; };
    CHECK(penalized_objective(p, cfg, vec({2.0})) == 2.0);
    p.model = [](const VectorXd& x) { return RawEvaluation{x[0], VectorXd::Constant(1, -1.0), VectorXd::Constant(1, 0.5)}; };
    CHECK(penalized_objective(p, cfg, vec({2.0})) == doctest::Approx(2.0 + 1e4 + 1e4 * (0.5 - 1e-4)));
}

TEST_CASE("penalty is monotone in a single violation") {
    ConstrainedProblem p = make_engineering("R4");
    RawEvaluation r;
    r.f = 10.0;
    r.g = VectorXd::Constant(4, -1.0);
    r.h = VectorXd(0);
    const PenaltyConfig cfg;
    double prev = penalty_of(p, cfg, r);
    for (double v = -0.5; v <= 5.0; v += 0.25) {
        r.g[2] = v;
        const double now = penalty_of(p, cfg, r);
        CHECK(now >= prev);
        prev = now;
    }
}

TEST_CASE("non-finite intermediates mark every constraint") {
    const ConstrainedProblem p = make_engineering("R9");
    // every gear on the same grid point gives zero centre distance
    VectorXd x(22);
    x.head(8).setConstant(20);
    x.segment(8, 4).setConstant(5.715);
    x.tail(10).setConstant(50.8);
    const RawEvaluation r = evaluate_raw(p, x);
    CHECK(r.f == kInf);
    CHECK((r.g.array() == kInf).all());
    CHECK_FALSE(is_feasible(p, r));
}

TEST_CASE("feasibility report") {
    const ConstrainedProblem p = make_engineering("R4");
    RunRecord good, bad;
    // thicker shell and a longer vessel than the published optimum, so no constraint is active
    good.best_point = vec({14, 7, 42.0984456, 180});
    bad.best_point = vec({1, 1, 10, 200});
    CHECK(feasibility_report(std::vector<RunRecord>(25, good), p) == 1.0);
    CHECK(feasibility_report(std::vector<RunRecord>(25, bad), p) == 0.0);
    CHECK(feasibility_report({good, bad}, p) == 0.5);
}

TEST_CASE("gearbox agrees with the stand-alone model") {
    const ConstrainedProblem p = make_engineering("R9");
    Rng rng = seeded_rng(99);
    int finite = 0;
    for (int k = 0; k < 5000; ++k) {
        const VectorXd x = snap_discrete(p, rng.uniform_in(p.bounds.lower, p.bounds.upper));
        const RawEvaluation lib = evaluate_raw(p, x);
        const GearboxReference ref = gearbox_reference(std::vector<double>(x.data(), x.data() + x.size()));
        bool ref_finite = std::isfinite(ref.f);
        for (double g : ref.g) ref_finite = ref_finite && std::isfinite(g);
        if (!ref_finite) {
            REQUIRE(lib.f == kInf);
            continue;
        }
        ++finite;
        REQUIRE(lib.f == doctest::Approx(ref.f).epsilon(1e-12));
        bool ref_ok = true;
        for (int i = 0; i < 86; ++i) {
            CAPTURE(i);
            REQUIRE(lib.g[i] == doctest::Approx(ref.g[i]).epsilon(1e-10).scale(1.0));
            ref_ok = ref_ok && ref.g[i] <= 0.0;
        }
        REQUIRE(is_feasible(p, lib) == ref_ok);
    }
    CHECK(finite > 4000);
}

TEST_CASE("wind farm spacing") {
    const ConstrainedProblem p = make_wind_farm(weibull_jensen_model());
    CHECK(p.dimension() == 30);
    VectorXd x(30);
    // a 5 x 3 grid with 350 m pitch satisfies every 5R spacing constraint
    for (int i = 0; i < 15; ++i) {
        x[i] = 100 + 350.0 * (i % 5);
        x[15 + i] = 100 + 350.0 * (i / 5);
    }
    RawEvaluation r = evaluate_raw(p, x);
    CHECK(std::isfinite(r.f));
    CHECK((r.g.array() <= 0).all());
    x[1] = x[0] + 10;
    r = evaluate_raw(p, x);
    CHECK((r.g.array() > 0).any());
}
