#include <doctest.h>

#include "dogfight/benchmarks.hpp"

#include <cmath>

using namespace dogfight;

TEST_CASE("analytic optima") {
    for (const std::string& name : function_names()) {
        for (int d : {2, 10, 30}) {
            const BenchmarkFunction f = make_function(name, d);
            CAPTURE(name);
            CAPTURE(d);
            CHECK(f.dimension == d);
            REQUIRE(f.optimum_point.size() == d);
            CHECK(std::abs(f(f.optimum_point) - f.known_optimum) <= 1e-12);
            CHECK(f.bounds.lower.isConstant(-100));
            CHECK(f.bounds.upper.isConstant(100));
        }
    }
}

TEST_CASE("hand-evaluated values") {
    const VectorXd zero = VectorXd::Zero(2), ones = VectorXd::Ones(2);
    CHECK(make_function("sphere", 2)(zero) == 0.0);
    CHECK(make_function("zakharov", 2)(zero) == 0.0);
    CHECK(make_function("rastrigin", 2)(zero) == doctest::Approx(0.0));
    CHECK(make_function("rastrigin", 2)(ones) == doctest::Approx(2.0));
    // 1 + 1 + (0.5 + 1)^2 + (0.5 + 1)^4
    CHECK(make_function("zakharov", 2)(ones) == doctest::Approx(2 + 2.25 + 2.25 * 2.25));
    CHECK(make_function("rosenbrock", 2)(zero) == doctest::Approx(1.0));
    CHECK(make_function("bent_cigar", 2)(ones) == doctest::Approx(1e6 + 1));
}

TEST_CASE("unknown names list the valid ones") {
    try {
        make_function("nope", 10);
        FAIL("expected an error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("rastrigin") != std::string::npos);
    }
    CHECK_THROWS(make_function("sphere", 1));
}

TEST_CASE("comparison suite has ten registered functions") {
    const auto suite = comparison_suite();
    CHECK(suite.size() == 10);
    for (const auto& n : suite) CHECK_NOTHROW(make_function(n, 10));
}

TEST_CASE("functions are finite and deterministic on the box") {
    Rng rng = seeded_rng(21);
    for (const std::string& name : function_names()) {
        const BenchmarkFunction f = make_function(name, 10);
        for (int k = 0; k < 200; ++k) {
            const VectorXd x = rng.uniform_in(f.bounds.lower, f.bounds.upper);
            const double v = f(x);
            REQUIRE(std::isfinite(v));
            REQUIRE(v == f(x));
        }
        REQUIRE(std::isfinite(f(f.bounds.lower)));
        REQUIRE(std::isfinite(f(f.bounds.upper)));
    }
}

TEST_CASE("shift and rotation hook moves the optimum") {
    const BenchmarkFunction base = make_function("rastrigin", 3);
    VectorXd o(3);
    o << 10, -20, 5;
    const Eigen::Matrix3d rot = Eigen::AngleAxisd(0.3, Eigen::Vector3d::UnitZ()).toRotationMatrix();
    const BenchmarkFunction f = with_shift_rotation(base, o, rot);
    CHECK(f(o) == doctest::Approx(0.0));
    CHECK(f.optimum_point == o);
    CHECK(f(o + VectorXd::Ones(3)) > 0.0);
    CHECK_THROWS(with_shift_rotation(base, VectorXd::Zero(2), rot));
}

TEST_CASE("diversity of degenerate and fixture swarms") {
    const MatrixXd same = MatrixXd::Constant(5, 3, 2.0);
    CHECK(population_diversity(same) == 0.0);

    // dimension-wise median 2, mean |dev| = (1+0+1)/3
    MatrixXd a(3, 1);
    a << 1, 2, 3;
    CHECK(population_diversity(a) == doctest::Approx(2.0 / 3.0));

    const DiversityTrace t = diversity_trace({same, a});
    CHECK(t[0].exploration_pct == 0.0);
    CHECK(t[0].exploitation_pct == doctest::Approx(100.0));
    CHECK(t[1].exploration_pct == doctest::Approx(100.0));
    CHECK(t[1].exploitation_pct == doctest::Approx(0.0));
}

TEST_CASE("two-iteration trace") {
    MatrixXd p1(2, 1), p2(2, 1);
    // median of two points is their mean: Div = half the spread
    p1 << 0, 4;
    p2 << 0, 8;
    const DiversityTrace t = diversity_trace({p1, p2});
    CHECK(t[0].diversity == doctest::Approx(2.0));
    CHECK(t[1].diversity == doctest::Approx(4.0));
    CHECK(t[0].exploration_pct == doctest::Approx(50.0));
    CHECK(t[0].exploitation_pct == doctest::Approx(50.0));
    CHECK(t[1].exploration_pct == doctest::Approx(100.0));
    CHECK(t[1].exploitation_pct == doctest::Approx(0.0));
}

TEST_CASE("trace sums to one hundred and is scale covariant") {
    Rng rng = seeded_rng(5);
    std::vector<MatrixXd> hist, scaled;
    for (int k = 0; k < 40; ++k) {
        MatrixXd m(20, 4);
        const double spread = 50.0 / (1 + k);
        for (int i = 0; i < 20; ++i)
            for (int j = 0; j < 4; ++j) m(i, j) = rng.uniform(-spread, spread);
        hist.push_back(m);
        scaled.push_back(7.0 * m);
    }
    const DiversityTrace a = diversity_trace(hist), b = diversity_trace(scaled);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(std::abs(a[i].exploration_pct + a[i].exploitation_pct - 100.0) <= 1e-9);
        CHECK(a[i].exploration_pct >= 0.0);
        CHECK(a[i].exploration_pct <= 100.0);
        CHECK(std::abs(a[i].exploration_pct - b[i].exploration_pct) <= 1e-9);
    }
    CHECK_THROWS(diversity_trace({}));
}
