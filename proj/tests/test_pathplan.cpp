#include <doctest.h>

#include "dogfight/pathplan.hpp"

#include <array>
#include <cmath>
#include <sstream>

using namespace dogfight;

namespace {

Terrain flat(double h, int n = 101) { return Terrain{MatrixXd::Constant(n, n, h), 1.0}; }

MatrixXd nodes_from(std::initializer_list<std::array<double, 3>> rows) {
    MatrixXd m(rows.size(), 3);
    int i = 0;
    for (const auto& r : rows) {
        m.row(i++) << r[0], r[1], r[2];
    }
    return m;
}

// A level path from (10, 10) heading +x that stays well inside the default config.
VectorXd level_genome(double dz) {
    VectorXd g(21);
    for (int j = 0; j < kPathNodes; ++j) {
        g[3 * j] = j == 0 ? 5.0 : 10.0;
        g[3 * j + 1] = j == 0 ? 5.0 : 0.0;
        g[3 * j + 2] = dz;
    }
    return g;
}

}  // namespace

TEST_CASE("terrain queries") {
    MatrixXd grid(3, 3);
    grid << 0, 1, 2, 3, 4, 5, 6, 7, 8;
    const Terrain t{grid, 1.0};
    for (int y = 0; y < 3; ++y)
        for (int x = 0; x < 3; ++x) CHECK(t.height(x, y) == grid(y, x));
    CHECK(t.height(0.5, 0.5) == doctest::Approx(2.0));
    CHECK(t.height(1.25, 0.0) == doctest::Approx(1.25));
    CHECK(t.at_cell(-4, 99) == 6.0);
    CHECK(t.height(-3, 1) == 3.0);
}

TEST_CASE("config validation and genome bounds") {
    PathConfig c;
    CHECK_NOTHROW(c.validate());
    const Bounds b = c.genome_bounds();
    CHECK(b.dimension() == 21);
    CHECK(b.lower[0] == -5.0);
    CHECK(b.upper[1] == 25.0);
    CHECK(b.lower[2] == 0.5);
    CHECK(b.upper[20] == 5.0);
    c.turn_limit = 4.0;
    CHECK_THROWS(c.validate());
    c = PathConfig{};
    c.samples = 7;
    CHECK_THROWS(c.validate());
    c = PathConfig{};
    c.domain_upper = c.domain_lower;
    CHECK_THROWS(c.validate());
}

TEST_CASE("node decoding") {
    PathConfig c;
    c.start_x = 0.0;
    c.start_y = 0.0;
    const Terrain t = flat(3.0);
    VectorXd g = VectorXd::Zero(21);
    g[0] = 1.4;
    g[3] = 2.6;
    const MatrixXd n = decode_nodes(g, t, c);
    CHECK(n(0, 0) == 2.0);
    CHECK(n(1, 0) == 5.0);
    for (int j = 0; j < kPathNodes; ++j) CHECK(n(j, 2) == 3.0);

    PathConfig d;
    const MatrixXd z = decode_nodes(VectorXd::Zero(21), t, d);
    for (int j = 0; j < kPathNodes; ++j) {
        // round(0.5 + 5)
        CHECK(z(j, 0) == 6.0);
        CHECK(z(j, 1) == 6.0);
    }

    // node heights come from the integer cell
    MatrixXd grid = MatrixXd::Zero(20, 20);
    grid(6, 9) = 4.0;
    const Terrain bump{grid, 1.0};
    VectorXd h = VectorXd::Zero(21);
    h[0] = 3.0;
    h[2] = 1.5;
    const MatrixXd m = decode_nodes(h, bump, d);
    CHECK(m(0, 0) == 9.0);
    CHECK(m(0, 1) == 6.0);
    CHECK(m(0, 2) == doctest::Approx(5.5));
}

TEST_CASE("natural cubic spline") {
    const VectorXd s = VectorXd::LinSpaced(7, 0, 6);
    VectorXd y(7);
    y << 0, 2, -1, 4, 3, 7, 1;
    const NaturalCubicSpline sp(s, y);
    for (int k = 0; k < 7; ++k) CHECK(std::abs(sp(k) - y[k]) <= 1e-9);
    CHECK(std::abs(sp.second_derivatives()[0]) <= 1e-12);
    CHECK(std::abs(sp.second_derivatives()[6]) <= 1e-12);

    // One-sided four-point stencils are exact on a single cubic piece, so
    // comparing the left and right estimates at a knot measures the jump.
    const double h = 1e-2;
    auto d1 = [&](double at, double dir) {
        return dir * (-11 * sp(at) + 18 * sp(at + dir * h) - 9 * sp(at + 2 * dir * h) + 2 * sp(at + 3 * dir * h)) /
               (6 * h);
    };
    auto d2 = [&](double at, double dir) {
        return (2 * sp(at) - 5 * sp(at + dir * h) + 4 * sp(at + 2 * dir * h) - sp(at + 3 * dir * h)) / (h * h);
    };
    CHECK(std::abs(d2(0, 1)) <= 1e-6);
    CHECK(std::abs(d2(6, -1)) <= 1e-6);
    for (int k = 1; k < 6; ++k) {
        CHECK(std::abs(d1(k, -1) - d1(k, 1)) <= 1e-6);
        CHECK(std::abs(d2(k, -1) - d2(k, 1)) <= 1e-6);
        CHECK(std::abs(d1(k, 1) - sp.eval(k, 1)) <= 1e-6);
        CHECK(std::abs(d2(k, 1) - sp.eval(k, 2)) <= 1e-6);
    }
    CHECK_THROWS(NaturalCubicSpline(VectorXd::LinSpaced(2, 0, 1), VectorXd::Zero(3)));
}

TEST_CASE("spline sampling") {
    const MatrixXd line = nodes_from({{0, 0, 1}, {2, 1, 2}, {4, 2, 3}, {6, 3, 4}, {8, 4, 5}, {10, 5, 6}, {12, 6, 7}});
    const MatrixXd traj = spline_interpolate(line, 100);
    CHECK(traj.rows() == 100);
    for (int i = 0; i < 100; ++i) {
        const double s = 6.0 * i / 99.0;
        CHECK(std::abs(traj(i, 0) - 2 * s) <= 1e-9);
        CHECK(std::abs(traj(i, 1) - s) <= 1e-9);
        CHECK(std::abs(traj(i, 2) - (1 + s)) <= 1e-9);
    }
    CHECK(traj.row(0) == line.row(0));
    CHECK(traj.row(99) == line.row(6));
    // 7 samples land exactly on the knots
    const MatrixXd bent = nodes_from({{0, 0, 1}, {3, 1, 2}, {4, 5, 3}, {9, 3, 1}, {8, 8, 5}, {12, 6, 2}, {15, 9, 7}});
    const MatrixXd k7 = spline_interpolate(bent, 13);
    for (int j = 0; j < 7; ++j) CHECK((k7.row(2 * j) - bent.row(j)).norm() <= 1e-9);
}

TEST_CASE("path objectives") {
    MatrixXd two(2, 3);
    two << 0, 0, 1, 3, 4, 1;
    CHECK(path_objectives(two).length == doctest::Approx(5.0));
    CHECK(path_objectives(two).altitude_std == 0.0);
    two << 0, 0, 1, 0, 0, 3;
    CHECK(path_objectives(two).altitude_std == doctest::Approx(1.0));

    Rng rng = seeded_rng(6);
    for (int k = 0; k < 100; ++k) {
        MatrixXd t(10, 3);
        for (int i = 0; i < 10; ++i) t.row(i) << rng.uniform(0, 50), rng.uniform(0, 50), rng.uniform(0, 10);
        CHECK(path_objectives(t).length >= (t.row(9) - t.row(0)).norm() - 1e-12);
    }
}

TEST_CASE("turn angles") {
    CHECK(turn_angle({1, 0, 0}, {0, 1, 0}) == doctest::Approx(std::acos(-1.0) / 2));
    CHECK(turn_angle({1, 0, 0}, {2, 0, 0}) == doctest::Approx(0.0));
    CHECK(turn_angle({0, 0, 0}, {1, 0, 0}) == 0.0);
}

TEST_CASE("constraint families") {
    const PathConfig c;
    const Terrain t = flat(1.0);
    MatrixXd straight(20, 3);
    for (int i = 0; i < 20; ++i) straight.row(i) << 10 + 2 * i, 50, 5;
    CHECK(check_constraints(straight, t, c, {}).count() == 0);

    MatrixXd bend(3, 3);
    bend << 10, 10, 5, 20, 10, 5, 20, 20, 5;
    const ViolationFlags fb = check_constraints(bend, t, c, {});
    CHECK(fb.turn);
    CHECK(fb.count() == 1);

    MatrixXd low = straight;
    low.col(2).setConstant(1.2);
    CHECK(check_constraints(low, t, c, {}).clearance);

    MatrixXd high = straight;
    high(3, 2) = 25;
    CHECK(check_constraints(high, t, c, {}).altitude);

    MatrixXd out = straight;
    out(19, 0) = 101;
    CHECK(check_constraints(out, t, c, {}).boundary);

    const NoFlyZone zone{straight(5, 0), 50, 3, 10};
    CHECK(check_constraints(straight, t, c, {zone}).no_fly);
    const NoFlyZone below{straight(5, 0), 50, 3, 4};
    CHECK_FALSE(check_constraints(straight, t, c, {below}).no_fly);

    PathConfig goal = c;
    goal.destination_enabled = true;
    CHECK(check_constraints(straight, t, goal, {}).destination);
}

TEST_CASE("penalty per family") {
    const PathConfig c;
    const Terrain t = flat(1.0);
    const VectorXd g = level_genome(3.0);
    const MatrixXd traj = genome_trajectory(g, t, c);
    REQUIRE(check_constraints(traj, t, c, {}).count() == 0);
    const PathObjectives o = path_objectives(traj);
    const double clean = penalized_path_objective(g, t, c, {});
    CHECK(clean == doctest::Approx(o.length + o.altitude_std));

    // a zone the path never enters changes nothing
    CHECK(penalized_path_objective(g, t, c, {{80, 90, 5, 10}}) == clean);
    for (const NoFlyZone& z : table45_zones()) {
        const bool hit = check_constraints(traj, t, c, {z}).no_fly;
        if (!hit) CHECK(penalized_path_objective(g, t, c, {z}) == clean);
    }

    // low ceiling plus a zone on the path: two families
    PathConfig ceiling = c;
    ceiling.max_altitude = 3.5;
    const NoFlyZone on_path{traj(50, 0), traj(50, 1), 2, 10};
    CHECK(penalized_path_objective(g, t, ceiling, {on_path}) == doctest::Approx(clean + 20000));
    // removing the zone removes exactly one penalty
    CHECK(penalized_path_objective(g, t, ceiling, {}) == doctest::Approx(clean + 10000));
}

TEST_CASE("preset zones") {
    const auto z = table45_zones();
    CHECK(z.size() == 5);
    for (const NoFlyZone& q : z) {
        CHECK(q.radius > 0);
        CHECK(q.height > 0);
    }
}

TEST_CASE("terrain generation") {
    const Terrain a = generate_terrain(5, 64, 6, {2, 8});
    const Terrain b = generate_terrain(5, 64, 6, {2, 8});
    CHECK(a.grid == b.grid);
    CHECK(a.grid != generate_terrain(6, 64, 6, {2, 8}).grid);
    CHECK(a.grid.maxCoeff() <= 8.0 * 6);
    CHECK(a.grid.allFinite());
    const Terrain f = generate_terrain(5, 32, 0, {2, 8}, 1.5);
    CHECK((f.grid.array() == 1.5).all());
    CHECK_THROWS(generate_terrain(5, 15, 3, {2, 8}));
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
        CHECK(generate_terrain(seed, 40, 8, {2, 8}, 1.0).grid.maxCoeff() <= 1.0 + 8.0 * 8);
}

TEST_CASE("terrain text round trip") {
    const Terrain a = generate_terrain(11, 20, 3, {1, 4}, 0.25, 2.0);
    std::stringstream ss;
    write_terrain(ss, a);
    const Terrain b = read_terrain(ss);
    CHECK(b.cell == 2.0);
    CHECK(b.grid == a.grid);
    std::stringstream bad("3 3 1\n1 2 3\n");
    CHECK_THROWS(read_terrain(bad));
}

TEST_CASE("problem wrapper") {
    const Terrain t = default_terrain();
    const PathConfig c;
    const Problem p = make_path_problem(t, c, {});
    CHECK(p.name == "pathplan");
    CHECK(p.dimension() == 21);
    const VectorXd g = level_genome(3.0);
    CHECK(p.objective(g) == penalized_path_objective(g, t, c, {}));
    CHECK(make_path_problem(t, c, table45_zones()).name == "pathplan_zones");
}
