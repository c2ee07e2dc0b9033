#pragma once

#include "dogfight/core.hpp"

#include <iosfwd>
#include <utility>
#include <vector>

namespace dogfight {

// Height field sampled on a regular grid; row index is y, column index is x.
struct Terrain {
    MatrixXd grid;
    double cell = 1.0;

    int rows() const { return static_cast<int>(grid.rows()); }
    int cols() const { return static_cast<int>(grid.cols()); }
    // Height at an integer cell, indices clamped to the grid.
    double at_cell(long ix, long iy) const;
    // Bilinear height at world coordinates, clamped to the grid edge.
    double height(double x, double y) const;
};

struct NoFlyZone {
    double xc;
    double yc;
    double radius;
    double height;
};

std::vector<NoFlyZone> table45_zones();

struct PathConfig {
    double start_x = 5.0;
    double start_y = 5.0;
    double turn_limit = 60.0 * 3.14159265358979323846 / 180.0;
    double min_clearance = 0.5;
    double max_altitude = 20.0;
    double domain_lower = 0.0;
    double domain_upper = 100.0;
    int samples = 100;
    double penalty = 10000.0;
    double dxy_lower = -5.0;
    double dxy_upper = 25.0;
    double dz_lower = 0.5;
    double dz_upper = 5.0;
    bool destination_enabled = false;
    double goal_x = 95.0;
    double goal_y = 95.0;
    double goal_tolerance = 2.0;

    void validate() const;
    Bounds genome_bounds() const;
};

inline constexpr int kPathNodes = 7;

// 7 x 3 matrix of decoded nodes.
MatrixXd decode_nodes(const VectorXd& genome, const Terrain& terrain, const PathConfig& config);

class NaturalCubicSpline {
public:
    NaturalCubicSpline(VectorXd knots, VectorXd values);

    double operator()(double s) const { return eval(s, 0); }
    // order 0, 1 or 2
    double eval(double s, int order) const;
    const VectorXd& second_derivatives() const { return m_; }

private:
    VectorXd s_;
    VectorXd y_;
    VectorXd m_;
};

// Fits x(s), y(s), z(s) over s = 0..n-1 and samples m uniform parameters.
MatrixXd spline_interpolate(const MatrixXd& nodes, int m);

struct PathObjectives {
    double length;
    double altitude_std;
};
PathObjectives path_objectives(const MatrixXd& trajectory);

struct ViolationFlags {
    bool turn = false;
    bool clearance = false;
    bool boundary = false;
    bool altitude = false;
    bool no_fly = false;
    bool destination = false;

    int count() const { return turn + clearance + boundary + altitude + no_fly + destination; }
};

double turn_angle(const Eigen::Vector3d& a, const Eigen::Vector3d& b);

ViolationFlags check_constraints(const MatrixXd& trajectory, const Terrain& terrain, const PathConfig& config,
                                 const std::vector<NoFlyZone>& zones);

MatrixXd genome_trajectory(const VectorXd& genome, const Terrain& terrain, const PathConfig& config);
double penalized_path_objective(const VectorXd& genome, const Terrain& terrain, const PathConfig& config,
                                const std::vector<NoFlyZone>& zones);

Terrain generate_terrain(std::uint64_t seed, int grid_size, int hill_count, std::pair<double, double> amplitude_range,
                         double base_height = 0.0, double cell = 1.0);
Terrain default_terrain(std::uint64_t seed = 2024);

void write_terrain(std::ostream& out, const Terrain& terrain);
Terrain read_terrain(std::istream& in);

Problem make_path_problem(const Terrain& terrain, const PathConfig& config, const std::vector<NoFlyZone>& zones);

}  // namespace dogfight
