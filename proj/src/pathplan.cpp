#include "dogfight/pathplan.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace dogfight {

double Terrain::at_cell(long ix, long iy) const {
    ix = std::clamp<long>(ix, 0, cols() - 1);
    iy = std::clamp<long>(iy, 0, rows() - 1);
    return grid(iy, ix);
}

double Terrain::height(double x, double y) const {
    const double gx = std::clamp(x / cell, 0.0, static_cast<double>(cols() - 1));
    const double gy = std::clamp(y / cell, 0.0, static_cast<double>(rows() - 1));
    const long x0 = static_cast<long>(std::floor(gx)), y0 = static_cast<long>(std::floor(gy));
    const long x1 = std::min<long>(x0 + 1, cols() - 1), y1 = std::min<long>(y0 + 1, rows() - 1);
    const double tx = gx - x0, ty = gy - y0;
    const double h0 = grid(y0, x0) * (1.0 - tx) + grid(y0, x1) * tx;
    const double h1 = grid(y1, x0) * (1.0 - tx) + grid(y1, x1) * tx;
    return h0 * (1.0 - ty) + h1 * ty;
}

std::vector<NoFlyZone> table45_zones() {
    return {{56.7157, 18.5965, 5.0676, 6.4409},
            {32.6590, 39.5000, 4.7530, 8.2620},
            {13.1987, 45.5621, 10.5505, 3.8032},
            {65.9033, 70.4151, 4.9743, 8.5927},
            {64.0290, 44.1858, 8.7564, 9.5035}};
}

void PathConfig::validate() const {
    if (!(turn_limit > 0.0 && turn_limit < 3.14159265358979323846))
        throw std::invalid_argument("path: turn limit must lie in (0, pi)");
    if (samples < 8) throw std::invalid_argument("path: at least 8 trajectory samples are required");
    if (!(domain_lower < domain_upper)) throw std::invalid_argument("path: empty domain");
}

Bounds PathConfig::genome_bounds() const {
    VectorXd lo(3 * kPathNodes), hi(3 * kPathNodes);
    for (int i = 0; i < kPathNodes; ++i) {
        lo.segment(3 * i, 3) << dxy_lower, dxy_lower, dz_lower;
        hi.segment(3 * i, 3) << dxy_upper, dxy_upper, dz_upper;
    }
    return Bounds(lo, hi);
}

MatrixXd decode_nodes(const VectorXd& genome, const Terrain& terrain, const PathConfig& config) {
    if (genome.size() != 3 * kPathNodes) throw std::invalid_argument("path genome must hold 21 values");
    MatrixXd nodes(kPathNodes, 3);
    double sx = config.start_x, sy = config.start_y;
    for (int i = 0; i < kPathNodes; ++i) {
        sx += genome[3 * i];
        sy += genome[3 * i + 1];
        // round(0.5 + s), half-up
        const double x = std::floor(0.5 + sx + 0.5);
        const double y = std::floor(0.5 + sy + 0.5);
        const double h = terrain.at_cell(std::lround(x / terrain.cell), std::lround(y / terrain.cell));
        nodes.row(i) << x, y, h + genome[3 * i + 2];
    }
    return nodes;
}

NaturalCubicSpline::NaturalCubicSpline(VectorXd knots, VectorXd values) : s_(std::move(knots)), y_(std::move(values)) {
    const Eigen::Index n = s_.size();
    if (n < 2 || y_.size() != n) throw std::invalid_argument("spline needs matching knots and values");
    m_ = VectorXd::Zero(n);
    if (n == 2) return;
    // Thomas algorithm on the interior second derivatives.
    const Eigen::Index k = n - 2;
    VectorXd diag(k), upper(k), rhs(k);
    for (Eigen::Index i = 1; i <= k; ++i) {
        const double h0 = s_[i] - s_[i - 1], h1 = s_[i + 1] - s_[i];
        diag[i - 1] = 2.0 * (h0 + h1);
        upper[i - 1] = h1;
        rhs[i - 1] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
    }
    for (Eigen::Index i = 1; i < k; ++i) {
        const double lower = s_[i + 1] - s_[i];
        const double w = lower / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    m_[k] = rhs[k - 1] / diag[k - 1];
    for (Eigen::Index i = k - 1; i >= 1; --i) m_[i] = (rhs[i - 1] - upper[i - 1] * m_[i + 1]) / diag[i - 1];
}

double NaturalCubicSpline::eval(double s, int order) const {
    const Eigen::Index n = s_.size();
    Eigen::Index i = std::upper_bound(s_.data(), s_.data() + n, s) - s_.data() - 1;
    i = std::clamp<Eigen::Index>(i, 0, n - 2);
    const double h = s_[i + 1] - s_[i];
    const double a = (s_[i + 1] - s) / h, b = (s - s_[i]) / h;
    switch (order) {
        case 0:
            return a * y_[i] + b * y_[i + 1] + ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
        case 1:
            return (y_[i + 1] - y_[i]) / h - (3.0 * a * a - 1.0) / 6.0 * h * m_[i] +
                   (3.0 * b * b - 1.0) / 6.0 * h * m_[i + 1];
        case 2: return a * m_[i] + b * m_[i + 1];
        default: throw std::invalid_argument("spline derivative order must be 0, 1 or 2");
    }
}

MatrixXd spline_interpolate(const MatrixXd& nodes, int m) {
    if (m < 2) throw std::invalid_argument("spline sample count must be >= 2");
    const Eigen::Index n = nodes.rows();
    const VectorXd knots = VectorXd::LinSpaced(n, 0.0, static_cast<double>(n - 1));
    MatrixXd out(m, nodes.cols());
    for (Eigen::Index c = 0; c < nodes.cols(); ++c) {
        const NaturalCubicSpline sp(knots, nodes.col(c));
        for (int k = 0; k < m; ++k) out(k, c) = sp(static_cast<double>(n - 1) * k / (m - 1));
        out(0, c) = nodes(0, c);
        out(m - 1, c) = nodes(n - 1, c);
    }
    return out;
}

PathObjectives path_objectives(const MatrixXd& trajectory) {
    if (trajectory.rows() < 2) throw std::invalid_argument("trajectory needs at least two points");
    double length = 0.0;
    for (Eigen::Index i = 1; i < trajectory.rows(); ++i)
        length += (trajectory.row(i) - trajectory.row(i - 1)).norm();
    const VectorXd z = trajectory.col(2);
    const double mean = z.mean();
    const double sd = std::sqrt((z.array() - mean).square().mean());
    return {length, sd};
}

double turn_angle(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
    const double na = a.norm(), nb = b.norm();
    if (na == 0.0 || nb == 0.0) return 0.0;
    return std::acos(std::clamp(a.dot(b) / (na * nb), -1.0, 1.0));
}

ViolationFlags check_constraints(const MatrixXd& trajectory, const Terrain& terrain, const PathConfig& config,
                                 const std::vector<NoFlyZone>& zones) {
    ViolationFlags v;
    const Eigen::Index m = trajectory.rows();
    for (Eigen::Index i = 1; i + 1 < m; ++i) {
        const Eigen::Vector3d a = (trajectory.row(i) - trajectory.row(i - 1)).transpose();
        const Eigen::Vector3d b = (trajectory.row(i + 1) - trajectory.row(i)).transpose();
        if (turn_angle(a, b) > config.turn_limit) {
            v.turn = true;
            break;
        }
    }
    for (Eigen::Index i = 0; i < m; ++i) {
        const double x = trajectory(i, 0), y = trajectory(i, 1), z = trajectory(i, 2);
        if (z < terrain.height(x, y) + config.min_clearance) v.clearance = true;
        if (x < config.domain_lower || x > config.domain_upper || y < config.domain_lower || y > config.domain_upper)
            v.boundary = true;
        if (z > config.max_altitude) v.altitude = true;
        for (const auto& zone : zones)
            if (std::hypot(x - zone.xc, y - zone.yc) <= zone.radius && z <= zone.height) v.no_fly = true;
    }
    if (config.destination_enabled) {
        const double dx = trajectory(m - 1, 0) - config.goal_x, dy = trajectory(m - 1, 1) - config.goal_y;
        v.destination = std::hypot(dx, dy) > config.goal_tolerance;
    }
    return v;
}

MatrixXd genome_trajectory(const VectorXd& genome, const Terrain& terrain, const PathConfig& config) {
    return spline_interpolate(decode_nodes(genome, terrain, config), config.samples);
}

double penalized_path_objective(const VectorXd& genome, const Terrain& terrain, const PathConfig& config,
                                const std::vector<NoFlyZone>& zones) {
    const MatrixXd traj = genome_trajectory(genome, terrain, config);
    const PathObjectives obj = path_objectives(traj);
    return obj.length + obj.altitude_std + config.penalty * check_constraints(traj, terrain, config, zones).count();
}

Terrain generate_terrain(std::uint64_t seed, int grid_size, int hill_count, std::pair<double, double> amplitude_range,
                         double base_height, double cell) {
    if (grid_size < 16) throw std::invalid_argument("terrain grid must be at least 16 cells wide");
    Terrain t;
    t.cell = cell;
    t.grid = MatrixXd::Constant(grid_size, grid_size, base_height);
    Rng rng = seeded_rng(seed);
    const double span = grid_size - 1;
    for (int k = 0; k < hill_count; ++k) {
        const double cx = rng.uniform(0.0, span), cy = rng.uniform(0.0, span);
        const double amp = rng.uniform(amplitude_range.first, amplitude_range.second);
        const double sx = rng.uniform(span / 20.0, span / 6.0), sy = rng.uniform(span / 20.0, span / 6.0);
        for (int iy = 0; iy < grid_size; ++iy)
            for (int ix = 0; ix < grid_size; ++ix) {
                const double dx = (ix - cx) / sx, dy = (iy - cy) / sy;
                t.grid(iy, ix) += amp * std::exp(-0.5 * (dx * dx + dy * dy));
            }
    }
    return t;
}

Terrain default_terrain(std::uint64_t seed) { return generate_terrain(seed, 101, 8, {2.0, 8.0}); }

void write_terrain(std::ostream& out, const Terrain& terrain) {
    out << terrain.rows() << ' ' << terrain.cols() << ' ' << std::setprecision(17) << terrain.cell << '\n';
    for (int i = 0; i < terrain.rows(); ++i) {
        for (int j = 0; j < terrain.cols(); ++j) out << (j ? " " : "") << terrain.grid(i, j);
        out << '\n';
    }
}

Terrain read_terrain(std::istream& in) {
    int h = 0, w = 0;
    Terrain t;
    if (!(in >> h >> w >> t.cell) || h < 2 || w < 2 || !(t.cell > 0.0))
        throw std::runtime_error("terrain: bad header, expected 'H W cell'");
    t.grid.resize(h, w);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j)
            if (!(in >> t.grid(i, j)) || !std::isfinite(t.grid(i, j)))
                throw std::runtime_error("terrain: missing or non-finite height");
    return t;
}

Problem make_path_problem(const Terrain& terrain, const PathConfig& config, const std::vector<NoFlyZone>& zones) {
    config.validate();
    Problem p;
    p.name = zones.empty() ? "pathplan" : "pathplan_zones";
    p.bounds = config.genome_bounds();
    p.objective = [terrain, config, zones](const VectorXd& g) {
        return penalized_path_objective(g, terrain, config, zones);
    };
    p.feasible = [terrain, config, zones](const VectorXd& g) {
        return check_constraints(genome_trajectory(g, terrain, config), terrain, config, zones).count() == 0;
    };
    return p;
}

}  // namespace dogfight
