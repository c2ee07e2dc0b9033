#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace dogfight {

using Eigen::MatrixXd;
using Eigen::VectorXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Bounds {
    VectorXd lower;
    VectorXd upper;

    Bounds() = default;
    Bounds(VectorXd lo, VectorXd hi);

    static Bounds uniform(int dimension, double lo, double hi);

    int dimension() const { return static_cast<int>(lower.size()); }
    VectorXd width() const { return upper - lower; }
    VectorXd midpoint() const { return 0.5 * (upper + lower); }
    bool contains(const VectorXd& x) const;
};

struct ConstraintValues {
    VectorXd inequality;  // g_i <= 0 is satisfied
    VectorXd equality;    // |h_j| <= eps is satisfied
};

struct Problem {
    std::string name;
    Bounds bounds;
    std::function<double(const VectorXd&)> objective;
    int inequality_count = 0;
    int equality_count = 0;
    std::function<ConstraintValues(const VectorXd&)> constraint_evaluator;
    // Optional: set by constrained problems so run records can carry a feasibility flag.
    std::function<bool(const VectorXd&)> feasible;

    int dimension() const { return bounds.dimension(); }
    bool is_feasible(const VectorXd& x) const { return feasible ? feasible(x) : true; }
};

struct Budget {
    long max_evaluations = 0;
    long checkpoint_stride = 0;  // 0 means "use the optimizer's population size"
};

Budget budget_for_dimension(int d);

struct CurvePoint {
    long evaluations = 0;
    double best_so_far = kInf;
};

struct RunRecord {
    std::uint64_t seed = 0;
    std::vector<CurvePoint> curve;
    VectorXd best_point;
    double best_value = kInf;
    bool feasible = false;
    double elapsed = 0.0;
    long evaluations = 0;
    bool truncated = false;
};

VectorXd clamp_to_bounds(const VectorXd& point, const Bounds& bounds);

// Uniform stream over mt19937_64. Reals are built from the top 53 bits so the
// sequence does not depend on the standard library's distribution code.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    // Uniform integer in [lo, hi].
    long index(long lo, long hi);
    VectorXd uniform_in(const VectorXd& lo, const VectorXd& hi);
    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

Rng seeded_rng(std::uint64_t seed);

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream);

// Budget-aware objective wrapper shared by every optimizer. Records the
// best-so-far curve at every checkpoint_stride evaluations.
class Evaluator {
public:
    Evaluator(const Problem& problem, long max_evaluations, long checkpoint_stride);

    double operator()(const VectorXd& x);

    long used() const { return used_; }
    long remaining() const { return max_ - used_; }
    bool exhausted() const { return used_ >= max_; }
    double best_value() const { return best_value_; }
    const VectorXd& best_point() const { return best_point_; }

    RunRecord finish(std::uint64_t seed, double elapsed, bool truncated);

private:
    const Problem& problem_;
    long max_;
    long stride_;
    long used_ = 0;
    double best_value_ = kInf;
    VectorXd best_point_;
    std::vector<CurvePoint> curve_;
};

double wall_seconds();

}  // namespace dogfight
