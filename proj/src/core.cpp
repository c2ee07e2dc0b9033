#include "dogfight/core.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace dogfight {

Bounds::Bounds(VectorXd lo, VectorXd hi) : lower(std::move(lo)), upper(std::move(hi)) {
    if (lower.size() != upper.size())
        throw std::invalid_argument("bounds: lower and upper differ in dimension");
    for (Eigen::Index j = 0; j < lower.size(); ++j)
        if (!(lower[j] < upper[j]))
            throw std::invalid_argument("bounds: lower must be strictly below upper");
}

Bounds Bounds::uniform(int dimension, double lo, double hi) {
    return Bounds(VectorXd::Constant(dimension, lo), VectorXd::Constant(dimension, hi));
}

bool Bounds::contains(const VectorXd& x) const {
    if (x.size() != lower.size()) return false;
    return (x.array() >= lower.array()).all() && (x.array() <= upper.array()).all();
}

Budget budget_for_dimension(int d) {
    if (d < 1) throw std::invalid_argument("budget_for_dimension: d must be >= 1");
    long e = 500000;
    if (d <= 10)
        e = 50000;
    else if (d <= 30)
        e = 100000;
    else if (d <= 50)
        e = 200000;
    else if (d <= 150)
        e = 400000;
    return Budget{e, 0};
}

VectorXd clamp_to_bounds(const VectorXd& point, const Bounds& bounds) {
    if (point.size() != bounds.lower.size())
        throw std::invalid_argument("clamp_to_bounds: dimension mismatch");
    return point.cwiseMax(bounds.lower).cwiseMin(bounds.upper);
}

long Rng::index(long lo, long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t v;
    do {
        v = engine_();
    } while (v >= limit);
    return lo + static_cast<long>(v % span);
}

VectorXd Rng::uniform_in(const VectorXd& lo, const VectorXd& hi) {
    VectorXd x(lo.size());
    for (Eigen::Index j = 0; j < lo.size(); ++j) x[j] = uniform(lo[j], hi[j]);
    return x;
}

Rng seeded_rng(std::uint64_t seed) { return Rng(splitmix64(seed)); }

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
    return splitmix64(root ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

Evaluator::Evaluator(const Problem& problem, long max_evaluations, long checkpoint_stride)
    : problem_(problem), max_(max_evaluations), stride_(checkpoint_stride > 0 ? checkpoint_stride : 1) {
    if (max_evaluations < 1) throw std::invalid_argument("budget must allow at least one evaluation");
}

double Evaluator::operator()(const VectorXd& x) {
    if (used_ >= max_) throw std::logic_error("evaluation budget exhausted");
    double f = problem_.objective(x);
    if (!std::isfinite(f)) f = kInf;
    ++used_;
    if (f < best_value_ || best_point_.size() == 0) {
        if (f < best_value_) best_value_ = f;
        best_point_ = x;
    }
    if (used_ % stride_ == 0) curve_.push_back({used_, best_value_});
    return f;
}

RunRecord Evaluator::finish(std::uint64_t seed, double elapsed, bool truncated) {
    RunRecord r;
    r.seed = seed;
    r.curve = curve_;
    if (r.curve.empty() || r.curve.back().evaluations != used_) r.curve.push_back({used_, best_value_});
    r.best_point = best_point_;
    r.best_value = best_value_;
    r.feasible = best_point_.size() > 0 && std::isfinite(best_value_) && problem_.is_feasible(best_point_);
    r.elapsed = elapsed;
    r.evaluations = used_;
    r.truncated = truncated;
    return r;
}

double wall_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

}  // namespace dogfight
