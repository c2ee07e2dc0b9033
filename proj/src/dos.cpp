#include "dogfight/dos.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dogfight {

namespace {

const double kPi = std::acos(-1.0);

long round_half_away(double v) { return std::lround(v); }

}  // namespace

void DosParams::validate() const {
    if (swarm_size < 4 || swarm_size % 2 != 0) throw std::invalid_argument("dos: swarm size must be even and >= 4");
    if (!(k1 > 0.0 && k1 < 0.5)) throw std::invalid_argument("dos: k1 must lie in (0, 0.5)");
    if (!(k3 > 0.0 && k3 <= 1.0)) throw std::invalid_argument("dos: k3 must lie in (0, 1]");
    if (!(k4 > 0.0 && k4 <= 1.0)) throw std::invalid_argument("dos: k4 must lie in (0, 1]");
    if (!(k5 > 0.0 && k5 <= 1.0)) throw std::invalid_argument("dos: k5 must lie in (0, 1]");
}

int DosParams::top_count() const {
    return std::max(1, static_cast<int>(round_half_away(0.1 * swarm_size)));
}

int DosParams::archive_capacity() const {
    return std::max(1, static_cast<int>(round_half_away(2.5 * swarm_size)));
}

void Formation::sort() {
    const int n = size();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return fitness[a] < fitness[b]; });
    MatrixXd pos(positions.rows(), positions.cols());
    VectorXd fit(n), speed(n);
    std::vector<int> strat(n);
    for (int i = 0; i < n; ++i) {
        pos.row(i) = positions.row(order[i]);
        fit[i] = fitness[order[i]];
        speed[i] = applied_speed[order[i]];
        strat[i] = strategy[order[i]];
    }
    positions = std::move(pos);
    fitness = std::move(fit);
    applied_speed = std::move(speed);
    strategy = std::move(strat);
}

Archive::Archive(int capacity, int dimension) : z_(capacity, dimension), f_(capacity) {}

void Archive::push(const VectorXd& z, double f) {
    z_.row(cursor_) = z.transpose();
    f_[cursor_] = f;
    cursor_ = (cursor_ + 1) % capacity();
    count_ = std::min(count_ + 1, capacity());
}

VectorXd Archive::recent_centroid(int n) const {
    n = std::clamp(n, 1, count_);
    VectorXd c = VectorXd::Zero(z_.cols());
    for (int k = 1; k <= n; ++k) {
        const int slot = (cursor_ - k + capacity()) % capacity();
        c += z_.row(slot).transpose();
    }
    return c / n;
}

VelocityTriple velocity_triple(double V, double k5) {
    VelocityTriple v;
    // the ends are clamped as well, since k5 * V can fall below the speed floor
    v.v_min = std::clamp(std::min(k5 * V, V), kMinSpeed, kMaxSpeed);
    v.v_max = std::clamp(std::max(k5 * V, V), kMinSpeed, kMaxSpeed);
    v.accel = (v.v_max - v.v_min) / 1.2;
    return v;
}

double promising_speed(double current_V, const PromisingSet& promising) {
    if (promising.empty()) return current_V;
    double total = 0.0;
    for (const auto& r : promising) total += r.drop;
    const double norm = std::abs(total);
    if (norm == 0.0 || !std::isfinite(norm)) return current_V;
    double num = 0.0, den = 0.0;
    for (const auto& r : promising) {
        const double w = r.drop / norm;
        num += w * r.speed * r.speed;
        den += w * r.speed;
    }
    if (den == 0.0 || !std::isfinite(num / den)) return current_V;
    return num / den;
}

VelocityUpdate update_velocity_bounds(double current_V, const PromisingSet& promising, const DosParams& params,
                                      double r5) {
    double V = promising_speed(current_V, promising) + std::tan(kPi / 2.0 * (r5 - 0.5)) / 10.0;
    if (!std::isfinite(V)) V = kMaxSpeed;
    V = std::clamp(std::abs(V), kMinSpeed, kMaxSpeed);
    return {V, velocity_triple(V, params.k5)};
}

VelocityUpdate update_velocity_bounds(double current_V, const PromisingSet& promising, const DosParams& params,
                                      Rng& rng) {
    return update_velocity_bounds(current_V, promising, params, rng.uniform());
}

int leader_count(const DosParams& params, double r1) {
    const int half = params.half();
    const long p = round_half_away((params.k1 + (0.5 - params.k1) * r1) * half);
    return static_cast<int>(std::clamp<long>(p, 1, half - 1));
}

int leader_count(const DosParams& params, Rng& rng) { return leader_count(params, rng.uniform()); }

int draw_rank(int n, double r) {
    return static_cast<int>(std::clamp<long>(round_half_away(n * r), 1, n));
}

VectorXd head_guidance(const Formation& formation, const Archive& archive, const DosParams& params, double r3,
                       double r4) {
    if (archive.occupancy() == 0) return VectorXd::Zero(formation.positions.cols());
    const int nr = std::min(params.top_count(), formation.size());
    const int r1 = draw_rank(nr, r3);
    const int r2 = draw_rank(archive.occupancy(), r4);
    return formation.positions.row(r1 - 1).transpose() - archive.slot(r2);
}

VectorXd head_guidance(const Formation& formation, const Archive& archive, const DosParams& params, Rng& rng) {
    const double r3 = rng.uniform();
    const double r4 = rng.uniform();
    return head_guidance(formation, archive, params, r3, r4);
}

double strategy_multiplier(int strategy, const VelocityTriple& v, double dxi) {
    switch (strategy) {
        case kFreeFlight: return v.v_min * dxi;
        case kLockOn:
        case kEvasion: return v.v_min + 0.5 * v.accel * dxi * dxi;
        case kMissile: return v.v_max - 0.5 * v.accel * dxi * dxi;
        case kFlare: return v.v_max * dxi;
        default: throw std::invalid_argument("unknown strategy index");
    }
}

namespace {

Step move(const VectorXd& x, const VectorXd& pilot, const VectorXd& head, double mult) {
    return {x + (pilot + head) * mult, mult};
}

}  // namespace

Step free_flight_step(const VectorXd& x, const VectorXd& target, const VectorXd& u_head, const VelocityTriple& v,
                      double dxi) {
    return move(x, target - x, u_head, strategy_multiplier(kFreeFlight, v, dxi));
}

Step maneuver_lockon_step(const VectorXd& x, const VectorXd& y_h, const VectorXd& y_best, double r8, double r9,
                          const VectorXd& u_head, const VelocityTriple& v, double dxi) {
    const VectorXd y_pre = y_h + (y_best - y_h) * r9;
    const VectorXd pilot = r8 * (y_h - x) + (1.0 - r8) * (y_pre - x);
    return move(x, pilot, u_head, strategy_multiplier(kLockOn, v, dxi));
}

Step missile_attack_step(const VectorXd& x, const VectorXd& y_h, const VectorXd& u_head, const VelocityTriple& v,
                         double dxi) {
    return move(x, y_h - x, u_head, strategy_multiplier(kMissile, v, dxi));
}

Step maneuver_evasion_step(const VectorXd& x, const Archive& archive, int n, const VectorXd& u_head,
                           const VelocityTriple& v, double dxi) {
    VectorXd pilot = VectorXd::Zero(x.size());
    if (archive.occupancy() > 0) pilot = archive.recent_centroid(n) - x;
    return move(x, pilot, u_head, strategy_multiplier(kEvasion, v, dxi));
}

VectorXd flare_point(const VectorXd& x_rand, const Bounds& bounds, const VectorXd& i1, const VectorXd& i2) {
    VectorXd rb(x_rand.size());
    for (Eigen::Index j = 0; j < rb.size(); ++j) {
        const double a = i1[j] >= 0.5 ? 1.0 : 0.0;
        const double b = i2[j] >= 0.5 ? 1.0 : 0.0;
        if (a == 0.0 && b == 0.0)
            rb[j] = bounds.upper[j];
        else
            rb[j] = x_rand[j] * a + b * (bounds.lower[j] * b + bounds.upper[j] * (1.0 - b));
    }
    return rb;
}

Step flare_evasion_step(const VectorXd& x, const VectorXd& boundary_point, const VectorXd& u_head,
                        const VelocityTriple& v, double dxi) {
    return move(x, boundary_point - x, u_head, strategy_multiplier(kFlare, v, dxi));
}

int engagement_strategy(double P, double r13, double r14) {
    if (r13 < P) return r14 < 0.5 ? kLockOn : kMissile;
    return r14 < 0.8 ? kEvasion : kFlare;
}

int select_strategy_stealth_leader(int t, int T, double P, const DosParams& params, double r12, double r13,
                                   double r14) {
    const double ratio = T > 0 ? static_cast<double>(t) / T : 1.0;
    const double K = std::exp(params.k2 - ratio);
    if (r12 < K && t < params.k3 * T) return kFreeFlight;
    return engagement_strategy(P, r13, r14);
}

int select_strategy_regular_leader(int t, int T, double P, const DosParams& params, double r12, double r13,
                                   double r14) {
    if (t < params.k4 * T) return kFreeFlight;
    return select_strategy_stealth_leader(t, T, P, params, r12, r13, r14);
}

int select_strategy_wing(int leader_strategy, double P, double r13, double r14) {
    switch (leader_strategy) {
        case kFreeFlight: return kFreeFlight;
        case kLockOn:
        case kMissile: return r13 < P ? kLockOn : kEvasion;
        case kEvasion:
        case kFlare: return r14 < 0.5 ? kLockOn : kMissile;
        default: throw std::invalid_argument("unknown leader strategy");
    }
}

double update_prob_coefficient(double P, const std::vector<int>& offensive, const std::vector<int>& evasive,
                               const std::vector<int>& promising_offensive,
                               const std::vector<int>& promising_evasive, int t, int T) {
    auto sum = [](const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0.0); };
    auto ratio = [&](const std::vector<int>& num, const std::vector<int>& den) {
        const double d = sum(den);
        return d == 0.0 ? 0.0 : sum(num) / d;
    };
    const double progress = T > 0 ? static_cast<double>(t) / T : 1.0;
    const double delta =
        0.05 * (1.0 - P) * (ratio(promising_offensive, offensive) - ratio(promising_evasive, evasive)) * progress;
    return std::clamp(P + delta, kMinProb, kMaxProb);
}

namespace {

Formation make_formation(int rows, int dim) {
    Formation f;
    f.positions = MatrixXd::Zero(rows, dim);
    f.fitness = VectorXd::Constant(rows, kInf);
    f.strategy.assign(rows, kFreeFlight);
    f.applied_speed = VectorXd::Zero(rows);
    return f;
}

// Moves every solution of one formation; guidance is read from start-of-iteration snapshots.
void update_formation(Formation& f, bool stealth, const Formation& self0, const Formation& opp0, int p,
                      const DosState& s, const Bounds& bounds, Rng& rng, FormationTrace& trace) {
    const int n = f.size();
    trace.strategy.assign(n, 0);
    trace.leader_of.assign(n, 0);
    MatrixXd next(f.positions.rows(), f.positions.cols());
    for (int i = 0; i < n; ++i) {
        const int rank = i + 1;
        const VectorXd x = self0.positions.row(i).transpose();
        int strategy;
        int leader = 0;
        if (rank <= p) {
            const double r12 = rng.uniform(), r13 = rng.uniform(), r14 = rng.uniform();
            strategy = stealth ? select_strategy_stealth_leader(s.t, s.T, f.P, s.params, r12, r13, r14)
                               : select_strategy_regular_leader(s.t, s.T, f.P, s.params, r12, r13, r14);
        } else {
            leader = static_cast<int>(rng.index(1, p));
            const double r13 = rng.uniform(), r14 = rng.uniform();
            strategy = select_strategy_wing(trace.strategy[leader - 1], f.P, r13, r14);
        }
        const VectorXd head = head_guidance(self0, s.archive, s.params, rng);
        const double dxi = flight_duration(rng);
        Step step;
        switch (strategy) {
            case kFreeFlight: {
                const VectorXd target = rank <= p ? rng.uniform_in(bounds.lower, bounds.upper)
                                                  : VectorXd(self0.positions.row(leader - 1).transpose());
                step = free_flight_step(x, target, head, s.velocity, dxi);
                break;
            }
            case kLockOn: {
                const long h = rng.index(1, p);
                const double r8 = rng.uniform(), r9 = rng.uniform();
                step = maneuver_lockon_step(x, opp0.positions.row(h - 1).transpose(),
                                            opp0.positions.row(0).transpose(), r8, r9, head, s.velocity, dxi);
                break;
            }
            case kMissile: {
                const long h = rng.index(1, p);
                step = missile_attack_step(x, opp0.positions.row(h - 1).transpose(), head, s.velocity, dxi);
                break;
            }
            case kEvasion: {
                const int occ = s.archive.occupancy();
                const int count = occ > 0 ? std::clamp(draw_rank(s.params.top_count(), rng.uniform()), 1, occ) : 0;
                step = maneuver_evasion_step(x, s.archive, count, head, s.velocity, dxi);
                break;
            }
            default: {
                const VectorXd x_rand = rng.uniform_in(bounds.lower, bounds.upper);
                VectorXd i1(x.size()), i2(x.size());
                for (Eigen::Index j = 0; j < x.size(); ++j) {
                    i1[j] = rng.uniform();
                    i2[j] = rng.uniform();
                }
                step = flare_evasion_step(x, flare_point(x_rand, bounds, i1, i2), head, s.velocity, dxi);
                break;
            }
        }
        next.row(i) = clamp_to_bounds(step.point, bounds).transpose();
        f.strategy[i] = strategy;
        f.applied_speed[i] = step.speed;
        trace.strategy[i] = strategy;
        trace.leader_of[i] = leader;
    }
    f.positions = std::move(next);
}

struct RankSets {
    std::vector<int> offensive, evasive, promising_offensive, promising_evasive;
};

// Evaluates moved rows; rows beyond the budget are restored to their snapshot.
bool evaluate_formation(Formation& f, const Formation& f0, DosState& s, Evaluator& eval, PromisingSet& promising,
                        RankSets& sets, FormationTrace& trace) {
    bool complete = true;
    const int n = f.size();
    trace.old_fitness.assign(n, kInf);
    trace.new_fitness.assign(n, kInf);
    for (int i = 0; i < n; ++i) {
        if (eval.exhausted()) {
            f.positions.row(i) = f0.positions.row(i);
            f.fitness[i] = f0.fitness[i];
            complete = false;
            continue;
        }
        const VectorXd x = f.positions.row(i).transpose();
        const double old_f = f0.fitness[i];
        const double new_f = eval(x);
        f.fitness[i] = new_f;
        trace.old_fitness[i] = old_f;
        trace.new_fitness[i] = new_f;
        const int rank = i + 1;
        const int strategy = f.strategy[i];
        const bool improved = new_f < old_f;
        if (is_offensive(strategy)) sets.offensive.push_back(rank);
        if (is_evasive(strategy)) sets.evasive.push_back(rank);
        if (!improved) continue;
        const double drop = std::isfinite(old_f) ? old_f - new_f : kMaxSpeed;
        promising.push_back({f.applied_speed[i], drop});
        s.archive.push(x, new_f);
        trace.archived_rank.push_back(rank);
        if (is_offensive(strategy)) sets.promising_offensive.push_back(rank);
        if (is_evasive(strategy)) sets.promising_evasive.push_back(rank);
    }
    return complete;
}

}  // namespace

DosState initialize_formations(const Problem& problem, const DosParams& params, Rng& rng, Evaluator& eval) {
    params.validate();
    const int dim = problem.dimension();
    const int half = params.half();
    if (eval.remaining() < params.swarm_size) throw std::invalid_argument("dos: budget smaller than swarm size");
    DosState s;
    s.params = params;
    s.X = make_formation(half, dim);
    s.Y = make_formation(half, dim);
    s.archive = Archive(params.archive_capacity(), dim);
    s.V = 1.0;
    s.velocity = velocity_triple(s.V, params.k5);
    const VectorXd lo = problem.bounds.lower, hi = problem.bounds.upper, mid = problem.bounds.midpoint();
    for (int i = 0; i < half; ++i) s.X.positions.row(i) = rng.uniform_in(lo, mid).transpose();
    for (int i = 0; i < half; ++i) s.Y.positions.row(i) = rng.uniform_in(mid, hi).transpose();
    for (int i = 0; i < half; ++i) s.X.fitness[i] = eval(s.X.positions.row(i).transpose());
    for (int i = 0; i < half; ++i) s.Y.fitness[i] = eval(s.Y.positions.row(i).transpose());
    s.X.sort();
    s.Y.sort();
    return s;
}

bool dos_iterate(DosState& s, const Problem& problem, Rng& rng, Evaluator& eval, IterationTrace* trace) {
    IterationTrace local;
    IterationTrace& tr = trace ? *trace : local;
    tr = IterationTrace{};
    tr.t = s.t;
    tr.T = s.T;

    const Formation x0 = s.X;
    const Formation y0 = s.Y;
    const int p = leader_count(s.params, rng);
    s.X.leader_count = p;
    s.Y.leader_count = p;
    tr.p = p;

    update_formation(s.X, true, x0, y0, p, s, problem.bounds, rng, tr.x);
    update_formation(s.Y, false, y0, x0, p, s, problem.bounds, rng, tr.y);

    RankSets xs, ys;
    bool complete = evaluate_formation(s.X, x0, s, eval, tr.promising, xs, tr.x);
    complete = evaluate_formation(s.Y, y0, s, eval, tr.promising, ys, tr.y) && complete;

    s.X.P = update_prob_coefficient(s.X.P, xs.offensive, xs.evasive, xs.promising_offensive, xs.promising_evasive,
                                    s.t, s.T);
    s.Y.P = update_prob_coefficient(s.Y.P, ys.offensive, ys.evasive, ys.promising_offensive, ys.promising_evasive,
                                    s.t, s.T);
    const VelocityUpdate vu = update_velocity_bounds(s.V, tr.promising, s.params, rng);
    s.V = vu.V;
    s.velocity = vu.triple;

    s.X.sort();
    s.Y.sort();
    ++s.t;
    return complete;
}

RunRecord dos_optimize(const Problem& problem, const DosParams& params, const Budget& budget, std::uint64_t seed,
                       const DosObserver& observer) {
    params.validate();
    const double start = wall_seconds();
    const long stride = budget.checkpoint_stride > 0 ? budget.checkpoint_stride : params.swarm_size;
    Evaluator eval(problem, budget.max_evaluations, stride);
    Rng rng = seeded_rng(seed);
    DosState s = initialize_formations(problem, params, rng, eval);
    const long after_init = eval.remaining();
    s.T = static_cast<int>((after_init + params.swarm_size - 1) / params.swarm_size);
    bool truncated = false;
    IterationTrace trace;
    while (!eval.exhausted()) {
        const bool complete = dos_iterate(s, problem, rng, eval, observer ? &trace : nullptr);
        if (observer) observer(s, trace);
        if (!complete) {
            truncated = true;
            break;
        }
    }
    truncated = truncated || (after_init % params.swarm_size != 0);
    return eval.finish(seed, wall_seconds() - start, truncated);
}

}  // namespace dogfight
