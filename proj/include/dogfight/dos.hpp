#pragma once

#include "dogfight/core.hpp"

#include <functional>
#include <vector>

namespace dogfight {

struct DosParams {
    int swarm_size = 50;  // N, split evenly between the two formations
    double k1 = 0.3;      // leader ratio floor
    double k2 = -2.5;     // free-flight probability offset
    double k3 = 0.2;      // free-flight time ratio
    double k4 = 0.05;     // forced free-flight ratio of the regular formation
    double k5 = 0.5;      // speed ratio

    void validate() const;
    int half() const { return swarm_size / 2; }
    int top_count() const;         // NR = round(0.1 N), at least 1
    int archive_capacity() const;  // round(2.5 N)
};

enum Strategy : int { kFreeFlight = 1, kLockOn = 2, kMissile = 3, kEvasion = 4, kFlare = 5 };

inline bool is_offensive(int s) { return s == kLockOn || s == kMissile; }
inline bool is_evasive(int s) { return s == kEvasion || s == kFlare; }

struct Formation {
    MatrixXd positions;  // one solution per row
    VectorXd fitness;
    std::vector<int> strategy;
    VectorXd applied_speed;
    int leader_count = 1;
    double P = 0.5;

    int size() const { return static_cast<int>(positions.rows()); }
    // Stable ascending sort by fitness; strategy and speed travel with their rows.
    void sort();
};

// Ring buffer of improved positions. Slots are addressed 1..occupancy in storage order.
class Archive {
public:
    Archive() = default;
    Archive(int capacity, int dimension);

    void push(const VectorXd& z, double f);
    int occupancy() const { return count_; }
    int capacity() const { return static_cast<int>(z_.rows()); }
    VectorXd slot(int k) const { return z_.row(k - 1).transpose(); }
    double slot_fitness(int k) const { return f_[k - 1]; }
    // Centroid of the n most recently written entries.
    VectorXd recent_centroid(int n) const;

private:
    MatrixXd z_;
    VectorXd f_;
    int count_ = 0;
    int cursor_ = 0;
};

struct VelocityTriple {
    double v_min = 0.5;
    double v_max = 1.0;
    double accel = 0.5 / 1.2;
};

VelocityTriple velocity_triple(double V, double k5);

struct PromisingRecord {
    double speed;
    double drop;
};
using PromisingSet = std::vector<PromisingRecord>;

inline constexpr double kMinSpeed = 1e-4;
inline constexpr double kMaxSpeed = 10.0;

// Weighted speed of the promising set; falls back to current_V.
double promising_speed(double current_V, const PromisingSet& promising);

struct VelocityUpdate {
    double V;
    VelocityTriple triple;
};
VelocityUpdate update_velocity_bounds(double current_V, const PromisingSet& promising, const DosParams& params,
                                      double r5);
VelocityUpdate update_velocity_bounds(double current_V, const PromisingSet& promising, const DosParams& params,
                                      Rng& rng);

int leader_count(const DosParams& params, double r1);
int leader_count(const DosParams& params, Rng& rng);

// Index helpers: clamp(round(n * r), 1, n).
int draw_rank(int n, double r);

VectorXd head_guidance(const Formation& formation, const Archive& archive, const DosParams& params, double r3,
                       double r4);
VectorXd head_guidance(const Formation& formation, const Archive& archive, const DosParams& params, Rng& rng);

inline double flight_duration(double r6) { return 0.8 + 0.4 * r6; }
inline double flight_duration(Rng& rng) { return flight_duration(rng.uniform()); }

// Scalar step multiplier of each strategy for a given flight duration.
double strategy_multiplier(int strategy, const VelocityTriple& v, double dxi);

struct Step {
    VectorXd point;
    double speed;
};

Step free_flight_step(const VectorXd& x, const VectorXd& target, const VectorXd& u_head, const VelocityTriple& v,
                      double dxi);
Step maneuver_lockon_step(const VectorXd& x, const VectorXd& y_h, const VectorXd& y_best, double r8, double r9,
                          const VectorXd& u_head, const VelocityTriple& v, double dxi);
Step missile_attack_step(const VectorXd& x, const VectorXd& y_h, const VectorXd& u_head, const VelocityTriple& v,
                         double dxi);
Step maneuver_evasion_step(const VectorXd& x, const Archive& archive, int n, const VectorXd& u_head,
                           const VelocityTriple& v, double dxi);

// Boundary point of the flare strategy; i1/i2 are per-dimension indicator draws in [0,1].
VectorXd flare_point(const VectorXd& x_rand, const Bounds& bounds, const VectorXd& i1, const VectorXd& i2);
Step flare_evasion_step(const VectorXd& x, const VectorXd& boundary_point, const VectorXd& u_head,
                        const VelocityTriple& v, double dxi);

// Offensive/evasive choice shared by both leader rules.
int engagement_strategy(double P, double r13, double r14);
int select_strategy_stealth_leader(int t, int T, double P, const DosParams& params, double r12, double r13,
                                   double r14);
int select_strategy_regular_leader(int t, int T, double P, const DosParams& params, double r12, double r13,
                                   double r14);
int select_strategy_wing(int leader_strategy, double P, double r13, double r14);

double update_prob_coefficient(double P, const std::vector<int>& offensive, const std::vector<int>& evasive,
                               const std::vector<int>& promising_offensive,
                               const std::vector<int>& promising_evasive, int t, int T);

inline constexpr double kMinProb = 0.05;
inline constexpr double kMaxProb = 0.95;

struct DosState {
    DosParams params;
    Formation X;  // stealth formation
    Formation Y;  // regular formation
    Archive archive;
    double V = 1.0;
    VelocityTriple velocity;
    int t = 1;
    int T = 0;
};

struct FormationTrace {
    std::vector<int> strategy;  // by pre-update rank
    std::vector<int> leader_of;  // assigned leader rank for wings, 0 for leaders
    std::vector<int> archived_rank;
    std::vector<double> old_fitness;
    std::vector<double> new_fitness;
};

struct IterationTrace {
    int t = 0;
    int T = 0;
    int p = 0;
    FormationTrace x;
    FormationTrace y;
    PromisingSet promising;
};

using DosObserver = std::function<void(const DosState&, const IterationTrace&)>;

DosState initialize_formations(const Problem& problem, const DosParams& params, Rng& rng, Evaluator& eval);

// One generation. Returns false when the budget ran out during the generation.
bool dos_iterate(DosState& state, const Problem& problem, Rng& rng, Evaluator& eval,
                 IterationTrace* trace = nullptr);

RunRecord dos_optimize(const Problem& problem, const DosParams& params, const Budget& budget, std::uint64_t seed,
                       const DosObserver& observer = {});

}  // namespace dogfight
