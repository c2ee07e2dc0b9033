#pragma once

#include "dogfight/core.hpp"

#include <functional>
#include <string>
#include <vector>

namespace dogfight {

struct DiscreteSpec {
    enum Kind { kContinuous, kInteger, kValueSet };
    Kind kind = kContinuous;
    std::vector<double> values;  // sorted ascending when kind == kValueSet

    static DiscreteSpec continuous() { return {}; }
    static DiscreteSpec integer() { return {kInteger, {}}; }
    static DiscreteSpec value_set(std::vector<double> v);
};

struct RawEvaluation {
    double f = kInf;
    VectorXd g;
    VectorXd h;
};

struct ConstrainedProblem {
    std::string id;
    std::string title;
    Bounds bounds;
    int inequality_count = 0;
    int equality_count = 0;
    std::vector<DiscreteSpec> discrete;
    double equality_tolerance = 1e-4;
    // Magnitude of each inequality, used to express rounding tolerances in relative terms.
    VectorXd inequality_scale;
    // Evaluates an already snapped, in-bounds point.
    std::function<RawEvaluation(const VectorXd&)> model;

    int dimension() const { return bounds.dimension(); }
};

struct PenaltyConfig {
    double weight = 1e4;
    double offset = 1e4;
};

std::vector<std::string> engineering_ids();
ConstrainedProblem make_engineering(const std::string& id);

VectorXd snap_discrete(const ConstrainedProblem& problem, const VectorXd& x);

// Snaps, evaluates and sanitises. Throws if x lies outside the box.
RawEvaluation evaluate_raw(const ConstrainedProblem& problem, const VectorXd& x);
RawEvaluation evaluate_raw(const std::string& id, const VectorXd& x);

double penalty_of(const ConstrainedProblem& problem, const PenaltyConfig& config, const RawEvaluation& r);
double penalized_objective(const ConstrainedProblem& problem, const PenaltyConfig& config, const VectorXd& x);

// g_i <= inequality_tolerance * scale_i and |h_j| <= eps.
bool is_feasible(const ConstrainedProblem& problem, const RawEvaluation& r, double inequality_tolerance = 0.0);

// Optimizer-facing problem: objective is the penalized value, feasibility uses strict g <= 0.
Problem as_problem(const ConstrainedProblem& problem, const PenaltyConfig& config = {});

double feasibility_report(const std::vector<RunRecord>& runs, const ConstrainedProblem& problem);

// Published best decision vectors with their reported objective values.
struct OracleCase {
    std::string id;
    VectorXd x;
    double reported_best;
};
std::vector<OracleCase> oracle_cases();

// Wind farm power model: expected power of every turbine given the layout.
using PowerModel = std::function<VectorXd(const VectorXd& xs, const VectorXd& ys)>;

struct WindModelConstants {
    int sectors = 12;
    double weibull_shape = 2.0;
    double weibull_scale = 10.0;  // m/s, same for every sector
    double cut_in = 3.5;
    double rated = 14.0;
    double cut_out = 25.0;
    double rated_power = 1500.0;  // kW
    int power_bins = 10;
    double alpha = 10.0;  // partial-load curve e^v / (alpha + beta e^v)
    double beta = 1.0 / 1500.0;
    double rotor_radius = 40.0;
    double thrust_coefficient = 0.8;
    double wake_decay = 0.075;
};

PowerModel weibull_jensen_model(const WindModelConstants& c = {});
ConstrainedProblem make_wind_farm(const PowerModel& model, double rotor_radius = 40.0);

}  // namespace dogfight
