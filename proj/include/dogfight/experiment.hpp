#pragma once

#include "dogfight/benchmarks.hpp"
#include "dogfight/core.hpp"
#include "dogfight/engineering.hpp"
#include "dogfight/pathplan.hpp"
#include "dogfight/stats.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dogfight {

struct AlgorithmSpec {
    std::string label;
    std::string type;  // dos, pso or random
    std::map<std::string, double> params;
};

struct ExperimentConfig {
    // Selectors: "<benchmark>:<dim>", an engineering id such as "R4",
    // "pathplan", "pathplan:zones" or "pathplan:nozones".
    std::vector<std::string> problems;
    std::vector<AlgorithmSpec> algorithms;
    int runs = 25;
    std::uint64_t seed = 1;
    long budget = 0;  // 0: per-problem default
    int workers = 1;
    std::string out = "results";
    bool diversity = false;
    std::uint64_t terrain_seed = 2024;
    std::string zones = "none";  // none or preset:table45
    std::string terrain_file;

    void validate() const;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

struct ResolvedProblem {
    std::string name;
    Problem problem;
    long default_budget = 0;
};

ResolvedProblem resolve_problem(const std::string& selector, const ExperimentConfig& config);
std::vector<NoFlyZone> zones_from_spec(const std::string& spec);

// Runs one algorithm; when history is non-null and the algorithm is DoS,
// the pooled positions of both formations are recorded every iteration.
RunRecord run_algorithm(const AlgorithmSpec& spec, const Problem& problem, const Budget& budget, std::uint64_t seed,
                        std::vector<MatrixXd>* history = nullptr);

struct BatteryResult {
    StatReport report;
    int failures = 0;
    std::vector<std::string> written;
};

BatteryResult run_battery(const ExperimentConfig& config, std::ostream& log);

void write_curve_csv(std::ostream& out, const RunRecord& run);
void emit_diversity(std::ostream& out, const std::vector<MatrixXd>& history);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const;
    double real(std::size_t row, const std::string& name) const;
};
CsvTable read_csv(std::istream& in);
double parse_real(const std::string& s);

struct TimingResult {
    double t0 = 0.0;
    double t1 = 0.0;
    double t2_mean = 0.0;
    double overhead = 0.0;
};

double timing_kernel_seconds(long repetitions = 1000000);
TimingResult timing_harness(int dos_runs = 5, long evaluations = 200000);

}  // namespace dogfight
