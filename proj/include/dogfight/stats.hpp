#pragma once

#include "dogfight/core.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dogfight {

// Ascending midranks (1-based). NaN is ranked as +infinity.
std::vector<double> midranks(const std::vector<double>& values);

struct RankTest {
    double p = 1.0;
    char mark = '=';  // '+', '-', or '=' when the difference is not significant
    bool exact = false;
};

inline constexpr double kSignificance = 0.05;

// Two-sided rank-sum test of a (the reference) against b. '+' means a is
// significantly better, i.e. lower.
RankTest rank_sum_test(const std::vector<double>& a, const std::vector<double>& b);

// Brute-force permutation p-value over every split of the pooled ranks.
// Only practical for small samples; used as a cross-check.
double rank_sum_enumeration(const std::vector<double>& a, const std::vector<double>& b);

// Paired variant for matched samples.
RankTest signed_rank_test(const std::vector<double>& a, const std::vector<double>& b);

struct FriedmanResult {
    VectorXd mean_rank;  // FMR
    VectorXd final_rank;  // F-Rank, 1 = best, ties share the lower position
    MatrixXd row_ranks;
};

// matrix: problems x algorithms, lower is better.
FriedmanResult friedman_ranks(const MatrixXd& matrix);

std::vector<double> kruskal_mean_ranks(const std::vector<std::vector<double>>& samples);

struct Summary {
    std::optional<double> mean;
    std::optional<double> std;
    std::optional<double> best;
    double success = 0.0;
    int runs = 0;
};

Summary summarize(const std::vector<RunRecord>& runs);
Summary summarize_values(const std::vector<double>& values, const std::vector<bool>& feasible);

// Final best values with infeasible runs mapped to +infinity.
std::vector<double> final_values(const std::vector<RunRecord>& runs);

struct ProblemStats {
    std::string problem;
    std::vector<Summary> summaries;  // per algorithm
    std::vector<RankTest> versus_reference;  // entry 0 is the reference itself
    std::vector<double> kruskal;
};

struct StatReport {
    std::vector<std::string> algorithms;
    std::vector<ProblemStats> problems;
    std::optional<FriedmanResult> friedman;  // set when there are at least two problems
};

// runs[p][a] holds every run of algorithm a on problem p.
StatReport build_report(const std::vector<std::string>& problems, const std::vector<std::string>& algorithms,
                        const std::vector<std::vector<std::vector<RunRecord>>>& runs);

std::string format_real(double v);

void write_summary_csv(std::ostream& out, const StatReport& report);
void write_report_text(std::ostream& out, const StatReport& report);

}  // namespace dogfight
