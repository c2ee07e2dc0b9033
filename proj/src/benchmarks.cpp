#include "dogfight/benchmarks.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace dogfight {

namespace {

struct Entry {
    double (*f)(const Eigen::MatrixBase<VectorXd>&);
    double optimum_coordinate;
};

const std::map<std::string, Entry>& registry() {
    static const std::map<std::string, Entry> table = {
        {"ackley", {&fn::ackley<VectorXd>, 0.0}},
        {"bent_cigar", {&fn::bent_cigar<VectorXd>, 0.0}},
        {"expanded_schaffer_f6", {&fn::expanded_schaffer_f6<VectorXd>, 0.0}},
        {"griewank", {&fn::griewank<VectorXd>, 0.0}},
        {"levy", {&fn::levy<VectorXd>, 1.0}},
        {"lunacek_bi_rastrigin", {&fn::lunacek_bi_rastrigin<VectorXd>, 2.5}},
        {"noncontinuous_rastrigin", {&fn::noncontinuous_rastrigin<VectorXd>, 0.0}},
        {"rastrigin", {&fn::rastrigin<VectorXd>, 0.0}},
        {"rosenbrock", {&fn::rosenbrock<VectorXd>, 1.0}},
        {"schwefel", {&fn::schwefel<VectorXd>, 0.0}},
        {"sphere", {&fn::sphere<VectorXd>, 0.0}},
        {"zakharov", {&fn::zakharov<VectorXd>, 0.0}},
    };
    return table;
}

}  // namespace

Problem BenchmarkFunction::problem() const {
    Problem p;
    p.name = name + "_" + std::to_string(dimension);
    p.bounds = bounds;
    p.objective = objective;
    return p;
}

std::vector<std::string> function_names() {
    std::vector<std::string> names;
    for (const auto& [name, _] : registry()) names.push_back(name);
    return names;
}

std::vector<std::string> comparison_suite() {
    return {"bent_cigar", "zakharov", "rosenbrock",  "rastrigin",
            "expanded_schaffer_f6", "lunacek_bi_rastrigin", "noncontinuous_rastrigin",
            "levy", "schwefel", "ackley"};
}

BenchmarkFunction make_function(const std::string& name, int dimension) {
    const auto& table = registry();
    const auto it = table.find(name);
    if (it == table.end()) {
        std::string valid;
        for (const auto& n : function_names()) valid += (valid.empty() ? "" : ", ") + n;
        throw std::invalid_argument("unknown benchmark '" + name + "'; valid names: " + valid);
    }
    if (dimension < 2) throw std::invalid_argument("benchmark dimension must be >= 2");
    BenchmarkFunction b;
    b.name = name;
    b.dimension = dimension;
    b.bounds = Bounds::uniform(dimension, -100.0, 100.0);
    b.optimum_point = VectorXd::Constant(dimension, it->second.optimum_coordinate);
    b.known_optimum = 0.0;
    auto f = it->second.f;
    b.objective = [f](const VectorXd& x) { return f(x); };
    return b;
}

BenchmarkFunction with_shift_rotation(const BenchmarkFunction& base, const VectorXd& shift,
                                      const MatrixXd& rotation) {
    const int d = base.dimension;
    if (shift.size() != d || rotation.rows() != d || rotation.cols() != d)
        throw std::invalid_argument("shift/rotation dimension mismatch");
    BenchmarkFunction b = base;
    b.name = base.name + "_shifted";
    auto inner = base.objective;
    const VectorXd base_opt = base.optimum_point;
    // z = M (x - o) + x*, so the base optimum maps back to x = o.
    b.objective = [inner, shift, rotation, base_opt](const VectorXd& x) {
        return inner(rotation * (x - shift) + base_opt);
    };
    b.optimum_point = shift;
    return b;
}

double population_diversity(const MatrixXd& positions) {
    const Eigen::Index n = positions.rows(), d = positions.cols();
    if (n == 0 || d == 0) return 0.0;
    double total = 0.0;
    std::vector<double> col(n);
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) col[i] = positions(i, j);
        std::sort(col.begin(), col.end());
        const double median = n % 2 ? col[n / 2] : 0.5 * (col[n / 2 - 1] + col[n / 2]);
        double s = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) s += std::abs(median - positions(i, j));
        total += s / n;
    }
    return total / d;
}

DiversityTrace diversity_trace(const std::vector<MatrixXd>& position_history) {
    if (position_history.empty()) throw std::invalid_argument("diversity trace needs at least one iteration");
    DiversityTrace trace;
    double div_max = 0.0;
    for (const auto& p : position_history) {
        const double div = population_diversity(p);
        div_max = std::max(div_max, div);
        trace.push_back({div, 0.0, 0.0});
    }
    for (auto& pt : trace) {
        if (div_max > 0.0) {
            pt.exploration_pct = 100.0 * pt.diversity / div_max;
            pt.exploitation_pct = 100.0 * std::abs(pt.diversity - div_max) / div_max;
        } else {
            pt.exploration_pct = 0.0;
            pt.exploitation_pct = 100.0;
        }
    }
    return trace;
}

}  // namespace dogfight
