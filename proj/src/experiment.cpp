#include "dogfight/experiment.hpp"

#include "dogfight/baselines.hpp"
#include "dogfight/dos.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace dogfight {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
    if (v == "false" || v == "no" || v == "0" || v == "off") return false;
    throw std::invalid_argument("expected a boolean, got '" + v + "'");
}

DosParams dos_params(const AlgorithmSpec& spec) {
    DosParams p;
    for (const auto& [k, v] : spec.params) {
        if (k == "swarm_size") p.swarm_size = static_cast<int>(v);
        else if (k == "k1") p.k1 = v;
        else if (k == "k2") p.k2 = v;
        else if (k == "k3") p.k3 = v;
        else if (k == "k4") p.k4 = v;
        else if (k == "k5") p.k5 = v;
        else throw std::invalid_argument("unknown DoS parameter '" + k + "'");
    }
    p.validate();
    return p;
}

PsoParams pso_params(const AlgorithmSpec& spec) {
    PsoParams p;
    for (const auto& [k, v] : spec.params) {
        if (k == "swarm_size") p.swarm_size = static_cast<int>(v);
        else if (k == "inertia") p.inertia = v;
        else if (k == "cognitive") p.cognitive = v;
        else if (k == "social") p.social = v;
        else if (k == "velocity_clamp_fraction") p.velocity_clamp_fraction = v;
        else throw std::invalid_argument("unknown PSO parameter '" + k + "'");
    }
    p.validate();
    return p;
}

void check_algorithm(const AlgorithmSpec& spec) {
    if (spec.type == "dos") dos_params(spec);
    else if (spec.type == "pso") pso_params(spec);
    else if (spec.type == "random") {
        if (!spec.params.empty()) throw std::invalid_argument("random search takes no parameters");
    } else {
        throw std::invalid_argument("unknown algorithm type '" + spec.type + "' (valid: dos, pso, random)");
    }
}

}  // namespace

void ExperimentConfig::validate() const {
    if (runs < 1) throw std::invalid_argument("runs must be >= 1");
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
    if (budget < 0) throw std::invalid_argument("budget must be positive");
    if (problems.empty()) throw std::invalid_argument("no problems configured");
    if (algorithms.empty()) throw std::invalid_argument("no algorithms configured");
    for (const auto& a : algorithms) check_algorithm(a);
    zones_from_spec(zones);
    for (const auto& p : problems) resolve_problem(p, *this);
}

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig c;
    std::string line, section;
    int lineno = 0;
    AlgorithmSpec* current = nullptr;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw std::invalid_argument("line " + std::to_string(lineno) + ": bad section");
            section = trim(line.substr(1, line.size() - 2));
            current = nullptr;
            if (section.rfind("algorithm", 0) == 0) {
                const std::string label = trim(section.substr(9));
                if (label.empty()) throw std::invalid_argument("line " + std::to_string(lineno) + ": unnamed algorithm");
                c.algorithms.push_back({label, label, {}});
                current = &c.algorithms.back();
            } else if (section != "experiment" && section != "terrain") {
                throw std::invalid_argument("line " + std::to_string(lineno) + ": unknown section '" + section + "'");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        try {
            if (current) {
                if (key == "type") current->type = value;
                else current->params[key] = std::stod(value);
            } else if (section == "experiment") {
                if (key == "problems") c.problems = split(value, ',');
                else if (key == "runs") c.runs = std::stoi(value);
                else if (key == "seed") c.seed = std::stoull(value);
                else if (key == "budget") c.budget = std::stol(value);
                else if (key == "workers") c.workers = std::stoi(value);
                else if (key == "out") c.out = value;
                else if (key == "diversity") c.diversity = parse_bool(value);
                else throw std::invalid_argument("unknown key '" + key + "'");
            } else if (section == "terrain") {
                if (key == "seed") c.terrain_seed = std::stoull(value);
                else if (key == "zones") c.zones = value;
                else if (key == "file") c.terrain_file = value;
                else throw std::invalid_argument("unknown key '" + key + "'");
            } else {
                throw std::invalid_argument("key outside a section");
            }
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
        } catch (const std::out_of_range&) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": value out of range");
        }
    }
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config '" + path + "'");
    return parse_config(in);
}

std::vector<NoFlyZone> zones_from_spec(const std::string& spec) {
    if (spec == "none" || spec.empty()) return {};
    if (spec == "preset:table45") return table45_zones();
    throw std::invalid_argument("unknown zone spec '" + spec + "' (valid: none, preset:table45)");
}

ResolvedProblem resolve_problem(const std::string& selector, const ExperimentConfig& config) {
    ResolvedProblem r;
    r.name = selector;
    if (selector == "pathplan" || selector.rfind("pathplan:", 0) == 0) {
        std::vector<NoFlyZone> zones = zones_from_spec(config.zones);
        if (selector == "pathplan:zones") zones = table45_zones();
        else if (selector == "pathplan:nozones") zones.clear();
        else if (selector != "pathplan") throw std::invalid_argument("unknown path-planning selector '" + selector + "'");
        Terrain terrain;
        if (!config.terrain_file.empty()) {
            std::ifstream in(config.terrain_file);
            if (!in) throw std::runtime_error("cannot open terrain '" + config.terrain_file + "'");
            terrain = read_terrain(in);
        } else {
            terrain = default_terrain(config.terrain_seed);
        }
        r.problem = make_path_problem(terrain, PathConfig{}, zones);
        r.name = zones.empty() ? "pathplan" : "pathplan_zones";
        r.default_budget = 10000;
        return r;
    }
    const auto ids = engineering_ids();
    if (std::find(ids.begin(), ids.end(), selector) != ids.end()) {
        const auto cp = make_engineering(selector);
        r.problem = as_problem(cp);
        r.default_budget = budget_for_dimension(cp.dimension()).max_evaluations;
        return r;
    }
    const auto colon = selector.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("unknown problem '" + selector + "' (use name:dim, R1..R10 or pathplan)");
    int dim = 0;
    try {
        dim = std::stoi(selector.substr(colon + 1));
    } catch (const std::exception&) {
        throw std::invalid_argument("bad dimension in '" + selector + "'");
    }
    const auto f = make_function(selector.substr(0, colon), dim);
    r.problem = f.problem();
    r.name = r.problem.name;
    r.default_budget = budget_for_dimension(dim).max_evaluations;
    return r;
}

RunRecord run_algorithm(const AlgorithmSpec& spec, const Problem& problem, const Budget& budget, std::uint64_t seed,
                        std::vector<MatrixXd>* history) {
    if (spec.type == "dos") {
        DosObserver obs;
        if (history) {
            obs = [history](const DosState& s, const IterationTrace&) {
                MatrixXd pooled(s.X.positions.rows() + s.Y.positions.rows(), s.X.positions.cols());
                pooled << s.X.positions, s.Y.positions;
                history->push_back(std::move(pooled));
            };
        }
        return dos_optimize(problem, dos_params(spec), budget, seed, obs);
    }
    if (spec.type == "pso") return pso_optimize(problem, pso_params(spec), budget, seed);
    if (spec.type == "random") return random_search(problem, budget, seed);
    throw std::invalid_argument("unknown algorithm type '" + spec.type + "'");
}

void write_curve_csv(std::ostream& out, const RunRecord& run) {
    out << "evaluations,best_so_far\n";
    for (const auto& c : run.curve) out << c.evaluations << ',' << format_real(c.best_so_far) << '\n';
}

void emit_diversity(std::ostream& out, const std::vector<MatrixXd>& history) {
    if (history.empty()) throw std::invalid_argument("no position history recorded (enable diversity capture)");
    const auto trace = diversity_trace(history);
    out << "iteration,exploration_pct,exploitation_pct\n";
    for (std::size_t i = 0; i < trace.size(); ++i)
        out << i + 1 << ',' << format_real(trace[i].exploration_pct) << ',' << format_real(trace[i].exploitation_pct)
            << '\n';
}

BatteryResult run_battery(const ExperimentConfig& config, std::ostream& log) {
    config.validate();
    std::vector<ResolvedProblem> problems;
    for (const auto& s : config.problems) problems.push_back(resolve_problem(s, config));

    struct Cell {
        std::size_t p, a;
        int run;
        RunRecord record;
        std::vector<MatrixXd> history;
        std::string error;
    };
    std::vector<Cell> cells;
    for (std::size_t p = 0; p < problems.size(); ++p)
        for (std::size_t a = 0; a < config.algorithms.size(); ++a)
            for (int k = 0; k < config.runs; ++k) cells.push_back({p, a, k, {}, {}, {}});

    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;
    auto worker = [&]() {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            Cell& c = cells[i];
            const auto& rp = problems[c.p];
            const Budget budget{config.budget > 0 ? config.budget : rp.default_budget, 0};
            const std::uint64_t seed = derive_seed(config.seed, static_cast<std::uint64_t>(c.run));
            try {
                c.record = run_algorithm(config.algorithms[c.a], rp.problem, budget, seed,
                                         config.diversity ? &c.history : nullptr);
            } catch (const std::exception& e) {
                c.error = e.what();
                c.record = RunRecord{};
                c.record.seed = seed;
            }
            if (!c.error.empty()) {
                std::lock_guard<std::mutex> lock(log_mutex);
                log << "run failed: " << rp.name << ' ' << config.algorithms[c.a].label << " run " << c.run << ": "
                    << c.error << '\n';
            }
        }
    };
    const int nthreads = std::min<int>(config.workers, static_cast<int>(cells.size()));
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    namespace fs = std::filesystem;
    fs::create_directories(config.out);
    BatteryResult result;
    std::vector<std::vector<std::vector<RunRecord>>> grouped(
        problems.size(), std::vector<std::vector<RunRecord>>(config.algorithms.size()));
    for (auto& c : cells) {
        if (!c.error.empty()) ++result.failures;
        const std::string stem = problems[c.p].name + "_" + config.algorithms[c.a].label + "_run" + std::to_string(c.run);
        const fs::path curve = fs::path(config.out) / ("curve_" + stem + ".csv");
        {
            std::ofstream out(curve);
            write_curve_csv(out, c.record);
        }
        result.written.push_back(curve.string());
        if (config.diversity && !c.history.empty()) {
            const fs::path div = fs::path(config.out) / ("diversity_" + stem + ".csv");
            std::ofstream out(div);
            emit_diversity(out, c.history);
            result.written.push_back(div.string());
        }
        grouped[c.p][c.a].push_back(std::move(c.record));
    }
    std::vector<std::string> names, labels;
    for (const auto& p : problems) names.push_back(p.name);
    for (const auto& a : config.algorithms) labels.push_back(a.label);
    result.report = build_report(names, labels, grouped);

    const fs::path summary = fs::path(config.out) / "summary.csv";
    {
        std::ofstream out(summary);
        write_summary_csv(out, result.report);
    }
    const fs::path report = fs::path(config.out) / "report.txt";
    {
        std::ofstream out(report);
        write_report_text(out, result.report);
    }
    result.written.push_back(summary.string());
    result.written.push_back(report.string());
    return result;
}

std::size_t CsvTable::column(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw std::out_of_range("no CSV column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
}

double CsvTable::real(std::size_t row, const std::string& name) const { return parse_real(rows.at(row).at(column(name))); }

CsvTable read_csv(std::istream& in) {
    CsvTable t;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string f;
        std::istringstream is(line);
        while (std::getline(is, f, ',')) fields.push_back(f);
        if (line.back() == ',') fields.emplace_back();
        if (first) {
            t.header = std::move(fields);
            first = false;
        } else {
            if (fields.size() != t.header.size()) throw std::runtime_error("CSV row width differs from header");
            t.rows.push_back(std::move(fields));
        }
    }
    return t;
}

double parse_real(const std::string& s) {
    if (s == "NaN" || s == "nan") return std::nan("");
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}

double timing_kernel_seconds(long repetitions) {
    volatile double seed = 0.55;
    volatile double sink = 0.0;
    const double start = wall_seconds();
    for (long i = 0; i < repetitions; ++i) {
        double x = seed;
        x = x + x;
        x = x / 2.0;
        x = x * x;
        x = std::sqrt(x);
        x = std::log(x);
        x = std::exp(x);
        x = x / (x + 2.0);
        sink = sink + x;
    }
    return wall_seconds() - start;
}

TimingResult timing_harness(int dos_runs, long evaluations) {
    TimingResult r;
    r.t0 = timing_kernel_seconds();
    const Problem problem = make_function("rastrigin", 30).problem();
    Rng rng = seeded_rng(29);
    const VectorXd x = rng.uniform_in(problem.bounds.lower, problem.bounds.upper);
    volatile double sink = 0.0;
    double start = wall_seconds();
    for (long i = 0; i < evaluations; ++i) sink = sink + problem.objective(x);
    r.t1 = wall_seconds() - start;
    double total = 0.0;
    for (int k = 0; k < dos_runs; ++k) {
        start = wall_seconds();
        dos_optimize(problem, DosParams{}, Budget{evaluations, 0}, derive_seed(29, k));
        total += wall_seconds() - start;
    }
    r.t2_mean = total / dos_runs;
    r.overhead = (r.t2_mean - r.t1) / r.t0;
    return r;
}

}  // namespace dogfight
