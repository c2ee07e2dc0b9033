#include "dogfight/experiment.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace dogfight;

int main(int argc, char** argv) {
    CLI::App app{"Dogfight Search experiment runner"};
    std::string config_path;
    std::uint64_t seed = 0, terrain_seed = 0;
    int runs = 0, workers = 0;
    long budget = 0;
    std::string out, zones, export_terrain, import_terrain;
    bool diversity = false, timing = false;

    app.add_option("config", config_path, "Experiment config file");
    app.add_option("--seed", seed, "Root seed");
    app.add_option("--runs", runs, "Independent runs per algorithm")->check(CLI::PositiveNumber);
    app.add_option("--budget", budget, "Evaluations per run")->check(CLI::PositiveNumber);
    app.add_option("--workers", workers, "Parallel runs")->check(CLI::PositiveNumber);
    app.add_option("--out", out, "Output directory");
    app.add_flag("--diversity", diversity, "Record DoS position history and write diversity traces");
    app.add_flag("--timing", timing, "Run the timing harness");
    app.add_option("--terrain-seed", terrain_seed, "Seed of the procedural terrain");
    app.add_option("--zones", zones, "No-fly zones: none or preset:table45");
    app.add_option("--export-terrain", export_terrain, "Write the terrain grid to a file and exit");
    app.add_option("--import-terrain", import_terrain, "Read the terrain grid from a file");
    CLI11_PARSE(app, argc, argv);

    try {
        if (timing) {
            const TimingResult t = timing_harness();
            std::cout << "T0 " << format_real(t.t0) << "\nT1 " << format_real(t.t1) << "\nT2_mean "
                      << format_real(t.t2_mean) << "\noverhead " << format_real(t.overhead)
                      << "\n(reference overhead on the original hardware: 97.657899)\n";
            if (config_path.empty()) return 0;
        }
        if (!export_terrain.empty()) {
            std::ofstream f(export_terrain);
            if (!f) throw std::runtime_error("cannot write '" + export_terrain + "'");
            write_terrain(f, default_terrain(app.count("--terrain-seed") ? terrain_seed : 2024));
            std::cout << "wrote " << export_terrain << '\n';
            if (config_path.empty()) return 0;
        }
        if (config_path.empty()) {
            std::cerr << "no config given (see --help)\n";
            return 2;
        }
        ExperimentConfig cfg = load_config(config_path);
        if (app.count("--seed")) cfg.seed = seed;
        if (runs) cfg.runs = runs;
        if (budget) cfg.budget = budget;
        if (workers) cfg.workers = workers;
        if (!out.empty()) cfg.out = out;
        if (diversity) cfg.diversity = true;
        if (app.count("--terrain-seed")) cfg.terrain_seed = terrain_seed;
        if (!zones.empty()) cfg.zones = zones;
        if (!import_terrain.empty()) cfg.terrain_file = import_terrain;
        cfg.validate();

        const BatteryResult r = run_battery(cfg, std::cerr);
        write_report_text(std::cout, r.report);
        std::cout << "wrote " << r.written.size() << " files to " << cfg.out << '\n';
        if (r.failures) {
            std::cerr << r.failures << " run(s) failed\n";
            return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
