#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qtp/csv.hpp"
#include "qtp/scenario.hpp"
#include "qtp/version.hpp"

namespace {

std::string default_out_dir() {
    if (const char* env = std::getenv("QTP_OUT_DIR")) return env;
    return "out";
}

int run_bundle(const qtp::ScenarioConfig& cfg, const std::string& out_dir,
               int threads) {
    const qtp::ResultBundle bundle = qtp::run_scenario(cfg, threads);
    for (const std::string& path : qtp::emit_csv(bundle, out_dir))
        std::cout << path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qtp: detection-time probability densities and "
                 "non-classicality measures"};
    app.set_version_flag("--version", std::string("qtp ") + qtp::kVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = default_out_dir();
    int threads = 1;

    auto* run = app.add_subcommand("run", "run a scenario config, emit CSVs");
    run->add_option("config", config_path, "config file (JSON)")->required();
    run->add_option("--out", out_dir, "output directory (default $QTP_OUT_DIR or ./out)");
    run->add_option("--threads", threads, "worker threads for sweeps")
        ->check(CLI::PositiveNumber);

    auto* validate = app.add_subcommand("validate", "validate a config and exit");
    validate->add_option("config", config_path, "config file (JSON)")->required();

    double sw_from = 1.0, sw_to = 8.0;
    int sw_steps = 8;
    std::string sw_param = "a_over_sigma";
    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep");
    sweep->add_option("config", config_path, "config file (JSON)")->required();
    sweep->add_option("--param", sw_param, "swept parameter")->required();
    sweep->add_option("--from", sw_from, "first value")->required();
    sweep->add_option("--to", sw_to, "last value")->required();
    sweep->add_option("--steps", sw_steps, "number of points")
        ->required()
        ->check(CLI::PositiveNumber);
    sweep->add_option("--out", out_dir, "output directory");
    sweep->add_option("--threads", threads, "worker threads")
        ->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        qtp::ScenarioConfig cfg = qtp::load_config(config_path);
        if (validate->parsed()) {
            std::cout << "ok: " << cfg.scenario << " config " << qtp::config_hash(cfg)
                      << "\n";
            return 0;
        }
        if (sweep->parsed()) {
            qtp::SweepConfig s;
            s.parameter = sw_param;
            s.from = sw_from;
            s.to = sw_to;
            s.steps = sw_steps;
            cfg.sweep = s;
            if (cfg.scenario != "mi_sweep")
                throw qtp::ValidationError(
                    "sweep: only mi_sweep configs are sweepable");
            cfg.validate();
        }
        return run_bundle(cfg, out_dir, threads);
    } catch (const qtp::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const qtp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
