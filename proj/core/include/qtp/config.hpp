#pragma once

#include <optional>
#include <string>

#include "qtp/grid.hpp"
#include "qtp/kernels.hpp"

namespace qtp {

struct KernelConfig {
    std::string type = "exponential";  // exponential | kallen_lehmann | pointlike
    // exponential
    double A = 1.0, gamma0 = 0.0, gamma1 = 0.0;
    // kallen_lehmann
    double mu0_sq = 1.0, bump_width = 0.1, amplitude = 1.0;
    // pointlike
    double B = 1.0, tau = 1.0;

    DetectorKernel build() const;
};

struct GridConfig {
    double min = 0.0, max = 1.0;
    int count = 2;

    Grid build() const { return Grid{min, max, count}; }
};

struct SweepConfig {
    std::string parameter = "a_over_sigma";
    double from = 1.0, to = 8.0;
    int steps = 8;
};

// One flat config object for all scenarios; which blocks matter depends on
// `scenario`. Defaults per scenario come from config_defaults().
struct ScenarioConfig {
    std::string scenario = "arrival_single";

    // physics
    double m = 0.0;
    double p = 50.0;      // wavepacket center momentum
    double sigma = 1.0;   // position-space width
    double a = 0.0;       // branch separation (pair scenarios)
    double x = 200.0;     // first detector position
    double x2 = 200.0;    // second detector position (arrival_pair P2)
    double r = 2.0;       // scattered-particle detector position
    double a_over_x = 0.02;  // geometry ratio held fixed along mi_sweep

    // detectors
    KernelConfig detector1, detector2;

    // numerics
    GridConfig kgrid, qgrid, tgrid, taugrid;
    std::string denominator_mode = "numeric";  // numeric | asymptotic
    std::optional<double> constant_alpha2;
    double window_sigmas = 25.0;  // mi_sweep time-window half-width beyond the branches
    int sweep_t_count = 2001;     // mi_sweep per-point time resolution

    // sweep (mi_sweep, `qtp sweep`)
    std::optional<SweepConfig> sweep;

    // hierarchy_check
    int hier_dim = 4;
    int hier_outcomes = 3;
    int hier_instances = 1000;
    unsigned hier_seed = 20260824;

    // Throws ValidationError naming the violated constraint.
    void validate() const;

    std::string to_json_string() const;  // canonical (sorted keys)
};

ScenarioConfig config_defaults(const std::string& scenario);

// Throws ValidationError on parse or schema errors (message carries the
// parser's byte/line context), then validates.
ScenarioConfig load_config(const std::string& path);
ScenarioConfig config_from_json_string(const std::string& text);

// FNV-1a over the canonical serialization; stamped into CSV comment lines.
std::string config_hash(const ScenarioConfig& cfg);

}  // namespace qtp
