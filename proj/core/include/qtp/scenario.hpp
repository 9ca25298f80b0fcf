#pragma once

#include <string>
#include <vector>

#include "qtp/config.hpp"

namespace qtp {

// One CSV-shaped artifact. When label_header is non-empty the first column
// holds the row labels (used by the summary tables).
struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::string label_header;
    std::vector<std::string> labels;
    std::vector<std::vector<double>> rows;
};

struct ResultBundle {
    ScenarioConfig config;
    std::vector<Table> tables;

    const Table* find(const std::string& name) const;
    double summary_value(const std::string& metric) const;  // from "summary"
};

// Dispatches on config.scenario. threads caps the sweep worker pool; the
// other scenarios are single-threaded. Deterministic: identical configs give
// identical tables (the sweep's runtime_seconds column excepted).
ResultBundle run_scenario(const ScenarioConfig& config, int threads = 1);

}  // namespace qtp
