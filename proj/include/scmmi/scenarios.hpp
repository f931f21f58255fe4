#pragma once

// Named scenario presets and the expected-metric manifest each one carries.

#include "scmmi/report.hpp"
#include "scmmi/system.hpp"

#include <functional>
#include <string>
#include <vector>

namespace scmmi {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ScenarioPreset {
    std::string name;
    std::string description;
    SystemConfig config;
    ReportOptions report;
    std::function<std::vector<Check>(const MetricsReport&)> manifest;
};

/// five-level-steady, seven-level-steady, perturbation, imbalanced-load.
const std::vector<ScenarioPreset>& scenario_presets();
/// Throws ConfigError listing the known names.
const ScenarioPreset& find_scenario(const std::string& name);

/// Every level lies within `tol` of a distinct expected value and the
/// counts agree.
Check levels_match(const std::string& channel, const std::vector<double>& levels,
                   const std::vector<double>& expected, double tol);

}  // namespace scmmi
