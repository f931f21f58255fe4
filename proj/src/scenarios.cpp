#include "scmmi/scenarios.hpp"

#include "scmmi/errors.hpp"
#include "scmmi/topology.hpp"

#include <cmath>
#include <cstdio>

namespace scmmi {

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

Check within(const std::string& name, double value, double lo, double hi, const std::string& unit) {
    return {name, value >= lo && value <= hi,
            fmt(value) + " " + unit + " in [" + fmt(lo) + ", " + fmt(hi) + "]"};
}

void energy_check(const MetricsReport& r, std::vector<Check>& out) {
    if (r.energy_residual_percent) {
        out.push_back(within("energy residual", *r.energy_residual_percent, 0.0, 0.5, "%"));
    }
}

std::vector<Check> steady_manifest(const MetricsReport& r, const SystemConfig& c, double ripple_limit) {
    std::vector<Check> out;
    const double nominal = c.nominal_voltage();
    for (const auto& cap : r.capacitors) {
        out.push_back(within(cap.channel + " mean", cap.mean, 0.98 * nominal, 1.02 * nominal, "V"));
        out.push_back(within(cap.channel + " ripple", cap.ripple_percent, 0.0, ripple_limit, "%"));
    }
    const auto expected = voltage_levels(c.levels, c.phases, c.v_dc);
    for (const auto& p : r.phases) out.push_back(levels_match(p.channel, p.levels, expected, 15.0));
    energy_check(r, out);
    return out;
}

ScenarioPreset five_level() {
    ScenarioPreset p;
    p.name = "five-level-steady";
    p.description = "600 V, 3 phases, five-level sub-modules, coupled machine-like load";
    p.config.duration = 0.2;
    p.report.nominal = p.config.nominal_voltage();
    const SystemConfig c = p.config;
    p.manifest = [c](const MetricsReport& r) { return steady_manifest(r, c, 5.0); };
    return p;
}

ScenarioPreset seven_level() {
    ScenarioPreset p;
    p.name = "seven-level-steady";
    p.description = "400 V, 3 phases, seven-level sub-modules, coupled machine-like load";
    p.config.v_dc = 400.0;
    p.config.levels = 7;
    p.config.duration = 0.2;
    p.report.nominal = p.config.nominal_voltage();
    const SystemConfig c = p.config;
    p.manifest = [c](const MetricsReport& r) { return steady_manifest(r, c, 4.0); };
    return p;
}

ScenarioPreset perturbation() {
    ScenarioPreset p;
    p.name = "perturbation";
    p.description = "five-level system with phase 1 capacitors started 100 V high";
    p.config.duration = 0.3;
    p.config.perturbation = Perturbation{1, 100.0};
    p.report.nominal = p.config.nominal_voltage();
    p.manifest = [](const MetricsReport& r) {
        std::vector<Check> out;
        if (!r.recovery) return std::vector<Check>{{"recovery metrics", false, "record too short"}};
        const auto& rc = *r.recovery;
        out.push_back({"monotonic decay", rc.monotonic, rc.monotonic ? "cycle-averaged deviation non-increasing"
                                                                      : "cycle-averaged deviation rose"});
        out.push_back(rc.settling_time ? within("settling time", *rc.settling_time, 0.0, 0.2, "s")
                                       : Check{"settling time", false, "never inside the band"});
        out.push_back({"energy into " + rc.low_channel, rc.low_energy_in > 0.0, fmt(rc.low_energy_in) + " J > 0"});
        energy_check(r, out);
        return out;
    };
    return p;
}

ScenarioPreset imbalanced() {
    ScenarioPreset p;
    p.name = "imbalanced-load";
    p.description = "independent resistors scaled 1.0/1.1/0.9 with a +10 % start on phase 1";
    p.config.load.kind = LoadKind::IndependentR;
    p.config.load.r_phase = 240.0;
    p.config.load.r_scale = {1.0, 1.1, 0.9};
    p.config.perturbation = Perturbation{1, 20.0};
    p.config.duration = 0.5;
    p.report.nominal = p.config.nominal_voltage();
    p.manifest = [](const MetricsReport& r) {
        std::vector<Check> out;
        if (!r.recovery) return std::vector<Check>{{"recovery metrics", false, "record too short"}};
        const auto& rc = *r.recovery;
        out.push_back(within("stationary (last-cycle drift)", rc.drift_percent, 0.0, 0.1, "%"));
        out.push_back(within("bounded deviation", rc.final_deviation_percent, 0.0, 50.0, "%"));
        energy_check(r, out);
        return out;
    };
    return p;
}

}  // namespace

Check levels_match(const std::string& channel, const std::vector<double>& levels,
                   const std::vector<double>& expected, double tol) {
    Check c{channel + " levels", levels.size() == expected.size(), ""};
    std::string got;
    for (std::size_t k = 0; k < levels.size(); ++k) got += (k ? ", " : "") + fmt(levels[k]);
    c.detail = std::to_string(levels.size()) + " levels {" + got + "} V vs " + std::to_string(expected.size()) +
               " expected, tol " + fmt(tol) + " V";
    if (!c.pass) return c;
    // Both lists are sorted, so a one-to-one match pairs them in order.
    for (std::size_t k = 0; k < levels.size(); ++k) c.pass = c.pass && std::abs(levels[k] - expected[k]) <= tol;
    return c;
}

const std::vector<ScenarioPreset>& scenario_presets() {
    static const std::vector<ScenarioPreset> presets = {five_level(), seven_level(), perturbation(), imbalanced()};
    return presets;
}

const ScenarioPreset& find_scenario(const std::string& name) {
    std::string known;
    for (const auto& p : scenario_presets()) {
        if (p.name == name) return p;
        known += (known.empty() ? "" : ", ") + p.name;
    }
    throw ConfigError("unknown scenario '" + name + "' (" + known + ")");
}

}  // namespace scmmi
