#include "scmmi/topology.hpp"

#include "scmmi/errors.hpp"

#include <string>

namespace scmmi {

void require_valid_levels(int levels) {
    if (levels < 3 || levels % 2 == 0) {
        throw InvalidLevelCount("level count must be odd and >= 3, got " + std::to_string(levels));
    }
}

SubModuleSpec component_counts(int levels) {
    require_valid_levels(levels);
    SubModuleSpec s;
    s.levels = levels;
    s.n_switches = (3 * levels - 1) / 2;
    s.n_capacitors = (levels - 1) / 2;
    s.n_no_diode = (levels - 3) / 2;
    s.n_with_diode = 2;
    s.n_any_diode = levels - 1;
    return s;
}

double nominal_capacitor_voltage(int phases, double v_dc) {
    if (phases < 1) throw ConfigError("phase count must be >= 1");
    return v_dc / phases;
}

std::vector<double> voltage_levels(int levels, int phases, double v_dc) {
    require_valid_levels(levels);
    if (phases < 1) throw ConfigError("phase count must be >= 1");
    if (!(v_dc > 0.0)) throw ConfigError("dc voltage must be positive");
    const int top = capacitors_per_module(levels);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(levels));
    // k * v_dc / n rather than k * (v_dc / n): exact for integer-valued inputs.
    for (int k = -top; k <= top; ++k) out.push_back(k * v_dc / phases);
    return out;
}

bool is_boosting(int levels, int phases) {
    require_valid_levels(levels);
    return levels > 2 * phases + 1;
}

RatingReport device_ratings(int levels, int phases, double v_dc) {
    RatingReport r;
    r.level_set = voltage_levels(levels, phases, v_dc);
    r.capacitor_rating = nominal_capacitor_voltage(phases, v_dc);
    r.inner_switch_rating = r.capacitor_rating;
    r.outer_switch_rating = r.level_set.back();
    return r;
}

}  // namespace scmmi
