#pragma once

// Closed-form sizing of the switched-capacitor sub-module and of the
// series-stacked n-phase converter built from it.

#include <vector>

namespace scmmi {

/// Component counts of one N_L-level sub-module.
struct SubModuleSpec {
    int levels = 0;        ///< N_L, odd and >= 3
    int n_switches = 0;    ///< N_S = (3 N_L - 1) / 2
    int n_capacitors = 0;  ///< N_C = (N_L - 1) / 2
    int n_no_diode = 0;    ///< switches that must not carry an antiparallel diode
    int n_with_diode = 0;  ///< switches that must carry one
    int n_any_diode = 0;   ///< switches of either kind
};

struct RatingReport {
    double capacitor_rating = 0.0;     // V
    double inner_switch_rating = 0.0;  // V, S5 and beyond
    double outer_switch_rating = 0.0;  // V, bridge switches S1..S4
    std::vector<double> level_set;     // V, ascending
};

/// Throws InvalidLevelCount unless `levels` is odd and >= 3.
void require_valid_levels(int levels);

SubModuleSpec component_counts(int levels);

/// Number of capacitors per sub-module, (N_L - 1) / 2.
inline int capacitors_per_module(int levels) { return (levels - 1) / 2; }

double nominal_capacitor_voltage(int phases, double v_dc);

/// All reachable phase voltages, ascending, exactly `levels` entries.
std::vector<double> voltage_levels(int levels, int phases, double v_dc);

/// True when the peak phase voltage exceeds the dc source voltage.
bool is_boosting(int levels, int phases);

RatingReport device_ratings(int levels, int phases, double v_dc);

}  // namespace scmmi
