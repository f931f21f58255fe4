#pragma once

#include "scmmi/analysis.hpp"
#include "scmmi/circuit.hpp"
#include "scmmi/network.hpp"
#include "scmmi/system.hpp"

#include <string>
#include <vector>

namespace scmmi {

/// Capacitor voltages at t = 0: the configured override, or V_DC/n. Winding
/// currents start at the sinusoidal steady state of the fundamental phase
/// voltages (amplitude MI * N_C * V_DC/n), so runs open without the slow
/// L/R offset a cold start would add.
CircuitState initial_state(const SystemConfig& config);

/// Raises every capacitor of `phase` (1-based) by delta_v and lowers the other
/// phases' bus capacitors by delta_v / (n - 1), keeping the bus chain sum.
/// Throws InvalidPerturbation if any voltage would turn negative or n == 1.
CircuitState inject_perturbation(const CircuitState& state, const SystemConfig& config, int phase, double delta_v);

/// Voltage of capacitor j (1-based) of phase i (1-based).
double cap_voltage(const SystemConfig& config, const CircuitState& state, int phase, int j);

struct RecorderSpec {
    double sample_period = 5e-6;
    bool full_rate = false;
};

struct EnergyBalance {
    double source = 0.0;              // J delivered by the ideal source
    double capacitor_delta = 0.0;     // J
    double inductor_delta = 0.0;      // J
    double dissipated = 0.0;          // J in every resistive element
    double residual() const { return source - capacitor_delta - inductor_delta - dissipated; }
    /// Energy supplied by the source plus energy released from storage.
    double delivered() const;
    /// |residual| / delivered().
    double relative_residual() const;
};

struct RunSummary {
    double duration = 0.0;
    long steps = 0;
    long rebuilds = 0;
    EnergyBalance energy;
};

struct RunResult {
    WaveformRecord record;
    RunSummary summary;
    CircuitState final_state;
};

/// Channel names: V_i, I_i (phase voltage / current), V_Cij, I_Cij and I_S
/// (source current). Indices are 1-based and concatenated, with an
/// underscore separator once an index exceeds 9.
std::string phase_channel(char quantity, int phase);
std::string capacitor_channel(char quantity, int phase, int j);

/// Modulator output alone: V_i = commanded level * V_DC / n sampled every
/// `sample_period` from t = 0, with no circuit in the loop.
WaveformRecord ideal_phase_voltages(const SystemConfig& config, double duration, double sample_period);

/// Time-marches the converter. Deterministic: identical configs give
/// bit-identical records.
RunResult run(const SystemConfig& config, double duration, const RecorderSpec& recorder);
RunResult run(const SystemConfig& config);

}  // namespace scmmi
