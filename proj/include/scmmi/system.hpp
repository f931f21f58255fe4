#pragma once

#include "scmmi/control.hpp"
#include "scmmi/modulation.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace scmmi {

enum class LoadKind { CoupledRL, IndependentRL, IndependentR };

/// Per-phase load between each sub-module's bridge terminals. Phase i sees
/// r_phase * r_scale[i]; an empty r_scale means a balanced load.
///
/// The CoupledRL defaults stand in for a lightly loaded three-phase machine
/// with open-end stator windings: negative mutual coupling gives a 3.3 H
/// balanced (magnetizing) inductance l_self * (1 - k) and a 0.08 H
/// zero-sequence (leakage) inductance l_self * (1 + 2k), with 20 ohm winding
/// resistance.
struct LoadModel {
    LoadKind kind = LoadKind::CoupledRL;
    double r_phase = 20.0;  // ohm
    double l_self = (2.0 * 3.3 + 0.08) / 3.0;              // H
    double coupling_k = (0.08 - 3.3) / (2.0 * 3.3 + 0.08);
    std::vector<double> r_scale;

    double resistance(int phase) const;
    /// Self inductance on the diagonal, coupling_k * l_self off it for
    /// CoupledRL, diagonal for IndependentRL.
    Eigen::MatrixXd inductance_matrix(int phases) const;
    void validate(int phases) const;
};

std::string to_string(LoadKind kind);
LoadKind parse_load_kind(const std::string& text);

struct ControlConfig {
    bool mi_limiter = false;
    bool current_limiter = false;
    bool torque_limiter = false;
    LimiterConfig limiter;

    bool any() const { return mi_limiter || current_limiter || torque_limiter; }
};

struct Perturbation {
    int phase = 1;  // 1-based
    double delta_v = 0.0;
};

struct SystemConfig {
    // [system]
    int phases = 3;
    double v_dc = 600.0;
    double source_r = 0.1;
    double fundamental_f = 50.0;
    // [submodule]
    int levels = 5;
    double capacitance = 220e-6;
    double cap_esr = 10e-3;
    double r_on = 10e-3;
    double g_off = 1e-9;
    bool balance_in_zero = false;
    /// Empty: V_DC/n everywhere. One value: every capacitor. n*N_C values:
    /// phase-major, capacitor j fastest.
    std::vector<double> initial_cap_voltages;
    // [load]
    LoadModel load;
    // [modulation]
    ModulationMode mode = ModulationMode::Pwm;
    double carrier_f = 10e3;
    double carrier_phase = 0.0;
    double modulation_index = 1.0;
    // [control]
    ControlConfig control;
    // [simulation]
    double dt = 1.25e-7;
    double duration = 0.2;
    double sample_period = 5e-6;
    bool full_rate = false;
    std::optional<Perturbation> perturbation;

    int capacitors_per_phase() const;
    double nominal_voltage() const { return v_dc / phases; }
    /// Recorder decimation: steps per recorded sample.
    int decimation() const;

    /// Throws ConfigError on any violated invariant.
    void validate() const;
    /// Stable textual digest of every field, used as waveform metadata.
    std::string digest() const;
};

}  // namespace scmmi
