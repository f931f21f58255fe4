#pragma once

// Sectioned key = value configuration text. Every key maps to one
// SystemConfig field; unknown sections or keys are errors. '#' and ';'
// start comments.
//
//   [system]      phases, v_dc, source_r, fundamental_f
//   [submodule]   levels, capacitance, cap_esr, r_on, g_off, balance_in_zero,
//                 initial_cap_voltages (comma list)
//   [load]        type, r_phase, l_self, coupling_k, r_scale (comma list)
//   [modulation]  mode (pwm | staircase), carrier_f, carrier_phase, modulation_index
//   [control]     mi_limiter, current_limiter, torque_limiter, deadband, gain, floor, ceiling
//   [simulation]  dt, duration, sample_period, full_rate, perturb_phase, perturb_delta_v

#include "scmmi/system.hpp"

#include <iosfwd>
#include <string>

namespace scmmi {

/// Applies the text on top of `base`. Throws ConfigError carrying the
/// 1-based line number of the offending entry, or line 0 when the merged
/// config fails validation.
SystemConfig parse_config(std::istream& in, SystemConfig base = {});
SystemConfig parse_config_text(const std::string& text, SystemConfig base = {});
SystemConfig load_config(const std::string& path, SystemConfig base = {});

/// Serializes every field; parse_config(write_config(c)) reproduces c.
std::string write_config(const SystemConfig& config);

}  // namespace scmmi
