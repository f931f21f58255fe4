#pragma once

#include "scmmi/switching.hpp"

#include <Eigen/Dense>

namespace scmmi {

enum class ModulationMode { Pwm, Staircase };

/// In-phase level-shifted saw-tooth carriers on the magnitude axis. Carrier k
/// (1-based) ramps from (k-1)/count to k/count once per carrier period, so the
/// bank tiles [0, 1] without overlap.
struct CarrierBank {
    int count = 1;
    double frequency = 10e3;  // Hz
    double phase = 0.0;       // rad

    double value(int k, double t) const;
};

CarrierBank make_carrier_bank(int levels, double carrier_f, double phase = 0.0);

/// Per-phase references MI * sin(2 pi f t + 2 pi i / n), i = 1..n, in entry i-1.
Eigen::VectorXd sinusoidal_references(double t, double f, int phases, double mi);

/// Level-shifted PWM: the sign of the reference drives the S1 leg, the
/// magnitude is compared against the carrier bank.
LevelCommand pwm_level(double t, double v_ref, const CarrierBank& bank, int levels);

/// Carrier-free nearest-level quantization; ties round toward zero.
LevelCommand staircase_level(double t, double v_ref, int levels);

}  // namespace scmmi
