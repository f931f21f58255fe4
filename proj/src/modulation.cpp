#include "scmmi/modulation.hpp"

#include "scmmi/topology.hpp"

#include <cmath>
#include <numbers>

namespace scmmi {

double CarrierBank::value(int k, double t) const {
    const double cycles = t * frequency + phase / (2.0 * std::numbers::pi);
    const double ramp = cycles - std::floor(cycles);
    return (k - 1 + ramp) / count;
}

CarrierBank make_carrier_bank(int levels, double carrier_f, double phase) {
    return CarrierBank{capacitors_per_module(levels), carrier_f, phase};
}

Eigen::VectorXd sinusoidal_references(double t, double f, int phases, double mi) {
    Eigen::VectorXd ref(phases);
    const double wt = 2.0 * std::numbers::pi * f * t;
    for (int i = 1; i <= phases; ++i) ref(i - 1) = mi * std::sin(wt + 2.0 * std::numbers::pi * i / phases);
    return ref;
}

LevelCommand pwm_level(double t, double v_ref, const CarrierBank& bank, int levels) {
    require_valid_levels(levels);
    const Polarity sign = v_ref < 0.0 ? Polarity::Negative : Polarity::Positive;
    const double mag = std::abs(v_ref);
    int level = 0;
    for (int k = 1; k <= bank.count; ++k) {
        if (mag > bank.value(k, t)) ++level;
    }
    return {sign == Polarity::Negative ? -level : level, sign};
}

LevelCommand staircase_level(double /*t*/, double v_ref, int levels) {
    const int top = capacitors_per_module(levels);
    require_valid_levels(levels);
    const Polarity sign = v_ref < 0.0 ? Polarity::Negative : Polarity::Positive;
    const double x = std::abs(v_ref) * top;
    int level = static_cast<int>(std::ceil(x - 0.5));
    if (level < 0) level = 0;
    if (level > top) level = top;
    return {sign == Polarity::Negative ? -level : level, sign};
}

}  // namespace scmmi
