#include "scmmi/control.hpp"

#include "scmmi/errors.hpp"

#include <algorithm>
#include <cmath>

namespace scmmi {

void LimiterConfig::validate() const {
    if (!(floor > 0.0) || floor > 1.0 || ceiling < 1.0) {
        throw ConfigError("limiter clamp must satisfy 0 < floor <= 1 <= ceiling");
    }
    if (deadband < 0.0) throw ConfigError("limiter deadband must be >= 0");
    if (gain < 0.0) throw ConfigError("limiter gain must be >= 0");
}

double correction_factor(double v_c, double v_avg, const LimiterConfig& cfg) {
    if (!(v_avg > 0.0)) throw ConfigError("limiter average voltage must be positive");
    const double d = (v_c - v_avg) / v_avg;
    if (std::abs(d) <= cfg.deadband / 100.0) return 1.0;
    return std::clamp(1.0 + cfg.gain * d, cfg.floor, cfg.ceiling);
}

Eigen::VectorXd mi_limiter(const Eigen::Ref<const Eigen::VectorXd>& cap_voltages, double v_avg,
                           double mi_nominal, const LimiterConfig& cfg) {
    Eigen::VectorXd mi(cap_voltages.size());
    for (Eigen::Index i = 0; i < cap_voltages.size(); ++i) {
        mi(i) = mi_nominal * correction_factor(cap_voltages(i), v_avg, cfg);
    }
    return mi;
}

double current_ref_limiter(double i_ref, double v_c, double v_avg, const LimiterConfig& cfg) {
    return i_ref * correction_factor(v_c, v_avg, cfg);
}

double torque_ref_limiter(double t_ref, double v_c, double v_avg, const LimiterConfig& cfg) {
    return t_ref * correction_factor(v_c, v_avg, cfg);
}

MovingAverage::MovingAverage(int phases, int window, const Eigen::Ref<const Eigen::VectorXd>& initial)
    : window_(std::max(window, 1)), buffer_(phases, std::max(window, 1)) {
    buffer_.colwise() = initial;
    sum_ = initial * static_cast<double>(window_);
}

void MovingAverage::push(const Eigen::Ref<const Eigen::VectorXd>& sample) {
    sum_ += sample - buffer_.col(cursor_);
    buffer_.col(cursor_) = sample;
    cursor_ = (cursor_ + 1) % window_;
}

}  // namespace scmmi
