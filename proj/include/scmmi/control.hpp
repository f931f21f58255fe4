#pragma once

// Supervisory balancing aids for abnormal operation. All three limiters
// share one law: a proportional correction on the per-unit deviation of the
// phase's bus capacitor voltage from the average, with a deadband and a clamp.
// Only the identity-on-balance, monotonicity and closed-loop improvement
// properties are prescribed; the proportional law itself is a minimal
// realization.

#include <Eigen/Dense>

namespace scmmi {

struct LimiterConfig {
    double deadband = 2.5;  // percent
    double gain = 1.0;      // per-unit correction per per-unit deviation
    double floor = 0.8;
    double ceiling = 1.2;

    void validate() const;
};

/// Multiplicative correction for a phase whose bus capacitor sits at `v_c`.
/// Over-voltage phases get a factor above one (they draw more), under-voltage
/// phases a factor below one.
double correction_factor(double v_c, double v_avg, const LimiterConfig& cfg);

Eigen::VectorXd mi_limiter(const Eigen::Ref<const Eigen::VectorXd>& cap_voltages, double v_avg,
                           double mi_nominal, const LimiterConfig& cfg);

double current_ref_limiter(double i_ref, double v_c, double v_avg, const LimiterConfig& cfg);

double torque_ref_limiter(double t_ref, double v_c, double v_avg, const LimiterConfig& cfg);

/// Fixed-length moving average, one window per phase. The simulation loop
/// owns one instance and feeds it every step.
class MovingAverage {
public:
    MovingAverage(int phases, int window, const Eigen::Ref<const Eigen::VectorXd>& initial);

    void push(const Eigen::Ref<const Eigen::VectorXd>& sample);
    Eigen::VectorXd mean() const { return sum_ / static_cast<double>(window_); }

private:
    int window_;
    int cursor_ = 0;
    Eigen::MatrixXd buffer_;  // phases x window
    Eigen::VectorXd sum_;
};

}  // namespace scmmi
