#pragma once

// Metrics report over a waveform record: steady-window capacitor statistics,
// per-phase spectra and level census, and the recovery metrics of a
// perturbed run. The text form is `key = value unit` lines under
// `[section]` headers.

#include "scmmi/analysis.hpp"

#include <optional>
#include <string>
#include <vector>

namespace scmmi {

struct ReportOptions {
    double fundamental_f = 50.0;
    int steady_cycles = 5;         // trailing whole periods used for steady metrics
    int max_order = 250;           // highest harmonic in THD
    double level_tol = 15.0;       // V
    double band_percent = 2.0;     // settling band
    std::optional<double> nominal; // capacitor target; default: final-cycle mean of all capacitors
};

struct CapacitorMetrics {
    std::string channel;
    double mean = 0.0;       // V
    double ripple_pp = 0.0;  // V
    double ripple_percent = 0.0;
};

struct PhaseMetrics {
    std::string channel;
    std::vector<double> levels;  // V
    double fundamental_rms = 0.0;  // V
    double thd_percent = 0.0;
    double triplen_percent = 0.0;
};

struct RecoveryMetrics {
    double target = 0.0;                  // V
    double initial_deviation_percent = 0.0;
    double final_deviation_percent = 0.0;  // worst capacitor, last whole cycle
    std::optional<double> settling_time;   // s; empty when never inside the band
    bool monotonic = false;
    std::string low_channel;               // bus capacitor starting lowest
    double low_energy_in = 0.0;            // J into it up to settling (or record end)
    double drift_percent = 0.0;            // last-cycle minus previous-cycle mean, worst capacitor
};

struct MetricsReport {
    double duration = 0.0;  // s
    double sample_period = 0.0;
    std::vector<CapacitorMetrics> capacitors;
    std::vector<PhaseMetrics> phases;
    std::optional<RecoveryMetrics> recovery;
    std::optional<double> energy_residual_percent;

    const CapacitorMetrics& capacitor(const std::string& channel) const;
    const PhaseMetrics& phase(const std::string& channel) const;
};

/// Capacitor channels are those named V_C*, phase channels V_<digits>.
MetricsReport analyze(const WaveformRecord& rec, const ReportOptions& options);

/// Cycle-averaged worst deviation per whole period, percent of `target`.
std::vector<double> cycle_deviation(const WaveformRecord& rec, double fundamental_f, double target);

/// True when `deviation` never rises before first entering the band and
/// stays inside it afterwards.
bool decays_monotonically(const std::vector<double>& deviation, double band_percent);

std::string format_report(const MetricsReport& report);

}  // namespace scmmi
