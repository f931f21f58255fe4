#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace scmmi {

struct Channel {
    std::string name;  // e.g. "V_C11"
    std::string unit;  // e.g. "V"
    std::vector<double> values;
};

/// Uniformly sampled multichannel record. Sample k sits at
/// start_time + k * sample_period.
struct WaveformRecord {
    double sample_period = 0.0;
    double start_time = 0.0;
    std::vector<Channel> channels;
    std::string config_digest;

    std::size_t length() const { return channels.empty() ? 0 : channels.front().values.size(); }
    double time_at(std::size_t k) const { return start_time + static_cast<double>(k) * sample_period; }
    bool has(const std::string& name) const;
    const Channel& channel(const std::string& name) const;  // throws AnalysisError
    Channel& add(std::string name, std::string unit);
    /// Throws AnalysisError on ragged channels or a non-positive period.
    void validate() const;
};

struct Harmonic {
    double magnitude = 0.0;  // amplitude, channel units
    double phase = 0.0;      // rad, sine reference
};

/// Harmonic m carries amplitude and phase of the sin(m w t + phase) term;
/// entry 0 is the mean. `window_samples` bins exactly `cycles` periods.
struct HarmonicSpectrum {
    double fundamental_f = 0.0;
    int cycles = 0;
    std::size_t window_samples = 0;
    std::map<int, Harmonic> entries;

    double magnitude(int m) const;
    /// Mean-square contribution of harmonic m.
    double power(int m) const;
};

/// Samples per fundamental period when it is an integer (within 1e-6),
/// otherwise throws AnalysisError.
std::size_t samples_per_period(double sample_period, double fundamental_f);

/// Discrete Fourier projection over the last `cycles` whole periods of the
/// channel (or those starting at sample `first`, when given). Orders up to
/// `max_order`, capped at the Nyquist bin.
HarmonicSpectrum fourier_coefficients(const WaveformRecord& rec, const std::string& channel, double f,
                                      int cycles, int max_order = 50, std::ptrdiff_t first = -1);

/// Same projection on a bare sample vector.
HarmonicSpectrum fourier_coefficients(const std::vector<double>& samples, double sample_period, double f,
                                      int cycles, int max_order = 50, std::ptrdiff_t first = -1);

double fundamental_rms(const HarmonicSpectrum& spec);

/// sqrt(sum of squared magnitudes at orders 3, 6, 9, ... <= max_order) / fundamental.
double triplen_content(const HarmonicSpectrum& spec, int max_order);

/// sqrt(sum of squared magnitudes at orders 2..max_order) / fundamental.
double thd(const HarmonicSpectrum& spec, int max_order);

struct Ripple {
    double peak_to_peak = 0.0;  // channel units
    double percent = 0.0;       // of the window mean
    double mean = 0.0;
};

/// Ripple over [t_begin, t_end]. Throws AnalysisError for an empty window.
Ripple ripple_pp(const WaveformRecord& rec, const std::string& channel, double t_begin, double t_end);

/// Earliest time after which the channel never leaves target * (1 +- band/100).
/// Throws AnalysisError (with the final deviation) when the last sample is outside.
double settling_time(const WaveformRecord& rec, const std::string& channel, double target, double band_percent);
double settling_time(const std::vector<double>& samples, double start_time, double sample_period, double target,
                     double band_percent);

/// Dwell-weighted level census: runs of at least `min_dwell` samples that
/// stay within `tol` of their running mean form dwell segments; segment means
/// sorted and merged within `tol` give the levels.
std::vector<double> distinct_levels(const WaveformRecord& rec, const std::string& channel, double tol,
                                    std::size_t min_dwell = 3);
std::vector<double> distinct_levels(const std::vector<double>& samples, double tol, std::size_t min_dwell = 3);

/// Trailing moving average over `window` samples (shorter at the start).
std::vector<double> moving_average(const std::vector<double>& samples, std::size_t window);

/// Mean of each complete block of `period` samples.
std::vector<double> cycle_means(const std::vector<double>& samples, std::size_t period);

}  // namespace scmmi
