#include "scmmi/analysis.hpp"

#include "scmmi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace scmmi {

bool WaveformRecord::has(const std::string& name) const {
    return std::any_of(channels.begin(), channels.end(), [&](const Channel& c) { return c.name == name; });
}

const Channel& WaveformRecord::channel(const std::string& name) const {
    for (const Channel& c : channels)
        if (c.name == name) return c;
    throw AnalysisError("no channel named '" + name + "'");
}

Channel& WaveformRecord::add(std::string name, std::string unit) {
    channels.push_back({std::move(name), std::move(unit), {}});
    return channels.back();
}

void WaveformRecord::validate() const {
    if (!(sample_period > 0.0)) throw AnalysisError("sample period must be positive");
    for (const Channel& c : channels) {
        if (c.values.size() != length()) throw AnalysisError("channel '" + c.name + "' has a different length");
    }
}

double HarmonicSpectrum::magnitude(int m) const {
    auto it = entries.find(m);
    return it == entries.end() ? 0.0 : it->second.magnitude;
}

double HarmonicSpectrum::power(int m) const {
    const double a = magnitude(m);
    const bool nyquist = 2 * static_cast<std::size_t>(m) * static_cast<std::size_t>(cycles) == window_samples;
    return (m == 0 || nyquist) ? a * a : 0.5 * a * a;
}

std::size_t samples_per_period(double sample_period, double fundamental_f) {
    if (!(sample_period > 0.0) || !(fundamental_f > 0.0)) {
        throw AnalysisError("sample period and fundamental frequency must be positive");
    }
    const double n = 1.0 / (fundamental_f * sample_period);
    const double r = std::round(n);
    if (r < 1.0 || std::abs(n - r) > 1e-6 * r) {
        throw AnalysisError("fundamental period is not an integer number of samples (" + std::to_string(n) + ")");
    }
    return static_cast<std::size_t>(r);
}

HarmonicSpectrum fourier_coefficients(const std::vector<double>& x, double sample_period, double f, int cycles,
                                      int max_order, std::ptrdiff_t first) {
    if (cycles < 1) throw AnalysisError("need at least one cycle");
    const std::size_t per = samples_per_period(sample_period, f);
    const std::size_t window = per * static_cast<std::size_t>(cycles);
    if (x.size() < window) {
        throw AnalysisError("record holds " + std::to_string(x.size()) + " samples, window needs " +
                            std::to_string(window));
    }
    const std::size_t start = first < 0 ? x.size() - window : static_cast<std::size_t>(first);
    if (start + window > x.size()) throw AnalysisError("window runs past the end of the record");

    HarmonicSpectrum spec;
    spec.fundamental_f = f;
    spec.cycles = cycles;
    spec.window_samples = window;

    std::vector<double> cos_table(window), sin_table(window);
    for (std::size_t n = 0; n < window; ++n) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(n) / static_cast<double>(window);
        cos_table[n] = std::cos(angle);
        sin_table[n] = std::sin(angle);
    }

    const auto M = static_cast<std::uint64_t>(window);
    for (int m = 0; m <= max_order; ++m) {
        const std::uint64_t bin = static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(cycles);
        if (2 * bin > M) break;
        double c = 0.0, s = 0.0;
        std::uint64_t idx = 0;
        for (std::size_t n = 0; n < window; ++n) {
            c += x[start + n] * cos_table[idx];
            s += x[start + n] * sin_table[idx];
            idx += bin;
            if (idx >= M) idx %= M;
        }
        Harmonic h;
        if (m == 0 || 2 * bin == M) {
            const double mean = c / static_cast<double>(window);
            h.magnitude = std::abs(mean);
            h.phase = mean < 0.0 ? std::numbers::pi : 0.0;
        } else {
            const double a = 2.0 * c / static_cast<double>(window);
            const double b = 2.0 * s / static_cast<double>(window);
            h.magnitude = std::hypot(a, b);
            h.phase = std::atan2(a, b);
        }
        spec.entries[m] = h;
    }
    return spec;
}

HarmonicSpectrum fourier_coefficients(const WaveformRecord& rec, const std::string& channel, double f, int cycles,
                                      int max_order, std::ptrdiff_t first) {
    rec.validate();
    return fourier_coefficients(rec.channel(channel).values, rec.sample_period, f, cycles, max_order, first);
}

double fundamental_rms(const HarmonicSpectrum& spec) { return spec.magnitude(1) / std::numbers::sqrt2; }

namespace {

double fundamental_or_throw(const HarmonicSpectrum& spec) {
    double largest = 0.0;
    for (const auto& [m, h] : spec.entries) largest = std::max(largest, h.magnitude);
    const double f1 = spec.magnitude(1);
    if (!(f1 > 1e-12 * largest)) throw AnalysisError("fundamental magnitude is zero; ratio undefined");
    return f1;
}

}  // namespace

double triplen_content(const HarmonicSpectrum& spec, int max_order) {
    if (max_order < 3) throw AnalysisError("triplen content needs max_order >= 3");
    const double f1 = fundamental_or_throw(spec);
    double sum = 0.0;
    for (int m = 3; m <= max_order; m += 3) sum += spec.magnitude(m) * spec.magnitude(m);
    return std::sqrt(sum) / f1;
}

double thd(const HarmonicSpectrum& spec, int max_order) {
    const double f1 = fundamental_or_throw(spec);
    double sum = 0.0;
    for (int m = 2; m <= max_order; ++m) sum += spec.magnitude(m) * spec.magnitude(m);
    return std::sqrt(sum) / f1;
}

Ripple ripple_pp(const WaveformRecord& rec, const std::string& channel, double t_begin, double t_end) {
    rec.validate();
    const auto& x = rec.channel(channel).values;
    double lo = 0.0, hi = 0.0, sum = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double t = rec.time_at(k);
        if (t < t_begin || t > t_end) continue;
        if (count == 0) lo = hi = x[k];
        lo = std::min(lo, x[k]);
        hi = std::max(hi, x[k]);
        sum += x[k];
        ++count;
    }
    if (count == 0) throw AnalysisError("ripple window [" + std::to_string(t_begin) + ", " + std::to_string(t_end) +
                                        "] holds no samples");
    Ripple r;
    r.mean = sum / static_cast<double>(count);
    r.peak_to_peak = hi - lo;
    r.percent = r.mean != 0.0 ? 100.0 * r.peak_to_peak / std::abs(r.mean) : 0.0;
    return r;
}

double settling_time(const std::vector<double>& x, double start_time, double sample_period, double target,
                     double band_percent) {
    if (!(band_percent > 0.0)) throw AnalysisError("settling band must be positive");
    if (x.empty()) throw AnalysisError("settling check on an empty channel");
    const double band = std::abs(target) * band_percent / 100.0;
    std::ptrdiff_t last_out = -1;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (std::abs(x[k] - target) > band) last_out = static_cast<std::ptrdiff_t>(k);
    }
    if (last_out == static_cast<std::ptrdiff_t>(x.size()) - 1) {
        throw AnalysisError("channel never settles; final deviation " + std::to_string(x.back() - target));
    }
    return start_time + static_cast<double>(last_out + 1) * sample_period;
}

double settling_time(const WaveformRecord& rec, const std::string& channel, double target, double band_percent) {
    rec.validate();
    return settling_time(rec.channel(channel).values, rec.start_time, rec.sample_period, target, band_percent);
}

std::vector<double> distinct_levels(const std::vector<double>& x, double tol, std::size_t min_dwell) {
    if (!(tol > 0.0)) throw AnalysisError("level tolerance must be positive");
    struct Cluster {
        double center;
        double weight;
    };
    std::vector<Cluster> dwell;
    std::size_t k = 0;
    while (k < x.size()) {
        double sum = x[k];
        std::size_t len = 1;
        while (k + len < x.size() && std::abs(x[k + len] - sum / static_cast<double>(len)) <= tol) {
            sum += x[k + len];
            ++len;
        }
        if (len >= min_dwell) dwell.push_back({sum / static_cast<double>(len), static_cast<double>(len)});
        k += len;
    }
    std::sort(dwell.begin(), dwell.end(), [](const Cluster& a, const Cluster& b) { return a.center < b.center; });

    std::vector<Cluster> merged;
    for (const Cluster& c : dwell) {
        if (!merged.empty() && c.center - merged.back().center <= tol) {
            Cluster& m = merged.back();
            const double w = m.weight + c.weight;
            m.center = (m.center * m.weight + c.center * c.weight) / w;
            m.weight = w;
        } else {
            merged.push_back(c);
        }
    }
    std::vector<double> out;
    out.reserve(merged.size());
    for (const Cluster& c : merged) out.push_back(c.center);
    return out;
}

std::vector<double> distinct_levels(const WaveformRecord& rec, const std::string& channel, double tol,
                                    std::size_t min_dwell) {
    return distinct_levels(rec.channel(channel).values, tol, min_dwell);
}

std::vector<double> moving_average(const std::vector<double>& x, std::size_t window) {
    if (window == 0) throw AnalysisError("moving-average window must be positive");
    std::vector<double> out(x.size());
    double sum = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sum += x[k];
        if (k >= window) sum -= x[k - window];
        out[k] = sum / static_cast<double>(std::min(k + 1, window));
    }
    return out;
}

std::vector<double> cycle_means(const std::vector<double>& x, std::size_t period) {
    if (period == 0) throw AnalysisError("cycle length must be positive");
    std::vector<double> out;
    for (std::size_t k = 0; k + period <= x.size(); k += period) {
        double sum = 0.0;
        for (std::size_t j = 0; j < period; ++j) sum += x[k + j];
        out.push_back(sum / static_cast<double>(period));
    }
    return out;
}

}  // namespace scmmi
