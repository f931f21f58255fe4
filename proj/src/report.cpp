#include "scmmi/report.hpp"

#include "scmmi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace scmmi {

namespace {

bool is_capacitor_voltage(const std::string& name) { return name.rfind("V_C", 0) == 0; }

bool is_phase_voltage(const std::string& name) {
    if (name.size() < 3 || name.rfind("V_", 0) != 0) return false;
    return std::all_of(name.begin() + 2, name.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string current_of(const std::string& voltage_channel) { return "I" + voltage_channel.substr(1); }

std::string fmt(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::vector<const Channel*> capacitor_channels(const WaveformRecord& rec) {
    std::vector<const Channel*> out;
    for (const Channel& c : rec.channels)
        if (is_capacitor_voltage(c.name)) out.push_back(&c);
    return out;
}

double mean_of(const std::vector<double>& x, std::size_t begin, std::size_t end) {
    double s = 0.0;
    for (std::size_t k = begin; k < end; ++k) s += x[k];
    return s / static_cast<double>(end - begin);
}

}  // namespace

const CapacitorMetrics& MetricsReport::capacitor(const std::string& channel) const {
    for (const auto& c : capacitors)
        if (c.channel == channel) return c;
    throw AnalysisError("report has no capacitor channel '" + channel + "'");
}

const PhaseMetrics& MetricsReport::phase(const std::string& channel) const {
    for (const auto& p : phases)
        if (p.channel == channel) return p;
    throw AnalysisError("report has no phase channel '" + channel + "'");
}

std::vector<double> cycle_deviation(const WaveformRecord& rec, double fundamental_f, double target) {
    const std::size_t per = samples_per_period(rec.sample_period, fundamental_f);
    std::vector<double> worst;
    for (const Channel* c : capacitor_channels(rec)) {
        const auto means = cycle_means(c->values, per);
        if (worst.size() < means.size()) worst.resize(means.size(), 0.0);
        for (std::size_t k = 0; k < means.size(); ++k) {
            worst[k] = std::max(worst[k], 100.0 * std::abs(means[k] - target) / std::abs(target));
        }
    }
    return worst;
}

bool decays_monotonically(const std::vector<double>& d, double band_percent) {
    bool inside = false;
    for (std::size_t k = 0; k < d.size(); ++k) {
        if (inside) {
            if (d[k] > band_percent) return false;
            continue;
        }
        if (d[k] <= band_percent) {
            inside = true;
            continue;
        }
        if (k > 0 && d[k] > d[k - 1]) return false;
    }
    return true;
}

MetricsReport analyze(const WaveformRecord& rec, const ReportOptions& opt) {
    rec.validate();
    if (opt.steady_cycles < 1) throw AnalysisError("steady window needs at least one cycle");
    const std::size_t per = samples_per_period(rec.sample_period, opt.fundamental_f);
    const std::size_t whole = rec.length() / per;
    if (whole < 1) throw AnalysisError("record is shorter than one fundamental period");
    const int cycles = static_cast<int>(std::min<std::size_t>(whole, static_cast<std::size_t>(opt.steady_cycles)));
    const std::size_t steady_begin = rec.length() - static_cast<std::size_t>(cycles) * per;

    MetricsReport report;
    report.sample_period = rec.sample_period;
    report.duration = rec.time_at(rec.length() - 1) + rec.sample_period - rec.start_time;

    const auto caps = capacitor_channels(rec);
    for (const Channel* c : caps) {
        CapacitorMetrics m;
        m.channel = c->name;
        const auto first = c->values.begin() + static_cast<std::ptrdiff_t>(steady_begin);
        const auto [lo, hi] = std::minmax_element(first, c->values.end());
        m.mean = mean_of(c->values, steady_begin, c->values.size());
        m.ripple_pp = *hi - *lo;
        m.ripple_percent = m.mean != 0.0 ? 100.0 * m.ripple_pp / std::abs(m.mean) : 0.0;
        report.capacitors.push_back(m);
    }

    for (const Channel& c : rec.channels) {
        if (!is_phase_voltage(c.name)) continue;
        PhaseMetrics m;
        m.channel = c.name;
        const std::vector<double> tail(c.values.begin() + static_cast<std::ptrdiff_t>(steady_begin), c.values.end());
        m.levels = distinct_levels(tail, opt.level_tol);
        const auto spec = fourier_coefficients(c.values, rec.sample_period, opt.fundamental_f, cycles, opt.max_order);
        m.fundamental_rms = fundamental_rms(spec);
        if (spec.magnitude(1) > 0.0) {
            m.thd_percent = 100.0 * thd(spec, opt.max_order);
            m.triplen_percent = 100.0 * triplen_content(spec, opt.max_order);
        }
        report.phases.push_back(m);
    }

    if (!caps.empty() && whole >= 2) {
        RecoveryMetrics r;
        if (opt.nominal) {
            r.target = *opt.nominal;
        } else {
            double s = 0.0;
            for (const Channel* c : caps) s += mean_of(c->values, (whole - 1) * per, whole * per);
            r.target = s / static_cast<double>(caps.size());
        }
        if (r.target == 0.0) throw AnalysisError("capacitor target voltage is zero");
        const auto dev = cycle_deviation(rec, opt.fundamental_f, r.target);
        r.initial_deviation_percent = 0.0;
        for (const Channel* c : caps) {
            r.initial_deviation_percent =
                std::max(r.initial_deviation_percent, 100.0 * std::abs(c->values.front() - r.target) / r.target);
        }
        r.final_deviation_percent = dev.back();
        r.monotonic = decays_monotonically(dev, opt.band_percent);

        double latest = rec.start_time;
        bool settled = true;
        for (const Channel* c : caps) {
            try {
                const auto avg = moving_average(c->values, per);
                latest = std::max(latest, settling_time(avg, rec.start_time, rec.sample_period, r.target,
                                                        opt.band_percent));
            } catch (const AnalysisError&) {
                settled = false;
            }
        }
        if (settled) r.settling_time = latest;

        for (const Channel* c : caps) {
            if (c->name.size() < 5) continue;
            const bool bus = c->name.back() == '1' && (c->name.size() == 5 || c->name[c->name.size() - 2] == '_');
            if (!bus) continue;
            if (r.low_channel.empty() || c->values.front() < rec.channel(r.low_channel).values.front()) {
                r.low_channel = c->name;
            }
        }
        if (!r.low_channel.empty() && rec.has(current_of(r.low_channel))) {
            const auto& v = rec.channel(r.low_channel).values;
            const auto& i = rec.channel(current_of(r.low_channel)).values;
            const double t_end = r.settling_time.value_or(rec.time_at(rec.length() - 1));
            for (std::size_t k = 0; k < v.size() && rec.time_at(k) <= t_end; ++k) {
                r.low_energy_in += v[k] * i[k] * rec.sample_period;
            }
        }

        for (const Channel* c : caps) {
            const double last = mean_of(c->values, (whole - 1) * per, whole * per);
            const double prev = mean_of(c->values, (whole - 2) * per, (whole - 1) * per);
            r.drift_percent = std::max(r.drift_percent, 100.0 * std::abs(last - prev) / std::abs(r.target));
        }
        report.recovery = r;
    }
    return report;
}

std::string format_report(const MetricsReport& r) {
    std::string out;
    auto line = [&](const std::string& key, const std::string& value, const std::string& unit) {
        out += key + " = " + value + (unit.empty() ? "" : " " + unit) + "\n";
    };
    out += "[record]\n";
    line("duration", fmt(r.duration), "s");
    line("sample_period", fmt(r.sample_period), "s");
    for (const auto& c : r.capacitors) {
        out += "\n[capacitor " + c.channel + "]\n";
        line("mean", fmt(c.mean), "V");
        line("ripple_pp", fmt(c.ripple_pp), "V");
        line("ripple", fmt(c.ripple_percent), "%");
    }
    for (const auto& p : r.phases) {
        out += "\n[phase " + p.channel + "]\n";
        std::string levels;
        for (std::size_t k = 0; k < p.levels.size(); ++k) levels += (k ? ", " : "") + fmt(p.levels[k], 5);
        line("levels", levels, "V");
        line("level_count", std::to_string(p.levels.size()), "");
        line("fundamental_rms", fmt(p.fundamental_rms), "V");
        line("thd", fmt(p.thd_percent), "%");
        line("triplen", fmt(p.triplen_percent), "%");
    }
    out += "\n[global]\n";
    if (r.recovery) {
        const auto& rc = *r.recovery;
        line("capacitor_target", fmt(rc.target), "V");
        line("initial_deviation", fmt(rc.initial_deviation_percent), "%");
        line("final_deviation", fmt(rc.final_deviation_percent), "%");
        line("settling_time", rc.settling_time ? fmt(*rc.settling_time) : "none", rc.settling_time ? "s" : "");
        line("monotonic_decay", rc.monotonic ? "true" : "false", "");
        if (!rc.low_channel.empty()) {
            line("low_capacitor", rc.low_channel, "");
            line("low_capacitor_energy_in", fmt(rc.low_energy_in), "J");
        }
        line("cycle_drift", fmt(rc.drift_percent), "%");
    }
    line("energy_residual", r.energy_residual_percent ? fmt(*r.energy_residual_percent) : "unknown",
         r.energy_residual_percent ? "%" : "");
    return out;
}

}  // namespace scmmi
