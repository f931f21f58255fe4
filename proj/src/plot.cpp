#include "scmmi/plot.hpp"

#include "scmmi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace scmmi {

namespace {

constexpr double kWidth = 900.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else if (c == '&') out += "&amp;";
        else out += c;
    }
    return out;
}

std::string frame(const std::string& title, double x0, double x1, double y0, double y1, const std::string& xlabel,
                  const std::string& ylabel) {
    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
                    num(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<text x=\"" + num(kWidth / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" + escape(title) +
         "</text>\n";
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    s += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double fx = kLeft + pw * k / 4.0;
        const double fy = kTop + ph * (1.0 - k / 4.0);
        s += "<text x=\"" + num(fx) + "\" y=\"" + num(kTop + ph + 16) + "\" text-anchor=\"middle\">" +
             num(x0 + (x1 - x0) * k / 4.0) + "</text>\n";
        s += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(fy + 4) + "\" text-anchor=\"end\">" +
             num(y0 + (y1 - y0) * k / 4.0) + "</text>\n";
        s += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(fy) + "\" x2=\"" + num(kLeft + pw) + "\" y2=\"" + num(fy) +
             "\" stroke=\"#ddd\"/>\n";
    }
    s += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kHeight - 12) + "\" text-anchor=\"middle\">" +
         escape(xlabel) + "</text>\n";
    s += "<text x=\"16\" y=\"" + num(kTop + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         num(kTop + ph / 2) + ")\">" + escape(ylabel) + "</text>\n";
    return s;
}

}  // namespace

std::string time_series_svg(const WaveformRecord& rec, const std::vector<std::string>& channels,
                            const std::string& title) {
    rec.validate();
    if (channels.empty() || rec.length() == 0) throw AnalysisError("nothing to plot");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    std::string unit;
    for (const auto& name : channels) {
        const Channel& c = rec.channel(name);
        unit = c.unit;
        const auto [a, b] = std::minmax_element(c.values.begin(), c.values.end());
        lo = std::min(lo, *a);
        hi = std::max(hi, *b);
    }
    if (hi - lo < 1e-12) {
        lo -= 1.0;
        hi += 1.0;
    }
    const double t0 = rec.time_at(0);
    const double t1 = rec.time_at(rec.length() - 1);
    std::string s = frame(title, t0, t1, lo, hi, "time (s)", unit.empty() ? "value" : unit);

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    const auto columns = static_cast<std::size_t>(pw);
    auto y_of = [&](double v) { return kTop + ph * (1.0 - (v - lo) / (hi - lo)); };
    for (std::size_t ci = 0; ci < channels.size(); ++ci) {
        const auto& x = rec.channel(channels[ci]).values;
        std::string points;
        const std::size_t n = x.size();
        const std::size_t buckets = std::min(n, columns);
        for (std::size_t b = 0; b < buckets; ++b) {
            const std::size_t begin = b * n / buckets;
            const std::size_t end = std::max(begin + 1, (b + 1) * n / buckets);
            const auto [a, c] = std::minmax_element(x.begin() + static_cast<std::ptrdiff_t>(begin),
                                                    x.begin() + static_cast<std::ptrdiff_t>(end));
            const double px = kLeft + pw * static_cast<double>(b) / static_cast<double>(std::max<std::size_t>(1, buckets - 1));
            points += num(px) + "," + num(y_of(*a)) + " " + num(px) + "," + num(y_of(*c)) + " ";
        }
        const char* color = kColors[ci % (sizeof kColors / sizeof kColors[0])];
        s += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1\" points=\"" + points +
             "\"/>\n";
        s += "<text x=\"" + num(kLeft + 8 + 90.0 * static_cast<double>(ci)) + "\" y=\"" + num(kTop + 14) +
             "\" fill=\"" + color + "\">" + escape(channels[ci]) + "</text>\n";
    }
    s += "</svg>\n";
    return s;
}

std::string spectrum_svg(const HarmonicSpectrum& spec, int max_order, const std::string& title) {
    const double f1 = spec.magnitude(1);
    if (!(f1 > 0.0)) throw AnalysisError("spectrum has no fundamental to normalize by");
    if (max_order < 1) throw AnalysisError("spectrum plot needs max_order >= 1");
    std::string s = frame(title, 0.0, max_order, 0.0, 1.0, "harmonic order", "magnitude / fundamental");
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    const double w = std::max(1.0, pw / (max_order + 1) * 0.7);
    for (int m = 1; m <= max_order; ++m) {
        const double rel = std::min(1.0, spec.magnitude(m) / f1);
        const double x = kLeft + pw * m / static_cast<double>(max_order) - w / 2;
        s += "<rect x=\"" + num(x) + "\" y=\"" + num(kTop + ph * (1.0 - rel)) + "\" width=\"" + num(w) +
             "\" height=\"" + num(ph * rel) + "\" fill=\"" + (m % 3 == 0 ? "#d62728" : "#1f77b4") + "\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

}  // namespace scmmi
