#include "scmmi/waveform_io.hpp"

#include "scmmi/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace scmmi {

namespace {

void put(std::string& line, double v) {
    char buf[32];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    line.append(buf, p);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::size_t begin = 0;
    while (true) {
        const auto comma = line.find(',', begin);
        out.push_back(line.substr(begin, comma - begin));
        if (comma == std::string::npos) break;
        begin = comma + 1;
    }
    return out;
}

}  // namespace

void write_csv(const WaveformRecord& rec, std::ostream& out) {
    rec.validate();
    std::string line = "time_s";
    for (const Channel& c : rec.channels) line += "," + c.name + "_" + c.unit;
    line += '\n';
    out << line;
    for (std::size_t k = 0; k < rec.length(); ++k) {
        line.clear();
        put(line, rec.time_at(k));
        for (const Channel& c : rec.channels) {
            line += ',';
            put(line, c.values[k]);
        }
        line += '\n';
        out << line;
    }
}

void write_csv(const WaveformRecord& rec, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw AnalysisError("cannot write '" + path + "'");
    write_csv(rec, out);
    if (!out) throw AnalysisError("write to '" + path + "' failed");
}

WaveformRecord read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw AnalysisError("row 1: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split(line);
    if (header.empty() || header.front() != "time_s") throw AnalysisError("row 1: first column must be time_s");

    WaveformRecord rec;
    for (std::size_t c = 1; c < header.size(); ++c) {
        const auto us = header[c].rfind('_');
        if (us == std::string::npos || us == 0 || us + 1 == header[c].size()) {
            throw AnalysisError("row 1: column '" + header[c] + "' lacks a unit suffix");
        }
        rec.add(header[c].substr(0, us), header[c].substr(us + 1));
    }

    std::vector<double> times;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != header.size()) {
            throw AnalysisError("row " + std::to_string(row) + ": expected " + std::to_string(header.size()) +
                                " fields, got " + std::to_string(cells.size()));
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            double v = 0.0;
            const char* end = cells[c].data() + cells[c].size();
            const auto [p, ec] = std::from_chars(cells[c].data(), end, v);
            if (ec != std::errc() || p != end || cells[c].empty()) {
                throw AnalysisError("row " + std::to_string(row) + ": bad number '" + cells[c] + "' in column " +
                                    header[c]);
            }
            if (c == 0) times.push_back(v);
            else rec.channels[c - 1].values.push_back(v);
        }
    }
    if (times.size() < 2) throw AnalysisError("row " + std::to_string(row) + ": need at least two samples");

    rec.start_time = times.front();
    rec.sample_period = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
    if (!(rec.sample_period > 0.0)) throw AnalysisError("row 2: time column is not increasing");
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (std::abs(times[k] - rec.time_at(k)) > 1e-3 * rec.sample_period) {
            throw AnalysisError("row " + std::to_string(k + 2) + ": time column is not uniformly sampled");
        }
    }
    return rec;
}

WaveformRecord read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw AnalysisError("cannot open '" + path + "'");
    return read_csv(in);
}

std::string summary_text(const RunSummary& s, const std::string& digest) {
    auto num = [](double v) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "%.9g", v);
        return std::string(buf);
    };
    std::string out;
    out += "duration = " + num(s.duration) + " s\n";
    out += "steps = " + std::to_string(s.steps) + "\n";
    out += "rebuilds = " + std::to_string(s.rebuilds) + "\n";
    out += "source_energy = " + num(s.energy.source) + " J\n";
    out += "capacitor_energy_change = " + num(s.energy.capacitor_delta) + " J\n";
    out += "inductor_energy_change = " + num(s.energy.inductor_delta) + " J\n";
    out += "dissipated_energy = " + num(s.energy.dissipated) + " J\n";
    out += "energy_residual = " + num(100.0 * s.energy.relative_residual()) + " %\n";
    out += "config = " + digest + "\n";
    return out;
}

std::optional<double> read_summary_residual(const std::string& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string line;
    const std::string key = "energy_residual = ";
    while (std::getline(in, line)) {
        if (line.rfind(key, 0) != 0) continue;
        std::string value = line.substr(key.size());
        const auto space = value.find(' ');
        if (space != std::string::npos) value.resize(space);
        double v = 0.0;
        const auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
        if (ec != std::errc() || p != value.data() + value.size()) {
            throw AnalysisError("summary '" + path + "': bad energy_residual value '" + value + "'");
        }
        return v;
    }
    return std::nullopt;
}

}  // namespace scmmi
