#include "scmmi/config.hpp"

#include "scmmi/errors.hpp"
#include "scmmi/topology.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace scmmi {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& text, int line) {
    double v = 0.0;
    const char* end = text.data() + text.size();
    const auto [p, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || p != end) throw ConfigError("expected a number, got '" + text + "'", line);
    return v;
}

int to_int(const std::string& text, int line) {
    int v = 0;
    const char* end = text.data() + text.size();
    const auto [p, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || p != end) throw ConfigError("expected an integer, got '" + text + "'", line);
    return v;
}

bool to_bool(const std::string& text, int line) {
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw ConfigError("expected true or false, got '" + text + "'", line);
}

std::vector<double> to_list(const std::string& text, int line) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError("empty entry in list '" + text + "'", line);
        out.push_back(to_double(item, line));
    }
    return out;
}

using Setter = std::function<void(SystemConfig&, const std::string&, int)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"system.phases", [](SystemConfig& c, const std::string& v, int l) { c.phases = to_int(v, l); }},
        {"system.v_dc", [](SystemConfig& c, const std::string& v, int l) { c.v_dc = to_double(v, l); }},
        {"system.source_r", [](SystemConfig& c, const std::string& v, int l) { c.source_r = to_double(v, l); }},
        {"system.fundamental_f",
         [](SystemConfig& c, const std::string& v, int l) { c.fundamental_f = to_double(v, l); }},
        {"submodule.levels",
         [](SystemConfig& c, const std::string& v, int l) {
             c.levels = to_int(v, l);
             try {
                 require_valid_levels(c.levels);
             } catch (const InvalidLevelCount& e) {
                 throw ConfigError(e.what(), l);
             }
         }},
        {"submodule.capacitance",
         [](SystemConfig& c, const std::string& v, int l) { c.capacitance = to_double(v, l); }},
        {"submodule.cap_esr", [](SystemConfig& c, const std::string& v, int l) { c.cap_esr = to_double(v, l); }},
        {"submodule.r_on", [](SystemConfig& c, const std::string& v, int l) { c.r_on = to_double(v, l); }},
        {"submodule.g_off", [](SystemConfig& c, const std::string& v, int l) { c.g_off = to_double(v, l); }},
        {"submodule.balance_in_zero",
         [](SystemConfig& c, const std::string& v, int l) { c.balance_in_zero = to_bool(v, l); }},
        {"submodule.initial_cap_voltages",
         [](SystemConfig& c, const std::string& v, int l) { c.initial_cap_voltages = to_list(v, l); }},
        {"load.type",
         [](SystemConfig& c, const std::string& v, int l) {
             try {
                 c.load.kind = parse_load_kind(v);
             } catch (const ConfigError& e) {
                 throw ConfigError(e.what(), l);
             }
         }},
        {"load.r_phase", [](SystemConfig& c, const std::string& v, int l) { c.load.r_phase = to_double(v, l); }},
        {"load.l_self", [](SystemConfig& c, const std::string& v, int l) { c.load.l_self = to_double(v, l); }},
        {"load.coupling_k",
         [](SystemConfig& c, const std::string& v, int l) { c.load.coupling_k = to_double(v, l); }},
        {"load.r_scale", [](SystemConfig& c, const std::string& v, int l) { c.load.r_scale = to_list(v, l); }},
        {"modulation.mode",
         [](SystemConfig& c, const std::string& v, int l) {
             if (v == "pwm") c.mode = ModulationMode::Pwm;
             else if (v == "staircase") c.mode = ModulationMode::Staircase;
             else throw ConfigError("unknown modulation mode '" + v + "' (pwm, staircase)", l);
         }},
        {"modulation.carrier_f",
         [](SystemConfig& c, const std::string& v, int l) { c.carrier_f = to_double(v, l); }},
        {"modulation.carrier_phase",
         [](SystemConfig& c, const std::string& v, int l) { c.carrier_phase = to_double(v, l); }},
        {"modulation.modulation_index",
         [](SystemConfig& c, const std::string& v, int l) { c.modulation_index = to_double(v, l); }},
        {"control.mi_limiter",
         [](SystemConfig& c, const std::string& v, int l) { c.control.mi_limiter = to_bool(v, l); }},
        {"control.current_limiter",
         [](SystemConfig& c, const std::string& v, int l) { c.control.current_limiter = to_bool(v, l); }},
        {"control.torque_limiter",
         [](SystemConfig& c, const std::string& v, int l) { c.control.torque_limiter = to_bool(v, l); }},
        {"control.deadband",
         [](SystemConfig& c, const std::string& v, int l) { c.control.limiter.deadband = to_double(v, l); }},
        {"control.gain",
         [](SystemConfig& c, const std::string& v, int l) { c.control.limiter.gain = to_double(v, l); }},
        {"control.floor",
         [](SystemConfig& c, const std::string& v, int l) { c.control.limiter.floor = to_double(v, l); }},
        {"control.ceiling",
         [](SystemConfig& c, const std::string& v, int l) { c.control.limiter.ceiling = to_double(v, l); }},
        {"simulation.dt", [](SystemConfig& c, const std::string& v, int l) { c.dt = to_double(v, l); }},
        {"simulation.duration", [](SystemConfig& c, const std::string& v, int l) { c.duration = to_double(v, l); }},
        {"simulation.sample_period",
         [](SystemConfig& c, const std::string& v, int l) { c.sample_period = to_double(v, l); }},
        {"simulation.full_rate", [](SystemConfig& c, const std::string& v, int l) { c.full_rate = to_bool(v, l); }},
        {"simulation.perturb_phase",
         [](SystemConfig& c, const std::string& v, int l) {
             if (!c.perturbation) c.perturbation = Perturbation{};
             c.perturbation->phase = to_int(v, l);
         }},
        {"simulation.perturb_delta_v",
         [](SystemConfig& c, const std::string& v, int l) {
             if (!c.perturbation) c.perturbation = Perturbation{};
             c.perturbation->delta_v = to_double(v, l);
         }},
    };
    return table;
}

std::string number(double v) {
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

std::string list(const std::vector<double>& values) {
    std::string out;
    for (std::size_t k = 0; k < values.size(); ++k) out += (k ? ", " : "") + number(values[k]);
    return out;
}

}  // namespace

SystemConfig parse_config(std::istream& in, SystemConfig base) {
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto comment = raw.find_first_of("#;");
        const std::string text = trim(comment == std::string::npos ? raw : raw.substr(0, comment));
        if (text.empty()) continue;
        if (text.front() == '[') {
            if (text.back() != ']') throw ConfigError("unterminated section header", line);
            section = trim(text.substr(1, text.size() - 2));
            static const char* known[] = {"system", "submodule", "load", "modulation", "control", "simulation"};
            bool ok = false;
            for (const char* k : known) ok = ok || section == k;
            if (!ok) throw ConfigError("unknown section [" + section + "]", line);
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key = value", line);
        if (section.empty()) throw ConfigError("key outside any section", line);
        const std::string key = section + "." + trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) throw ConfigError("unknown key '" + key + "'", line);
        if (value.empty()) throw ConfigError("missing value for '" + key + "'", line);
        it->second(base, value, line);
    }
    base.validate();
    return base;
}

SystemConfig parse_config_text(const std::string& text, SystemConfig base) {
    std::istringstream in(text);
    return parse_config(in, std::move(base));
}

SystemConfig load_config(const std::string& path, SystemConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in, std::move(base));
}

std::string write_config(const SystemConfig& c) {
    std::ostringstream os;
    auto b = [](bool v) { return v ? "true" : "false"; };
    os << "[system]\n"
       << "phases = " << c.phases << "\n"
       << "v_dc = " << number(c.v_dc) << "\n"
       << "source_r = " << number(c.source_r) << "\n"
       << "fundamental_f = " << number(c.fundamental_f) << "\n\n"
       << "[submodule]\n"
       << "levels = " << c.levels << "\n"
       << "capacitance = " << number(c.capacitance) << "\n"
       << "cap_esr = " << number(c.cap_esr) << "\n"
       << "r_on = " << number(c.r_on) << "\n"
       << "g_off = " << number(c.g_off) << "\n"
       << "balance_in_zero = " << b(c.balance_in_zero) << "\n";
    if (!c.initial_cap_voltages.empty()) os << "initial_cap_voltages = " << list(c.initial_cap_voltages) << "\n";
    os << "\n[load]\n"
       << "type = " << to_string(c.load.kind) << "\n"
       << "r_phase = " << number(c.load.r_phase) << "\n"
       << "l_self = " << number(c.load.l_self) << "\n"
       << "coupling_k = " << number(c.load.coupling_k) << "\n";
    if (!c.load.r_scale.empty()) os << "r_scale = " << list(c.load.r_scale) << "\n";
    os << "\n[modulation]\n"
       << "mode = " << (c.mode == ModulationMode::Pwm ? "pwm" : "staircase") << "\n"
       << "carrier_f = " << number(c.carrier_f) << "\n"
       << "carrier_phase = " << number(c.carrier_phase) << "\n"
       << "modulation_index = " << number(c.modulation_index) << "\n\n"
       << "[control]\n"
       << "mi_limiter = " << b(c.control.mi_limiter) << "\n"
       << "current_limiter = " << b(c.control.current_limiter) << "\n"
       << "torque_limiter = " << b(c.control.torque_limiter) << "\n"
       << "deadband = " << number(c.control.limiter.deadband) << "\n"
       << "gain = " << number(c.control.limiter.gain) << "\n"
       << "floor = " << number(c.control.limiter.floor) << "\n"
       << "ceiling = " << number(c.control.limiter.ceiling) << "\n\n"
       << "[simulation]\n"
       << "dt = " << number(c.dt) << "\n"
       << "duration = " << number(c.duration) << "\n"
       << "sample_period = " << number(c.sample_period) << "\n"
       << "full_rate = " << b(c.full_rate) << "\n";
    if (c.perturbation) {
        os << "perturb_phase = " << c.perturbation->phase << "\n"
           << "perturb_delta_v = " << number(c.perturbation->delta_v) << "\n";
    }
    return os.str();
}

}  // namespace scmmi
