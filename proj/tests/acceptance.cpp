// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include "scmmi/analysis.hpp"
#include "scmmi/circuit.hpp"
#include "scmmi/report.hpp"
#include "scmmi/scenarios.hpp"
#include "scmmi/simulation.hpp"
#include "scmmi/switching.hpp"
#include "scmmi/topology.hpp"
#include "scmmi/waveform_io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace scmmi;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void expect(bool ok, const std::string& what) {
        pass = pass && ok;
        if (!ok) notes.push_back(what);
    }
};

struct PresetRun {
    const ScenarioPreset* preset = nullptr;
    SystemConfig config;
    std::string csv;
    RunSummary summary;
    MetricsReport report;
    double runtime = 0.0;  // s
};

PresetRun run_preset(const ScenarioPreset& p, const SystemConfig& config) {
    PresetRun out;
    out.preset = &p;
    out.config = config;
    const auto t0 = Clock::now();
    const RunResult r = run(config);
    out.runtime = seconds_since(t0);
    std::ostringstream csv;
    write_csv(r.record, csv);
    out.csv = csv.str();
    out.summary = r.summary;
    out.report = analyze(r.record, p.report);
    out.report.energy_residual_percent = 100.0 * r.summary.energy.relative_residual();
    return out;
}

void apply_manifest(const PresetRun& run, Outcome& o) {
    for (const Check& c : run.preset->manifest(run.report)) o.expect(c.pass, run.preset->name + ": " + c.name + " " + c.detail);
}

SwitchVector from_bits(const std::vector<int>& bits) {
    SwitchVector v(static_cast<int>(bits.size()));
    for (std::size_t k = 0; k < bits.size(); ++k) v.states[k] = bits[k] != 0;
    return v;
}

Outcome design_formulas() {
    Outcome o;
    const auto t0 = Clock::now();
    const SubModuleSpec five = component_counts(5), three = component_counts(3);
    o.expect(five.n_switches == 7 && five.n_capacitors == 2, "five-level counts");
    o.expect(three.n_switches == 4 && three.n_capacitors == 1, "three-level counts");
    for (int nl = 3; nl <= 21; nl += 2) {
        const SubModuleSpec s = component_counts(nl);
        o.expect(s.n_no_diode + s.n_with_diode + s.n_any_diode == s.n_switches,
                 "partition identity at N_L = " + std::to_string(nl));
    }
    const double t = seconds_since(t0);
    o.expect(t < 1.0, "runtime " + fmt("%.3f s", t));
    return o;
}

Outcome switching_table() {
    Outcome o;
    const auto t0 = Clock::now();
    const std::vector<std::pair<std::vector<int>, int>> table = {
        {{1, 0, 1, 0, 0, 0, 0}, 0},  {{0, 1, 0, 1, 0, 0, 0}, 0},  {{0, 1, 1, 0, 0, 1, 1}, 1},
        {{0, 1, 1, 0, 1, 0, 0}, 2},  {{1, 0, 0, 1, 0, 1, 1}, -1}, {{1, 0, 0, 1, 1, 0, 0}, -2},
    };
    const auto states = enumerate_legal_states(5);
    o.expect(states.size() == table.size(), "row count " + std::to_string(states.size()));
    for (std::size_t k = 0; k < std::min(states.size(), table.size()); ++k) {
        o.expect(states[k].switches == from_bits(table[k].first) && states[k].command.level == table[k].second,
                 "row " + std::to_string(k + 1));
    }
    int legal = 0, violating = 0, shorting = 0;
    for (unsigned bits = 0; bits < 128; ++bits) {
        SwitchVector v(7);
        for (int s = 0; s < 7; ++s) v.states[static_cast<std::size_t>(s)] = (bits >> s) & 1u;
        const bool shorted = validate_no_short(v, 5).has_value();
        const bool violates = invariant_violation(v, 5).has_value();
        if (shorted) ++shorting;
        else if (violates) ++violating;
        else ++legal;
        if (!shorted && !violates) {
            bool in_table = false;
            for (const auto& row : table) in_table = in_table || from_bits(row.first) == v;
            o.expect(in_table, "legal vector " + to_string(v) + " missing from the table");
        }
    }
    o.expect(legal == 6, "legal count " + std::to_string(legal));
    o.expect(legal + violating + shorting == 128, "classification covers every vector");
    const double t = seconds_since(t0);
    o.expect(t < 1.0, "runtime " + fmt("%.3f s", t));
    return o;
}

Outcome solver_oracles(const std::vector<PresetRun>& runs) {
    Outcome o;
    const double dt = 1e-6;
    {
        Netlist n;
        n.ground = n.add_node("gnd");
        const int top = n.add_node("top");
        n.capacitors.push_back({top, n.ground, 220e-6, 0.0, "C"});
        n.conductances.push_back({top, n.ground, 0.1, "R"});
        const NetlistSnapshot snap = assemble(n, dt);
        CircuitState s;
        s.cap_voltages = Eigen::VectorXd::Constant(1, 10.0);
        s.branch_currents = Eigen::VectorXd::Zero(0);
        for (int k = 0; k < 2200; ++k) s = step(s, snap, dt).state;
        const double expected = 10.0 * std::exp(-1.0);
        const double err = std::abs(s.cap_voltages(0) - expected) / expected;
        o.expect(err < 1e-3, "RC discharge error " + fmt("%.3g", err));
    }
    {
        Netlist n;
        n.ground = n.add_node("gnd");
        const int a = n.add_node("a"), m = n.add_node("m"), b = n.add_node("b");
        n.capacitors.push_back({a, n.ground, 220e-6, 10e-3, "C1"});
        n.capacitors.push_back({b, n.ground, 220e-6, 10e-3, "C2"});
        n.conductances.push_back({a, m, 100.0, "S1"});
        n.conductances.push_back({m, b, 100.0, "S2"});
        const NetlistSnapshot snap = assemble(n, dt);
        CircuitState s;
        s.cap_voltages.resize(2);
        s.cap_voltages << 210.0, 190.0;
        s.branch_currents = Eigen::VectorXd::Zero(0);
        for (int k = 0; k < 100; ++k) s = step(s, snap, dt).state;
        const double err = (s.cap_voltages.array() - 200.0).abs().maxCoeff() / 200.0;
        const double charge = std::abs(s.cap_voltages.sum() - 400.0) / 400.0;
        o.expect(err < 1e-3, "equalization error " + fmt("%.3g", err));
        o.expect(charge < 1e-6, "charge drift " + fmt("%.3g", charge));
    }
    for (const PresetRun& r : runs) {
        const double residual = 100.0 * r.summary.energy.relative_residual();
        o.expect(residual < 0.5, r.preset->name + (r.config.control.mi_limiter ? " (mi limiter)" : "") +
                                     " energy residual " + fmt("%.3f %%", residual));
    }
    return o;
}

Outcome steady_state(const PresetRun& run) {
    Outcome o;
    apply_manifest(run, o);
    o.expect(run.runtime <= 120.0, "runtime " + fmt("%.1f s", run.runtime));
    return o;
}

Outcome harmonic_claims() {
    Outcome o;
    const auto t0 = Clock::now();
    SystemConfig c;
    c.levels = 3;
    c.phases = 3;
    c.v_dc = 600.0;
    c.mode = ModulationMode::Staircase;
    c.modulation_index = 1.0;
    const double ts = 1e-6;
    const WaveformRecord rec = ideal_phase_voltages(c, 1.0 / c.fundamental_f, ts);
    for (int i = 1; i <= c.phases; ++i) {
        const std::string ch = phase_channel('V', i);
        const HarmonicSpectrum s = fourier_coefficients(rec, ch, c.fundamental_f, 1, 50);
        const double rms = fundamental_rms(s);
        const double target = 0.78 * c.nominal_voltage();
        o.expect(std::abs(rms - target) / target <= 0.01, ch + " fundamental rms " + fmt("%.2f V", rms));
        for (int m : {5, 7, 11, 13}) {
            const double ratio = s.magnitude(m) / s.magnitude(1);
            o.expect(std::abs(ratio * m - 1.0) <= 0.02, ch + " ratio at m = " + std::to_string(m) + " " +
                                                            fmt("%.4f", ratio));
        }
        const double triplen = triplen_content(s, 50);
        o.expect(triplen < 0.01, ch + " triplen " + fmt("%.3g", triplen));
    }
    const double t = seconds_since(t0);
    o.expect(t < 10.0, "runtime " + fmt("%.2f s", t));
    return o;
}

Outcome recovery(const PresetRun& run) {
    Outcome o;
    apply_manifest(run, o);
    return o;
}

Outcome imbalanced(const PresetRun& plain, const PresetRun& limited) {
    Outcome o;
    apply_manifest(plain, o);
    if (!plain.report.recovery || !limited.report.recovery) {
        o.expect(false, "recovery metrics missing");
        return o;
    }
    const double without = plain.report.recovery->final_deviation_percent;
    const double with = limited.report.recovery->final_deviation_percent;
    o.expect(with < without, "max deviation with limiter " + fmt("%.3f %%", with) + " vs without " +
                                 fmt("%.3f %%", without));
    return o;
}

Outcome determinism(const std::vector<PresetRun>& runs) {
    Outcome o;
    for (const PresetRun& r : runs) {
        const PresetRun again = run_preset(*r.preset, r.config);
        o.expect(again.csv == r.csv, r.preset->name + " CSV differs between runs");
    }
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int number;
        std::string title;
        std::function<Outcome()> body;
    };

    std::map<std::string, PresetRun> runs;
    std::vector<PresetRun> all_runs;
    auto preset_run = [&](const std::string& name) -> const PresetRun& {
        auto it = runs.find(name);
        if (it == runs.end()) {
            const ScenarioPreset& p = find_scenario(name);
            it = runs.emplace(name, run_preset(p, p.config)).first;
        }
        return it->second;
    };
    std::optional<PresetRun> limited;
    auto limited_run = [&]() -> const PresetRun& {
        if (!limited) {
            const ScenarioPreset& p = find_scenario("imbalanced-load");
            SystemConfig c = p.config;
            c.control.mi_limiter = true;
            limited = run_preset(p, c);
        }
        return *limited;
    };
    auto every_run = [&] {
        std::vector<PresetRun> out;
        for (const ScenarioPreset& p : scenario_presets()) out.push_back(preset_run(p.name));
        out.push_back(limited_run());
        return out;
    };

    const std::vector<Criterion> criteria = {
        {1, "design formulas: 5 -> (7, 2), 3 -> (4, 1), partition to N_L = 21, < 1 s", design_formulas},
        {2, "five-level switching table: 6 rows exact, 2^7 vectors classified, < 1 s", switching_table},
        {4, "five-level steady state: mean 200 V +-2 %, ripple <= 5 %, levels +-15 V, <= 120 s", [&] { return steady_state(preset_run("five-level-steady")); }},
        {5, "seven-level steady state: mean 133.3 V +-2 %, ripple <= 4 %, 7 levels +-15 V, <= 120 s", [&] { return steady_state(preset_run("seven-level-steady")); }},
        {6, "staircase harmonics: rms 0.78 V_DC/n +-1 %, 1/m ratios +-2 %, triplen < 1 %, < 10 s", harmonic_claims},
        {7, "self-balancing recovery: monotonic, +-2 % within 0.2 s, energy into low capacitor > 0", [&] { return recovery(preset_run("perturbation")); }},
        {8, "imbalanced load: drift <= 0.1 %/cycle, limiter lowers max deviation",
         [&] { return imbalanced(preset_run("imbalanced-load"), limited_run()); }},
        {3, "solver oracles within 0.1 % at 1 us, energy residual < 0.5 % on every run", [&] { return solver_oracles(every_run()); }},
        {9, "determinism: byte-identical CSV on repeat runs", [&] {
             std::vector<PresetRun> presets;
             for (const ScenarioPreset& p : scenario_presets()) presets.push_back(preset_run(p.name));
             return determinism(presets);
         }},
    };

    std::map<int, std::pair<Outcome, double>> results;
    for (const Criterion& c : criteria) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o.expect(false, std::string("exception: ") + e.what());
        }
        results[c.number] = {o, seconds_since(t0)};
    }

    bool all = true;
    for (const auto& [number, entry] : results) {
        const auto& [o, t] = entry;
        std::string title;
        for (const Criterion& c : criteria)
            if (c.number == number) title = c.title;
        std::printf("%s  %d. %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", number, title.c_str(), t);
        for (const std::string& n : o.notes) std::printf("        %s\n", n.c_str());
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
