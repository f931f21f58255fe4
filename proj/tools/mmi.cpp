// mmi: design calculator, transient simulator and waveform analyzer for the
// series-stacked switched-capacitor multilevel inverter.

#include "scmmi/config.hpp"
#include "scmmi/errors.hpp"
#include "scmmi/plot.hpp"
#include "scmmi/report.hpp"
#include "scmmi/scenarios.hpp"
#include "scmmi/simulation.hpp"
#include "scmmi/switching.hpp"
#include "scmmi/topology.hpp"
#include "scmmi/waveform_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

namespace fs = std::filesystem;
using namespace scmmi;

namespace {

enum Exit { kOk = 0, kConfig = 2, kSolver = 3, kAnalysis = 4 };

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string level_label(int level) {
    if (level == 0) return "0";
    const std::string sign = level > 0 ? "+" : "-";
    const int k = std::abs(level);
    return sign + (k == 1 ? "" : std::to_string(k)) + "V_C1";
}

int design(int levels, int phases, double v_dc) {
    const SubModuleSpec spec = component_counts(levels);
    const RatingReport rating = device_ratings(levels, phases, v_dc);
    std::cout << "Sub-module: " << levels << " levels, " << spec.n_switches << " switches, " << spec.n_capacitors
              << (spec.n_capacitors == 1 ? " capacitor" : " capacitors") << "\n";
    std::cout << "  switches without antiparallel diode: " << spec.n_no_diode << "\n";
    std::cout << "  switches with antiparallel diode:    " << spec.n_with_diode << "\n";
    std::cout << "  switches with either:                " << spec.n_any_diode << "\n";
    std::cout << "Converter: " << phases << (phases == 1 ? " phase" : " phases") << ", V_DC = " << fmt(v_dc)
              << " V, " << phases * spec.n_switches << " switches and " << phases * spec.n_capacitors
              << " capacitors in total\n";
    std::cout << "Ratings:\n";
    std::cout << "  capacitor:                " << fmt(rating.capacitor_rating) << " V\n";
    std::cout << "  inner switches (S5..):    " << fmt(rating.inner_switch_rating) << " V\n";
    std::cout << "  bridge switches (S1..S4): " << fmt(rating.outer_switch_rating) << " V\n";
    std::cout << "Levels (V):";
    for (double v : rating.level_set) std::cout << " " << fmt(v);
    std::cout << "\n";
    std::cout << "Boost (peak phase voltage above V_DC): " << (is_boosting(levels, phases) ? "yes" : "no") << "\n";

    std::cout << "\nSwitching states\n";
    for (int s = 1; s <= spec.n_switches; ++s) std::cout << "S" << s << (s < 10 ? "   " : "  ");
    std::cout << "V_i\n";
    for (const LegalState& st : enumerate_legal_states(levels)) {
        for (int s = 1; s <= spec.n_switches; ++s) std::cout << (st.switches.on(s) ? "ON    " : "OFF   ");
        std::cout << level_label(st.command.level) << "\n";
    }
    return kOk;
}

struct SimJob {
    std::string name;
    SystemConfig config;
    std::string csv;
};

void run_job(const SimJob& job) {
    const RunResult r = run(job.config);
    write_csv(r.record, job.csv);
    std::ofstream summary(job.csv + ".summary.txt", std::ios::binary);
    summary << summary_text(r.summary, r.record.config_digest);
    if (!summary) throw AnalysisError("cannot write summary next to '" + job.csv + "'");
}

std::string summary_line(const std::string& csv) {
    std::ifstream in(csv + ".summary.txt");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return text;
}

int simulate(const std::string& config_path, const std::string& scenario, const std::string& out, bool all,
             const std::string& out_dir) {
    std::vector<SimJob> jobs;
    if (all) {
        fs::create_directories(out_dir);
        for (const auto& p : scenario_presets()) {
            SystemConfig c = config_path.empty() ? p.config : load_config(config_path, p.config);
            jobs.push_back({p.name, c, (fs::path(out_dir) / (p.name + ".csv")).string()});
        }
    } else {
        SystemConfig base = scenario.empty() ? SystemConfig{} : find_scenario(scenario).config;
        if (!config_path.empty()) base = load_config(config_path, base);
        base.validate();
        jobs.push_back({scenario.empty() ? "config" : scenario, base, out});
    }

    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("MMI_THREADS")) {
        const int cap = std::atoi(env);
        if (cap < 1) throw ConfigError("MMI_THREADS must be a positive integer");
        threads = std::min(threads, static_cast<unsigned>(cap));
    }
    threads = std::min<unsigned>(threads, static_cast<unsigned>(jobs.size()));

    std::atomic<std::size_t> next{0};
    std::mutex guard;
    std::exception_ptr failure;
    auto worker = [&] {
        for (std::size_t k = next++; k < jobs.size(); k = next++) {
            try {
                run_job(jobs[k]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(guard);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    for (const SimJob& job : jobs) {
        std::cout << "[" << job.name << "] wrote " << job.csv << "\n" << summary_line(job.csv);
    }
    return kOk;
}

int analyze_cmd(const std::string& csv, double f, const std::string& report_path, const std::string& plot_prefix,
                const std::string& scenario, double nominal) {
    const WaveformRecord rec = read_csv(csv);
    ReportOptions opt;
    const ScenarioPreset* preset = scenario.empty() ? nullptr : &find_scenario(scenario);
    if (preset) opt = preset->report;
    opt.fundamental_f = f;
    if (nominal > 0.0) opt.nominal = nominal;
    MetricsReport report = analyze(rec, opt);
    report.energy_residual_percent = read_summary_residual(csv + ".summary.txt");

    const std::string text = format_report(report);
    if (report_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(report_path, std::ios::binary);
        out << text;
        if (!out) throw AnalysisError("cannot write report '" + report_path + "'");
        std::cout << "wrote " << report_path << "\n";
    }

    if (!plot_prefix.empty()) {
        auto write = [](const std::string& path, const std::string& svg) {
            std::ofstream out(path, std::ios::binary);
            out << svg;
            if (!out) throw AnalysisError("cannot write plot '" + path + "'");
            std::cout << "wrote " << path << "\n";
        };
        std::vector<std::string> phases, caps;
        for (const auto& p : report.phases) phases.push_back(p.channel);
        for (const auto& c : report.capacitors) caps.push_back(c.channel);
        if (!phases.empty()) {
            write(plot_prefix + "_phase_voltages.svg", time_series_svg(rec, phases, "Phase voltages"));
            const int cycles = static_cast<int>(std::min<std::size_t>(
                static_cast<std::size_t>(opt.steady_cycles), rec.length() / samples_per_period(rec.sample_period, f)));
            const auto spec = fourier_coefficients(rec, phases.front(), f, cycles, 50);
            if (spec.magnitude(1) > 0.0) {
                write(plot_prefix + "_spectrum.svg", spectrum_svg(spec, 50, phases.front() + " harmonic spectrum"));
            }
        }
        if (!caps.empty()) write(plot_prefix + "_capacitors.svg", time_series_svg(rec, caps, "Capacitor voltages"));
    }

    if (preset) {
        bool ok = true;
        for (const Check& c : preset->manifest(report)) {
            std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
            ok = ok && c.pass;
        }
        if (!ok) {
            std::cerr << "mmi: record does not satisfy the " << scenario << " manifest\n";
            return kAnalysis;
        }
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Switched-capacitor modular multilevel inverter: design, simulate, analyze"};
    app.require_subcommand(1);

    int levels = 5, phases = 3;
    double v_dc = 600.0;
    auto* design_cmd = app.add_subcommand("design", "Component counts, ratings, levels and switching states");
    design_cmd->add_option("--levels", levels, "Output levels per sub-module (odd, >= 3)")->required();
    design_cmd->add_option("--phases", phases, "Number of phases / sub-modules")->check(CLI::PositiveNumber);
    design_cmd->add_option("--vdc", v_dc, "DC source voltage in volts")->check(CLI::PositiveNumber);

    std::string config_path, scenario, out = "waveform.csv", out_dir = "scenarios";
    bool all = false;
    auto* sim_cmd = app.add_subcommand("simulate", "Run a transient simulation and write a CSV waveform");
    sim_cmd->add_option("--config", config_path, "Configuration file (applied on top of --scenario)");
    sim_cmd->add_option("--scenario", scenario, "Preset: five-level-steady, seven-level-steady, perturbation, "
                                                "imbalanced-load");
    sim_cmd->add_option("--out", out, "Output CSV path");
    sim_cmd->add_flag("--all-scenarios", all, "Run every preset (parallelism capped by MMI_THREADS)");
    sim_cmd->add_option("--out-dir", out_dir, "Directory for --all-scenarios output");

    std::string csv, report_path, plot_prefix, manifest;
    double f = 50.0, nominal = 0.0;
    auto* an_cmd = app.add_subcommand("analyze", "Metrics report (and optional SVG plots) for a CSV waveform");
    an_cmd->add_option("csv", csv, "CSV waveform file")->required();
    an_cmd->add_option("--f", f, "Fundamental frequency in hertz")->check(CLI::PositiveNumber);
    an_cmd->add_option("--report", report_path, "Write the report here instead of standard output");
    an_cmd->add_option("--plot", plot_prefix, "Emit <prefix>_*.svg figures");
    an_cmd->add_option("--scenario", manifest, "Check the report against this preset's expected metrics");
    an_cmd->add_option("--nominal", nominal, "Capacitor target voltage (default: final-cycle mean)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (*design_cmd) return design(levels, phases, v_dc);
        if (*sim_cmd) {
            if (all && scenario.size()) throw ConfigError("--all-scenarios and --scenario are exclusive");
            return simulate(config_path, scenario, out, all, out_dir);
        }
        if (*an_cmd) return analyze_cmd(csv, f, report_path, plot_prefix, manifest, nominal);
    } catch (const ConfigError& e) {
        std::cerr << "mmi: config error: " << e.what() << "\n";
        return kConfig;
    } catch (const InvalidLevelCount& e) {
        std::cerr << "mmi: config error: " << e.what() << "\n";
        return kConfig;
    } catch (const InvalidPerturbation& e) {
        std::cerr << "mmi: config error: " << e.what() << "\n";
        return kConfig;
    } catch (const SolverError& e) {
        std::cerr << "mmi: solver error: " << e.what() << "\n";
        return kSolver;
    } catch (const SingularNetwork& e) {
        std::cerr << "mmi: solver error: " << e.what() << "\n";
        return kSolver;
    } catch (const AnalysisError& e) {
        std::cerr << "mmi: analysis error: " << e.what() << "\n";
        return kAnalysis;
    } catch (const std::exception& e) {
        std::cerr << "mmi: " << e.what() << "\n";
        return kAnalysis;
    }
    return kOk;
}
