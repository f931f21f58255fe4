#include "scmmi/config.hpp"
#include "scmmi/errors.hpp"
#include "scmmi/waveform_io.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace scmmi;

namespace {

int error_line(const std::string& text) {
    try {
        parse_config_text(text);
    } catch (const ConfigError& e) {
        return e.line();
    }
    return -1;
}

}  // namespace

TEST_CASE("config text overrides defaults") {
    const SystemConfig c = parse_config_text(
        "# seven-level run\n"
        "[system]\n"
        "v_dc = 400\n"
        "[submodule]\n"
        "levels = 7   ; three capacitors\n"
        "[load]\n"
        "type = independent_r\n"
        "r_scale = 1, 1.1, 0.9\n"
        "[control]\n"
        "mi_limiter = true\n"
        "[simulation]\n"
        "perturb_phase = 2\n"
        "perturb_delta_v = 50\n");
    CHECK(c.v_dc == 400.0);
    CHECK(c.levels == 7);
    CHECK(c.load.kind == LoadKind::IndependentR);
    CHECK(c.load.r_scale == std::vector<double>{1.0, 1.1, 0.9});
    CHECK(c.control.mi_limiter);
    REQUIRE(c.perturbation.has_value());
    CHECK(c.perturbation->phase == 2);
    CHECK(c.perturbation->delta_v == 50.0);
}

TEST_CASE("config errors carry the offending line") {
    CHECK(error_line("[system]\nv_dc = 6OO\n") == 2);
    CHECK(error_line("[system]\n\n[nowhere]\n") == 3);
    CHECK(error_line("[submodule]\nlevels = 5\nflux = 3\n") == 3);
    CHECK(error_line("v_dc = 600\n") == 1);
    CHECK(error_line("[system\n") == 1);
    CHECK(error_line("[control]\nmi_limiter = maybe\n") == 2);
    CHECK(error_line("[submodule]\nlevels = 4\n") == 2);
    // cross-field failures surface after the whole file is read
    CHECK(error_line("[load]\nr_scale = 1, 2\n") == 0);
}

TEST_CASE("property: written configs parse back to the same digest") {
    testsupport::Gen g(31);
    for (int trial = 0; trial < 50; ++trial) {
        SystemConfig c;
        c.phases = g.integer(1, 5);
        c.levels = g.odd_levels(3, 11);
        c.v_dc = g.uniform(50.0, 1000.0);
        c.capacitance = g.uniform(1e-6, 1e-3);
        c.modulation_index = g.uniform(0.1, 1.0);
        c.mode = g.integer(0, 1) == 0 ? ModulationMode::Pwm : ModulationMode::Staircase;
        c.load.kind = static_cast<LoadKind>(g.integer(0, 2));
        c.load.r_phase = g.uniform(1.0, 500.0);
        c.load.coupling_k = g.uniform(-0.2, 0.9);
        if (c.phases > 1 && g.integer(0, 1) == 1) c.load.r_scale = g.samples(c.phases, 0.5, 1.5);
        c.control.mi_limiter = g.integer(0, 1) == 1;
        c.control.limiter.gain = g.uniform(0.0, 3.0);
        c.duration = g.uniform(0.01, 1.0);
        if (c.phases > 1) c.perturbation = Perturbation{g.integer(1, c.phases), g.uniform(-10.0, 10.0)};
        const SystemConfig back = parse_config_text(write_config(c));
        CHECK(back.digest() == c.digest());
    }
}

TEST_CASE("property: CSV write then read reproduces every sample exactly") {
    testsupport::Gen g(32);
    for (int trial = 0; trial < 20; ++trial) {
        WaveformRecord rec;
        rec.sample_period = 5e-6;
        const auto n = static_cast<std::size_t>(g.integer(2, 300));
        const int channels = g.integer(1, 6);
        for (int c = 0; c < channels; ++c) {
            auto& ch = rec.add("V_C" + std::to_string(c + 1) + "1", "V");
            ch.values = g.samples(n, -1e3, 1e3);
        }
        std::ostringstream out;
        write_csv(rec, out);
        std::istringstream in(out.str());
        const WaveformRecord back = read_csv(in);
        REQUIRE(back.channels.size() == rec.channels.size());
        CHECK(back.sample_period == doctest::Approx(rec.sample_period).epsilon(1e-9));
        for (std::size_t c = 0; c < rec.channels.size(); ++c) {
            CHECK(back.channels[c].name == rec.channels[c].name);
            CHECK(back.channels[c].unit == "V");
            CHECK(back.channels[c].values == rec.channels[c].values);
        }
    }
}

TEST_CASE("CSV header uses name and unit columns") {
    WaveformRecord rec;
    rec.sample_period = 1e-3;
    rec.add("V_1", "V").values = {1.0, 2.0};
    rec.add("I_S", "A").values = {0.5, 0.25};
    std::ostringstream out;
    write_csv(rec, out);
    CHECK(out.str() == "time_s,V_1_V,I_S_A\n0,1,0.5\n0.001,2,0.25\n");
}

TEST_CASE("malformed CSV rows are named") {
    auto message = [](const std::string& text) {
        std::istringstream in(text);
        try {
            read_csv(in);
        } catch (const AnalysisError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message("time_s,V_1_V\n0,1\n0.001,abc\n").rfind("row 3", 0) == 0);
    CHECK(message("time_s,V_1_V\n0,1\n0.001,2,3\n").rfind("row 3", 0) == 0);
    CHECK(message("time_s,V_1_V\n0,1\n0.001,2\n0.002,2\n0.0035,2\n0.004,2\n").rfind("row 5", 0) == 0);
    CHECK(message("t,V_1_V\n0,1\n").rfind("row 1", 0) == 0);
    CHECK(message("").rfind("row 1", 0) == 0);
}

TEST_CASE("summary sidecar carries the energy residual") {
    RunSummary s;
    s.duration = 0.2;
    s.steps = 1600000;
    s.energy.source = 100.0;
    s.energy.dissipated = 99.9;
    const std::string text = summary_text(s, "digest");
    CHECK(text.find("energy_residual = ") != std::string::npos);
    const std::string path = "scmmi_test_summary.txt";
    {
        std::ofstream out(path);
        out << text;
    }
    const auto residual = read_summary_residual(path);
    std::remove(path.c_str());
    REQUIRE(residual.has_value());
    CHECK(*residual == doctest::Approx(0.1).epsilon(1e-6));
    CHECK_FALSE(read_summary_residual("no_such_summary.txt").has_value());
}
