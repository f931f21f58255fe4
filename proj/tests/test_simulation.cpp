#include "scmmi/errors.hpp"
#include "scmmi/report.hpp"
#include "scmmi/simulation.hpp"
#include "scmmi/waveform_io.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace scmmi;

TEST_CASE("perturbation raises one sub-module and lowers the others' bus capacitors") {
    const SystemConfig c;
    const CircuitState s0 = initial_state(c);
    const CircuitState s = inject_perturbation(s0, c, 1, 100.0);
    CHECK(cap_voltage(c, s, 1, 1) == doctest::Approx(300.0));
    CHECK(cap_voltage(c, s, 1, 2) == doctest::Approx(300.0));
    CHECK(cap_voltage(c, s, 2, 1) == doctest::Approx(150.0));
    CHECK(cap_voltage(c, s, 3, 1) == doctest::Approx(150.0));
    double chain = 0.0;
    for (int i = 1; i <= 3; ++i) chain += cap_voltage(c, s, i, 1);
    CHECK(chain == doctest::Approx(c.v_dc));
}

TEST_CASE("zero perturbation is the identity and an over-large negative one is refused") {
    const SystemConfig c;
    const CircuitState s0 = initial_state(c);
    CHECK(inject_perturbation(s0, c, 2, 0.0).cap_voltages == s0.cap_voltages);
    CHECK_THROWS_AS(inject_perturbation(s0, c, 1, -250.0), InvalidPerturbation);
    CHECK_THROWS_AS(inject_perturbation(s0, c, 4, 10.0), InvalidPerturbation);
    SystemConfig single;
    single.phases = 1;
    CHECK_THROWS_AS(inject_perturbation(initial_state(single), single, 1, 10.0), InvalidPerturbation);
}

TEST_CASE("initial state uses the configured capacitor voltages") {
    SystemConfig c;
    c.initial_cap_voltages = {210.0};
    const CircuitState s = initial_state(c);
    CHECK(s.cap_voltages.size() == 6);
    CHECK((s.cap_voltages.array() == 210.0).all());
}

TEST_CASE("channel names") {
    CHECK(phase_channel('V', 2) == "V_2");
    CHECK(capacitor_channel('V', 1, 2) == "V_C12");
    CHECK(capacitor_channel('I', 12, 3) == "I_C12_3");
}

TEST_CASE("repeated runs give byte-identical CSV") {
    SystemConfig c;
    c.duration = 0.004;
    c.dt = 1e-6;
    auto csv = [&] {
        std::ostringstream out;
        write_csv(run(c).record, out);
        return out.str();
    };
    const std::string a = csv();
    CHECK(a.size() > 1000);
    CHECK(a == csv());
}

TEST_CASE("short run records every channel and balances energy") {
    SystemConfig c;
    c.duration = 0.02;
    c.dt = 1e-6;
    const RunResult r = run(c);
    CHECK(r.record.length() == 4000);
    for (const char* name : {"V_1", "I_3", "V_C11", "V_C32", "I_C21", "I_S"}) CHECK(r.record.has(name));
    CHECK(r.summary.steps == 20000);
    CHECK(r.summary.energy.relative_residual() < 0.05);
}

TEST_CASE("property: strongly coupled windings pull a perturbed sub-module back to nominal") {
    for (int phase : {1, 3}) {
        SystemConfig c;
        c.load.r_phase = 240.0;
        c.load.l_self = 0.3;
        c.load.coupling_k = 0.9;
        c.dt = 1e-6;
        c.duration = 0.4;
        c.perturbation = Perturbation{phase, 0.5 * c.nominal_voltage()};
        const RunResult r = run(c);
        const std::vector<double> dev = cycle_deviation(r.record, c.fundamental_f, c.nominal_voltage());
        CHECK(dev.front() > 10.0);
        CHECK(decays_monotonically(dev, 2.0));
        CHECK(dev.back() <= 2.0);
    }
}
