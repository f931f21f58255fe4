#include "scmmi/simulation.hpp"

#include "scmmi/control.hpp"
#include "scmmi/errors.hpp"
#include "scmmi/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace scmmi {

CircuitState initial_state(const SystemConfig& config) {
    const int total = config.phases * config.capacitors_per_phase();
    CircuitState s;
    if (config.initial_cap_voltages.empty()) {
        s.cap_voltages = Eigen::VectorXd::Constant(total, config.nominal_voltage());
    } else if (config.initial_cap_voltages.size() == 1) {
        s.cap_voltages = Eigen::VectorXd::Constant(total, config.initial_cap_voltages.front());
    } else {
        s.cap_voltages = Eigen::Map<const Eigen::VectorXd>(config.initial_cap_voltages.data(), total);
    }
    s.branch_currents = Eigen::VectorXd::Zero(config.load.kind == LoadKind::IndependentR ? 0 : config.phases);
    if (config.load.kind != LoadKind::IndependentR) {
        // Fundamental steady state of the windings at t = 0.
        const int n = config.phases;
        const double w = 2.0 * std::numbers::pi * config.fundamental_f;
        const double amplitude = config.modulation_index * config.capacitors_per_phase() * config.nominal_voltage();
        Eigen::MatrixXcd z = std::complex<double>(0.0, w) * config.load.inductance_matrix(n).cast<std::complex<double>>();
        Eigen::VectorXcd v(n);
        for (int i = 0; i < n; ++i) {
            z(i, i) += config.load.resistance(i);
            v(i) = std::polar(amplitude, 2.0 * std::numbers::pi * (i + 1) / n);
        }
        s.branch_currents = z.partialPivLu().solve(v).imag();
    }
    s.time = 0.0;
    return s;
}

double cap_voltage(const SystemConfig& config, const CircuitState& state, int phase, int j) {
    return state.cap_voltages((phase - 1) * config.capacitors_per_phase() + (j - 1));
}

CircuitState inject_perturbation(const CircuitState& state, const SystemConfig& config, int phase, double delta_v) {
    if (phase < 1 || phase > config.phases) {
        throw InvalidPerturbation("phase " + std::to_string(phase) + " out of range");
    }
    if (delta_v == 0.0) return state;
    if (config.phases < 2) throw InvalidPerturbation("a single sub-module cannot be perturbed against the chain");
    const int nc = config.capacitors_per_phase();
    CircuitState out = state;
    const double share = delta_v / (config.phases - 1);
    for (int i = 1; i <= config.phases; ++i) {
        if (i == phase) {
            for (int j = 0; j < nc; ++j) out.cap_voltages((i - 1) * nc + j) += delta_v;
        } else {
            out.cap_voltages((i - 1) * nc) -= share;
        }
    }
    if ((out.cap_voltages.array() < 0.0).any()) {
        throw InvalidPerturbation("perturbation of " + std::to_string(delta_v) + " V drives a capacitor negative");
    }
    return out;
}

double EnergyBalance::delivered() const {
    return std::max(source, 0.0) + std::max(-capacitor_delta, 0.0) + std::max(-inductor_delta, 0.0);
}

double EnergyBalance::relative_residual() const {
    const double d = delivered();
    return d > 0.0 ? std::abs(residual()) / d : std::abs(residual());
}

std::string phase_channel(char quantity, int phase) {
    return std::string(1, quantity) + "_" + std::to_string(phase);
}

std::string capacitor_channel(char quantity, int phase, int j) {
    const std::string sep = (phase > 9 || j > 9) ? "_" : "";
    return std::string(1, quantity) + "_C" + std::to_string(phase) + sep + std::to_string(j);
}

WaveformRecord ideal_phase_voltages(const SystemConfig& config, double duration, double sample_period) {
    config.validate();
    if (!(duration > 0.0) || !(sample_period > 0.0)) throw ConfigError("duration and sample period must be positive");
    WaveformRecord rec;
    rec.sample_period = sample_period;
    rec.start_time = 0.0;
    rec.config_digest = config.digest();
    for (int i = 1; i <= config.phases; ++i) rec.add(phase_channel('V', i), "V");
    const CarrierBank bank = make_carrier_bank(config.levels, config.carrier_f, config.carrier_phase);
    const long samples = std::lround(duration / sample_period);
    for (long k = 0; k < samples; ++k) {
        const double t = static_cast<double>(k) * sample_period;
        const Eigen::VectorXd ref = sinusoidal_references(t, config.fundamental_f, config.phases, config.modulation_index);
        for (int i = 0; i < config.phases; ++i) {
            const LevelCommand cmd = config.mode == ModulationMode::Pwm
                                         ? pwm_level(t, ref(i), bank, config.levels)
                                         : staircase_level(t, ref(i), config.levels);
            rec.channels[static_cast<std::size_t>(i)].values.push_back(cmd.level * config.nominal_voltage());
        }
    }
    return rec;
}

RunResult run(const SystemConfig& config) {
    return run(config, config.duration, RecorderSpec{config.sample_period, config.full_rate});
}

RunResult run(const SystemConfig& config, double duration, const RecorderSpec& recorder) {
    config.validate();
    if (!(duration > 0.0)) throw ConfigError("run duration must be positive");

    const int n = config.phases;
    const int nc = config.capacitors_per_phase();
    const ConverterMap map = converter_map(config);
    const double dt = config.dt;
    const long steps = std::lround(duration / dt);
    const long decim = recorder.full_rate ? 1L : std::max(1L, std::lround(recorder.sample_period / dt));

    CircuitState state = initial_state(config);
    if (config.perturbation) {
        state = inject_perturbation(state, config, config.perturbation->phase, config.perturbation->delta_v);
    }

    RunResult result;
    WaveformRecord& rec = result.record;
    rec.sample_period = static_cast<double>(decim) * dt;
    rec.start_time = rec.sample_period;
    rec.config_digest = config.digest();
    for (int i = 1; i <= n; ++i) rec.add(phase_channel('V', i), "V");
    for (int i = 1; i <= n; ++i) rec.add(phase_channel('I', i), "A");
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= nc; ++j) rec.add(capacitor_channel('V', i, j), "V");
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= nc; ++j) rec.add(capacitor_channel('I', i, j), "A");
    rec.add("I_S", "A");
    for (Channel& c : rec.channels) c.values.reserve(static_cast<std::size_t>(steps / decim + 1));

    auto bus_voltages = [&](const CircuitState& s) {
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v(i) = s.cap_voltages(i * nc);
        return v;
    };

    const double v_avg = config.nominal_voltage();
    const int window = static_cast<int>(std::lround(1.0 / (config.fundamental_f * dt)));
    MovingAverage averaged(n, window, bus_voltages(state));
    const CarrierBank bank = make_carrier_bank(config.levels, config.carrier_f, config.carrier_phase);

    const Netlist* netlist = nullptr;
    NetlistSnapshot snapshot;
    std::vector<SwitchVector> vectors(static_cast<std::size_t>(n));
    std::vector<SwitchVector> next(static_cast<std::size_t>(n));
    bool have_snapshot = false;

    RunSummary& sum = result.summary;
    sum.duration = static_cast<double>(steps) * dt;
    sum.steps = steps;

    for (long k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * dt;

        Eigen::VectorXd mi = Eigen::VectorXd::Constant(n, config.modulation_index);
        if (config.control.any()) {
            const Eigen::VectorXd vc = averaged.mean();
            for (int i = 0; i < n; ++i) {
                const double factor = correction_factor(vc(i), v_avg, config.control.limiter);
                if (config.control.mi_limiter) mi(i) *= factor;
                if (config.control.current_limiter) mi(i) *= factor;
                if (config.control.torque_limiter) mi(i) *= factor;
            }
        }
        const Eigen::VectorXd ref = sinusoidal_references(t, config.fundamental_f, n, 1.0);
        for (int i = 0; i < n; ++i) {
            const double v_ref = std::clamp(mi(i) * ref(i), -1.0, 1.0);
            const LevelCommand cmd = config.mode == ModulationMode::Pwm
                                         ? pwm_level(t, v_ref, bank, config.levels)
                                         : staircase_level(t, v_ref, config.levels);
            next[static_cast<std::size_t>(i)] = level_to_switch_vector(cmd, config.levels, config.balance_in_zero);
        }

        try {
            if (!have_snapshot || next != vectors) {
                vectors = next;
                snapshot = build_network(config, vectors);
                netlist = &snapshot.netlist;
                have_snapshot = true;
                ++sum.rebuilds;
            }
            if (k == 0) {
                sum.energy.capacitor_delta = -capacitor_energy(*netlist, state);
                sum.energy.inductor_delta = -inductor_energy(*netlist, state);
            }
            const StepResult r = step(state, snapshot, dt);
            const PowerFlow p = power_flow(snapshot, r);
            sum.energy.source += p.source * dt;
            sum.energy.dissipated += p.resistive * dt;
            state = r.state;
            averaged.push(bus_voltages(state));

            if ((k + 1) % decim == 0) {
                std::size_t c = 0;
                for (int i = 0; i < n; ++i) {
                    rec.channels[c++].values.push_back(r.node_voltages(map.out_pos(i)) -
                                                       r.node_voltages(map.out_neg(i)));
                }
                for (int i = 0; i < n; ++i) rec.channels[c++].values.push_back(phase_current(config, map, r, i));
                for (int q = 0; q < n * nc; ++q) rec.channels[c++].values.push_back(state.cap_voltages(q));
                for (int q = 0; q < n * nc; ++q) rec.channels[c++].values.push_back(r.cap_currents(q));
                rec.channels[c].values.push_back(r.source_current);
            }
        } catch (const SolverError&) {
            throw;
        } catch (const Error& e) {
            throw SolverError(e.what(), t);
        }
    }

    if (netlist) {
        sum.energy.capacitor_delta += capacitor_energy(*netlist, state);
        sum.energy.inductor_delta += inductor_energy(*netlist, state);
    }
    result.final_state = state;
    return result;
}

}  // namespace scmmi
