#include "scmmi/system.hpp"

#include "scmmi/errors.hpp"
#include "scmmi/topology.hpp"

#include <cmath>
#include <sstream>

namespace scmmi {

double LoadModel::resistance(int phase) const {
    const double scale = r_scale.empty() ? 1.0 : r_scale.at(static_cast<std::size_t>(phase));
    return r_phase * scale;
}

Eigen::MatrixXd LoadModel::inductance_matrix(int phases) const {
    Eigen::MatrixXd l = Eigen::MatrixXd::Identity(phases, phases) * l_self;
    if (kind == LoadKind::CoupledRL) {
        for (int i = 0; i < phases; ++i)
            for (int j = 0; j < phases; ++j)
                if (i != j) l(i, j) = coupling_k * l_self;
    }
    return l;
}

void LoadModel::validate(int phases) const {
    if (!(r_phase > 0.0)) throw ConfigError("load.r_phase must be positive");
    if (!r_scale.empty()) {
        if (static_cast<int>(r_scale.size()) != phases) {
            throw ConfigError("load.r_scale needs one entry per phase");
        }
        for (double s : r_scale)
            if (!(s > 0.0)) throw ConfigError("load.r_scale entries must be positive");
    }
    if (kind == LoadKind::IndependentR) return;
    if (!(l_self > 0.0)) throw ConfigError("load.l_self must be positive");
    if (kind == LoadKind::CoupledRL) {
        const double lower = phases > 1 ? -1.0 / (phases - 1) : -1.0;
        if (coupling_k <= lower || coupling_k >= 1.0) {
            throw ConfigError("load.coupling_k must lie in (" + std::to_string(lower) + ", 1)");
        }
        Eigen::LLT<Eigen::MatrixXd> llt(inductance_matrix(phases));
        if (llt.info() != Eigen::Success) throw ConfigError("load inductance matrix is not positive definite");
    }
}

std::string to_string(LoadKind kind) {
    switch (kind) {
        case LoadKind::CoupledRL: return "coupled_rl";
        case LoadKind::IndependentRL: return "independent_rl";
        case LoadKind::IndependentR: return "independent_r";
    }
    return "?";
}

LoadKind parse_load_kind(const std::string& text) {
    if (text == "coupled_rl") return LoadKind::CoupledRL;
    if (text == "independent_rl") return LoadKind::IndependentRL;
    if (text == "independent_r") return LoadKind::IndependentR;
    throw ConfigError("unknown load type '" + text + "' (coupled_rl, independent_rl, independent_r)");
}

int SystemConfig::capacitors_per_phase() const { return capacitors_per_module(levels); }

int SystemConfig::decimation() const {
    if (full_rate) return 1;
    const long k = std::lround(sample_period / dt);
    return k < 1 ? 1 : static_cast<int>(k);
}

void SystemConfig::validate() const {
    if (phases < 1) throw ConfigError("system.phases must be >= 1");
    try {
        require_valid_levels(levels);
    } catch (const InvalidLevelCount& e) {
        throw ConfigError(std::string("submodule.levels: ") + e.what());
    }
    if (!(v_dc > 0.0)) throw ConfigError("system.v_dc must be positive");
    if (!(capacitance > 0.0)) throw ConfigError("submodule.capacitance must be positive");
    if (cap_esr < 0.0 || source_r < 0.0 || g_off < 0.0) {
        throw ConfigError("resistances and conductances must be >= 0");
    }
    if (!(r_on > 0.0)) throw ConfigError("submodule.r_on must be positive");
    if (!(fundamental_f > 0.0)) throw ConfigError("system.fundamental_f must be positive");
    if (!(carrier_f >= 10.0 * fundamental_f)) {
        throw ConfigError("modulation.carrier_f must be at least 10x the fundamental");
    }
    if (!(modulation_index > 0.0) || modulation_index > 1.0) {
        throw ConfigError("modulation.modulation_index must lie in (0, 1]");
    }
    if (!(dt > 0.0)) throw ConfigError("simulation.dt must be positive");
    if (dt > 1.0 / (20.0 * carrier_f) * (1.0 + 1e-12)) {
        throw ConfigError("simulation.dt must resolve at least 20 steps per carrier period");
    }
    if (!(duration > 0.0)) throw ConfigError("simulation.duration must be positive");
    if (!full_rate && !(sample_period > 0.0)) throw ConfigError("simulation.sample_period must be positive");
    const std::size_t total = static_cast<std::size_t>(phases * capacitors_per_phase());
    if (!initial_cap_voltages.empty() && initial_cap_voltages.size() != 1 && initial_cap_voltages.size() != total) {
        throw ConfigError("submodule.initial_cap_voltages needs 1 or " + std::to_string(total) + " values");
    }
    for (double v : initial_cap_voltages)
        if (!(v >= 0.0)) throw ConfigError("initial capacitor voltages must be >= 0");
    if (perturbation && (perturbation->phase < 1 || perturbation->phase > phases)) {
        throw ConfigError("simulation.perturb_phase out of range");
    }
    load.validate(phases);
    control.limiter.validate();
}

std::string SystemConfig::digest() const {
    std::ostringstream os;
    os.precision(17);
    os << "n=" << phases << ";vdc=" << v_dc << ";rs=" << source_r << ";f=" << fundamental_f
       << ";NL=" << levels << ";C=" << capacitance << ";esr=" << cap_esr << ";ron=" << r_on
       << ";goff=" << g_off << ";biz=" << balance_in_zero << ";v0=";
    for (double v : initial_cap_voltages) os << v << ',';
    os << ";load=" << to_string(load.kind) << ',' << load.r_phase << ',' << load.l_self << ','
       << load.coupling_k << ",scale=";
    for (double s : load.r_scale) os << s << ',';
    os << ";mode=" << (mode == ModulationMode::Pwm ? "pwm" : "staircase") << ";fc=" << carrier_f
       << ";phc=" << carrier_phase << ";mi=" << modulation_index << ";ctl=" << control.mi_limiter
       << control.current_limiter << control.torque_limiter << ',' << control.limiter.deadband << ','
       << control.limiter.gain << ',' << control.limiter.floor << ',' << control.limiter.ceiling
       << ";dt=" << dt << ";T=" << duration << ";ts=" << sample_period << ";full=" << full_rate;
    if (perturbation) os << ";perturb=" << perturbation->phase << ',' << perturbation->delta_v;
    return os.str();
}

}  // namespace scmmi
