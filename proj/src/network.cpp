#include "scmmi/network.hpp"

#include "scmmi/errors.hpp"

namespace scmmi {

ConverterMap converter_map(const SystemConfig& config) {
    const SubModuleLayout layout = make_layout(config.levels);
    ConverterMap m;
    m.phases = config.phases;
    m.capacitors_per_phase = layout.n_capacitors;

    // Chain nodes first: bus0 (source +) .. bus_n (ground).
    int next = 0;
    std::vector<int> bus;
    for (int i = 0; i <= config.phases; ++i) bus.push_back(next++);
    m.top = bus.front();
    m.ground = bus.back();

    for (int i = 0; i < config.phases; ++i) {
        std::vector<int> local(static_cast<std::size_t>(layout.node_count()));
        local[SubModuleLayout::P] = bus[static_cast<std::size_t>(i)];
        local[SubModuleLayout::N] = bus[static_cast<std::size_t>(i + 1)];
        for (int k = 2; k < layout.node_count(); ++k) local[static_cast<std::size_t>(k)] = next++;
        m.nodes.push_back(std::move(local));
    }

    int element = 0;
    for (int i = 0; i < config.phases; ++i) {
        std::vector<int> sw(layout.switches.size());
        for (const SwitchInfo& s : layout.switches) sw[static_cast<std::size_t>(s.number - 1)] = element++;
        m.switch_at.push_back(std::move(sw));
    }
    return m;
}

Netlist converter_netlist(const SystemConfig& config, const std::vector<SwitchVector>& vectors) {
    if (static_cast<int>(vectors.size()) != config.phases) {
        throw InvalidState("need one switch vector per phase");
    }
    const SubModuleLayout layout = make_layout(config.levels);
    const ConverterMap m = converter_map(config);

    Netlist net;
    for (int i = 0; i <= config.phases; ++i) net.add_node("bus" + std::to_string(i));
    for (int i = 0; i < config.phases; ++i) {
        for (int k = 2; k < layout.node_count(); ++k) {
            net.add_node("ph" + std::to_string(i + 1) + "." + layout.node_names[static_cast<std::size_t>(k)]);
        }
    }
    net.ground = m.ground;

    const double g_on = 1.0 / config.r_on;
    for (int i = 0; i < config.phases; ++i) {
        const auto& node = m.nodes[static_cast<std::size_t>(i)];
        const SwitchVector& v = vectors[static_cast<std::size_t>(i)];
        for (const SwitchInfo& s : layout.switches) {
            net.conductances.push_back({node[static_cast<std::size_t>(s.node_a)],
                                        node[static_cast<std::size_t>(s.node_b)],
                                        v.on(s.number) ? g_on : config.g_off,
                                        "S" + std::to_string(i + 1) + "_" + std::to_string(s.number)});
        }
    }
    for (int i = 0; i < config.phases; ++i) {
        const auto& node = m.nodes[static_cast<std::size_t>(i)];
        for (const CapacitorInfo& c : layout.capacitors) {
            net.capacitors.push_back({node[static_cast<std::size_t>(c.top)], node[static_cast<std::size_t>(c.bottom)],
                                      config.capacitance, config.cap_esr,
                                      "C" + std::to_string(i + 1) + std::to_string(c.index)});
        }
    }

    if (config.load.kind == LoadKind::IndependentR) {
        for (int i = 0; i < config.phases; ++i) {
            net.conductances.push_back({m.out_pos(i), m.out_neg(i), 1.0 / config.load.resistance(i),
                                        "R" + std::to_string(i + 1)});
        }
    } else {
        WindingSet w;
        for (int i = 0; i < config.phases; ++i) {
            w.pos.push_back(m.out_pos(i));
            w.neg.push_back(m.out_neg(i));
        }
        w.inductance = config.load.inductance_matrix(config.phases);
        w.resistance.resize(config.phases);
        for (int i = 0; i < config.phases; ++i) w.resistance(i) = config.load.resistance(i);
        net.windings = std::move(w);
    }

    net.source = DcSourceElement{m.top, m.ground, config.v_dc, config.source_r};
    return net;
}

NetlistSnapshot build_network(const SystemConfig& config, const std::vector<SwitchVector>& vectors) {
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (auto s = validate_no_short(vectors[i], config.levels)) {
            throw InvalidState("phase " + std::to_string(i + 1) + ": " + s->description);
        }
    }
    return assemble(converter_netlist(config, vectors), config.dt);
}

double phase_current(const SystemConfig& config, const ConverterMap& map, const StepResult& r, int phase) {
    if (config.load.kind == LoadKind::IndependentR) {
        return (r.node_voltages(map.out_pos(phase)) - r.node_voltages(map.out_neg(phase))) /
               config.load.resistance(phase);
    }
    return r.state.branch_currents(phase);
}

}  // namespace scmmi
