#pragma once

// Netlist of the series-stacked converter: the dc source with its series
// resistance feeds the chain of bus capacitors C_i1; each sub-module's inner
// capacitors and bridge hang off its own bus pair; phase i's load sits
// between that sub-module's bridge terminals B (+) and A (-).

#include "scmmi/circuit.hpp"
#include "scmmi/switching.hpp"
#include "scmmi/system.hpp"

#include <vector>

namespace scmmi {

/// Global indices of everything the simulator reads back.
struct ConverterMap {
    int phases = 0;
    int capacitors_per_phase = 0;
    int ground = 0;
    int top = 0;                              // + terminal of the dc source
    std::vector<std::vector<int>> nodes;      // [phase][local node] -> global node
    std::vector<std::vector<int>> switch_at;  // [phase][switch number - 1] -> conductance element

    int cap_index(int phase, int j) const { return phase * capacitors_per_phase + j; }  // 0-based
    int out_pos(int phase) const { return nodes[static_cast<std::size_t>(phase)][SubModuleLayout::B]; }
    int out_neg(int phase) const { return nodes[static_cast<std::size_t>(phase)][SubModuleLayout::A]; }
};

ConverterMap converter_map(const SystemConfig& config);

/// Unassembled netlist for the given per-phase gate vectors.
Netlist converter_netlist(const SystemConfig& config, const std::vector<SwitchVector>& vectors);

/// Checks every vector with validate_no_short, then stamps and factorizes.
/// Throws InvalidState for a shorting vector, SingularNetwork for islands.
NetlistSnapshot build_network(const SystemConfig& config, const std::vector<SwitchVector>& vectors);

/// Phase load current for the recorded state, A.
double phase_current(const SystemConfig& config, const ConverterMap& map, const StepResult& r, int phase);

}  // namespace scmmi
