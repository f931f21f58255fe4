#pragma once

// Generic linear network with backward-Euler companion models and a dense
// nodal solve. The converter-specific builder lives in network.hpp; the
// analytic solver oracles run directly on this layer.

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace scmmi {

struct ConductanceElement {
    int a = 0;
    int b = 0;
    double g = 0.0;  // S
    std::string label;
};

/// Ideal capacitance in series with an ESR. Positive current enters `pos`.
struct CapacitorElement {
    int pos = 0;
    int neg = 0;
    double capacitance = 0.0;
    double esr = 0.0;
    std::string label;
};

/// k magnetically coupled windings, winding k between pos[k] and neg[k],
/// each with series resistance. Positive current flows pos -> neg through
/// the winding.
struct WindingSet {
    std::vector<int> pos;
    std::vector<int> neg;
    Eigen::MatrixXd inductance;  // symmetric positive definite, H
    Eigen::VectorXd resistance;  // ohm
};

/// Ideal source in series with `resistance`. A zero resistance fixes the
/// potential of `pos`, which then requires `neg` to be the ground node.
struct DcSourceElement {
    int pos = 0;
    int neg = 0;
    double voltage = 0.0;
    double resistance = 0.0;
};

struct Netlist {
    std::vector<std::string> node_names;
    int ground = 0;
    std::vector<ConductanceElement> conductances;
    std::vector<CapacitorElement> capacitors;
    std::optional<WindingSet> windings;
    std::optional<DcSourceElement> source;

    int node_count() const { return static_cast<int>(node_names.size()); }
    int add_node(std::string name);
    int winding_count() const { return windings ? static_cast<int>(windings->pos.size()) : 0; }
};

// Stamp helpers operate on the full (ground included) nodal matrix.

template <typename Derived>
void stamp_conductance(Eigen::MatrixBase<Derived>& G, int a, int b, double g) {
    G(a, a) += g;
    G(b, b) += g;
    G(a, b) -= g;
    G(b, a) -= g;
}

template <typename Derived>
void stamp_current(Eigen::MatrixBase<Derived>& rhs, int into, int out_of, double i) {
    rhs(into) += i;
    rhs(out_of) -= i;
}

/// Multi-port admittance: current leaving pos[k] equals sum_l Y(k,l) v_l.
template <typename Derived, typename YDerived>
void stamp_admittance(Eigen::MatrixBase<Derived>& G, const std::vector<int>& pos,
                      const std::vector<int>& neg, const Eigen::MatrixBase<YDerived>& Y) {
    const auto n = static_cast<Eigen::Index>(pos.size());
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index l = 0; l < n; ++l) {
            const double y = Y(k, l);
            G(pos[k], pos[l]) += y;
            G(pos[k], neg[l]) -= y;
            G(neg[k], pos[l]) -= y;
            G(neg[k], neg[l]) += y;
        }
    }
}

/// Assembled and factorized network for one switch configuration and step size.
struct NetlistSnapshot {
    Netlist netlist;
    double dt = 0.0;
    Eigen::MatrixXd conductance;          // full nodal matrix, ground included
    std::vector<int> free_nodes;          // unknown index -> node
    std::vector<int> fixed_nodes;         // ground and an ideal source terminal
    Eigen::VectorXd fixed_voltages;
    Eigen::VectorXd fixed_injection;      // G(free, fixed) * fixed_voltages
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;
    Eigen::MatrixXd winding_admittance;   // (R + L/dt)^-1
    Eigen::MatrixXd winding_history;      // winding_admittance * L / dt
    Eigen::VectorXd capacitor_conductance;
};

/// Stamps and factorizes. Throws SingularNetwork naming any node set with no
/// conductive path to ground.
NetlistSnapshot assemble(Netlist netlist, double dt);

struct CircuitState {
    Eigen::VectorXd cap_voltages;     // per capacitor element, V
    Eigen::VectorXd branch_currents;  // per winding, A
    double time = 0.0;
};

struct StepResult {
    CircuitState state;
    Eigen::VectorXd node_voltages;
    Eigen::VectorXd cap_currents;
    double source_current = 0.0;  // out of the source's pos terminal
};

/// One backward-Euler step. `dt` must be positive and equal to the step the
/// snapshot was assembled for.
StepResult step(const CircuitState& state, const NetlistSnapshot& snapshot, double dt);

/// Instantaneous power bookkeeping for an accepted step.
struct PowerFlow {
    double source = 0.0;     // delivered by the ideal source, W
    double resistive = 0.0;  // dissipated in every resistive element, W
};

PowerFlow power_flow(const NetlistSnapshot& snapshot, const StepResult& result);

double capacitor_energy(const Netlist& netlist, const CircuitState& state);
double inductor_energy(const Netlist& netlist, const CircuitState& state);

}  // namespace scmmi
