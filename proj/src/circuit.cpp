#include "scmmi/circuit.hpp"

#include "scmmi/errors.hpp"

#include <cmath>
#include <numeric>

namespace scmmi {

int Netlist::add_node(std::string name) {
    node_names.push_back(std::move(name));
    return node_count() - 1;
}

namespace {

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            auto& p = parent[static_cast<std::size_t>(x)];
            p = parent[static_cast<std::size_t>(p)];
            x = p;
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

void check_node(const Netlist& n, int node, const char* what) {
    if (node < 0 || node >= n.node_count()) {
        throw SingularNetwork(std::string(what) + " references node " + std::to_string(node) +
                              " outside [0, " + std::to_string(n.node_count()) + ")");
    }
}

void check_islands(const Netlist& n) {
    DisjointSet ds(n.node_count());
    for (const auto& e : n.conductances) {
        check_node(n, e.a, "conductance");
        check_node(n, e.b, "conductance");
        if (e.g > 0.0) ds.unite(e.a, e.b);
    }
    for (const auto& c : n.capacitors) {
        check_node(n, c.pos, "capacitor");
        check_node(n, c.neg, "capacitor");
        ds.unite(c.pos, c.neg);
    }
    if (n.windings) {
        for (std::size_t k = 0; k < n.windings->pos.size(); ++k) {
            check_node(n, n.windings->pos[k], "winding");
            check_node(n, n.windings->neg[k], "winding");
            ds.unite(n.windings->pos[k], n.windings->neg[k]);
        }
    }
    if (n.source) ds.unite(n.source->pos, n.source->neg);

    const int root = ds.find(n.ground);
    std::string island;
    for (int v = 0; v < n.node_count(); ++v) {
        if (ds.find(v) != root) island += (island.empty() ? "" : ", ") + n.node_names[static_cast<std::size_t>(v)];
    }
    if (!island.empty()) throw SingularNetwork("no conductive path to ground from {" + island + "}");
}

}  // namespace

NetlistSnapshot assemble(Netlist netlist, double dt) {
    if (!(dt > 0.0)) throw SolverError("step size must be positive", 0.0);
    check_node(netlist, netlist.ground, "ground");
    check_islands(netlist);

    NetlistSnapshot s;
    s.dt = dt;
    const int nodes = netlist.node_count();
    s.conductance = Eigen::MatrixXd::Zero(nodes, nodes);

    for (const auto& e : netlist.conductances) stamp_conductance(s.conductance, e.a, e.b, e.g);

    s.capacitor_conductance.resize(static_cast<Eigen::Index>(netlist.capacitors.size()));
    for (std::size_t k = 0; k < netlist.capacitors.size(); ++k) {
        const auto& c = netlist.capacitors[k];
        if (!(c.capacitance > 0.0) || c.esr < 0.0) {
            throw SingularNetwork("capacitor " + c.label + " needs C > 0 and ESR >= 0");
        }
        const double g = 1.0 / (c.esr + dt / c.capacitance);
        s.capacitor_conductance(static_cast<Eigen::Index>(k)) = g;
        stamp_conductance(s.conductance, c.pos, c.neg, g);
    }

    if (netlist.windings) {
        const auto& w = *netlist.windings;
        const Eigen::MatrixXd z = Eigen::MatrixXd(w.resistance.asDiagonal()) + w.inductance / dt;
        s.winding_admittance = z.inverse();
        s.winding_history = s.winding_admittance * w.inductance / dt;
        stamp_admittance(s.conductance, w.pos, w.neg, s.winding_admittance);
    }

    std::vector<bool> fixed(static_cast<std::size_t>(nodes), false);
    std::vector<double> fixed_v(static_cast<std::size_t>(nodes), 0.0);
    fixed[static_cast<std::size_t>(netlist.ground)] = true;
    if (netlist.source) {
        const auto& src = *netlist.source;
        if (src.resistance > 0.0) {
            stamp_conductance(s.conductance, src.pos, src.neg, 1.0 / src.resistance);
        } else {
            if (src.neg != netlist.ground) {
                throw SingularNetwork("an ideal source must return to the ground node");
            }
            fixed[static_cast<std::size_t>(src.pos)] = true;
            fixed_v[static_cast<std::size_t>(src.pos)] = src.voltage;
        }
    }

    for (int v = 0; v < nodes; ++v) {
        if (fixed[static_cast<std::size_t>(v)]) s.fixed_nodes.push_back(v);
        else s.free_nodes.push_back(v);
    }
    s.fixed_voltages.resize(static_cast<Eigen::Index>(s.fixed_nodes.size()));
    for (std::size_t k = 0; k < s.fixed_nodes.size(); ++k) {
        s.fixed_voltages(static_cast<Eigen::Index>(k)) = fixed_v[static_cast<std::size_t>(s.fixed_nodes[k])];
    }

    s.fixed_injection = s.conductance(s.free_nodes, s.fixed_nodes) * s.fixed_voltages;
    s.lu.compute(s.conductance(s.free_nodes, s.free_nodes));
    if (!s.free_nodes.empty() && !(s.lu.rcond() > 0.0)) {
        throw SingularNetwork("nodal matrix is singular");
    }
    s.netlist = std::move(netlist);
    return s;
}

StepResult step(const CircuitState& state, const NetlistSnapshot& snap, double dt) {
    if (!(dt > 0.0)) throw SolverError("step size must be positive", state.time);
    if (dt != snap.dt) throw SolverError("step size differs from the assembled snapshot", state.time);
    const Netlist& n = snap.netlist;
    if (state.cap_voltages.size() != static_cast<Eigen::Index>(n.capacitors.size()) ||
        state.branch_currents.size() != n.winding_count()) {
        throw SolverError("state dimensions do not match the snapshot", state.time);
    }

    Eigen::VectorXd inject = Eigen::VectorXd::Zero(n.node_count());
    for (std::size_t k = 0; k < n.capacitors.size(); ++k) {
        const auto& c = n.capacitors[k];
        const auto ke = static_cast<Eigen::Index>(k);
        stamp_current(inject, c.pos, c.neg, snap.capacitor_conductance(ke) * state.cap_voltages(ke));
    }
    Eigen::VectorXd history;
    if (n.windings) {
        history = snap.winding_history * state.branch_currents;
        for (std::size_t k = 0; k < n.windings->pos.size(); ++k) {
            stamp_current(inject, n.windings->neg[k], n.windings->pos[k], history(static_cast<Eigen::Index>(k)));
        }
    }
    if (n.source && n.source->resistance > 0.0) {
        stamp_current(inject, n.source->pos, n.source->neg, n.source->voltage / n.source->resistance);
    }

    Eigen::VectorXd v = Eigen::VectorXd::Zero(n.node_count());
    v(snap.fixed_nodes) = snap.fixed_voltages;
    if (!snap.free_nodes.empty()) {
        const Eigen::VectorXd rhs = inject(snap.free_nodes) - snap.fixed_injection;
        const Eigen::VectorXd solved = snap.lu.solve(rhs);
        v(snap.free_nodes) = solved;
    }
    if (!v.allFinite()) throw SolverError("non-finite node voltage", state.time + dt);

    StepResult r;
    r.node_voltages = v;
    r.state.time = state.time + dt;
    r.state.cap_voltages.resize(state.cap_voltages.size());
    r.cap_currents.resize(state.cap_voltages.size());
    for (std::size_t k = 0; k < n.capacitors.size(); ++k) {
        const auto& c = n.capacitors[k];
        const auto ke = static_cast<Eigen::Index>(k);
        const double i = snap.capacitor_conductance(ke) * (v(c.pos) - v(c.neg) - state.cap_voltages(ke));
        r.cap_currents(ke) = i;
        r.state.cap_voltages(ke) = state.cap_voltages(ke) + i * dt / c.capacitance;
    }
    if (n.windings) {
        Eigen::VectorXd drop(n.winding_count());
        for (int k = 0; k < n.winding_count(); ++k) {
            drop(k) = v(n.windings->pos[static_cast<std::size_t>(k)]) - v(n.windings->neg[static_cast<std::size_t>(k)]);
        }
        r.state.branch_currents = snap.winding_admittance * drop + history;
    } else {
        r.state.branch_currents = Eigen::VectorXd::Zero(0);
    }

    if (n.source) {
        const auto& src = *n.source;
        if (src.resistance > 0.0) {
            r.source_current = (src.voltage - (v(src.pos) - v(src.neg))) / src.resistance;
        } else {
            r.source_current = snap.conductance.row(src.pos).dot(v) - inject(src.pos);
        }
    }
    return r;
}

PowerFlow power_flow(const NetlistSnapshot& snap, const StepResult& r) {
    const Netlist& n = snap.netlist;
    const Eigen::VectorXd& v = r.node_voltages;
    PowerFlow p;
    for (const auto& e : n.conductances) {
        const double dv = v(e.a) - v(e.b);
        p.resistive += e.g * dv * dv;
    }
    for (std::size_t k = 0; k < n.capacitors.size(); ++k) {
        const double i = r.cap_currents(static_cast<Eigen::Index>(k));
        p.resistive += n.capacitors[k].esr * i * i;
    }
    if (n.windings) {
        p.resistive += (n.windings->resistance.array() * r.state.branch_currents.array().square()).sum();
    }
    if (n.source) {
        p.source = n.source->voltage * r.source_current;
        p.resistive += n.source->resistance * r.source_current * r.source_current;
    }
    return p;
}

double capacitor_energy(const Netlist& n, const CircuitState& state) {
    double e = 0.0;
    for (std::size_t k = 0; k < n.capacitors.size(); ++k) {
        const double vc = state.cap_voltages(static_cast<Eigen::Index>(k));
        e += 0.5 * n.capacitors[k].capacitance * vc * vc;
    }
    return e;
}

double inductor_energy(const Netlist& n, const CircuitState& state) {
    if (!n.windings) return 0.0;
    return 0.5 * state.branch_currents.dot(n.windings->inductance * state.branch_currents);
}

}  // namespace scmmi
