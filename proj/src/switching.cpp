#include "scmmi/switching.hpp"

#include "scmmi/errors.hpp"
#include "scmmi/topology.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>

namespace scmmi {

std::string to_string(const SwitchVector& v) {
    std::string out = "(";
    for (int s = 1; s <= v.size(); ++s) {
        if (s > 1) out += ",";
        out += v.on(s) ? "ON" : "OFF";
    }
    return out + ")";
}

int SubModuleLayout::top_of(int j) const { return j == 1 ? P : 4 + 2 * (j - 2); }
int SubModuleLayout::bottom_of(int j) const { return j == 1 ? N : 5 + 2 * (j - 2); }

SubModuleLayout make_layout(int levels) {
    require_valid_levels(levels);
    SubModuleLayout l;
    l.levels = levels;
    l.n_capacitors = capacitors_per_module(levels);
    l.node_names = {"P", "N", "A", "B"};
    for (int j = 2; j <= l.n_capacitors; ++j) {
        l.node_names.push_back("T" + std::to_string(j));
        l.node_names.push_back("R" + std::to_string(j));
    }

    const int q = l.rail();
    using D = DiodeRequirement;
    l.switches = {
        {1, q, SubModuleLayout::A, D::Optional},
        {2, SubModuleLayout::A, SubModuleLayout::N, D::Required},
        {3, q, SubModuleLayout::B, D::Optional},
        {4, SubModuleLayout::B, SubModuleLayout::N, D::Required},
    };
    for (int j = 2; j <= l.n_capacitors; ++j) {
        l.switches.push_back({l.series_switch(j), l.bottom_of(j), l.top_of(j - 1), D::Optional});
        l.switches.push_back({l.parallel_top_switch(j), l.top_of(j), l.top_of(j - 1), D::Optional});
        l.switches.push_back({l.parallel_bottom_switch(j), l.bottom_of(j), l.bottom_of(j - 1), D::Forbidden});
    }
    for (int j = 1; j <= l.n_capacitors; ++j) l.capacitors.push_back({j, l.top_of(j), l.bottom_of(j)});
    return l;
}

namespace {

void set_ladder(SwitchVector& v, const SubModuleLayout& l, int magnitude) {
    for (int j = 2; j <= l.n_capacitors; ++j) {
        const bool series = j <= magnitude;
        v.set(l.series_switch(j), series);
        v.set(l.parallel_top_switch(j), !series);
        v.set(l.parallel_bottom_switch(j), !series);
    }
}

void require_length(const SwitchVector& v, int levels) {
    const int expected = component_counts(levels).n_switches;
    if (v.size() != expected) {
        throw InvalidState("switch vector has " + std::to_string(v.size()) + " entries, expected " +
                           std::to_string(expected));
    }
}

}  // namespace

SwitchVector level_to_switch_vector(const LevelCommand& cmd, int levels, bool balance_in_zero) {
    const SubModuleLayout l = make_layout(levels);
    if (std::abs(cmd.level) > l.n_capacitors) {
        throw InvalidLevel("level " + std::to_string(cmd.level) + " outside [-" +
                           std::to_string(l.n_capacitors) + ", " + std::to_string(l.n_capacitors) + "]");
    }
    SwitchVector v(component_counts(levels).n_switches);
    if (cmd.level == 0) {
        const bool upper = cmd.hint == Polarity::Negative;
        v.set(1, upper);
        v.set(2, !upper);
        v.set(3, upper);
        v.set(4, !upper);
        if (balance_in_zero) set_ladder(v, l, 1);
        return v;
    }
    const bool positive = cmd.level > 0;
    v.set(1, !positive);
    v.set(2, positive);
    v.set(3, positive);
    v.set(4, !positive);
    set_ladder(v, l, std::abs(cmd.level));
    return v;
}

std::optional<std::string> invariant_violation(const SwitchVector& v, int levels, bool balance_in_zero) {
    const SubModuleLayout l = make_layout(levels);
    if (v.size() != component_counts(levels).n_switches) return "wrong switch count";
    if (v.on(1) == v.on(2)) return "S1 and S2 are not complementary";
    if (v.on(3) == v.on(4)) return "S3 and S4 are not complementary";

    int series_run = 0;
    bool run_broken = false;
    int parallel_count = 0;
    int disconnected = 0;
    for (int j = 2; j <= l.n_capacitors; ++j) {
        const bool ser = v.on(l.series_switch(j));
        const bool pt = v.on(l.parallel_top_switch(j));
        const bool pb = v.on(l.parallel_bottom_switch(j));
        const std::string cap = "C" + std::to_string(j);
        if (pt != pb) return "parallel pair of " + cap + " is split";
        if (ser && pt) return cap + " is both series-inserted and paralleled";
        if (ser) {
            if (run_broken) return "series capacitors do not form a ladder prefix (" + cap + ")";
            ++series_run;
        } else {
            run_broken = true;
            if (pt) ++parallel_count;
            else ++disconnected;
        }
    }

    const int inner = l.n_capacitors - 1;
    const bool bypass = v.on(1) == v.on(3);
    if (bypass) {
        if (series_run > 0) return "series insertion during the zero level";
        if (balance_in_zero) {
            if (parallel_count != inner) return "zero level with partial paralleling";
        } else if (disconnected != inner) {
            return "parallel pair closed during the zero level";
        }
    } else if (disconnected > 0) {
        return "inner capacitor left floating while the bridge is active";
    }
    return std::nullopt;
}

std::optional<ShortReport> validate_no_short(const SwitchVector& v, int levels) {
    const SubModuleLayout l = make_layout(levels);
    if (v.size() != static_cast<int>(l.switches.size())) {
        return ShortReport{"switch vector length " + std::to_string(v.size()) + " does not match " +
                               std::to_string(l.switches.size()) + " switches",
                           {}};
    }

    // BFS over closed switches, keeping the switch that reached each node.
    auto path_between = [&](int from, int to) -> std::optional<std::vector<int>> {
        std::vector<int> via(static_cast<std::size_t>(l.node_count()), 0);
        std::vector<int> prev(static_cast<std::size_t>(l.node_count()), -1);
        std::vector<bool> seen(static_cast<std::size_t>(l.node_count()), false);
        std::queue<int> q;
        q.push(from);
        seen[static_cast<std::size_t>(from)] = true;
        while (!q.empty()) {
            const int at = q.front();
            q.pop();
            if (at == to) break;
            for (const SwitchInfo& s : l.switches) {
                if (!v.on(s.number)) continue;
                int next = -1;
                if (s.node_a == at) next = s.node_b;
                else if (s.node_b == at) next = s.node_a;
                if (next < 0 || seen[static_cast<std::size_t>(next)]) continue;
                seen[static_cast<std::size_t>(next)] = true;
                prev[static_cast<std::size_t>(next)] = at;
                via[static_cast<std::size_t>(next)] = s.number;
                q.push(next);
            }
        }
        if (!seen[static_cast<std::size_t>(to)]) return std::nullopt;
        std::vector<int> sw;
        for (int at = to; at != from; at = prev[static_cast<std::size_t>(at)]) {
            sw.push_back(via[static_cast<std::size_t>(at)]);
        }
        std::reverse(sw.begin(), sw.end());
        return sw;
    };

    auto describe = [](const std::vector<int>& sw) {
        std::string s;
        for (int n : sw) s += (s.empty() ? "S" : "-S") + std::to_string(n);
        return s;
    };

    for (const CapacitorInfo& c : l.capacitors) {
        if (auto p = path_between(c.top, c.bottom)) {
            return ShortReport{"capacitor C" + std::to_string(c.index) + " shorted via " + describe(*p), *p};
        }
    }
    if (auto p = path_between(l.rail(), SubModuleLayout::N)) {
        return ShortReport{"bridge rail shoot-through via " + describe(*p), *p};
    }
    return std::nullopt;
}

ConnectionState switch_vector_to_connection(const SwitchVector& v, int levels, bool balance_in_zero) {
    require_length(v, levels);
    if (auto bad = invariant_violation(v, levels, balance_in_zero)) throw InvalidState(*bad);
    if (auto s = validate_no_short(v, levels)) throw InvalidState(s->description);

    const SubModuleLayout l = make_layout(levels);
    ConnectionState c;
    c.links.push_back(CapacitorLink::OnBus);
    int series = 0;
    for (int j = 2; j <= l.n_capacitors; ++j) {
        if (v.on(l.series_switch(j))) {
            c.links.push_back(CapacitorLink::Series);
            ++series;
        } else if (v.on(l.parallel_top_switch(j))) {
            c.links.push_back(CapacitorLink::Parallel);
        } else {
            c.links.push_back(CapacitorLink::Disconnected);
        }
    }
    if (v.on(2) && v.on(3)) {
        c.polarity = OutputPolarity::Positive;
        c.level = 1 + series;
    } else if (v.on(1) && v.on(4)) {
        c.polarity = OutputPolarity::Negative;
        c.level = -(1 + series);
    } else {
        c.polarity = OutputPolarity::Bypass;
        c.level = 0;
    }
    return c;
}

std::vector<LegalState> enumerate_legal_states(int levels) {
    const int top = capacitors_per_module(levels);
    std::vector<LevelCommand> cmds = {{0, Polarity::Negative}, {0, Polarity::Positive}};
    for (int k = 1; k <= top; ++k) cmds.push_back({k, Polarity::Positive});
    for (int k = 1; k <= top; ++k) cmds.push_back({-k, Polarity::Negative});

    std::vector<LegalState> out;
    out.reserve(cmds.size());
    for (const LevelCommand& c : cmds) out.push_back({c, level_to_switch_vector(c, levels)});
    return out;
}

}  // namespace scmmi
