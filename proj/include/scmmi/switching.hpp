#pragma once

// Gate-state synthesis for the N_L-level switched-capacitor sub-module.
//
// Sub-module wiring (local node names in brackets):
//
//   C1 sits between the bus terminals [P] and [N] and is part of the dc chain.
//   Every further capacitor C_j (j >= 2) sits between [Tj] and [Rj] and owns
//   three switches: a series switch Rj--T(j-1) that stacks it on top of
//   C(j-1), and a parallel pair Tj--T(j-1), Rj--R(j-1) that clamps it across
//   C(j-1). T1 = P and R1 = N. The bridge rail [Q] is the top of the last
//   capacitor; the bridge bottom rail is N.
//
//   S1: Q--A  S2: A--N  (sign leg, output return terminal A)
//   S3: Q--B  S4: B--N  (PWM leg, output terminal B)
//
// Phase voltage is v(B) - v(A). For N_L = 5 the numbering reproduces the
// classic five-level operating table exactly.
//
// The wiring of the capacitors beyond C2 is a reconstruction: for output
// magnitude m, capacitors 2..m are in series and every capacitor j > m is
// clamped across C(j-1), so every inner capacitor tracks the bus capacitor.

#include <optional>
#include <string>
#include <vector>

namespace scmmi {

enum class Polarity { Positive, Negative };

/// Commanded output level k in [-N_C, N_C]. `hint` only matters for k == 0
/// and selects the redundant zero path: S1 closed for Negative.
struct LevelCommand {
    int level = 0;
    Polarity hint = Polarity::Positive;
};

struct SwitchVector {
    std::vector<bool> states;  // states[0] is S1

    SwitchVector() = default;
    explicit SwitchVector(int n_switches) : states(static_cast<std::size_t>(n_switches), false) {}

    int size() const { return static_cast<int>(states.size()); }
    /// 1-based, matching S1..S_NS.
    bool on(int number) const { return states.at(static_cast<std::size_t>(number - 1)); }
    void set(int number, bool value) { states.at(static_cast<std::size_t>(number - 1)) = value; }

    friend bool operator==(const SwitchVector&, const SwitchVector&) = default;
};

std::string to_string(const SwitchVector& v);

enum class CapacitorLink { OnBus, Series, Parallel, Disconnected };
enum class OutputPolarity { Positive, Negative, Bypass };

struct ConnectionState {
    std::vector<CapacitorLink> links;  // links[0] is C1 (always OnBus)
    OutputPolarity polarity = OutputPolarity::Bypass;
    int level = 0;
};

enum class DiodeRequirement { Required, Forbidden, Optional };

struct SwitchInfo {
    int number;  // 1-based
    int node_a;  // local node indices
    int node_b;
    DiodeRequirement diode;
};

struct CapacitorInfo {
    int index;   // 1-based j
    int top;     // local node indices
    int bottom;
};

/// Local node graph of one sub-module; shared by the short checker and the
/// solver's network builder so both see identical wiring.
struct SubModuleLayout {
    int levels = 0;
    int n_capacitors = 0;
    std::vector<std::string> node_names;
    std::vector<SwitchInfo> switches;
    std::vector<CapacitorInfo> capacitors;

    static constexpr int P = 0;
    static constexpr int N = 1;
    static constexpr int A = 2;
    static constexpr int B = 3;

    int node_count() const { return static_cast<int>(node_names.size()); }
    int top_of(int j) const;     // T_j, with T_1 = P
    int bottom_of(int j) const;  // R_j, with R_1 = N
    int rail() const { return top_of(n_capacitors); }

    int series_switch(int j) const { return 5 + 3 * (j - 2); }
    int parallel_top_switch(int j) const { return 6 + 3 * (j - 2); }
    int parallel_bottom_switch(int j) const { return 7 + 3 * (j - 2); }
};

SubModuleLayout make_layout(int levels);

struct ShortReport {
    std::string description;
    std::vector<int> loop_switches;  // switch numbers along the offending path
};

/// Gate pattern for a commanded level. Throws InvalidLevel when out of range.
SwitchVector level_to_switch_vector(const LevelCommand& cmd, int levels, bool balance_in_zero = false);

/// Checks the SwitchVector invariants (complementary legs, equal parallel
/// pairs, series/parallel exclusion, ladder ordering). Returns a description
/// of the first violation, or nullopt.
std::optional<std::string> invariant_violation(const SwitchVector& v, int levels,
                                               bool balance_in_zero = false);

/// Closed-switch connectivity check. Reports a path of closed switches
/// between the terminals of any capacitor or between the bridge rails.
/// Never throws for a vector of the right length.
std::optional<ShortReport> validate_no_short(const SwitchVector& v, int levels);

/// Decodes a gate pattern. Throws InvalidState for shorts or invariant violations.
ConnectionState switch_vector_to_connection(const SwitchVector& v, int levels,
                                            bool balance_in_zero = false);

struct LegalState {
    LevelCommand command;
    SwitchVector switches;
};

/// Two zero states (S1 closed first), then +1..+N_C, then -1..-N_C.
std::vector<LegalState> enumerate_legal_states(int levels);

}  // namespace scmmi
