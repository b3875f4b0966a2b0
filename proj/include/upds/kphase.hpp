#pragma once

// Bounded-phase backward reachability. A phase is a run that either never pops
// or never pushes; switches are allowed in both.

#include <string>
#include <vector>

#include "upds/config_automaton.hpp"
#include "upds/types.hpp"

namespace upds {

/// Two-stack image of a UPDS. Stack 1 holds the mirrored upper stack above a
/// bottom marker, stack 2 is the lower stack. Every pop or push rule of the
/// UPDS becomes two steps through an intermediate state named after the rule.
struct Mpds {
    struct Rule {
        StateId from = 0;
        SymbolId read = 0;
        unsigned stack = 1; // 1 or 2
        StateId to = 0;
        Word written;

        friend bool operator==(const Rule&, const Rule&) = default;
        friend auto operator<=>(const Rule&, const Rule&) = default;
    };

    std::vector<std::string> state_names;  // UPDS states first, then one per pop/push rule
    std::vector<std::string> symbol_names; // UPDS symbols first, then the bottom marker
    SymbolId bottom = 0;
    std::vector<Rule> rules;
    /// Intermediate state of each UPDS rule (unused for switches).
    std::vector<StateId> rule_state;
};

struct MpdsConfig {
    StateId state = 0;
    Word stack1; // top first
    Word stack2; // top first

    friend bool operator==(const MpdsConfig&, const MpdsConfig&) = default;
    friend auto operator<=>(const MpdsConfig&, const MpdsConfig&) = default;
};

Mpds upds_to_mpds(const UpdsSpec& spec);
std::vector<std::pair<std::size_t, MpdsConfig>> mpds_step(const Mpds& m, const MpdsConfig& c);
/// <p, w_u, w_l>  becomes  <p, mirror(w_u) bottom, w_l>.
MpdsConfig to_mpds(const Mpds& m, const Configuration& c);
/// Inverse of to_mpds; nullopt for intermediate states or a malformed stack 1.
std::optional<Configuration> from_mpds(const Mpds& m, const UpdsSpec& spec, const MpdsConfig& c);

enum class PhaseKind : std::uint8_t { PushPhase, PopPhase };

const char* to_string(PhaseKind kind) noexcept;

/// Predecessors of `targets` under runs made of switch rules and rules of the
/// given kind only (the empty run included).
fsa::ConfigAutomaton phase_pre(const UpdsSpec& spec, const fsa::ConfigAutomaton& targets,
                               PhaseKind kind);

/// Configurations that reach `targets` by a run of at most k phases.
fsa::ConfigAutomaton bounded_phase_pre_star(const UpdsSpec& spec,
                                            const fsa::ConfigAutomaton& targets, std::size_t k);

} // namespace upds
