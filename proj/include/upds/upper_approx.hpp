#pragma once

// Regular over-approximation of post*: a regular superset of the traces, the
// upper stacks it can produce (by saturation), and the exact lower stacks of
// the underlying pushdown system.

#include <vector>

#include "upds/config_automaton.hpp"
#include "upds/types.hpp"

namespace upds {

/// Automaton over rule ids. Node q belongs to Q_owner[q]: every edge into q is
/// labelled by a rule ending in owner[q], every edge out of q by a rule
/// starting there. All nodes are final (the language is prefix-closed).
struct TraceAutomaton {
    fsa::Nfa nfa;
    std::vector<StateId> owner;

    bool accepts(const Trace& t) const { return fsa::accepts(nfa, t); }
};

enum class TraceAbstraction : std::uint8_t {
    /// One node per control state, one edge per rule.
    ControlGraph,
    /// Nodes pair a control state with the known top of the lower stack (or
    /// "unknown" after a pop); a rule is only taken when its read symbol can be
    /// on top.
    TopOfStack,
};

const char* to_string(TraceAbstraction a) noexcept;

/// Regular superset of the traces of spec from C.
TraceAutomaton trace_overapprox(const UpdsSpec& spec, const fsa::ConfigAutomaton& C,
                                TraceAbstraction abstraction = TraceAbstraction::ControlGraph);

/// Throws MalformedInput unless every edge respects the node owners.
void check_meaningful(const UpdsSpec& spec, const TraceAutomaton& at);

/// Automaton over stack symbols. Nodes below `trace_nodes` are those of the
/// trace automaton; the remaining nodes spell the initial upper stacks and have
/// no owner (kNoOwner). Their final nodes lead by epsilon to the initial trace
/// nodes of the matching control state.
struct UpperAutomaton {
    static constexpr StateId kNoOwner = ~StateId{0};

    fsa::Nfa nfa;
    std::vector<StateId> owner;
    std::size_t trace_nodes = 0;
};

/// Saturates the upper-stack automaton of `at` for runs from `origin`, whose
/// upper stack must be empty.
UpperAutomaton saturate_upper(const UpdsSpec& spec, const TraceAutomaton& at,
                              const Configuration& origin);

/// Same for runs whose initial upper stack at control state p is any word of
/// uppers[p] (an Nfa over symbol ids).
UpperAutomaton saturate_upper(const UpdsSpec& spec, const TraceAutomaton& at,
                              const std::vector<fsa::Nfa>& uppers);

/// True if no saturation rule would add an edge.
bool is_upper_saturated(const UpdsSpec& spec, const TraceAutomaton& at, const UpperAutomaton& au);

/// L_p for every control state p: words from an initial node to a node of Q_p.
std::vector<fsa::Nfa> upper_config_set(const UpperAutomaton& au, std::size_t num_states);

enum class UpperSeed : std::uint8_t {
    /// Run the saturation on the single-origin system from its origin.
    SingleOrigin,
    /// Start the saturation from the upper stacks of C directly.
    Direct,
};

const char* to_string(UpperSeed seed) noexcept;

struct OverapproxOptions {
    TraceAbstraction abstraction = TraceAbstraction::ControlGraph;
    UpperSeed seed = UpperSeed::SingleOrigin;
};

/// Superset of post*(spec, C): per control state, the upper stacks of the
/// saturated trace abstraction times the lower stacks of the pushdown post*;
/// C itself is added.
fsa::ConfigAutomaton overapprox_post(const UpdsSpec& spec, const fsa::ConfigAutomaton& C,
                                     OverapproxOptions opts = {});

} // namespace upds
