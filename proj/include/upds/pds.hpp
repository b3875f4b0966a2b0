#pragma once

// Pre* and post* saturation for the plain pushdown system behind a UPDS
// (upper stack ignored).

#include <span>
#include <vector>

#include "upds/nfa.hpp"
#include "upds/oracle.hpp"
#include "upds/types.hpp"

namespace upds::pds {

/// P-automaton: nodes 0 .. num_states-1 stand for the control states. A stack
/// word w is accepted at p when some path from node p reading w ends in a final
/// node. Initial flags are not used.
struct LowerAutomaton {
    std::size_t num_states = 0;
    fsa::Nfa nfa;

    bool accepts(const LowerConfig& c) const;
    /// Nfa accepting the stack words at p (node p marked initial).
    fsa::Nfa slice(StateId p) const;
};

/// One Nfa per control state; copies are attached behind fresh control nodes.
LowerAutomaton from_slices(std::span<const fsa::Nfa> slices);
LowerAutomaton from_configs(const UpdsSpec& spec, const LowerConfigSet& configs);

LowerAutomaton pds_post_star(const UpdsSpec& spec, const LowerAutomaton& init);
LowerAutomaton pds_pre_star(const UpdsSpec& spec, const LowerAutomaton& targets);

/// True if no saturation rule would add an edge to `a` (post* direction).
bool is_post_saturated(const UpdsSpec& spec, const LowerAutomaton& a);
bool is_pre_saturated(const UpdsSpec& spec, const LowerAutomaton& a);

} // namespace upds::pds
