#pragma once

// Regular sets of configurations. Each control state owns an automaton over the
// two-track word bar(upper) . lower. Nodes carry a zone: barred letters are read
// only inside the upper zone and plain letters only lead into the lower zone, so
// every accepted word has the shape bar(Gamma)* Gamma*.

#include <vector>

#include "upds/nfa.hpp"
#include "upds/oracle.hpp"
#include "upds/types.hpp"

namespace upds::fsa {

enum class Zone : std::uint8_t { Upper, Lower };

constexpr Label plain(SymbolId s) noexcept { return 2 * s; }
constexpr Label barred(SymbolId s) noexcept { return 2 * s + 1; }
constexpr bool is_barred(Label l) noexcept { return (l & 1u) != 0; }
constexpr SymbolId symbol_of(Label l) noexcept { return l >> 1; }

/// Nfa whose nodes are assigned to the upper or lower zone.
struct ZonedNfa {
    Nfa nfa;
    std::vector<Zone> zone;

    NodeId add_node(Zone z, bool initial = false, bool final = false)
    {
        zone.push_back(z);
        return nfa.add_node(initial, final);
    }
    /// Throws std::logic_error if the edge would break the zone discipline.
    void add_edge(NodeId from, Label label, NodeId to);

    /// Structural zone check: no barred edge leaves or enters the lower zone and
    /// no edge goes from the lower zone back to the upper zone.
    bool zones_consistent() const;

    friend bool operator==(const ZonedNfa&, const ZonedNfa&) = default;
};

std::vector<Label> encode(const Configuration& c);
/// Splits a two-track word at the boundary; throws MalformedInput if a barred
/// letter follows a plain one.
Configuration decode(StateId state, std::span<const Label> word);

class ConfigAutomaton {
public:
    ConfigAutomaton() = default;
    ConfigAutomaton(std::size_t num_states, std::size_t num_symbols);

    std::size_t num_states() const noexcept { return components_.size(); }
    std::size_t num_symbols() const noexcept { return num_symbols_; }

    ZonedNfa& component(StateId p) { return components_.at(p); }
    const ZonedNfa& component(StateId p) const { return components_.at(p); }

    /// Unknown control states are treated as empty components.
    bool accepts(const Configuration& c) const;
    bool zones_consistent() const;
    std::size_t total_nodes() const noexcept;

private:
    std::size_t num_symbols_ = 0;
    std::vector<ZonedNfa> components_;
};

ConfigAutomaton empty_automaton(const UpdsSpec& spec);
ConfigAutomaton from_config_set(const UpdsSpec& spec, const ConfigSet& configs);

ConfigAutomaton intersect(const ConfigAutomaton& a, const ConfigAutomaton& b);
ConfigAutomaton unite(const ConfigAutomaton& a, const ConfigAutomaton& b);
bool is_empty(const ConfigAutomaton& a);
/// A member with the shortest two-track word, trying control states in order.
std::optional<Configuration> find_member(const ConfigAutomaton& a);

/// Per control state: the lower (resp. upper) projection as an Nfa over plain
/// symbol ids. The erased track becomes epsilon.
std::vector<Nfa> project_lower(const ConfigAutomaton& a);
std::vector<Nfa> project_upper(const ConfigAutomaton& a);

/// Language-preserving cleanup: epsilon removal, trimming, bisimulation quotient.
ZonedNfa reduce(const ZonedNfa& z);
ConfigAutomaton reduce(const ConfigAutomaton& a);

/// Epsilon-free copy; zones are preserved.
ZonedNfa remove_epsilons(const ZonedNfa& z);

/// Every member with |upper| + |lower| <= max_size.
ConfigSet members_upto(const ConfigAutomaton& a, std::size_t max_size);

/// All configurations of the system with |upper| + |lower| <= max_size.
ConfigSet all_configurations(const UpdsSpec& spec, std::size_t max_size);

} // namespace upds::fsa
