#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <vector>

namespace upds::fsa {

using NodeId = std::uint32_t;
using Label = std::uint32_t;

inline constexpr Label kEpsilon = ~Label{0};

struct Transition {
    Label label;
    NodeId to;

    friend bool operator==(const Transition&, const Transition&) = default;
    friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Nondeterministic automaton with epsilon edges over integer labels.
class Nfa {
public:
    Nfa() = default;
    explicit Nfa(std::size_t nodes);

    NodeId add_node(bool initial = false, bool final = false);
    /// Returns false if the edge already exists.
    bool add_edge(NodeId from, Label label, NodeId to);
    bool has_edge(NodeId from, Label label, NodeId to) const;

    void set_initial(NodeId n, bool value = true) { initial_.at(n) = value; }
    void set_final(NodeId n, bool value = true) { final_.at(n) = value; }
    bool is_initial(NodeId n) const { return initial_.at(n) != 0; }
    bool is_final(NodeId n) const { return final_.at(n) != 0; }

    std::size_t size() const noexcept { return out_.size(); }
    std::size_t num_edges() const noexcept;
    const std::vector<Transition>& out(NodeId n) const { return out_.at(n); }
    std::vector<NodeId> initials() const;
    std::vector<NodeId> finals() const;

    /// Sorts adjacency lists; makes structural comparison and output deterministic.
    void canonicalize();

    friend bool operator==(const Nfa&, const Nfa&) = default;

private:
    std::vector<std::vector<Transition>> out_;
    std::vector<std::uint8_t> initial_;
    std::vector<std::uint8_t> final_;
};

using NodeSet = std::vector<NodeId>; // sorted, unique

NodeSet epsilon_closure(const Nfa& nfa, std::span<const NodeId> from);
NodeSet step_closed(const Nfa& nfa, const NodeSet& closed, Label label);

bool accepts(const Nfa& nfa, std::span<const Label> word);
/// Runs from `start` alone, ignoring the initial flags.
bool accepts_from(const Nfa& nfa, NodeId start, std::span<const Label> word);
bool is_empty(const Nfa& nfa);
/// A shortest accepted word (epsilon edges cost nothing).
std::optional<std::vector<Label>> shortest_word(const Nfa& nfa);

/// Same nodes, no epsilon edges, same language.
Nfa remove_epsilons(const Nfa& nfa);

/// Keeps nodes that are reachable from an initial node and co-reachable to a
/// final one. `kept` receives old ids of the surviving nodes in new-id order.
Nfa trim(const Nfa& nfa, std::vector<NodeId>* kept = nullptr);

Nfa reverse(const Nfa& nfa);

/// Nodes of b are shifted by a.size().
Nfa disjoint_union(const Nfa& a, const Nfa& b);

/// Synchronous product; epsilon edges move one side at a time. `pairs` receives
/// the (a, b) node behind each product node.
Nfa product(const Nfa& a, const Nfa& b, std::vector<std::pair<NodeId, NodeId>>* pairs = nullptr);

/// Maps every label through f; f may return kEpsilon to erase a label.
Nfa relabel(const Nfa& nfa, const std::function<Label(Label)>& f);

/// Merges forward-bisimilar nodes. Nodes with different `color` are never merged.
/// `block_of` receives the new id of every old node.
Nfa quotient_bisimulation(const Nfa& nfa, std::span<const std::uint32_t> color,
                          std::vector<NodeId>* block_of = nullptr);

/// Every accepted word of length <= max_len.
std::set<std::vector<Label>> words_upto(const Nfa& nfa, std::size_t max_len);

/// Labels readable from `from` after epsilon closure.
std::set<Label> labels_from(const Nfa& nfa, const NodeSet& closed);

} // namespace upds::fsa
