#pragma once

// Exact forward reachability. A regular initial set is first collapsed into a
// single origin configuration by an extended system that builds every member
// of the set on its stack; post* from that origin is then generated by a
// noncontracting grammar whose sentential forms spell configurations.

#include <string>
#include <string_view>
#include <vector>

#include "upds/config_automaton.hpp"
#include "upds/types.hpp"

namespace upds {

struct SingleOriginUpds {
    /// Original states and symbols keep their ids; extra ones follow.
    UpdsSpec spec;
    std::size_t original_states = 0;
    std::size_t original_symbols = 0;
    std::size_t original_rules = 0;
    StateId origin_state = 0;
    SymbolId dollar = 0;
    /// The initial set the system was built from.
    fsa::ConfigAutomaton initial;

    Configuration origin() const { return {origin_state, {}, {dollar}}; }
    SymbolId barred(SymbolId s) const { return static_cast<SymbolId>(original_symbols + s); }
    bool is_original(const Configuration& c) const;
};

/// Builds the extended system. Members of C with an empty lower stack cannot be
/// built on the stack; they have no successors and are covered by `initial`.
SingleOriginUpds single_origin(const UpdsSpec& spec, const fsa::ConfigAutomaton& C);

using GSymbol = char16_t;
using Form = std::u16string;

struct Production {
    enum class Group : std::uint8_t { Start, Simulation, Final };

    Form lhs;
    Form rhs;
    Group group = Group::Simulation;
    /// Simulated rule of the extended system (Simulation group only).
    RuleId rule = 0;
    /// "r0", "r1", "r2", "r3", "rf", "final", "start".
    std::string step;
};

struct CsGrammar {
    enum class Role : std::uint8_t { Start, Top, End, State, StateBar, Stack, StackBar, Tag, Tag0, Tag1 };

    struct Symbol {
        std::string name;
        Role role = Role::Start;
        /// Rule of the extended system behind a tag.
        RuleId rule = 0;

        bool terminal() const noexcept
        {
            return role == Role::Top || role == Role::End || role == Role::State ||
                   role == Role::Stack;
        }
    };

    std::vector<Symbol> symbols;
    std::vector<Production> productions;
    GSymbol start = 0;
    GSymbol top = 0;
    GSymbol end = 0;
    std::vector<GSymbol> state_terminal, state_bar;   // by state id of the system
    std::vector<GSymbol> symbol_terminal, symbol_bar; // by symbol id of the system

    /// Terminal word TOP w_u p w_l END of a configuration of the system.
    Form encode(const Configuration& c) const;
    /// The sentential form TOP bar(w_u) bar(p) bar(w_l) END standing for c.
    Form encode_barred(const Configuration& c) const;
    /// Maps terminal names to a word; nullopt if some name is not a terminal.
    std::optional<Form> terminal_word(const std::vector<std::string>& names) const;
    std::string describe(const Form& f) const;
    /// Inverse of encode_barred for forms of that exact shape.
    std::optional<Configuration> decode_barred(const Form& f) const;
    /// Inverse of encode.
    std::optional<Configuration> decode(const Form& f) const;
};

CsGrammar build_post_grammar(const SingleOriginUpds& so);

bool is_noncontracting(const CsGrammar& g);

struct MembershipOptions {
    std::size_t budget = 10'000'000;
    /// Replace the letter-by-letter finalization rules by a direct comparison:
    /// a form TOP bar(u) bar(p) bar(l) END finalizes to exactly TOP u p l END.
    bool collapse_final = false;
    /// Check every visited form against the expected shapes.
    bool check_shapes = false;
};

struct MembershipResult {
    bool member = false;
    std::size_t explored = 0;
    /// Forms that matched none of the expected shapes (check_shapes only).
    std::size_t shape_violations = 0;
};

/// Breadth-first search over sentential forms no longer than w. Throws
/// ResourceLimit once more than `budget` forms have been visited.
MembershipResult grammar_membership(const CsGrammar& g, const Form& w, MembershipOptions opts = {});

/// All terminal words of length <= max_len derivable by the grammar.
std::vector<Form> grammar_language_upto(const CsGrammar& g, std::size_t max_len,
                                        MembershipOptions opts = {});

/// Whether the form is one of the shapes a derivation can produce.
bool form_shape_ok(const CsGrammar& g, const Form& f);

bool is_reachable(const UpdsSpec& spec, const fsa::ConfigAutomaton& C, const Configuration& c,
                  MembershipOptions opts = {}, MembershipResult* result = nullptr);

} // namespace upds
