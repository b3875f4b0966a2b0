#pragma once

// Token regexes over stack symbols. Operators: juxtaposition, `|`, `*`,
// parentheses, `_` for the empty word and `^` for the upper/lower boundary.

#include <string>
#include <string_view>
#include <vector>

#include "upds/config_automaton.hpp"
#include "upds/types.hpp"

namespace upds {

class RegexError : public MalformedInput {
public:
    RegexError(const std::string& what, std::size_t column)
        : MalformedInput(what + " at column " + std::to_string(column)), column_(column) {}
    /// 1-based column inside the regex text.
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t column_;
};

struct RegexNode {
    enum class Kind : std::uint8_t { Symbol, Empty, Boundary, Concat, Alt, Star };

    Kind kind = Kind::Empty;
    std::string name;       // Symbol only
    std::size_t column = 0; // ignored by ==
    std::vector<RegexNode> children;

    friend bool operator==(const RegexNode& a, const RegexNode& b)
    {
        return a.kind == b.kind && a.name == b.name && a.children == b.children;
    }
};

enum class RegexMode : std::uint8_t {
    Boundary, // exactly one top-level `^` per alternative
    Plain,    // no `^` at all
};

RegexNode parse_regex(std::string_view text, RegexMode mode = RegexMode::Boundary);
std::string print_regex(const RegexNode& node);

/// Position automaton of a boundary regex: epsilon-free, one initial node
/// (node 0), symbols left of `^` read barred. Throws MalformedInput on an
/// undeclared symbol.
fsa::ZonedNfa compile_regex(const UpdsSpec& spec, const RegexNode& node);
fsa::ZonedNfa compile_regex(const UpdsSpec& spec, std::string_view text);

/// Position automaton of a plain regex over symbol ids.
fsa::Nfa compile_plain_regex(const UpdsSpec& spec, const RegexNode& node);

} // namespace upds
