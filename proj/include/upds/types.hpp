#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace upds {

using StateId = std::uint32_t;
using SymbolId = std::uint32_t;
using RuleId = std::uint32_t;
using Word = std::vector<SymbolId>;

/// Raised when a configuration, rule or identifier does not belong to the system.
class MalformedInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by bounded explorers when their node budget is exhausted.
class ResourceLimit : public std::runtime_error {
public:
    ResourceLimit(const std::string& what, std::size_t explored)
        : std::runtime_error(what), explored_(explored) {}
    std::size_t explored() const noexcept { return explored_; }

private:
    std::size_t explored_;
};

enum class RuleKind : std::uint8_t { Pop, Switch, Push };

const char* to_string(RuleKind kind) noexcept;

/// (from, read) -> (to, written); |written| selects pop (0), switch (1) or push (2).
struct Rule {
    StateId from = 0;
    SymbolId read = 0;
    StateId to = 0;
    Word written;

    RuleKind kind() const noexcept
    {
        switch (written.size()) {
        case 0: return RuleKind::Pop;
        case 1: return RuleKind::Switch;
        default: return RuleKind::Push;
        }
    }

    friend bool operator==(const Rule&, const Rule&) = default;
    friend auto operator<=>(const Rule&, const Rule&) = default;
};

/// A pushdown system with an upper stack: control states, stack alphabet and rules.
/// Identifiers are interned; ids are dense and assigned in declaration order.
class UpdsSpec {
public:
    StateId add_state(std::string name);
    SymbolId add_symbol(std::string name);
    /// Validates references and arity; duplicate rules are rejected.
    RuleId add_rule(Rule rule);

    std::size_t num_states() const noexcept { return state_names_.size(); }
    std::size_t num_symbols() const noexcept { return symbol_names_.size(); }
    std::size_t num_rules() const noexcept { return rules_.size(); }

    const std::vector<Rule>& rules() const noexcept { return rules_; }
    const Rule& rule(RuleId id) const { return rules_.at(id); }
    const std::string& state_name(StateId id) const { return state_names_.at(id); }
    const std::string& symbol_name(SymbolId id) const { return symbol_names_.at(id); }
    const std::vector<std::string>& state_names() const noexcept { return state_names_; }
    const std::vector<std::string>& symbol_names() const noexcept { return symbol_names_; }

    std::optional<StateId> find_state(std::string_view name) const;
    std::optional<SymbolId> find_symbol(std::string_view name) const;
    StateId state(std::string_view name) const;
    SymbolId symbol(std::string_view name) const;

    /// Index of an existing rule, if any.
    std::optional<RuleId> find_rule(const Rule& rule) const;
    std::vector<RuleId> rules_of_kind(RuleKind kind) const;

    Word word(std::initializer_list<std::string_view> names) const;
    std::string describe_rule(RuleId id) const;
    std::string describe_word(const Word& w) const;

    friend bool operator==(const UpdsSpec& a, const UpdsSpec& b)
    {
        return a.state_names_ == b.state_names_ && a.symbol_names_ == b.symbol_names_ &&
               a.rules_ == b.rules_;
    }

private:
    std::vector<std::string> state_names_;
    std::vector<std::string> symbol_names_;
    std::unordered_map<std::string, StateId> state_index_;
    std::unordered_map<std::string, SymbolId> symbol_index_;
    std::vector<Rule> rules_;
};

/// <state, upper, lower>. Upper is read left to right towards the stack pointer;
/// lower starts with the top of stack.
struct Configuration {
    StateId state = 0;
    Word upper;
    Word lower;

    std::size_t size() const noexcept { return upper.size() + lower.size(); }

    friend bool operator==(const Configuration&, const Configuration&) = default;
    friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

struct ConfigurationHash {
    std::size_t operator()(const Configuration& c) const noexcept;
};

using Trace = std::vector<RuleId>;

/// "p: a b ^ c d" (empty parts are left blank).
std::string to_string(const UpdsSpec& spec, const Configuration& c);

/// Inverse of to_string; throws MalformedInput.
Configuration parse_configuration(const UpdsSpec& spec, std::string_view text);

/// Throws MalformedInput if c mentions an undeclared state or symbol.
void validate(const UpdsSpec& spec, const Configuration& c);

} // namespace upds
