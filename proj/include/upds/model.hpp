#pragma once

// Line-oriented model files:
//
//   states p p'
//   alphabet a b x y bot
//   rule p x -> p a          # 0, 1 or 2 written symbols: pop, switch, push
//   set C1 p ^ x (y x)* bot  # one line per control state of a named set
//
// `#` starts a comment. Declarations must precede their use.

#include <string>
#include <string_view>
#include <vector>

#include "upds/config_automaton.hpp"
#include "upds/regex.hpp"
#include "upds/types.hpp"

namespace upds {

class ModelError : public MalformedInput {
public:
    ModelError(const std::string& what, std::size_t line, std::size_t column)
        : MalformedInput("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + what),
          line_(line), column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

struct SetSlice {
    StateId state = 0;
    RegexNode regex;

    friend bool operator==(const SetSlice&, const SetSlice&) = default;
};

struct SetDefinition {
    std::string name;
    std::vector<SetSlice> slices; // declaration order

    friend bool operator==(const SetDefinition&, const SetDefinition&) = default;
};

struct ModelFile {
    UpdsSpec spec;
    std::vector<SetDefinition> sets;

    const SetDefinition* find_set(std::string_view name) const;
    /// Throws MalformedInput for an unknown name.
    fsa::ConfigAutomaton set_automaton(std::string_view name) const;

    friend bool operator==(const ModelFile&, const ModelFile&) = default;
};

/// True if `name` can be written in a model file as a state or symbol.
bool is_valid_identifier(std::string_view name);

ModelFile parse_model(std::string_view text);
std::string print_model(const ModelFile& model);

/// Reads and parses a file; I/O failures become MalformedInput.
ModelFile load_model(const std::string& path);

/// Per-state automaton for the slices of a set.
fsa::ConfigAutomaton compile_set(const UpdsSpec& spec, const std::vector<SetSlice>& slices);

} // namespace upds
