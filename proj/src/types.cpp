#include "upds/types.hpp"

#include <algorithm>
#include <sstream>

namespace upds {

const char* to_string(RuleKind kind) noexcept
{
    switch (kind) {
    case RuleKind::Pop: return "pop";
    case RuleKind::Switch: return "switch";
    case RuleKind::Push: return "push";
    }
    return "?";
}

StateId UpdsSpec::add_state(std::string name)
{
    if (name.empty())
        throw MalformedInput("empty state identifier");
    if (state_index_.contains(name))
        throw MalformedInput("duplicate state '" + name + "'");
    auto id = static_cast<StateId>(state_names_.size());
    state_index_.emplace(name, id);
    state_names_.push_back(std::move(name));
    return id;
}

SymbolId UpdsSpec::add_symbol(std::string name)
{
    if (name.empty())
        throw MalformedInput("empty symbol identifier");
    if (symbol_index_.contains(name))
        throw MalformedInput("duplicate symbol '" + name + "'");
    auto id = static_cast<SymbolId>(symbol_names_.size());
    symbol_index_.emplace(name, id);
    symbol_names_.push_back(std::move(name));
    return id;
}

RuleId UpdsSpec::add_rule(Rule rule)
{
    if (rule.from >= num_states() || rule.to >= num_states())
        throw MalformedInput("rule references an undeclared state");
    if (rule.read >= num_symbols())
        throw MalformedInput("rule reads an undeclared symbol");
    if (rule.written.size() > 2)
        throw MalformedInput("rule writes more than two symbols");
    for (auto s : rule.written)
        if (s >= num_symbols())
            throw MalformedInput("rule writes an undeclared symbol");
    if (find_rule(rule))
        throw MalformedInput("duplicate rule");
    rules_.push_back(std::move(rule));
    return static_cast<RuleId>(rules_.size() - 1);
}

std::optional<StateId> UpdsSpec::find_state(std::string_view name) const
{
    auto it = state_index_.find(std::string(name));
    if (it == state_index_.end())
        return std::nullopt;
    return it->second;
}

std::optional<SymbolId> UpdsSpec::find_symbol(std::string_view name) const
{
    auto it = symbol_index_.find(std::string(name));
    if (it == symbol_index_.end())
        return std::nullopt;
    return it->second;
}

StateId UpdsSpec::state(std::string_view name) const
{
    if (auto id = find_state(name))
        return *id;
    throw MalformedInput("undeclared state '" + std::string(name) + "'");
}

SymbolId UpdsSpec::symbol(std::string_view name) const
{
    if (auto id = find_symbol(name))
        return *id;
    throw MalformedInput("undeclared symbol '" + std::string(name) + "'");
}

std::optional<RuleId> UpdsSpec::find_rule(const Rule& rule) const
{
    auto it = std::find(rules_.begin(), rules_.end(), rule);
    if (it == rules_.end())
        return std::nullopt;
    return static_cast<RuleId>(it - rules_.begin());
}

std::vector<RuleId> UpdsSpec::rules_of_kind(RuleKind kind) const
{
    std::vector<RuleId> out;
    for (RuleId i = 0; i < rules_.size(); ++i)
        if (rules_[i].kind() == kind)
            out.push_back(i);
    return out;
}

Word UpdsSpec::word(std::initializer_list<std::string_view> names) const
{
    Word w;
    w.reserve(names.size());
    for (auto n : names)
        w.push_back(symbol(n));
    return w;
}

std::string UpdsSpec::describe_word(const Word& w) const
{
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i)
            out += ' ';
        out += symbol_name(w[i]);
    }
    return out;
}

std::string UpdsSpec::describe_rule(RuleId id) const
{
    const auto& r = rule(id);
    std::string out = "(" + state_name(r.from) + ", " + symbol_name(r.read) + ") -> (" +
                      state_name(r.to) + ", ";
    out += r.written.empty() ? std::string("_") : describe_word(r.written);
    out += ")";
    return out;
}

std::size_t ConfigurationHash::operator()(const Configuration& c) const noexcept
{
    std::size_t h = std::hash<StateId>{}(c.state);
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    for (auto s : c.upper)
        mix(s);
    mix(0xffffffffu);
    for (auto s : c.lower)
        mix(s);
    return h;
}

std::string to_string(const UpdsSpec& spec, const Configuration& c)
{
    std::string out = spec.state_name(c.state) + ":";
    for (auto s : c.upper)
        out += " " + spec.symbol_name(s);
    out += " ^";
    for (auto s : c.lower)
        out += " " + spec.symbol_name(s);
    return out;
}

Configuration parse_configuration(const UpdsSpec& spec, std::string_view text)
{
    auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw MalformedInput("configuration must look like '<state>: <upper> ^ <lower>'");
    std::string state_name(text.substr(0, colon));
    auto trim = [](std::string& s) {
        auto b = s.find_first_not_of(" \t");
        auto e = s.find_last_not_of(" \t");
        s = b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    trim(state_name);

    Configuration c;
    c.state = spec.state(state_name);
    std::istringstream rest{std::string(text.substr(colon + 1))};
    std::string tok;
    bool seen_boundary = false;
    while (rest >> tok) {
        if (tok == "^") {
            if (seen_boundary)
                throw MalformedInput("configuration has more than one '^'");
            seen_boundary = true;
            continue;
        }
        if (tok == "_")
            continue;
        (seen_boundary ? c.lower : c.upper).push_back(spec.symbol(tok));
    }
    if (!seen_boundary)
        throw MalformedInput("configuration is missing the '^' boundary");
    return c;
}

void validate(const UpdsSpec& spec, const Configuration& c)
{
    if (c.state >= spec.num_states())
        throw MalformedInput("configuration uses an undeclared state");
    for (auto s : c.upper)
        if (s >= spec.num_symbols())
            throw MalformedInput("configuration uses an undeclared symbol");
    for (auto s : c.lower)
        if (s >= spec.num_symbols())
            throw MalformedInput("configuration uses an undeclared symbol");
}

} // namespace upds
