#include "upds/model.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace upds {

namespace {

struct Token {
    std::string text;
    std::size_t column; // 1-based
};

std::vector<Token> split(std::string_view line)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
            ++j;
        out.push_back({std::string(line.substr(i, j - i)), i + 1});
        i = j;
    }
    return out;
}

class Parser {
public:
    ModelFile run(std::string_view text)
    {
        std::size_t start = 0;
        while (start <= text.size()) {
            auto end = text.find('\n', start);
            if (end == std::string_view::npos)
                end = text.size();
            ++line_;
            auto line = text.substr(start, end - start);
            if (auto hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            if (!line.empty() && line.back() == '\r')
                line.remove_suffix(1);
            statement(line);
            start = end + 1;
        }
        return std::move(model_);
    }

private:
    [[noreturn]] void fail(const std::string& what, std::size_t column) const
    {
        throw ModelError(what, line_, column);
    }

    void statement(std::string_view line)
    {
        auto toks = split(line);
        if (toks.empty())
            return;
        const auto& kw = toks[0].text;
        if (kw == "states" || kw == "alphabet")
            declare(toks, kw == "states");
        else if (kw == "rule")
            rule(toks);
        else if (kw == "set")
            set(line, toks);
        else
            fail("unknown statement '" + kw + "'", toks[0].column);
    }

    void declare(const std::vector<Token>& toks, bool states)
    {
        for (std::size_t i = 1; i < toks.size(); ++i) {
            const auto& t = toks[i];
            if (!is_valid_identifier(t.text))
                fail("invalid identifier '" + t.text + "'", t.column);
            try {
                if (states)
                    model_.spec.add_state(t.text);
                else
                    model_.spec.add_symbol(t.text);
            } catch (const MalformedInput& e) {
                fail(e.what(), t.column);
            }
        }
    }

    StateId state(const Token& t) const
    {
        auto id = model_.spec.find_state(t.text);
        if (!id)
            fail("undeclared state '" + t.text + "'", t.column);
        return *id;
    }

    SymbolId symbol(const Token& t) const
    {
        auto id = model_.spec.find_symbol(t.text);
        if (!id)
            fail("undeclared symbol '" + t.text + "'", t.column);
        return *id;
    }

    void rule(const std::vector<Token>& toks)
    {
        if (toks.size() < 5 || toks.size() > 7 || toks[3].text != "->") {
            fail("expected 'rule <state> <symbol> -> <state> [<symbol> [<symbol>]]'",
                 toks[0].column);
        }
        Rule r;
        r.from = state(toks[1]);
        r.read = symbol(toks[2]);
        r.to = state(toks[4]);
        for (std::size_t i = 5; i < toks.size(); ++i)
            r.written.push_back(symbol(toks[i]));
        if (model_.spec.find_rule(r))
            fail("duplicate rule", toks[0].column);
        model_.spec.add_rule(std::move(r));
    }

    void set(std::string_view line, const std::vector<Token>& toks)
    {
        if (toks.size() < 4)
            fail("expected 'set <name> <state> <regex>'", toks[0].column);
        const auto& name = toks[1];
        if (!is_valid_identifier(name.text))
            fail("invalid set name '" + name.text + "'", name.column);
        StateId p = state(toks[2]);
        auto regex_col = toks[3].column;
        auto text = line.substr(regex_col - 1);

        SetSlice slice;
        slice.state = p;
        try {
            slice.regex = parse_regex(text, RegexMode::Boundary);
            compile_regex(model_.spec, slice.regex);
        } catch (const RegexError& e) {
            fail(e.what(), regex_col + e.column() - 1);
        } catch (const MalformedInput& e) {
            fail(e.what(), regex_col);
        }

        SetDefinition* def = nullptr;
        for (auto& d : model_.sets)
            if (d.name == name.text)
                def = &d;
        if (!def) {
            model_.sets.push_back({name.text, {}});
            def = &model_.sets.back();
        }
        for (const auto& s : def->slices)
            if (s.state == p)
                fail("set '" + name.text + "' already has a slice for state '" + toks[2].text + "'",
                     toks[2].column);
        def->slices.push_back(std::move(slice));
    }

    ModelFile model_;
    std::size_t line_ = 0;
};

} // namespace

bool is_valid_identifier(std::string_view name)
{
    if (name.empty() || name == "_" || name == "->" || name == "states" || name == "alphabet" ||
        name == "rule" || name == "set")
        return false;
    for (char ch : name) {
        if (std::isspace(static_cast<unsigned char>(ch)))
            return false;
        switch (ch) {
        case '(': case ')': case '|': case '*': case '^': case '#': case ':': return false;
        default: break;
        }
    }
    return true;
}

const SetDefinition* ModelFile::find_set(std::string_view name) const
{
    for (const auto& d : sets)
        if (d.name == name)
            return &d;
    return nullptr;
}

fsa::ConfigAutomaton ModelFile::set_automaton(std::string_view name) const
{
    const auto* def = find_set(name);
    if (!def)
        throw MalformedInput("unknown set '" + std::string(name) + "'");
    return compile_set(spec, def->slices);
}

fsa::ConfigAutomaton compile_set(const UpdsSpec& spec, const std::vector<SetSlice>& slices)
{
    auto out = fsa::empty_automaton(spec);
    for (const auto& s : slices) {
        auto z = compile_regex(spec, s.regex);
        auto& target = out.component(s.state);
        const auto base = static_cast<fsa::NodeId>(target.nfa.size());
        for (fsa::NodeId q = 0; q < z.nfa.size(); ++q)
            target.add_node(z.zone[q], z.nfa.is_initial(q), z.nfa.is_final(q));
        for (fsa::NodeId q = 0; q < z.nfa.size(); ++q)
            for (const auto& e : z.nfa.out(q))
                target.add_edge(base + q, e.label, base + e.to);
    }
    return out;
}

ModelFile parse_model(std::string_view text)
{
    return Parser{}.run(text);
}

std::string print_model(const ModelFile& model)
{
    const auto& spec = model.spec;
    std::ostringstream out;
    out << "states";
    for (const auto& s : spec.state_names())
        out << ' ' << s;
    out << "\nalphabet";
    for (const auto& s : spec.symbol_names())
        out << ' ' << s;
    out << '\n';
    for (const auto& r : spec.rules()) {
        out << "rule " << spec.state_name(r.from) << ' ' << spec.symbol_name(r.read) << " -> "
            << spec.state_name(r.to);
        for (auto s : r.written)
            out << ' ' << spec.symbol_name(s);
        out << '\n';
    }
    for (const auto& d : model.sets)
        for (const auto& s : d.slices)
            out << "set " << d.name << ' ' << spec.state_name(s.state) << ' '
                << print_regex(s.regex) << '\n';
    return out.str();
}

ModelFile load_model(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw MalformedInput("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

} // namespace upds
