#include "support/fixtures.hpp"

#include "upds/regex.hpp"

namespace upds::testing {

UpdsSpec make_e1()
{
    UpdsSpec s;
    auto p = s.add_state("p");
    auto p2 = s.add_state("p'");
    for (auto name : {"a", "b", "x", "y", "bot"})
        s.add_symbol(name);
    auto a = s.symbol("a"), b = s.symbol("b"), x = s.symbol("x"), y = s.symbol("y"),
         bot = s.symbol("bot");
    s.add_rule({p, x, p, {a}});
    s.add_rule({p, y, p, {b}});
    s.add_rule({p, a, p, {a, b}});
    s.add_rule({p, a, p, {}});
    s.add_rule({p, b, p, {}});
    s.add_rule({p, bot, p2, {bot}});
    return s;
}

fsa::ConfigAutomaton c1_automaton(const UpdsSpec& e1)
{
    auto ca = fsa::empty_automaton(e1);
    ca.component(e1.state("p")) = compile_regex(e1, "^ x (y x)* bot");
    return ca;
}

UpdsSpec make_e2()
{
    UpdsSpec s;
    auto p = s.add_state("p");
    for (auto name : {"a", "b", "c"})
        s.add_symbol(name);
    auto a = s.symbol("a"), b = s.symbol("b"), c = s.symbol("c");
    s.add_rule({p, c, p, {a, b}});
    s.add_rule({p, c, p, {c, b}});
    s.add_rule({p, a, p, {}});
    s.add_rule({p, b, p, {}});
    return s;
}

fsa::ConfigAutomaton c2_automaton(const UpdsSpec& e2)
{
    auto ca = fsa::empty_automaton(e2);
    ca.component(e2.state("p")) = compile_regex(e2, "(a b)* ^ c");
    return ca;
}

UpdsSpec random_spec(std::mt19937& rng, RandomSpecShape shape)
{
    auto pick = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    UpdsSpec s;
    auto ns = pick(1, shape.max_states), ng = pick(1, shape.max_symbols),
         nr = pick(0, shape.max_rules);
    for (std::size_t i = 0; i < ns; ++i)
        s.add_state("q" + std::to_string(i));
    for (std::size_t i = 0; i < ng; ++i)
        s.add_symbol(std::string(1, static_cast<char>('a' + i)));
    for (std::size_t attempt = 0; s.num_rules() < nr && attempt < 100; ++attempt) {
        Rule r;
        r.from = static_cast<StateId>(pick(0, ns - 1));
        r.to = static_cast<StateId>(pick(0, ns - 1));
        r.read = static_cast<SymbolId>(pick(0, ng - 1));
        auto len = pick(0, 2);
        for (std::size_t i = 0; i < len; ++i)
            r.written.push_back(static_cast<SymbolId>(pick(0, ng - 1)));
        if (!s.find_rule(r))
            s.add_rule(r);
    }
    return s;
}

ConfigSet random_configs(std::mt19937& rng, const UpdsSpec& spec, std::size_t count,
                         std::size_t min_size, std::size_t max_size)
{
    auto pick = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    ConfigSet out;
    for (std::size_t i = 0; i < count; ++i) {
        Configuration c;
        c.state = static_cast<StateId>(pick(0, spec.num_states() - 1));
        auto total = pick(min_size, max_size);
        auto up = pick(0, total);
        for (std::size_t j = 0; j < total; ++j)
            (j < up ? c.upper : c.lower)
                .push_back(static_cast<SymbolId>(pick(0, spec.num_symbols() - 1)));
        out.insert(c);
    }
    return out;
}

Configuration config(const UpdsSpec& spec, std::string_view text)
{
    return parse_configuration(spec, text);
}

TraceAutomaton random_trace_automaton(std::mt19937& rng, const UpdsSpec& spec,
                                      std::size_t max_nodes, std::size_t max_edges)
{
    auto pick = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    TraceAutomaton at;
    auto nodes = pick(1, max_nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
        at.nfa.add_node(i == 0 || pick(0, 3) == 0, true);
        at.owner.push_back(static_cast<StateId>(pick(0, spec.num_states() - 1)));
    }
    auto edges = pick(0, max_edges);
    for (std::size_t attempt = 0; at.nfa.num_edges() < edges && attempt < 200; ++attempt) {
        if (spec.num_rules() == 0)
            break;
        auto r = static_cast<RuleId>(pick(0, spec.num_rules() - 1));
        std::vector<fsa::NodeId> from, to;
        for (fsa::NodeId q = 0; q < nodes; ++q) {
            if (at.owner[q] == spec.rule(r).from)
                from.push_back(q);
            if (at.owner[q] == spec.rule(r).to)
                to.push_back(q);
        }
        if (from.empty() || to.empty())
            continue;
        at.nfa.add_edge(from[pick(0, from.size() - 1)], r, to[pick(0, to.size() - 1)]);
    }
    return at;
}

std::string fixture_path(std::string_view name)
{
    return std::string(UPDS_FIXTURE_DIR) + "/" + std::string(name);
}

std::string golden_path(std::string_view name)
{
    return std::string(UPDS_GOLDEN_DIR) + "/" + std::string(name);
}

} // namespace upds::testing
