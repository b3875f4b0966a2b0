#include "upds/grammar.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace upds {

using fsa::Label;
using fsa::Nfa;
using fsa::NodeId;

namespace {

std::string fresh_state(const UpdsSpec& spec, std::string name)
{
    while (spec.find_state(name))
        name += '_';
    return name;
}

std::string fresh_symbol(const UpdsSpec& spec, std::string name)
{
    while (spec.find_symbol(name))
        name += '_';
    return name;
}

// Reversed copy of the p-component with one initial node (0, no in-edges) and
// one final node (1, no out-edges). The empty word is dropped.
Nfa normalized_reverse(const fsa::ZonedNfa& component)
{
    Nfa rev = fsa::reverse(fsa::trim(fsa::remove_epsilons(component.nfa)));
    Nfa out(2);
    out.set_initial(0);
    out.set_final(1);
    const NodeId shift = 2;
    for (NodeId n = 0; n < rev.size(); ++n)
        out.add_node();
    for (NodeId n = 0; n < rev.size(); ++n)
        for (const auto& t : rev.out(n)) {
            std::vector<NodeId> sources{shift + n};
            if (rev.is_initial(n))
                sources.push_back(0);
            for (auto s : sources) {
                out.add_edge(s, t.label, shift + t.to);
                if (rev.is_final(t.to))
                    out.add_edge(s, t.label, 1);
            }
        }
    return fsa::trim(out);
}

} // namespace

bool SingleOriginUpds::is_original(const Configuration& c) const
{
    auto orig = [&](SymbolId s) { return s < original_symbols; };
    return c.state < original_states && std::all_of(c.upper.begin(), c.upper.end(), orig) &&
           std::all_of(c.lower.begin(), c.lower.end(), orig);
}

SingleOriginUpds single_origin(const UpdsSpec& spec, const fsa::ConfigAutomaton& C)
{
    if (C.num_states() != spec.num_states() || C.num_symbols() != spec.num_symbols())
        throw MalformedInput("single_origin: automaton does not match the system");
    SingleOriginUpds so;
    so.original_states = spec.num_states();
    so.original_symbols = spec.num_symbols();
    so.original_rules = spec.num_rules();
    so.initial = C;

    UpdsSpec& ext = so.spec;
    for (const auto& s : spec.state_names())
        ext.add_state(s);
    for (const auto& s : spec.symbol_names())
        ext.add_symbol(s);
    for (const auto& s : spec.symbol_names())
        ext.add_symbol(fresh_symbol(spec, "~" + s));
    so.dollar = ext.add_symbol(fresh_symbol(ext, "$"));
    for (const auto& r : spec.rules())
        ext.add_rule(r);
    so.origin_state = ext.add_state(fresh_state(ext, "$origin"));

    const auto n = static_cast<SymbolId>(spec.num_symbols());
    auto symbol_of_label = [&](Label l) {
        return fsa::is_barred(l) ? n + fsa::symbol_of(l) : fsa::symbol_of(l);
    };

    for (StateId p = 0; p < spec.num_states(); ++p) {
        Nfa a = normalized_reverse(C.component(p));
        if (a.size() < 2 || !a.is_initial(0) || !a.is_final(1))
            continue; // no member with a nonempty stack word
        const std::string& pname = spec.state_name(p);
        std::vector<StateId> node_state(a.size());
        for (NodeId q = 0; q < a.size(); ++q)
            node_state[q] =
                ext.add_state(fresh_state(ext, "$q" + std::to_string(q) + ":" + pname));
        StateId tau = ext.add_state(fresh_state(ext, "$tau:" + pname));
        StateId f = node_state[1];

        std::set<SymbolId> barred_used;
        for (NodeId q = 0; q < a.size(); ++q)
            for (const auto& t : a.out(q)) {
                SymbolId x = symbol_of_label(t.label);
                if (fsa::is_barred(t.label))
                    barred_used.insert(fsa::symbol_of(t.label));
                if (q == 0) {
                    ext.add_rule({so.origin_state, so.dollar, node_state[t.to], {x}});
                } else {
                    for (SymbolId y = 0; y < 2 * n; ++y)
                        ext.add_rule({node_state[q], y, node_state[t.to], {x, y}});
                }
            }
        for (auto s : barred_used) {
            ext.add_rule({f, n + s, tau, {s}});
            ext.add_rule({tau, s, f, {}});
        }
        for (SymbolId x = 0; x < n; ++x)
            ext.add_rule({f, x, p, {x}});
    }
    return so;
}

Form CsGrammar::encode(const Configuration& c) const
{
    Form f{top};
    for (auto s : c.upper)
        f += symbol_terminal.at(s);
    f += state_terminal.at(c.state);
    for (auto s : c.lower)
        f += symbol_terminal.at(s);
    f += end;
    return f;
}

Form CsGrammar::encode_barred(const Configuration& c) const
{
    Form f{top};
    for (auto s : c.upper)
        f += symbol_bar.at(s);
    f += state_bar.at(c.state);
    for (auto s : c.lower)
        f += symbol_bar.at(s);
    f += end;
    return f;
}

std::optional<Form> CsGrammar::terminal_word(const std::vector<std::string>& names) const
{
    Form f;
    for (const auto& name : names) {
        auto it = std::find_if(symbols.begin(), symbols.end(),
                               [&](const Symbol& s) { return s.terminal() && s.name == name; });
        if (it == symbols.end())
            return std::nullopt;
        f += static_cast<GSymbol>(it - symbols.begin());
    }
    return f;
}

std::string CsGrammar::describe(const Form& f) const
{
    std::string out;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i)
            out += ' ';
        out += symbols.at(f[i]).name;
    }
    return out;
}

namespace {

std::optional<Configuration> decode_with(const CsGrammar& g, const Form& f, bool barred)
{
    using Role = CsGrammar::Role;
    const Role state_role = barred ? Role::StateBar : Role::State;
    const Role stack_role = barred ? Role::StackBar : Role::Stack;
    if (f.size() < 3 || f.front() != g.top || f.back() != g.end)
        return std::nullopt;
    Configuration c;
    bool seen_state = false;
    for (std::size_t i = 1; i + 1 < f.size(); ++i) {
        const auto& sym = g.symbols.at(f[i]);
        if (sym.role == state_role && !seen_state) {
            seen_state = true;
            c.state = sym.rule;
        } else if (sym.role == stack_role) {
            (seen_state ? c.lower : c.upper).push_back(sym.rule);
        } else {
            return std::nullopt;
        }
    }
    if (!seen_state)
        return std::nullopt;
    return c;
}

} // namespace

std::optional<Configuration> CsGrammar::decode_barred(const Form& f) const
{
    return decode_with(*this, f, true);
}

std::optional<Configuration> CsGrammar::decode(const Form& f) const
{
    return decode_with(*this, f, false);
}

CsGrammar build_post_grammar(const SingleOriginUpds& so)
{
    using Role = CsGrammar::Role;
    const UpdsSpec& spec = so.spec;
    CsGrammar g;
    // For state and stack symbols, Symbol::rule holds the state or symbol id.
    auto add = [&](std::string name, Role role, RuleId id = 0) {
        if (g.symbols.size() >= 0xFFFF)
            throw ResourceLimit("grammar: too many symbols", g.symbols.size());
        g.symbols.push_back({std::move(name), role, id});
        return static_cast<GSymbol>(g.symbols.size() - 1);
    };
    g.start = add("S", Role::Start);
    g.top = add("TOP", Role::Top);
    g.end = add("END", Role::End);
    for (StateId p = 0; p < spec.num_states(); ++p) {
        g.state_terminal.push_back(add(spec.state_name(p), Role::State, p));
        g.state_bar.push_back(add("bar(" + spec.state_name(p) + ")", Role::StateBar, p));
    }
    for (SymbolId s = 0; s < spec.num_symbols(); ++s) {
        g.symbol_terminal.push_back(add(spec.symbol_name(s), Role::Stack, s));
        g.symbol_bar.push_back(add("bar(" + spec.symbol_name(s) + ")", Role::StackBar, s));
    }

    auto produce = [&](Form lhs, Form rhs, Production::Group group, RuleId rule,
                       std::string step) {
        g.productions.push_back({std::move(lhs), std::move(rhs), group, rule, std::move(step)});
    };
    using G = Production::Group;

    produce(Form{g.start},
            Form{g.top, g.state_bar[so.origin_state], g.symbol_bar[so.dollar], g.end}, G::Start,
            0, "start");

    for (RuleId r = 0; r < spec.num_rules(); ++r) {
        const Rule& rule = spec.rule(r);
        const GSymbol p = g.state_bar[rule.from], p2 = g.state_bar[rule.to];
        const GSymbol a = g.symbol_bar[rule.read];
        const std::string tag = "d" + std::to_string(r);
        switch (rule.kind()) {
        case RuleKind::Switch: {
            GSymbol d = add(tag, Role::Tag, r);
            GSymbol b = g.symbol_bar[rule.written[0]];
            produce({p, a}, {d, a}, G::Simulation, r, "r0");
            produce({d, a}, {d, b}, G::Simulation, r, "r1");
            produce({d, b}, {p2, b}, G::Simulation, r, "rf");
            break;
        }
        case RuleKind::Pop: {
            GSymbol d = add(tag, Role::Tag, r);
            produce({p, a}, {p, d}, G::Simulation, r, "r0");
            produce({p, d}, {a, d}, G::Simulation, r, "r1");
            produce({a, d}, {a, p2}, G::Simulation, r, "rf");
            break;
        }
        case RuleKind::Push: {
            GSymbol d0 = add(tag + ".0", Role::Tag0, r);
            GSymbol d1 = add(tag + ".1", Role::Tag1, r);
            GSymbol b = g.symbol_bar[rule.written[0]], c = g.symbol_bar[rule.written[1]];
            produce({p, a}, {d0, a}, G::Simulation, r, "r0");
            for (auto x : g.symbol_bar)
                produce({x, d0}, {d1, d0}, G::Simulation, r, "r1");
            produce({g.top, d0}, {g.top, d1, d0}, G::Simulation, r, "r1");
            produce({d1, d0, a}, {d1, d0, c}, G::Simulation, r, "r2");
            produce({d1, d0, c}, {d1, b, c}, G::Simulation, r, "r3");
            produce({d1, b, c}, {p2, b, c}, G::Simulation, r, "rf");
            break;
        }
        }
    }

    for (StateId p = 0; p < spec.num_states(); ++p)
        produce({g.state_bar[p]}, {g.state_terminal[p]}, G::Final, 0, "final");
    std::vector<std::pair<GSymbol, GSymbol>> letters; // (barred, terminal)
    for (SymbolId s = 0; s < spec.num_symbols(); ++s)
        letters.emplace_back(g.symbol_bar[s], g.symbol_terminal[s]);
    for (StateId p = 0; p < spec.num_states(); ++p)
        letters.emplace_back(g.state_bar[p], g.state_terminal[p]);
    for (const auto& [xb, x] : letters)
        for (const auto& [yb, y] : letters) {
            (void)yb;
            produce({xb, y}, {x, y}, G::Final, 0, "final");
            produce({y, xb}, {y, x}, G::Final, 0, "final");
        }
    return g;
}

bool is_noncontracting(const CsGrammar& g)
{
    return std::all_of(g.productions.begin(), g.productions.end(),
                       [](const Production& p) { return p.lhs.size() <= p.rhs.size(); });
}

bool form_shape_ok(const CsGrammar& g, const Form& f)
{
    using Role = CsGrammar::Role;
    if (f.size() == 1 && f[0] == g.start)
        return true;
    if (f.size() < 3 || f.front() != g.top || f.back() != g.end)
        return false;
    // Collect the markers (state or tag symbols) and make sure everything else
    // is a barred stack symbol.
    std::vector<std::size_t> marks;
    for (std::size_t i = 1; i + 1 < f.size(); ++i) {
        Role r = g.symbols.at(f[i]).role;
        if (r == Role::StackBar)
            continue;
        if (r == Role::StateBar || r == Role::Tag || r == Role::Tag0 || r == Role::Tag1)
            marks.push_back(i);
        else
            return false;
    }
    auto role = [&](std::size_t i) { return g.symbols.at(f[i]).role; };
    auto rule = [&](std::size_t i) { return g.symbols.at(f[i]).rule; };
    if (marks.size() == 1) {
        Role r = role(marks[0]);
        return r == Role::StateBar || r == Role::Tag || r == Role::Tag0 || r == Role::Tag1;
    }
    if (marks.size() == 2 && marks[1] == marks[0] + 1) {
        Role r0 = role(marks[0]), r1 = role(marks[1]);
        if (r0 == Role::StateBar && r1 == Role::Tag)
            return true; // pop in progress
        if (r0 == Role::Tag1 && r1 == Role::Tag0)
            return rule(marks[0]) == rule(marks[1]);
    }
    return false;
}

namespace {

struct ProductionIndex {
    std::vector<std::vector<const Production*>> by_first;

    ProductionIndex(const CsGrammar& g, bool skip_final) : by_first(g.symbols.size())
    {
        for (const auto& p : g.productions)
            if (!(skip_final && p.group == Production::Group::Final))
                by_first.at(p.lhs[0]).push_back(&p);
    }
};

// Breadth-first enumeration of the forms of length <= max_len; `visit` returns
// true to stop early.
template <typename Visit>
std::size_t explore(const CsGrammar& g, std::size_t max_len, const MembershipOptions& opts,
                    Visit visit)
{
    ProductionIndex index(g, opts.collapse_final);
    std::unordered_set<Form> seen;
    std::vector<Form> frontier{Form{g.start}};
    seen.insert(frontier.front());
    std::size_t explored = 1;
    if (visit(frontier.front()))
        return explored;
    while (!frontier.empty()) {
        std::vector<Form> next;
        for (const auto& form : frontier)
            for (std::size_t i = 0; i < form.size(); ++i)
                for (const Production* p : index.by_first[form[i]]) {
                    const auto& lhs = p->lhs;
                    if (form.size() - i < lhs.size() ||
                        form.compare(i, lhs.size(), lhs) != 0)
                        continue;
                    if (form.size() - lhs.size() + p->rhs.size() > max_len)
                        continue;
                    Form out;
                    out.reserve(form.size() - lhs.size() + p->rhs.size());
                    out.append(form, 0, i);
                    out += p->rhs;
                    out.append(form, i + lhs.size());
                    if (seen.contains(out))
                        continue;
                    if (++explored > opts.budget)
                        throw ResourceLimit("grammar membership: form budget exhausted",
                                            explored);
                    if (visit(out))
                        return explored;
                    seen.insert(out);
                    next.push_back(std::move(out));
                }
        frontier = std::move(next);
    }
    return explored;
}

} // namespace

MembershipResult grammar_membership(const CsGrammar& g, const Form& w, MembershipOptions opts)
{
    MembershipResult res;
    for (auto s : w)
        if (s >= g.symbols.size() || !g.symbols[s].terminal())
            return res;
    Form goal = w;
    if (opts.collapse_final) {
        auto c = g.decode(w);
        if (!c)
            return res;
        goal = g.encode_barred(*c);
    }
    res.explored = explore(g, w.size(), opts, [&](const Form& f) {
        if (opts.check_shapes && opts.collapse_final && !form_shape_ok(g, f))
            ++res.shape_violations;
        if (f == goal) {
            res.member = true;
            return true;
        }
        return false;
    });
    return res;
}

std::vector<Form> grammar_language_upto(const CsGrammar& g, std::size_t max_len,
                                        MembershipOptions opts)
{
    std::set<Form> words;
    explore(g, max_len, opts, [&](const Form& f) {
        if (opts.collapse_final) {
            if (auto c = g.decode_barred(f))
                words.insert(g.encode(*c));
        } else if (std::all_of(f.begin(), f.end(),
                               [&](GSymbol s) { return g.symbols[s].terminal(); })) {
            words.insert(f);
        }
        return false;
    });
    return {words.begin(), words.end()};
}

bool is_reachable(const UpdsSpec& spec, const fsa::ConfigAutomaton& C, const Configuration& c,
                  MembershipOptions opts, MembershipResult* result)
{
    validate(spec, c);
    if (C.accepts(c)) {
        if (result)
            *result = MembershipResult{true, 0, 0};
        return true;
    }
    auto so = single_origin(spec, C);
    auto g = build_post_grammar(so);
    auto res = grammar_membership(g, g.encode(c), opts);
    if (result)
        *result = res;
    return res.member;
}

} // namespace upds
