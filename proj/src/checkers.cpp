#include "upds/checkers.hpp"

#include <algorithm>
#include <sstream>

#include "upds/kphase.hpp"
#include "upds/semantics.hpp"

namespace upds {

using fsa::kEpsilon;
using fsa::NodeId;
using fsa::Zone;

const char* to_string(Verdict::Kind kind) noexcept
{
    switch (kind) {
    case Verdict::Kind::Safe: return "safe";
    case Verdict::Kind::Unsafe: return "unsafe";
    case Verdict::Kind::Unknown: return "unknown";
    }
    return "?";
}

namespace {

bool selected(const std::vector<StateId>& states, StateId p)
{
    return states.empty() || std::find(states.begin(), states.end(), p) != states.end();
}

// Lower zone accepting every stack word; returns its node.
NodeId any_lower(const UpdsSpec& spec, fsa::ZonedNfa& z)
{
    NodeId l = z.add_node(Zone::Lower, false, true);
    for (SymbolId s = 0; s < spec.num_symbols(); ++s)
        z.add_edge(l, fsa::plain(s), l);
    return l;
}

fsa::ConfigAutomaton overflow_forbidden(const UpdsSpec& spec, SymbolId top,
                                        const std::vector<StateId>& states)
{
    auto out = fsa::empty_automaton(spec);
    for (StateId p = 0; p < spec.num_states(); ++p) {
        if (!selected(states, p))
            continue;
        auto& z = out.component(p);
        NodeId u = z.add_node(Zone::Upper, true);
        for (SymbolId s = 0; s < spec.num_symbols(); ++s)
            if (s != top)
                z.add_edge(u, fsa::barred(s), u);
        z.add_edge(u, kEpsilon, any_lower(spec, z));
    }
    return out;
}

fsa::ConfigAutomaton read_forbidden(const UpdsSpec& spec, SymbolId a,
                                    const std::vector<StateId>& states)
{
    auto out = fsa::empty_automaton(spec);
    for (StateId p = 0; p < spec.num_states(); ++p) {
        if (!selected(states, p))
            continue;
        auto& z = out.component(p);
        NodeId u0 = z.add_node(Zone::Upper, true);
        NodeId u1 = z.add_node(Zone::Upper);
        for (SymbolId s = 0; s < spec.num_symbols(); ++s)
            z.add_edge(u0, fsa::barred(s), u0);
        z.add_edge(u0, fsa::barred(a), u1);
        z.add_edge(u1, kEpsilon, any_lower(spec, z));
    }
    return out;
}

fsa::ConfigAutomaton overflow_initial(const UpdsSpec& spec, SymbolId top, SymbolId fill,
                                      std::size_t m, const fsa::Nfa& lower)
{
    auto out = fsa::empty_automaton(spec);
    for (StateId p = 0; p < spec.num_states(); ++p) {
        auto& z = out.component(p);
        NodeId u = z.add_node(Zone::Upper, true);
        NodeId next = z.add_node(Zone::Upper);
        z.add_edge(u, fsa::barred(top), next);
        for (std::size_t i = 0; i < m; ++i) {
            u = next;
            next = z.add_node(Zone::Upper);
            z.add_edge(u, fsa::barred(fill), next);
        }
        const auto base = static_cast<NodeId>(z.nfa.size());
        for (NodeId q = 0; q < lower.size(); ++q)
            z.add_node(Zone::Lower, false, lower.is_final(q));
        for (NodeId q = 0; q < lower.size(); ++q) {
            if (lower.is_initial(q))
                z.add_edge(next, kEpsilon, base + q);
            for (const auto& e : lower.out(q))
                z.add_edge(base + q, e.label == kEpsilon ? kEpsilon : fsa::plain(e.label),
                           base + e.to);
        }
    }
    return out;
}

} // namespace

Verdict check_reachability(const UpdsSpec& spec, const fsa::ConfigAutomaton& initial,
                           const fsa::ConfigAutomaton& forbidden, const CheckOptions& opts)
{
    Verdict v;
    v.spec = spec;
    v.k = opts.k;
    v.abstraction = opts.abstraction;
    v.seed = opts.seed;

    auto under = bounded_phase_pre_star(spec, forbidden, opts.k);
    if (auto c = fsa::find_member(fsa::intersect(initial, under))) {
        auto cap = std::max(opts.witness_size_cap, c->size() + 8);
        auto trace = find_trace(
            spec, *c, [&](const Configuration& d) { return forbidden.accepts(d); },
            opts.witness_depth, cap, opts.limits);
        if (trace) {
            v.kind = Verdict::Kind::Unsafe;
            v.witness = *c;
            v.trace = *trace;
            v.reached = run_trace(spec, *c, *trace);
            return v;
        }
        v.witness = *c;
        v.note = "under-approximation hit at " + to_string(spec, *c) +
                 " but no run was replayed within depth " + std::to_string(opts.witness_depth) +
                 " and size " + std::to_string(cap);
        return v;
    }

    auto over = overapprox_post(spec, initial, {opts.abstraction, opts.seed});
    if (fsa::is_empty(fsa::intersect(over, forbidden))) {
        v.kind = Verdict::Kind::Safe;
        return v;
    }
    v.note = "forbidden set not reached within " + std::to_string(opts.k) +
             " phases, but the over-approximation meets it";
    return v;
}

Verdict check_stack_overflow(const UpdsSpec& spec, std::size_t m, std::string_view lower,
                             const CheckOptions& opts)
{
    for (auto name : {kTopSymbol, kFillSymbol})
        if (spec.find_symbol(name))
            throw MalformedInput("symbol '" + std::string(name) + "' is reserved");
    UpdsSpec ext = spec;
    SymbolId top = ext.add_symbol(std::string(kTopSymbol));
    SymbolId fill = ext.add_symbol(std::string(kFillSymbol));
    auto low = compile_plain_regex(ext, parse_regex(lower, RegexMode::Plain));
    auto initial = overflow_initial(ext, top, fill, m, low);
    return check_reachability(ext, initial, overflow_forbidden(ext, top, opts.states), opts);
}

Verdict check_upper_read(const UpdsSpec& spec, const fsa::ConfigAutomaton& initial, SymbolId a,
                         const CheckOptions& opts)
{
    if (a >= spec.num_symbols())
        throw MalformedInput("check_upper_read: undeclared symbol");
    return check_reachability(spec, initial, read_forbidden(spec, a, opts.states), opts);
}

std::string describe(const Verdict& v)
{
    std::ostringstream out;
    out << "verdict: " << to_string(v.kind) << '\n';
    out << "phases: " << v.k << '\n';
    out << "abstraction: " << to_string(v.abstraction) << ", seed " << to_string(v.seed) << '\n';
    if (v.witness)
        out << "witness: " << to_string(v.spec, *v.witness) << '\n';
    if (v.kind == Verdict::Kind::Unsafe) {
        out << "trace:";
        for (auto r : v.trace)
            out << ' ' << v.spec.describe_rule(r) << ';';
        out << '\n';
        out << "reached: " << to_string(v.spec, *v.reached) << '\n';
    }
    if (!v.note.empty())
        out << "note: " << v.note << '\n';
    return out.str();
}

} // namespace upds
