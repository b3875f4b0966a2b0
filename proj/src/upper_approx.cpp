#include "upds/upper_approx.hpp"

#include <map>
#include <set>

#include "upds/grammar.hpp"
#include "upds/pds.hpp"

namespace upds {

using fsa::kEpsilon;
using fsa::Nfa;
using fsa::NodeId;

const char* to_string(TraceAbstraction a) noexcept
{
    return a == TraceAbstraction::ControlGraph ? "control" : "top";
}

namespace {

TraceAutomaton control_graph(const UpdsSpec& spec, const fsa::ConfigAutomaton& C)
{
    TraceAutomaton at;
    for (StateId p = 0; p < spec.num_states(); ++p) {
        at.nfa.add_node(!fsa::is_empty(C.component(p).nfa), true);
        at.owner.push_back(p);
    }
    for (RuleId r = 0; r < spec.num_rules(); ++r)
        at.nfa.add_edge(spec.rule(r).from, r, spec.rule(r).to);
    return at;
}

TraceAutomaton top_of_stack(const UpdsSpec& spec, const fsa::ConfigAutomaton& C)
{
    const auto n = static_cast<std::uint32_t>(spec.num_symbols());
    const std::uint32_t unknown = n, empty = n + 1;
    TraceAutomaton at;
    std::map<std::pair<StateId, std::uint32_t>, NodeId> ids;
    std::vector<std::pair<StateId, std::uint32_t>> work;
    auto node = [&](StateId p, std::uint32_t top) {
        auto [it, fresh] = ids.try_emplace({p, top}, 0);
        if (fresh) {
            it->second = at.nfa.add_node(false, true);
            at.owner.push_back(p);
            work.emplace_back(p, top);
        }
        return it->second;
    };

    auto lowers = fsa::project_lower(C);
    for (StateId p = 0; p < spec.num_states(); ++p) {
        const Nfa& low = fsa::trim(lowers[p]);
        if (low.size() == 0)
            continue;
        auto start = fsa::epsilon_closure(low, low.initials());
        for (auto l : fsa::labels_from(low, start))
            if (l != kEpsilon)
                at.nfa.set_initial(node(p, l));
        for (auto q : start)
            if (low.is_final(q))
                at.nfa.set_initial(node(p, empty));
    }

    while (!work.empty()) {
        auto [p, top] = work.back();
        work.pop_back();
        NodeId self = ids.at({p, top});
        if (top == empty)
            continue;
        for (RuleId r = 0; r < spec.num_rules(); ++r) {
            const Rule& rule = spec.rule(r);
            if (rule.from != p || (top != unknown && top != rule.read))
                continue;
            std::uint32_t next = rule.written.empty() ? unknown : rule.written[0];
            at.nfa.add_edge(self, r, node(rule.to, next));
        }
    }
    return at;
}

} // namespace

TraceAutomaton trace_overapprox(const UpdsSpec& spec, const fsa::ConfigAutomaton& C,
                                TraceAbstraction abstraction)
{
    if (C.num_states() != spec.num_states() || C.num_symbols() != spec.num_symbols())
        throw MalformedInput("trace_overapprox: automaton does not match the system");
    return abstraction == TraceAbstraction::ControlGraph ? control_graph(spec, C)
                                                         : top_of_stack(spec, C);
}

void check_meaningful(const UpdsSpec& spec, const TraceAutomaton& at)
{
    if (at.owner.size() != at.nfa.size())
        throw MalformedInput("trace automaton: owner table does not cover every node");
    for (NodeId q = 0; q < at.nfa.size(); ++q) {
        if (at.owner[q] >= spec.num_states())
            throw MalformedInput("trace automaton: node owned by an undeclared state");
        if (!at.nfa.is_final(q))
            throw MalformedInput("trace automaton: not prefix-closed (non-final node)");
        for (const auto& e : at.nfa.out(q)) {
            if (e.label == kEpsilon || e.label >= spec.num_rules())
                throw MalformedInput("trace automaton: edge without a rule label");
            const Rule& r = spec.rule(e.label);
            if (r.from != at.owner[q] || r.to != at.owner[e.to])
                throw MalformedInput("trace automaton: not meaningful at rule " +
                                     spec.describe_rule(e.label));
        }
    }
}

namespace {

// Nodes from which `target` is reachable through epsilon edges only.
std::vector<bool> epsilon_sources(const Nfa& nfa, NodeId target)
{
    std::vector<std::vector<NodeId>> back(nfa.size());
    for (NodeId n = 0; n < nfa.size(); ++n)
        for (const auto& e : nfa.out(n))
            if (e.label == kEpsilon)
                back[e.to].push_back(n);
    std::vector<bool> seen(nfa.size(), false);
    std::vector<NodeId> stack{target};
    seen[target] = true;
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (auto u : back[v])
            if (!seen[u]) {
                seen[u] = true;
                stack.push_back(u);
            }
    }
    return seen;
}

// One pass of the three saturation rules; returns true if an edge was added.
bool saturation_pass(const UpdsSpec& spec, const TraceAutomaton& at, Nfa& au)
{
    bool changed = false;
    for (NodeId q0 = 0; q0 < at.nfa.size(); ++q0)
        for (const auto& e : at.nfa.out(q0)) {
            const Rule& rule = spec.rule(e.label);
            const NodeId q1 = e.to;
            switch (rule.kind()) {
            case RuleKind::Pop: changed |= au.add_edge(q0, rule.read, q1); break;
            case RuleKind::Switch: changed |= au.add_edge(q0, kEpsilon, q1); break;
            case RuleKind::Push: {
                // The upper stack at q0 ends with a letter x (q -x-> q' =eps=> q0:
                // after the push it is read up to q) or is empty (an initial
                // node =eps=> q0).
                auto src = epsilon_sources(au, q0);
                std::vector<NodeId> from;
                for (NodeId q = 0; q < au.size(); ++q) {
                    if (au.is_initial(q) && src[q])
                        from.push_back(q);
                    for (const auto& t : au.out(q))
                        if (t.label != kEpsilon && src[t.to]) {
                            from.push_back(q);
                            break;
                        }
                }
                for (auto q : from)
                    changed |= au.add_edge(q, kEpsilon, q1);
                break;
            }
            }
        }
    return changed;
}

} // namespace

UpperAutomaton saturate_upper(const UpdsSpec& spec, const TraceAutomaton& at,
                              const std::vector<Nfa>& uppers)
{
    check_meaningful(spec, at);
    if (uppers.size() != spec.num_states())
        throw MalformedInput("saturate_upper: one upper-stack automaton per control state expected");
    UpperAutomaton au;
    au.trace_nodes = at.nfa.size();
    au.owner = at.owner;
    au.nfa = Nfa(at.nfa.size());
    for (NodeId q = 0; q < at.nfa.size(); ++q)
        au.nfa.set_final(q);

    for (StateId p = 0; p < spec.num_states(); ++p) {
        const Nfa& up = uppers[p];
        const auto base = static_cast<NodeId>(au.nfa.size());
        for (NodeId q = 0; q < up.size(); ++q) {
            au.nfa.add_node(up.is_initial(q), false);
            au.owner.push_back(UpperAutomaton::kNoOwner);
        }
        for (NodeId q = 0; q < up.size(); ++q) {
            for (const auto& e : up.out(q)) {
                if (e.label != kEpsilon && e.label >= spec.num_symbols())
                    throw MalformedInput("saturate_upper: upper stack uses an undeclared symbol");
                au.nfa.add_edge(base + q, e.label, base + e.to);
            }
            if (up.is_final(q))
                for (NodeId t = 0; t < at.nfa.size(); ++t)
                    if (at.nfa.is_initial(t) && at.owner[t] == p)
                        au.nfa.add_edge(base + q, kEpsilon, t);
        }
    }
    while (saturation_pass(spec, at, au.nfa)) {
    }
    return au;
}

UpperAutomaton saturate_upper(const UpdsSpec& spec, const TraceAutomaton& at,
                              const Configuration& origin)
{
    if (!origin.upper.empty())
        throw MalformedInput("saturate_upper: the origin must have an empty upper stack");
    if (origin.state >= spec.num_states())
        throw MalformedInput("saturate_upper: undeclared origin state");
    std::vector<Nfa> uppers(spec.num_states());
    uppers[origin.state].add_node(true, true);
    return saturate_upper(spec, at, uppers);
}

bool is_upper_saturated(const UpdsSpec& spec, const TraceAutomaton& at, const UpperAutomaton& au)
{
    if (au.trace_nodes != at.nfa.size() || au.nfa.size() < at.nfa.size())
        return false;
    Nfa copy = au.nfa;
    return !saturation_pass(spec, at, copy);
}

std::vector<Nfa> upper_config_set(const UpperAutomaton& au, std::size_t num_states)
{
    std::vector<Nfa> out(num_states, au.nfa);
    for (StateId p = 0; p < num_states; ++p)
        for (NodeId q = 0; q < au.nfa.size(); ++q)
            out[p].set_final(q, au.owner[q] == p);
    return out;
}

const char* to_string(UpperSeed seed) noexcept
{
    return seed == UpperSeed::SingleOrigin ? "origin" : "direct";
}

namespace {

// Upper-stack languages at the original control states, as Nfas over the
// original symbols.
std::vector<Nfa> upper_languages(const UpdsSpec& spec, const fsa::ConfigAutomaton& C,
                                 OverapproxOptions opts)
{
    if (opts.seed == UpperSeed::Direct) {
        auto at = trace_overapprox(spec, C, opts.abstraction);
        auto au = saturate_upper(spec, at, fsa::project_upper(C));
        return upper_config_set(au, spec.num_states());
    }
    auto so = single_origin(spec, C);
    auto at = trace_overapprox(so.spec, fsa::from_config_set(so.spec, ConfigSet{so.origin()}),
                               opts.abstraction);
    auto au = saturate_upper(so.spec, at, so.origin());
    auto uppers = upper_config_set(au, so.spec.num_states());
    uppers.resize(spec.num_states());
    // Letters of the extended alphabet never reach the original states.
    for (auto& up : uppers)
        up = fsa::relabel(up, [&](fsa::Label l) {
            return l < spec.num_symbols() ? l : fsa::kEpsilon;
        });
    return uppers;
}

} // namespace

fsa::ConfigAutomaton overapprox_post(const UpdsSpec& spec, const fsa::ConfigAutomaton& C,
                                     OverapproxOptions opts)
{
    auto uppers = upper_languages(spec, C, opts);
    auto lower = pds::pds_post_star(spec, pds::from_slices(fsa::project_lower(C)));

    fsa::ConfigAutomaton out = fsa::empty_automaton(spec);
    for (StateId p = 0; p < spec.num_states(); ++p) {
        const Nfa& up = uppers[p];
        fsa::ZonedNfa z;
        for (NodeId q = 0; q < up.size(); ++q)
            z.add_node(fsa::Zone::Upper, up.is_initial(q));
        const auto base = static_cast<NodeId>(z.nfa.size());
        for (NodeId q = 0; q < lower.nfa.size(); ++q)
            z.add_node(fsa::Zone::Lower, false, lower.nfa.is_final(q));
        for (NodeId q = 0; q < up.size(); ++q) {
            for (const auto& e : up.out(q))
                z.add_edge(q, e.label == kEpsilon ? kEpsilon : fsa::barred(e.label), e.to);
            if (up.is_final(q))
                z.add_edge(q, kEpsilon, base + p);
        }
        for (NodeId q = 0; q < lower.nfa.size(); ++q)
            for (const auto& e : lower.nfa.out(q))
                z.add_edge(base + q, e.label == kEpsilon ? kEpsilon : fsa::plain(e.label),
                           base + e.to);
        out.component(p) = std::move(z);
    }
    return fsa::reduce(fsa::unite(out, C));
}

} // namespace upds
