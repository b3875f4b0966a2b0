#include "upds/pds.hpp"

#include <deque>
#include <map>
#include <set>
#include <tuple>

namespace upds::pds {

using fsa::kEpsilon;
using fsa::Label;
using fsa::Nfa;
using fsa::NodeId;
using fsa::NodeSet;

namespace {

NodeSet run_from(const Nfa& nfa, NodeId start, std::span<const SymbolId> word)
{
    NodeId from[] = {start};
    auto cur = fsa::epsilon_closure(nfa, from);
    for (auto s : word)
        cur = fsa::step_closed(nfa, cur, s);
    return cur;
}

using Edge = std::tuple<NodeId, Label, NodeId>;

} // namespace

bool LowerAutomaton::accepts(const LowerConfig& c) const
{
    if (c.state >= num_states)
        return false;
    return fsa::accepts_from(nfa, c.state, c.stack);
}

Nfa LowerAutomaton::slice(StateId p) const
{
    Nfa out = nfa;
    for (NodeId n = 0; n < out.size(); ++n)
        out.set_initial(n, n == p);
    return out;
}

LowerAutomaton from_slices(std::span<const Nfa> slices)
{
    LowerAutomaton out;
    out.num_states = slices.size();
    out.nfa = Nfa(slices.size());
    for (std::size_t p = 0; p < slices.size(); ++p) {
        const auto& s = slices[p];
        NodeId base = static_cast<NodeId>(out.nfa.size());
        for (NodeId n = 0; n < s.size(); ++n)
            out.nfa.add_node(false, s.is_final(n));
        for (NodeId n = 0; n < s.size(); ++n) {
            for (const auto& t : s.out(n))
                out.nfa.add_edge(base + n, t.label, base + t.to);
            if (s.is_initial(n))
                out.nfa.add_edge(static_cast<NodeId>(p), kEpsilon, base + n);
        }
    }
    return out;
}

LowerAutomaton from_configs(const UpdsSpec& spec, const LowerConfigSet& configs)
{
    std::vector<Nfa> slices(spec.num_states());
    for (auto& s : slices)
        s.add_node(true);
    for (const auto& c : configs) {
        auto& s = slices.at(c.state);
        NodeId cur = 0;
        for (auto sym : c.stack) {
            NodeId next = s.add_node();
            s.add_edge(cur, sym, next);
            cur = next;
        }
        s.set_final(cur);
    }
    return from_slices(slices);
}

LowerAutomaton pds_post_star(const UpdsSpec& spec, const LowerAutomaton& init)
{
    // Epsilon-free start so that only saturation adds epsilon edges, and those
    // always leave a control node.
    const auto P = static_cast<NodeId>(init.num_states);
    Nfa base = fsa::remove_epsilons(init.nfa);

    std::map<std::pair<StateId, SymbolId>, std::vector<RuleId>> by_lhs;
    for (RuleId r = 0; r < spec.num_rules(); ++r)
        by_lhs[{spec.rule(r).from, spec.rule(r).read}].push_back(r);

    Nfa out(base.size());
    for (NodeId n = 0; n < base.size(); ++n)
        out.set_final(n, base.is_final(n));
    std::vector<NodeId> mid(spec.num_rules(), 0);
    for (RuleId r = 0; r < spec.num_rules(); ++r)
        if (spec.rule(r).kind() == RuleKind::Push)
            mid[r] = out.add_node();

    std::set<Edge> rel;
    std::deque<Edge> trans;
    std::map<NodeId, std::vector<NodeId>> eps_into;
    auto add_rel = [&](const Edge& e) {
        auto [a, l, b] = e;
        if (!rel.insert(e).second)
            return;
        out.add_edge(a, l, b);
        if (l == kEpsilon)
            eps_into[b].push_back(a);
    };
    for (NodeId n = 0; n < base.size(); ++n)
        for (const auto& t : base.out(n)) {
            if (n < P)
                trans.emplace_back(n, t.label, t.to);
            else
                add_rel({n, t.label, t.to});
        }

    while (!trans.empty()) {
        Edge e = trans.front();
        trans.pop_front();
        if (rel.contains(e))
            continue;
        add_rel(e);
        auto [p, gamma, q] = e;
        if (gamma != kEpsilon) {
            auto it = by_lhs.find({p, gamma});
            if (it == by_lhs.end())
                continue;
            for (auto r : it->second) {
                const Rule& rule = spec.rule(r);
                switch (rule.kind()) {
                case RuleKind::Pop: trans.emplace_back(rule.to, kEpsilon, q); break;
                case RuleKind::Switch: trans.emplace_back(rule.to, rule.written[0], q); break;
                case RuleKind::Push: {
                    NodeId m = mid[r];
                    trans.emplace_back(rule.to, rule.written[0], m);
                    add_rel({m, rule.written[1], q});
                    for (auto a : eps_into[m])
                        trans.emplace_back(a, rule.written[1], q);
                    break;
                }
                }
            }
        } else {
            for (const auto& t : out.out(q))
                trans.emplace_back(p, t.label, t.to);
        }
    }
    LowerAutomaton res;
    res.num_states = init.num_states;
    res.nfa = std::move(out);
    return res;
}

LowerAutomaton pds_pre_star(const UpdsSpec& spec, const LowerAutomaton& targets)
{
    Nfa base = fsa::remove_epsilons(targets.nfa);
    Nfa out(base.size());
    for (NodeId n = 0; n < base.size(); ++n)
        out.set_final(n, base.is_final(n));

    // Rules indexed by (to, first written symbol).
    std::map<std::pair<StateId, SymbolId>, std::vector<RuleId>> by_rhs;
    for (RuleId r = 0; r < spec.num_rules(); ++r) {
        const Rule& rule = spec.rule(r);
        if (!rule.written.empty())
            by_rhs[{rule.to, rule.written[0]}].push_back(r);
    }
    // Derived switch rules (p1, g1) -> (q', g2) produced by pushes.
    std::map<std::pair<NodeId, SymbolId>, std::vector<std::pair<StateId, SymbolId>>> derived;

    std::set<Edge> rel;
    std::deque<Edge> trans;
    for (NodeId n = 0; n < base.size(); ++n)
        for (const auto& t : base.out(n))
            trans.emplace_back(n, t.label, t.to);
    for (const auto& rule : spec.rules())
        if (rule.kind() == RuleKind::Pop)
            trans.emplace_back(rule.from, rule.read, rule.to);

    while (!trans.empty()) {
        Edge e = trans.front();
        trans.pop_front();
        if (!rel.insert(e).second)
            continue;
        auto [q, gamma, q2] = e;
        out.add_edge(q, gamma, q2);
        if (auto it = by_rhs.find({static_cast<StateId>(q), gamma});
            q < targets.num_states && it != by_rhs.end())
            for (auto r : it->second) {
                const Rule& rule = spec.rule(r);
                if (rule.kind() == RuleKind::Switch) {
                    trans.emplace_back(rule.from, rule.read, q2);
                } else {
                    auto key = std::make_pair(q2, rule.written[1]);
                    derived[key].emplace_back(rule.from, rule.read);
                    for (const auto& t : out.out(q2))
                        if (t.label == rule.written[1])
                            trans.emplace_back(rule.from, rule.read, t.to);
                }
            }
        if (auto it = derived.find({q, gamma}); it != derived.end())
            for (const auto& [p1, g1] : it->second)
                trans.emplace_back(p1, g1, q2);
    }
    LowerAutomaton res;
    res.num_states = targets.num_states;
    res.nfa = std::move(out);
    return res;
}

bool is_post_saturated(const UpdsSpec& spec, const LowerAutomaton& a)
{
    for (const auto& rule : spec.rules()) {
        NodeId from[] = {rule.from};
        auto src = fsa::step_closed(a.nfa, fsa::epsilon_closure(a.nfa, from), rule.read);
        auto dst = run_from(a.nfa, rule.to, rule.written);
        for (auto q : src)
            if (!std::binary_search(dst.begin(), dst.end(), q))
                return false;
    }
    return true;
}

bool is_pre_saturated(const UpdsSpec& spec, const LowerAutomaton& a)
{
    for (const auto& rule : spec.rules()) {
        NodeId from[] = {rule.from};
        auto src = fsa::step_closed(a.nfa, fsa::epsilon_closure(a.nfa, from), rule.read);
        auto dst = run_from(a.nfa, rule.to, rule.written);
        for (auto q : dst)
            if (!std::binary_search(src.begin(), src.end(), q))
                return false;
    }
    return true;
}

} // namespace upds::pds
