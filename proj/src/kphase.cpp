#include "upds/kphase.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>

namespace upds {

using fsa::kEpsilon;
using fsa::Label;
using fsa::NodeId;
using fsa::Zone;
using fsa::ZonedNfa;

const char* to_string(PhaseKind kind) noexcept
{
    return kind == PhaseKind::PushPhase ? "push" : "pop";
}

Mpds upds_to_mpds(const UpdsSpec& spec)
{
    Mpds m;
    m.state_names = spec.state_names();
    m.symbol_names = spec.symbol_names();
    std::string bottom = "_bot";
    while (spec.find_symbol(bottom))
        bottom += '_';
    m.bottom = static_cast<SymbolId>(m.symbol_names.size());
    m.symbol_names.push_back(bottom);
    m.rule_state.assign(spec.num_rules(), 0);

    const auto n = static_cast<SymbolId>(spec.num_symbols());
    for (RuleId r = 0; r < spec.num_rules(); ++r) {
        const Rule& rule = spec.rule(r);
        if (rule.kind() == RuleKind::Switch) {
            m.rules.push_back({rule.from, rule.read, 2, rule.to, rule.written});
            continue;
        }
        auto mid = static_cast<StateId>(m.state_names.size());
        m.state_names.push_back("[" + spec.describe_rule(r) + "]");
        m.rule_state[r] = mid;
        if (rule.kind() == RuleKind::Pop) {
            m.rules.push_back({rule.from, rule.read, 2, mid, {}});
            for (SymbolId x = 0; x <= n; ++x)
                m.rules.push_back({mid, x, 1, rule.to, {rule.read, x}});
        } else {
            m.rules.push_back({rule.from, rule.read, 2, mid, rule.written});
            m.rules.push_back({mid, m.bottom, 1, rule.to, {m.bottom}});
            for (SymbolId x = 0; x < n; ++x)
                m.rules.push_back({mid, x, 1, rule.to, {}});
        }
    }
    return m;
}

std::vector<std::pair<std::size_t, MpdsConfig>> mpds_step(const Mpds& m, const MpdsConfig& c)
{
    std::vector<std::pair<std::size_t, MpdsConfig>> out;
    for (std::size_t i = 0; i < m.rules.size(); ++i) {
        const auto& r = m.rules[i];
        const Word& stack = r.stack == 1 ? c.stack1 : c.stack2;
        if (r.from != c.state || stack.empty() || stack.front() != r.read)
            continue;
        MpdsConfig next = c;
        next.state = r.to;
        Word& s = r.stack == 1 ? next.stack1 : next.stack2;
        s.erase(s.begin());
        s.insert(s.begin(), r.written.begin(), r.written.end());
        out.emplace_back(i, std::move(next));
    }
    return out;
}

MpdsConfig to_mpds(const Mpds& m, const Configuration& c)
{
    MpdsConfig out{c.state, Word(c.upper.rbegin(), c.upper.rend()), c.lower};
    out.stack1.push_back(m.bottom);
    return out;
}

std::optional<Configuration> from_mpds(const Mpds& m, const UpdsSpec& spec, const MpdsConfig& c)
{
    if (c.state >= spec.num_states() || c.stack1.empty() || c.stack1.back() != m.bottom)
        return std::nullopt;
    Configuration out{c.state, Word(c.stack1.rbegin() + 1, c.stack1.rend()), c.stack2};
    auto bad = [&](SymbolId s) { return s >= spec.num_symbols(); };
    if (std::any_of(out.upper.begin(), out.upper.end(), bad) ||
        std::any_of(out.lower.begin(), out.lower.end(), bad))
        return std::nullopt;
    return out;
}

namespace {

// Targets flattened into one epsilon-free graph; `owner` is the control state
// whose component a node belongs to.
struct FlatTargets {
    std::vector<StateId> owner;
    std::vector<bool> initial, final;
    std::vector<std::vector<std::pair<SymbolId, NodeId>>> barred, plain;

    explicit FlatTargets(const fsa::ConfigAutomaton& t)
    {
        for (StateId p = 0; p < t.num_states(); ++p) {
            ZonedNfa z = fsa::reduce(t.component(p));
            auto base = static_cast<NodeId>(owner.size());
            for (NodeId n = 0; n < z.nfa.size(); ++n) {
                owner.push_back(p);
                initial.push_back(z.nfa.is_initial(n));
                final.push_back(z.nfa.is_final(n));
                barred.emplace_back();
                plain.emplace_back();
                for (const auto& e : z.nfa.out(n))
                    (fsa::is_barred(e.label) ? barred : plain)
                        .back()
                        .emplace_back(fsa::symbol_of(e.label), base + e.to);
            }
        }
    }
    std::size_t size() const noexcept { return owner.size(); }
};

// Reflexive-transitive closure of the switch rules on (state, top) pairs.
class SwitchClosure {
public:
    explicit SwitchClosure(const UpdsSpec& spec)
        : n_(spec.num_symbols()), size_(spec.num_states() * spec.num_symbols()),
          fwd_(size_), bwd_(size_)
    {
        std::vector<std::vector<std::size_t>> edges(size_);
        for (const auto& r : spec.rules())
            if (r.kind() == RuleKind::Switch)
                edges[key(r.from, r.read)].push_back(key(r.to, r.written[0]));
        for (std::size_t s = 0; s < size_; ++s) {
            std::vector<bool> seen(size_, false);
            std::vector<std::size_t> stack{s};
            seen[s] = true;
            while (!stack.empty()) {
                auto v = stack.back();
                stack.pop_back();
                fwd_[s].push_back(v);
                bwd_[v].push_back(s);
                for (auto w : edges[v])
                    if (!seen[w]) {
                        seen[w] = true;
                        stack.push_back(w);
                    }
            }
        }
        for (auto& v : fwd_)
            std::sort(v.begin(), v.end());
        for (auto& v : bwd_)
            std::sort(v.begin(), v.end());
    }

    std::size_t key(StateId p, SymbolId a) const { return p * n_ + a; }
    StateId state(std::size_t k) const { return static_cast<StateId>(k / n_); }
    SymbolId symbol(std::size_t k) const { return static_cast<SymbolId>(k % n_); }
    /// Pairs reachable from (p, a).
    const std::vector<std::size_t>& forward(StateId p, SymbolId a) const { return fwd_[key(p, a)]; }
    /// Pairs from which (p, a) is reachable.
    const std::vector<std::size_t>& backward(StateId p, SymbolId a) const { return bwd_[key(p, a)]; }

private:
    std::size_t n_, size_;
    std::vector<std::vector<std::size_t>> fwd_, bwd_;
};

// Builds a zoned automaton by exploring keyed nodes from the initial ones.
template <typename Key>
class LazyBuilder {
public:
    ZonedNfa z;

    NodeId node(const Key& k, Zone zone)
    {
        auto [it, fresh] = ids_.try_emplace(k, 0);
        if (fresh) {
            it->second = z.add_node(zone);
            pending_.push_back(k);
        }
        return it->second;
    }
    bool next(Key& k)
    {
        if (pending_.empty())
            return false;
        k = pending_.front();
        pending_.pop_front();
        return true;
    }
    NodeId id(const Key& k) const { return ids_.at(k); }

private:
    std::map<Key, NodeId> ids_;
    std::deque<Key> pending_;
};

// Pop phase. Reading bar(u) a_1 .. a_m l' of a predecessor, the automaton
// follows the targets over bar(u) bar(b_1) .. bar(b_m): each a_i is switched to
// b_i and popped onto the upper stack. Final switches rewrite the top of l'.
ZonedNfa pop_phase_component(const UpdsSpec& spec, const FlatTargets& t, const SwitchClosure& sw,
                             StateId p)
{
    enum Kind : std::uint8_t { A, B, C };
    using Key = std::array<std::uint32_t, 3>; // kind, control state, target node
    LazyBuilder<Key> lb;

    std::vector<std::vector<const Rule*>> pops(spec.num_states() * spec.num_symbols());
    for (const auto& r : spec.rules())
        if (r.kind() == RuleKind::Pop)
            pops[sw.key(r.from, r.read)].push_back(&r);

    for (NodeId q = 0; q < t.size(); ++q)
        if (t.initial[q])
            lb.z.nfa.set_initial(lb.node({A, 0, q}, Zone::Upper));

    Key k;
    while (lb.next(k)) {
        NodeId self = lb.id(k);
        StateId r = k[1];
        NodeId q = k[2];
        switch (k[0]) {
        case A:
            for (auto [s, q2] : t.barred[q])
                lb.z.add_edge(self, fsa::barred(s), lb.node({A, 0, q2}, Zone::Upper));
            lb.z.add_edge(self, kEpsilon, lb.node({B, p, q}, Zone::Lower));
            break;
        case B:
            if (r == t.owner[q] && t.final[q])
                lb.z.nfa.set_final(self);
            for (SymbolId a = 0; a < spec.num_symbols(); ++a)
                for (auto key : sw.forward(r, a)) {
                    StateId s = sw.state(key);
                    SymbolId b = sw.symbol(key);
                    for (const Rule* pop : pops[key])
                        for (auto [sym, q2] : t.barred[q])
                            if (sym == b)
                                lb.z.add_edge(self, fsa::plain(a),
                                              lb.node({B, pop->to, q2}, Zone::Lower));
                    if (s == t.owner[q])
                        for (auto [sym, q2] : t.plain[q])
                            if (sym == b)
                                lb.z.add_edge(self, fsa::plain(a), lb.node({C, 0, q2}, Zone::Lower));
                }
            break;
        case C:
            if (t.final[q])
                lb.z.nfa.set_final(self);
            for (auto [s, q2] : t.plain[q])
                lb.z.add_edge(self, fsa::plain(s), lb.node({C, 0, q2}, Zone::Lower));
            break;
        }
    }
    return lb.z;
}

// Push phase. The top symbol a of the predecessor grows into a word gamma of
// length m + 1 through m pushes, and the upper stack loses its last min(m, |u|)
// symbols. While still reading the upper stack, the automaton guesses gamma top
// to bottom along the targets, undoing one push per letter after the first;
// each undone push consumes one dropped upper letter, or none once the whole
// upper stack is gone (flag f: the kept part of the upper stack is empty).
ZonedNfa push_phase_component(const UpdsSpec& spec, const FlatTargets& t,
                              const SwitchClosure& sw, StateId p)
{
    enum Kind : std::uint8_t { A, G, C };
    constexpr std::uint32_t kInit = ~std::uint32_t{0};
    using Key = std::array<std::uint32_t, 4>; // kind, target node, pair or kInit, flag
    LazyBuilder<Key> lb;
    const auto n = static_cast<SymbolId>(spec.num_symbols());

    // Pushes indexed by the pair they produce on top: (to, written[0]).
    std::vector<std::vector<const Rule*>> pushes(spec.num_states() * spec.num_symbols());
    for (const auto& r : spec.rules())
        if (r.kind() == RuleKind::Push)
            pushes[sw.key(r.to, r.written[0])].push_back(&r);

    for (NodeId q = 0; q < t.size(); ++q)
        if (t.initial[q]) {
            lb.z.nfa.set_initial(lb.node({A, q, 0, 0}, Zone::Upper));
            lb.z.nfa.set_initial(lb.node({G, q, kInit, 1}, Zone::Upper));
        }

    Key k;
    while (lb.next(k)) {
        NodeId self = lb.id(k);
        NodeId q = k[1];
        switch (k[0]) {
        case A:
            if (t.final[q] && t.owner[q] == p)
                lb.z.nfa.set_final(self);
            for (auto [s, q2] : t.barred[q])
                lb.z.add_edge(self, fsa::barred(s), lb.node({A, q2, 0, 0}, Zone::Upper));
            lb.z.add_edge(self, kEpsilon, lb.node({G, q, kInit, 0}, Zone::Upper));
            break;
        case G:
            if (k[2] == kInit) {
                for (auto [h, q2] : t.plain[q])
                    for (auto pair : sw.backward(t.owner[q], h))
                        lb.z.add_edge(self, kEpsilon,
                                      lb.node({G, q2, static_cast<std::uint32_t>(pair), k[3]},
                                              Zone::Upper));
                break;
            }
            {
                StateId top_state = sw.state(k[2]);
                SymbolId top = sw.symbol(k[2]);
                if (top_state == p)
                    lb.z.add_edge(self, fsa::plain(top), lb.node({C, q, 0, 0}, Zone::Lower));
                for (const Rule* push : pushes[k[2]]) {
                    SymbolId below = push->written[1];
                    for (auto [g, q2] : t.plain[q]) {
                        if (g != below)
                            continue;
                        for (auto pair : sw.backward(push->from, push->read)) {
                            NodeId to = lb.node({G, q2, static_cast<std::uint32_t>(pair), k[3]},
                                                Zone::Upper);
                            for (SymbolId z = 0; z < n; ++z)
                                lb.z.add_edge(self, fsa::barred(z), to);
                            if (k[3])
                                lb.z.add_edge(self, kEpsilon, to);
                        }
                    }
                }
            }
            break;
        case C:
            if (t.final[q])
                lb.z.nfa.set_final(self);
            for (auto [s, q2] : t.plain[q])
                lb.z.add_edge(self, fsa::plain(s), lb.node({C, q2, 0, 0}, Zone::Lower));
            break;
        }
    }
    return lb.z;
}

} // namespace

fsa::ConfigAutomaton phase_pre(const UpdsSpec& spec, const fsa::ConfigAutomaton& targets,
                               PhaseKind kind)
{
    if (targets.num_states() != spec.num_states() || targets.num_symbols() != spec.num_symbols())
        throw MalformedInput("phase_pre: automaton does not match the system");
    FlatTargets t(targets);
    SwitchClosure sw(spec);
    fsa::ConfigAutomaton out = fsa::empty_automaton(spec);
    for (StateId p = 0; p < spec.num_states(); ++p) {
        ZonedNfa z = kind == PhaseKind::PopPhase ? pop_phase_component(spec, t, sw, p)
                                                 : push_phase_component(spec, t, sw, p);
        out.component(p) = fsa::reduce(z);
    }
    return out;
}

fsa::ConfigAutomaton bounded_phase_pre_star(const UpdsSpec& spec,
                                            const fsa::ConfigAutomaton& targets, std::size_t k)
{
    // Phases are reflexive and absorb their own repetition, so every sequence
    // of k phase kinds is covered by one of the two alternating sequences.
    if (k == 0)
        return fsa::reduce(targets);
    auto chain = [&](PhaseKind first) {
        fsa::ConfigAutomaton x = targets;
        PhaseKind kind = first;
        for (std::size_t i = 0; i < k; ++i) {
            x = phase_pre(spec, x, kind);
            kind = kind == PhaseKind::PopPhase ? PhaseKind::PushPhase : PhaseKind::PopPhase;
        }
        return x;
    };
    return fsa::reduce(fsa::unite(chain(PhaseKind::PopPhase), chain(PhaseKind::PushPhase)));
}

} // namespace upds
