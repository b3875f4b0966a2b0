#include "upds/config_automaton.hpp"

#include <map>
#include <stdexcept>

namespace upds::fsa {

void ZonedNfa::add_edge(NodeId from, Label label, NodeId to)
{
    Zone zf = zone.at(from), zt = zone.at(to);
    bool ok;
    if (label == kEpsilon)
        ok = !(zf == Zone::Lower && zt == Zone::Upper);
    else if (is_barred(label))
        ok = zf == Zone::Upper && zt == Zone::Upper;
    else
        ok = zt == Zone::Lower;
    if (!ok)
        throw std::logic_error("edge violates the upper/lower zone discipline");
    nfa.add_edge(from, label, to);
}

bool ZonedNfa::zones_consistent() const
{
    if (zone.size() != nfa.size())
        return false;
    for (NodeId n = 0; n < nfa.size(); ++n)
        for (const auto& t : nfa.out(n)) {
            Zone zf = zone[n], zt = zone[t.to];
            if (t.label == kEpsilon) {
                if (zf == Zone::Lower && zt == Zone::Upper)
                    return false;
            } else if (is_barred(t.label)) {
                if (zf != Zone::Upper || zt != Zone::Upper)
                    return false;
            } else if (zt != Zone::Lower) {
                return false;
            }
        }
    return true;
}

std::vector<Label> encode(const Configuration& c)
{
    std::vector<Label> w;
    w.reserve(c.size());
    for (auto s : c.upper)
        w.push_back(barred(s));
    for (auto s : c.lower)
        w.push_back(plain(s));
    return w;
}

Configuration decode(StateId state, std::span<const Label> word)
{
    Configuration c{state, {}, {}};
    for (auto l : word) {
        if (is_barred(l)) {
            if (!c.lower.empty())
                throw MalformedInput("barred letter after the boundary");
            c.upper.push_back(symbol_of(l));
        } else {
            c.lower.push_back(symbol_of(l));
        }
    }
    return c;
}

ConfigAutomaton::ConfigAutomaton(std::size_t num_states, std::size_t num_symbols)
    : num_symbols_(num_symbols), components_(num_states)
{
}

bool ConfigAutomaton::accepts(const Configuration& c) const
{
    if (c.state >= components_.size())
        return false;
    auto w = encode(c);
    return fsa::accepts(components_[c.state].nfa, w);
}

bool ConfigAutomaton::zones_consistent() const
{
    for (const auto& z : components_)
        if (!z.zones_consistent())
            return false;
    return true;
}

std::size_t ConfigAutomaton::total_nodes() const noexcept
{
    std::size_t n = 0;
    for (const auto& z : components_)
        n += z.nfa.size();
    return n;
}

ConfigAutomaton empty_automaton(const UpdsSpec& spec)
{
    return ConfigAutomaton(spec.num_states(), spec.num_symbols());
}

ConfigAutomaton from_config_set(const UpdsSpec& spec, const ConfigSet& configs)
{
    ConfigAutomaton out = empty_automaton(spec);
    std::vector<std::map<std::pair<NodeId, Label>, NodeId>> tries(spec.num_states());
    for (const auto& c : configs) {
        validate(spec, c);
        auto& comp = out.component(c.state);
        if (comp.nfa.size() == 0)
            comp.add_node(Zone::Upper, true);
        NodeId cur = 0;
        for (auto l : encode(c)) {
            auto [it, fresh] = tries[c.state].try_emplace({cur, l}, 0);
            if (fresh) {
                it->second = comp.add_node(is_barred(l) ? Zone::Upper : Zone::Lower);
                comp.add_edge(cur, l, it->second);
            }
            cur = it->second;
        }
        comp.nfa.set_final(cur);
    }
    return out;
}

ConfigAutomaton intersect(const ConfigAutomaton& a, const ConfigAutomaton& b)
{
    if (a.num_states() != b.num_states() || a.num_symbols() != b.num_symbols())
        throw MalformedInput("intersect: automata over different systems");
    ConfigAutomaton out(a.num_states(), a.num_symbols());
    for (StateId p = 0; p < a.num_states(); ++p) {
        const auto& za = a.component(p);
        const auto& zb = b.component(p);
        std::vector<std::pair<NodeId, NodeId>> pairs;
        auto& zo = out.component(p);
        zo.nfa = product(za.nfa, zb.nfa, &pairs);
        zo.zone.resize(pairs.size());
        for (std::size_t i = 0; i < pairs.size(); ++i)
            zo.zone[i] = za.zone[pairs[i].first] == Zone::Upper &&
                                 zb.zone[pairs[i].second] == Zone::Upper
                             ? Zone::Upper
                             : Zone::Lower;
    }
    return out;
}

ConfigAutomaton unite(const ConfigAutomaton& a, const ConfigAutomaton& b)
{
    if (a.num_states() != b.num_states() || a.num_symbols() != b.num_symbols())
        throw MalformedInput("unite: automata over different systems");
    ConfigAutomaton out(a.num_states(), a.num_symbols());
    for (StateId p = 0; p < a.num_states(); ++p) {
        auto& zo = out.component(p);
        zo.nfa = disjoint_union(a.component(p).nfa, b.component(p).nfa);
        zo.zone = a.component(p).zone;
        zo.zone.insert(zo.zone.end(), b.component(p).zone.begin(), b.component(p).zone.end());
    }
    return out;
}

bool is_empty(const ConfigAutomaton& a)
{
    for (StateId p = 0; p < a.num_states(); ++p)
        if (!fsa::is_empty(a.component(p).nfa))
            return false;
    return true;
}

std::optional<Configuration> find_member(const ConfigAutomaton& a)
{
    std::optional<Configuration> best;
    for (StateId p = 0; p < a.num_states(); ++p)
        if (auto w = shortest_word(a.component(p).nfa)) {
            auto c = decode(p, *w);
            if (!best || c.size() < best->size())
                best = std::move(c);
        }
    return best;
}

std::vector<Nfa> project_lower(const ConfigAutomaton& a)
{
    std::vector<Nfa> out;
    for (StateId p = 0; p < a.num_states(); ++p)
        out.push_back(relabel(a.component(p).nfa,
                              [](Label l) { return is_barred(l) ? kEpsilon : symbol_of(l); }));
    return out;
}

std::vector<Nfa> project_upper(const ConfigAutomaton& a)
{
    std::vector<Nfa> out;
    for (StateId p = 0; p < a.num_states(); ++p)
        out.push_back(relabel(a.component(p).nfa,
                              [](Label l) { return is_barred(l) ? symbol_of(l) : kEpsilon; }));
    return out;
}

ZonedNfa remove_epsilons(const ZonedNfa& z)
{
    return ZonedNfa{fsa::remove_epsilons(z.nfa), z.zone};
}

ZonedNfa reduce(const ZonedNfa& z)
{
    auto eps_free = fsa::remove_epsilons(z.nfa);
    std::vector<NodeId> kept;
    auto trimmed = trim(eps_free, &kept);
    std::vector<std::uint32_t> color(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i)
        color[i] = static_cast<std::uint32_t>(z.zone[kept[i]]);
    std::vector<NodeId> block_of;
    ZonedNfa out;
    out.nfa = quotient_bisimulation(trimmed, color, &block_of);
    out.zone.assign(out.nfa.size(), Zone::Lower);
    for (std::size_t i = 0; i < block_of.size(); ++i)
        out.zone[block_of[i]] = static_cast<Zone>(color[i]);
    return out;
}

ConfigAutomaton reduce(const ConfigAutomaton& a)
{
    ConfigAutomaton out(a.num_states(), a.num_symbols());
    for (StateId p = 0; p < a.num_states(); ++p)
        out.component(p) = reduce(a.component(p));
    return out;
}

ConfigSet members_upto(const ConfigAutomaton& a, std::size_t max_size)
{
    ConfigSet out;
    for (StateId p = 0; p < a.num_states(); ++p)
        for (const auto& w : words_upto(a.component(p).nfa, max_size))
            out.insert(decode(p, w));
    return out;
}

ConfigSet all_configurations(const UpdsSpec& spec, std::size_t max_size)
{
    ConfigSet out;
    const auto n = spec.num_symbols();
    std::vector<Word> words{{}};
    std::vector<std::vector<Word>> by_len{{Word{}}};
    for (std::size_t len = 1; len <= max_size; ++len) {
        std::vector<Word> next;
        for (const auto& w : by_len.back())
            for (SymbolId s = 0; s < n; ++s) {
                auto v = w;
                v.push_back(s);
                next.push_back(std::move(v));
            }
        by_len.push_back(std::move(next));
    }
    for (StateId p = 0; p < spec.num_states(); ++p)
        for (std::size_t total = 0; total <= max_size; ++total)
            for (std::size_t u = 0; u <= total; ++u)
                for (const auto& wu : by_len[u])
                    for (const auto& wl : by_len[total - u])
                        out.insert(Configuration{p, wu, wl});
    return out;
}

} // namespace upds::fsa
