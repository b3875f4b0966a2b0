#include "upds/nfa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace upds::fsa {

Nfa::Nfa(std::size_t nodes) : out_(nodes), initial_(nodes, 0), final_(nodes, 0) {}

NodeId Nfa::add_node(bool initial, bool final)
{
    out_.emplace_back();
    initial_.push_back(initial);
    final_.push_back(final);
    return static_cast<NodeId>(out_.size() - 1);
}

bool Nfa::add_edge(NodeId from, Label label, NodeId to)
{
    if (from >= size() || to >= size())
        throw std::out_of_range("edge references an unknown node");
    auto& list = out_[from];
    Transition t{label, to};
    if (std::find(list.begin(), list.end(), t) != list.end())
        return false;
    list.push_back(t);
    return true;
}

bool Nfa::has_edge(NodeId from, Label label, NodeId to) const
{
    const auto& list = out_.at(from);
    return std::find(list.begin(), list.end(), Transition{label, to}) != list.end();
}

std::size_t Nfa::num_edges() const noexcept
{
    std::size_t n = 0;
    for (const auto& l : out_)
        n += l.size();
    return n;
}

std::vector<NodeId> Nfa::initials() const
{
    std::vector<NodeId> out;
    for (NodeId i = 0; i < size(); ++i)
        if (initial_[i])
            out.push_back(i);
    return out;
}

std::vector<NodeId> Nfa::finals() const
{
    std::vector<NodeId> out;
    for (NodeId i = 0; i < size(); ++i)
        if (final_[i])
            out.push_back(i);
    return out;
}

void Nfa::canonicalize()
{
    for (auto& l : out_) {
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
    }
}

NodeSet epsilon_closure(const Nfa& nfa, std::span<const NodeId> from)
{
    std::vector<std::uint8_t> mark(nfa.size(), 0);
    std::vector<NodeId> stack;
    for (auto n : from)
        if (!mark[n]) {
            mark[n] = 1;
            stack.push_back(n);
        }
    while (!stack.empty()) {
        auto n = stack.back();
        stack.pop_back();
        for (const auto& t : nfa.out(n))
            if (t.label == kEpsilon && !mark[t.to]) {
                mark[t.to] = 1;
                stack.push_back(t.to);
            }
    }
    NodeSet out;
    for (NodeId i = 0; i < nfa.size(); ++i)
        if (mark[i])
            out.push_back(i);
    return out;
}

NodeSet step_closed(const Nfa& nfa, const NodeSet& closed, Label label)
{
    std::vector<NodeId> next;
    for (auto n : closed)
        for (const auto& t : nfa.out(n))
            if (t.label == label)
                next.push_back(t.to);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    return epsilon_closure(nfa, next);
}

bool accepts(const Nfa& nfa, std::span<const Label> word)
{
    auto init = nfa.initials();
    auto cur = epsilon_closure(nfa, init);
    for (auto l : word) {
        if (cur.empty())
            return false;
        cur = step_closed(nfa, cur, l);
    }
    return std::any_of(cur.begin(), cur.end(), [&](NodeId n) { return nfa.is_final(n); });
}

bool accepts_from(const Nfa& nfa, NodeId start, std::span<const Label> word)
{
    NodeId from[] = {start};
    auto cur = epsilon_closure(nfa, from);
    for (auto l : word) {
        if (cur.empty())
            return false;
        cur = step_closed(nfa, cur, l);
    }
    return std::any_of(cur.begin(), cur.end(), [&](NodeId n) { return nfa.is_final(n); });
}

bool is_empty(const Nfa& nfa)
{
    std::vector<std::uint8_t> seen(nfa.size(), 0);
    std::vector<NodeId> stack = nfa.initials();
    for (auto n : stack)
        seen[n] = 1;
    while (!stack.empty()) {
        auto n = stack.back();
        stack.pop_back();
        if (nfa.is_final(n))
            return false;
        for (const auto& t : nfa.out(n))
            if (!seen[t.to]) {
                seen[t.to] = 1;
                stack.push_back(t.to);
            }
    }
    return true;
}

std::optional<std::vector<Label>> shortest_word(const Nfa& nfa)
{
    // 0-1 BFS: epsilon edges have weight 0.
    constexpr std::size_t kInf = ~std::size_t{0};
    std::vector<std::size_t> dist(nfa.size(), kInf);
    std::vector<std::pair<NodeId, Label>> parent(nfa.size(), {0, kEpsilon});
    std::deque<NodeId> queue;
    for (auto n : nfa.initials()) {
        dist[n] = 0;
        queue.push_back(n);
    }
    std::vector<std::uint8_t> done(nfa.size(), 0);
    while (!queue.empty()) {
        auto n = queue.front();
        queue.pop_front();
        if (done[n])
            continue;
        done[n] = 1;
        if (nfa.is_final(n)) {
            std::vector<Label> word;
            while (dist[n] != 0 || !nfa.is_initial(n)) {
                auto [prev, label] = parent[n];
                if (label != kEpsilon)
                    word.push_back(label);
                n = prev;
            }
            std::reverse(word.begin(), word.end());
            return word;
        }
        for (const auto& t : nfa.out(n)) {
            std::size_t w = t.label == kEpsilon ? 0 : 1;
            if (dist[n] + w < dist[t.to]) {
                dist[t.to] = dist[n] + w;
                parent[t.to] = {n, t.label};
                if (w == 0)
                    queue.push_front(t.to);
                else
                    queue.push_back(t.to);
            }
        }
    }
    return std::nullopt;
}

Nfa remove_epsilons(const Nfa& nfa)
{
    Nfa out(nfa.size());
    for (NodeId n = 0; n < nfa.size(); ++n) {
        NodeId self[] = {n};
        auto closure = epsilon_closure(nfa, self);
        out.set_initial(n, nfa.is_initial(n));
        for (auto m : closure) {
            if (nfa.is_final(m))
                out.set_final(n);
            for (const auto& t : nfa.out(m))
                if (t.label != kEpsilon)
                    out.add_edge(n, t.label, t.to);
        }
    }
    out.canonicalize();
    return out;
}

Nfa trim(const Nfa& nfa, std::vector<NodeId>* kept)
{
    std::vector<std::uint8_t> fwd(nfa.size(), 0), bwd(nfa.size(), 0);
    std::vector<NodeId> stack = nfa.initials();
    for (auto n : stack)
        fwd[n] = 1;
    std::vector<std::vector<NodeId>> preds(nfa.size());
    for (NodeId n = 0; n < nfa.size(); ++n)
        for (const auto& t : nfa.out(n))
            preds[t.to].push_back(n);
    while (!stack.empty()) {
        auto n = stack.back();
        stack.pop_back();
        for (const auto& t : nfa.out(n))
            if (!fwd[t.to]) {
                fwd[t.to] = 1;
                stack.push_back(t.to);
            }
    }
    stack = nfa.finals();
    for (auto n : stack)
        bwd[n] = 1;
    while (!stack.empty()) {
        auto n = stack.back();
        stack.pop_back();
        for (auto p : preds[n])
            if (!bwd[p]) {
                bwd[p] = 1;
                stack.push_back(p);
            }
    }

    std::vector<NodeId> map(nfa.size(), kEpsilon);
    std::vector<NodeId> order;
    Nfa out;
    for (NodeId n = 0; n < nfa.size(); ++n)
        if (fwd[n] && bwd[n]) {
            map[n] = out.add_node(nfa.is_initial(n), nfa.is_final(n));
            order.push_back(n);
        }
    for (auto n : order)
        for (const auto& t : nfa.out(n))
            if (map[t.to] != kEpsilon)
                out.add_edge(map[n], t.label, map[t.to]);
    if (kept)
        *kept = std::move(order);
    return out;
}

Nfa reverse(const Nfa& nfa)
{
    Nfa out(nfa.size());
    for (NodeId n = 0; n < nfa.size(); ++n) {
        out.set_initial(n, nfa.is_final(n));
        out.set_final(n, nfa.is_initial(n));
        for (const auto& t : nfa.out(n))
            out.add_edge(t.to, t.label, n);
    }
    out.canonicalize();
    return out;
}

Nfa disjoint_union(const Nfa& a, const Nfa& b)
{
    Nfa out(a.size() + b.size());
    auto copy = [&out](const Nfa& src, NodeId offset) {
        for (NodeId n = 0; n < src.size(); ++n) {
            out.set_initial(n + offset, src.is_initial(n));
            out.set_final(n + offset, src.is_final(n));
            for (const auto& t : src.out(n))
                out.add_edge(n + offset, t.label, t.to + offset);
        }
    };
    copy(a, 0);
    copy(b, static_cast<NodeId>(a.size()));
    return out;
}

Nfa product(const Nfa& a, const Nfa& b, std::vector<std::pair<NodeId, NodeId>>* pairs)
{
    Nfa out;
    std::map<std::pair<NodeId, NodeId>, NodeId> index;
    std::vector<std::pair<NodeId, NodeId>> nodes;
    std::vector<NodeId> work;
    auto intern = [&](NodeId x, NodeId y) {
        auto [it, fresh] = index.try_emplace({x, y}, 0);
        if (fresh) {
            it->second = out.add_node(false, a.is_final(x) && b.is_final(y));
            nodes.emplace_back(x, y);
            work.push_back(it->second);
        }
        return it->second;
    };
    for (auto x : a.initials())
        for (auto y : b.initials())
            out.set_initial(intern(x, y));
    while (!work.empty()) {
        auto n = work.back();
        work.pop_back();
        auto [x, y] = nodes[n];
        for (const auto& ta : a.out(x)) {
            if (ta.label == kEpsilon) {
                out.add_edge(n, kEpsilon, intern(ta.to, y));
                continue;
            }
            for (const auto& tb : b.out(y))
                if (tb.label == ta.label)
                    out.add_edge(n, ta.label, intern(ta.to, tb.to));
        }
        for (const auto& tb : b.out(y))
            if (tb.label == kEpsilon)
                out.add_edge(n, kEpsilon, intern(x, tb.to));
    }
    if (pairs)
        *pairs = std::move(nodes);
    return out;
}

Nfa relabel(const Nfa& nfa, const std::function<Label(Label)>& f)
{
    Nfa out(nfa.size());
    for (NodeId n = 0; n < nfa.size(); ++n) {
        out.set_initial(n, nfa.is_initial(n));
        out.set_final(n, nfa.is_final(n));
        for (const auto& t : nfa.out(n))
            out.add_edge(n, t.label == kEpsilon ? kEpsilon : f(t.label), t.to);
    }
    return out;
}

Nfa quotient_bisimulation(const Nfa& nfa, std::span<const std::uint32_t> color,
                          std::vector<NodeId>* block_of)
{
    const std::size_t n = nfa.size();
    std::vector<NodeId> block(n);
    {
        std::map<std::pair<std::uint32_t, bool>, NodeId> ids;
        for (NodeId i = 0; i < n; ++i) {
            auto key = std::make_pair(color.empty() ? 0u : color[i], nfa.is_final(i));
            auto [it, fresh] = ids.try_emplace(key, static_cast<NodeId>(ids.size()));
            block[i] = it->second;
        }
    }
    std::size_t num_blocks = 0;
    for (;;) {
        std::map<std::pair<NodeId, std::vector<std::pair<Label, NodeId>>>, NodeId> ids;
        std::vector<NodeId> next(n);
        for (NodeId i = 0; i < n; ++i) {
            std::vector<std::pair<Label, NodeId>> sig;
            sig.reserve(nfa.out(i).size());
            for (const auto& t : nfa.out(i))
                sig.emplace_back(t.label, block[t.to]);
            std::sort(sig.begin(), sig.end());
            sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
            auto [it, fresh] =
                ids.try_emplace({block[i], std::move(sig)}, static_cast<NodeId>(ids.size()));
            next[i] = it->second;
        }
        block = std::move(next);
        if (ids.size() == num_blocks)
            break;
        num_blocks = ids.size();
    }

    Nfa out(num_blocks);
    for (NodeId i = 0; i < n; ++i) {
        if (nfa.is_initial(i))
            out.set_initial(block[i]);
        if (nfa.is_final(i))
            out.set_final(block[i]);
        for (const auto& t : nfa.out(i))
            out.add_edge(block[i], t.label, block[t.to]);
    }
    out.canonicalize();
    if (block_of)
        *block_of = std::move(block);
    return out;
}

std::set<Label> labels_from(const Nfa& nfa, const NodeSet& closed)
{
    std::set<Label> out;
    for (auto n : closed)
        for (const auto& t : nfa.out(n))
            if (t.label != kEpsilon)
                out.insert(t.label);
    return out;
}

std::set<std::vector<Label>> words_upto(const Nfa& nfa, std::size_t max_len)
{
    std::set<std::vector<Label>> out;
    auto init = nfa.initials();
    std::vector<std::pair<NodeSet, std::vector<Label>>> frontier{{epsilon_closure(nfa, init), {}}};
    for (std::size_t len = 0;; ++len) {
        std::vector<std::pair<NodeSet, std::vector<Label>>> next;
        for (auto& [set, word] : frontier) {
            if (std::any_of(set.begin(), set.end(), [&](NodeId n) { return nfa.is_final(n); }))
                out.insert(word);
            if (len == max_len)
                continue;
            for (auto l : labels_from(nfa, set)) {
                auto to = step_closed(nfa, set, l);
                auto w = word;
                w.push_back(l);
                next.emplace_back(std::move(to), std::move(w));
            }
        }
        if (len == max_len || next.empty())
            break;
        frontier = std::move(next);
    }
    return out;
}

} // namespace upds::fsa
