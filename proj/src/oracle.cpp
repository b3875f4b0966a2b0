#include "upds/oracle.hpp"

#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace upds {

namespace {

void charge(std::size_t& explored, const OracleLimits& limits, const char* who)
{
    if (++explored > limits.node_budget)
        throw ResourceLimit(std::string(who) + ": node budget exhausted", explored);
}

} // namespace

ConfigSet oracle_post(const UpdsSpec& spec, const ConfigSet& initial, std::size_t depth,
                      std::size_t size_cap, OracleLimits limits, OracleReport* report)
{
    ConfigSet seen;
    std::vector<Configuration> frontier;
    std::size_t explored = 0;
    for (const auto& c : initial) {
        validate(spec, c);
        if (c.size() <= size_cap && seen.insert(c).second) {
            charge(explored, limits, "oracle_post");
            frontier.push_back(c);
        }
    }

    for (std::size_t level = 0; level < depth && !frontier.empty(); ++level) {
        std::vector<Configuration> next;
        for (const auto& c : frontier)
            for (auto& [rule, succ] : step(spec, c))
                if (succ.size() <= size_cap && !seen.contains(succ)) {
                    charge(explored, limits, "oracle_post");
                    seen.insert(succ);
                    next.push_back(std::move(succ));
                }
        frontier = std::move(next);
    }
    if (report) {
        report->explored = explored;
        report->saturated = frontier.empty();
    }
    return seen;
}

namespace {

struct PhaseNode {
    Configuration config;
    PhaseCounter phases;

    friend bool operator==(const PhaseNode&, const PhaseNode&) = default;
};

struct PhaseNodeHash {
    std::size_t operator()(const PhaseNode& n) const noexcept
    {
        return ConfigurationHash{}(n.config) * 31 + n.phases.blocks * 7 +
               static_cast<std::size_t>(n.phases.current);
    }
};

} // namespace

ConfigSet oracle_pre_kphase(const UpdsSpec& spec, const ConfigSet& targets, std::size_t depth,
                            std::size_t k, std::size_t size_cap, OracleLimits limits,
                            OracleReport* report)
{
    // Phase counts are invariant under reversing a trace, so the reversed trace
    // discovered by the backward search can be counted incrementally.
    std::unordered_set<PhaseNode, PhaseNodeHash> seen;
    ConfigSet result;
    std::vector<PhaseNode> frontier;
    std::size_t explored = 0;
    for (const auto& t : targets) {
        validate(spec, t);
        if (t.size() > size_cap)
            continue;
        PhaseNode node{t, {}};
        if (seen.insert(node).second) {
            charge(explored, limits, "oracle_pre_kphase");
            result.insert(t);
            frontier.push_back(std::move(node));
        }
    }

    for (std::size_t level = 0; level < depth && !frontier.empty(); ++level) {
        std::vector<PhaseNode> next;
        for (const auto& node : frontier) {
            for (const auto& rule : spec.rules()) {
                PhaseCounter phases = node.phases;
                phases.add(rule.kind());
                if (phases.blocks > k)
                    continue;
                for (auto& prev : unapply(spec, rule, node.config)) {
                    if (prev.size() > size_cap)
                        continue;
                    PhaseNode pn{std::move(prev), phases};
                    if (seen.contains(pn))
                        continue;
                    charge(explored, limits, "oracle_pre_kphase");
                    seen.insert(pn);
                    result.insert(pn.config);
                    next.push_back(std::move(pn));
                }
            }
        }
        frontier = std::move(next);
    }
    if (report) {
        report->explored = explored;
        report->saturated = frontier.empty();
    }
    return result;
}

std::optional<Trace> find_trace(const UpdsSpec& spec, const Configuration& from,
                                const std::function<bool(const Configuration&)>& goal,
                                std::size_t depth, std::size_t size_cap, OracleLimits limits)
{
    validate(spec, from);
    if (goal(from))
        return Trace{};

    struct Parent {
        std::size_t index;
        RuleId rule;
    };
    std::vector<Configuration> nodes{from};
    std::vector<Parent> parents{{0, 0}};
    std::unordered_map<Configuration, std::size_t, ConfigurationHash> index{{from, 0}};
    std::size_t explored = 1;

    auto rebuild = [&](std::size_t at) {
        Trace t;
        while (at != 0) {
            t.push_back(parents[at].rule);
            at = parents[at].index;
        }
        return Trace(t.rbegin(), t.rend());
    };

    std::size_t level_begin = 0;
    for (std::size_t level = 0; level < depth; ++level) {
        std::size_t level_end = nodes.size();
        if (level_begin == level_end)
            break;
        for (std::size_t i = level_begin; i < level_end; ++i) {
            auto succs = step(spec, nodes[i]);
            for (auto& [rule, succ] : succs) {
                if (succ.size() > size_cap || index.contains(succ))
                    continue;
                charge(explored, limits, "find_trace");
                index.emplace(succ, nodes.size());
                parents.push_back({i, rule});
                bool hit = goal(succ);
                nodes.push_back(std::move(succ));
                if (hit)
                    return rebuild(nodes.size() - 1);
            }
        }
        level_begin = level_end;
    }
    return std::nullopt;
}

std::optional<LowerConfig> pds_apply(const Rule& rule, const LowerConfig& c)
{
    if (c.state != rule.from || c.stack.empty() || c.stack.front() != rule.read)
        return std::nullopt;
    LowerConfig next{rule.to, rule.written};
    next.stack.insert(next.stack.end(), c.stack.begin() + 1, c.stack.end());
    return next;
}

LowerConfigSet oracle_pds_post(const UpdsSpec& spec, const LowerConfigSet& initial,
                               std::size_t depth, std::size_t size_cap, OracleLimits limits,
                               OracleReport* report)
{
    LowerConfigSet seen;
    std::vector<LowerConfig> frontier;
    std::size_t explored = 0;
    for (const auto& c : initial)
        if (c.stack.size() <= size_cap && seen.insert(c).second) {
            charge(explored, limits, "oracle_pds_post");
            frontier.push_back(c);
        }
    for (std::size_t level = 0; level < depth && !frontier.empty(); ++level) {
        std::vector<LowerConfig> next;
        for (const auto& c : frontier)
            for (const auto& rule : spec.rules())
                if (auto succ = pds_apply(rule, c);
                    succ && succ->stack.size() <= size_cap && !seen.contains(*succ)) {
                    charge(explored, limits, "oracle_pds_post");
                    seen.insert(*succ);
                    next.push_back(std::move(*succ));
                }
        frontier = std::move(next);
    }
    if (report) {
        report->explored = explored;
        report->saturated = frontier.empty();
    }
    return seen;
}

LowerConfigSet oracle_pds_pre(const UpdsSpec& spec, const LowerConfigSet& targets,
                              std::size_t depth, std::size_t size_cap, OracleLimits limits,
                              OracleReport* report)
{
    LowerConfigSet seen;
    std::vector<LowerConfig> frontier;
    std::size_t explored = 0;
    for (const auto& c : targets)
        if (c.stack.size() <= size_cap && seen.insert(c).second) {
            charge(explored, limits, "oracle_pds_pre");
            frontier.push_back(c);
        }
    for (std::size_t level = 0; level < depth && !frontier.empty(); ++level) {
        std::vector<LowerConfig> next;
        for (const auto& c : frontier)
            for (const auto& rule : spec.rules()) {
                if (c.state != rule.to || c.stack.size() < rule.written.size())
                    continue;
                if (!std::equal(rule.written.begin(), rule.written.end(), c.stack.begin()))
                    continue;
                LowerConfig prev{rule.from, {rule.read}};
                prev.stack.insert(prev.stack.end(), c.stack.begin() + rule.written.size(),
                                  c.stack.end());
                if (prev.stack.size() > size_cap || seen.contains(prev))
                    continue;
                charge(explored, limits, "oracle_pds_pre");
                seen.insert(prev);
                next.push_back(std::move(prev));
            }
        frontier = std::move(next);
    }
    if (report) {
        report->explored = explored;
        report->saturated = frontier.empty();
    }
    return seen;
}

LowerConfigSet project_lower(const ConfigSet& configs)
{
    LowerConfigSet out;
    for (const auto& c : configs)
        out.insert(LowerConfig{c.state, c.lower});
    return out;
}

namespace {

template <typename Node, typename Successors>
std::set<Trace> enumerate_traces(const std::set<Node>& initial, std::size_t depth, Successors succ)
{
    std::set<Trace> out;
    std::vector<std::pair<Node, Trace>> frontier;
    for (const auto& c : initial)
        frontier.emplace_back(c, Trace{});
    if (!initial.empty())
        out.insert(Trace{});
    for (std::size_t level = 0; level < depth && !frontier.empty(); ++level) {
        std::vector<std::pair<Node, Trace>> next;
        for (const auto& [c, t] : frontier)
            for (auto& [rule, s] : succ(c)) {
                Trace nt = t;
                nt.push_back(rule);
                out.insert(nt);
                next.emplace_back(std::move(s), std::move(nt));
            }
        frontier = std::move(next);
    }
    return out;
}

} // namespace

std::set<Trace> upds_traces(const UpdsSpec& spec, const ConfigSet& initial, std::size_t depth)
{
    return enumerate_traces(initial, depth, [&spec](const Configuration& c) { return step(spec, c); });
}

std::set<Trace> pds_traces(const UpdsSpec& spec, const LowerConfigSet& initial, std::size_t depth)
{
    return enumerate_traces(initial, depth, [&spec](const LowerConfig& c) {
        std::vector<std::pair<RuleId, LowerConfig>> out;
        for (RuleId i = 0; i < spec.num_rules(); ++i)
            if (auto s = pds_apply(spec.rule(i), c))
                out.emplace_back(i, std::move(*s));
        return out;
    });
}

} // namespace upds
