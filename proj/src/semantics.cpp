#include "upds/semantics.hpp"

#include <string>

namespace upds {

RuleNotEnabled::RuleNotEnabled(std::size_t index)
    : std::runtime_error("rule at trace index " + std::to_string(index) + " is not enabled"),
      index_(index)
{
}

std::optional<Configuration> apply(const Rule& rule, const Configuration& c)
{
    if (c.state != rule.from || c.lower.empty() || c.lower.front() != rule.read)
        return std::nullopt;

    Configuration next;
    next.state = rule.to;
    switch (rule.kind()) {
    case RuleKind::Switch:
        next.upper = c.upper;
        next.lower = c.lower;
        next.lower.front() = rule.written[0];
        break;
    case RuleKind::Pop:
        next.upper = c.upper;
        next.upper.push_back(rule.read);
        next.lower.assign(c.lower.begin() + 1, c.lower.end());
        break;
    case RuleKind::Push:
        next.upper = c.upper;
        if (!next.upper.empty())
            next.upper.pop_back();
        next.lower.reserve(c.lower.size() + 1);
        next.lower.push_back(rule.written[0]);
        next.lower.push_back(rule.written[1]);
        next.lower.insert(next.lower.end(), c.lower.begin() + 1, c.lower.end());
        break;
    }
    return next;
}

std::vector<std::pair<RuleId, Configuration>> step(const UpdsSpec& spec, const Configuration& c)
{
    validate(spec, c);
    std::vector<std::pair<RuleId, Configuration>> out;
    const auto& rules = spec.rules();
    for (RuleId i = 0; i < rules.size(); ++i)
        if (auto next = apply(rules[i], c))
            out.emplace_back(i, std::move(*next));
    return out;
}

std::vector<Configuration> unapply(const UpdsSpec& spec, const Rule& rule, const Configuration& c)
{
    std::vector<Configuration> out;
    if (c.state != rule.to)
        return out;

    switch (rule.kind()) {
    case RuleKind::Switch:
        if (!c.lower.empty() && c.lower.front() == rule.written[0]) {
            Configuration prev{rule.from, c.upper, c.lower};
            prev.lower.front() = rule.read;
            out.push_back(std::move(prev));
        }
        break;
    case RuleKind::Pop:
        if (!c.upper.empty() && c.upper.back() == rule.read) {
            Configuration prev{rule.from, c.upper, {}};
            prev.upper.pop_back();
            prev.lower.reserve(c.lower.size() + 1);
            prev.lower.push_back(rule.read);
            prev.lower.insert(prev.lower.end(), c.lower.begin(), c.lower.end());
            out.push_back(std::move(prev));
        }
        break;
    case RuleKind::Push:
        if (c.lower.size() >= 2 && c.lower[0] == rule.written[0] && c.lower[1] == rule.written[1]) {
            Word lower;
            lower.reserve(c.lower.size() - 1);
            lower.push_back(rule.read);
            lower.insert(lower.end(), c.lower.begin() + 2, c.lower.end());
            // The consumed upper symbol is unknown; any one of them (or none, if the
            // upper stack was already empty) leads to c.
            for (SymbolId x = 0; x < spec.num_symbols(); ++x) {
                Configuration prev{rule.from, c.upper, lower};
                prev.upper.push_back(x);
                out.push_back(std::move(prev));
            }
            if (c.upper.empty())
                out.push_back(Configuration{rule.from, {}, std::move(lower)});
        }
        break;
    }
    return out;
}

Configuration run_trace(const UpdsSpec& spec, const Configuration& c, std::span<const RuleId> trace)
{
    validate(spec, c);
    Configuration cur = c;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (trace[i] >= spec.num_rules())
            throw RuleNotEnabled(i);
        auto next = apply(spec.rule(trace[i]), cur);
        if (!next)
            throw RuleNotEnabled(i);
        cur = std::move(*next);
    }
    return cur;
}

Word upsilon(const UpdsSpec& spec, std::span<const RuleId> trace, const Configuration& c)
{
    Word w = c.upper;
    for (auto id : trace) {
        const auto& r = spec.rule(id);
        switch (r.kind()) {
        case RuleKind::Switch: break;
        case RuleKind::Pop: w.push_back(r.read); break;
        case RuleKind::Push:
            if (!w.empty())
                w.pop_back();
            break;
        }
    }
    return w;
}

void PhaseCounter::add(RuleKind kind) noexcept
{
    if (blocks == 0)
        blocks = 1;
    if (kind == RuleKind::Switch)
        return;
    auto wanted = kind == RuleKind::Push ? Block::Push : Block::Pop;
    if (current == Block::None)
        current = wanted;
    else if (current != wanted) {
        ++blocks;
        current = wanted;
    }
}

std::size_t count_phases(const UpdsSpec& spec, std::span<const RuleId> trace)
{
    PhaseCounter counter;
    for (auto id : trace)
        counter.add(spec.rule(id).kind());
    return counter.blocks;
}

bool is_meaningful(const UpdsSpec& spec, std::span<const RuleId> trace)
{
    for (std::size_t i = 1; i < trace.size(); ++i)
        if (spec.rule(trace[i - 1]).to != spec.rule(trace[i]).from)
            return false;
    return true;
}

} // namespace upds
