#pragma once

#include <span>
#include <utility>
#include <vector>

#include "upds/types.hpp"

namespace upds {

/// Raised by run_trace when step `index` of the trace cannot fire.
class RuleNotEnabled : public std::runtime_error {
public:
    explicit RuleNotEnabled(std::size_t index);
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// Applies one rule if it is enabled in c.
std::optional<Configuration> apply(const Rule& rule, const Configuration& c);

/// All immediate successors of c, in rule declaration order.
std::vector<std::pair<RuleId, Configuration>> step(const UpdsSpec& spec, const Configuration& c);

/// Immediate predecessors of c via `rule` (inverse of apply).
std::vector<Configuration> unapply(const UpdsSpec& spec, const Rule& rule, const Configuration& c);

Configuration run_trace(const UpdsSpec& spec, const Configuration& c, std::span<const RuleId> trace);

/// Virtual upper stack obtained by replaying the write-only upper-stack effect of
/// `trace` from c, ignoring control states and the lower stack.
Word upsilon(const UpdsSpec& spec, std::span<const RuleId> trace, const Configuration& c);

/// Minimal number of blocks, each using only push/switch or only pop/switch rules.
std::size_t count_phases(const UpdsSpec& spec, std::span<const RuleId> trace);

/// Consecutive rules chain through control states.
bool is_meaningful(const UpdsSpec& spec, std::span<const RuleId> trace);

/// Incremental phase counter; shared by count_phases and the bounded-phase oracle.
struct PhaseCounter {
    enum class Block : std::uint8_t { None, Push, Pop };

    std::size_t blocks = 0;
    Block current = Block::None;

    void add(RuleKind kind) noexcept;
    friend bool operator==(const PhaseCounter&, const PhaseCounter&) = default;
};

} // namespace upds
