#pragma once

// Bounded explicit-state explorers. They are exact on the region they explore and
// serve as ground truth for the symbolic constructions.

#include <functional>
#include <limits>
#include <set>

#include "upds/semantics.hpp"
#include "upds/types.hpp"

namespace upds {

using ConfigSet = std::set<Configuration>;

inline constexpr std::size_t kUnboundedDepth = std::numeric_limits<std::size_t>::max();

struct OracleLimits {
    /// Maximum number of distinct search nodes before ResourceLimit is thrown.
    std::size_t node_budget = 4'000'000;
};

/// Outcome details of a bounded search.
struct OracleReport {
    std::size_t explored = 0;
    /// True when the search ran out of frontier before hitting the depth bound,
    /// i.e. the answer is exact for the size-capped region.
    bool saturated = false;
};

/// Configurations reachable from `initial` in at most `depth` steps, never
/// visiting a configuration whose total stack length exceeds `size_cap`.
ConfigSet oracle_post(const UpdsSpec& spec, const ConfigSet& initial, std::size_t depth,
                      std::size_t size_cap, OracleLimits limits = {}, OracleReport* report = nullptr);

/// Configurations (within `size_cap`) from which some target is reachable by a
/// trace of length <= depth using at most k phases. Implemented as a backward
/// search over inverse rules, tracking the phase count of the reversed trace.
ConfigSet oracle_pre_kphase(const UpdsSpec& spec, const ConfigSet& targets, std::size_t depth,
                            std::size_t k, std::size_t size_cap, OracleLimits limits = {},
                            OracleReport* report = nullptr);

/// Shortest trace (BFS, ties by rule order) from `from` to a configuration
/// satisfying `goal`, or nullopt if none exists within the bounds.
std::optional<Trace> find_trace(const UpdsSpec& spec, const Configuration& from,
                                const std::function<bool(const Configuration&)>& goal,
                                std::size_t depth, std::size_t size_cap,
                                OracleLimits limits = {});

/// A plain pushdown configuration (the upper stack is ignored).
struct LowerConfig {
    StateId state = 0;
    Word stack;

    friend bool operator==(const LowerConfig&, const LowerConfig&) = default;
    friend auto operator<=>(const LowerConfig&, const LowerConfig&) = default;
};

using LowerConfigSet = std::set<LowerConfig>;

std::optional<LowerConfig> pds_apply(const Rule& rule, const LowerConfig& c);

LowerConfigSet oracle_pds_post(const UpdsSpec& spec, const LowerConfigSet& initial,
                               std::size_t depth, std::size_t size_cap,
                               OracleLimits limits = {}, OracleReport* report = nullptr);

LowerConfigSet oracle_pds_pre(const UpdsSpec& spec, const LowerConfigSet& targets,
                              std::size_t depth, std::size_t size_cap,
                              OracleLimits limits = {}, OracleReport* report = nullptr);

LowerConfigSet project_lower(const ConfigSet& configs);

/// All traces of length <= depth from the initial set.
std::set<Trace> upds_traces(const UpdsSpec& spec, const ConfigSet& initial, std::size_t depth);
std::set<Trace> pds_traces(const UpdsSpec& spec, const LowerConfigSet& initial, std::size_t depth);

} // namespace upds
