#pragma once

// Safety queries combining the two approximations. Unsafe needs a configuration
// of the initial set that reaches the forbidden set within k phases, confirmed
// by a concrete run; Safe needs the over-approximation of post* to miss the
// forbidden set. Anything else is Unknown.

#include <optional>
#include <string>

#include "upds/model.hpp"
#include "upds/oracle.hpp"
#include "upds/upper_approx.hpp"

namespace upds {

struct CheckOptions {
    std::size_t k = 3;
    TraceAbstraction abstraction = TraceAbstraction::TopOfStack;
    UpperSeed seed = UpperSeed::Direct;
    /// Control states of the forbidden set; empty means every state.
    std::vector<StateId> states;
    /// Bounds of the search that replays an Unsafe witness.
    std::size_t witness_depth = 64;
    std::size_t witness_size_cap = 32;
    OracleLimits limits{};
};

struct Verdict {
    enum class Kind : std::uint8_t { Safe, Unsafe, Unknown };

    Kind kind = Kind::Unknown;
    /// System the query ran on (the model plus any injected symbols); witness
    /// configurations and traces refer to it.
    UpdsSpec spec;
    std::optional<Configuration> witness;
    Trace trace;
    std::optional<Configuration> reached;
    std::size_t k = 0;
    TraceAbstraction abstraction = TraceAbstraction::TopOfStack;
    UpperSeed seed = UpperSeed::Direct;
    std::string note;
};

const char* to_string(Verdict::Kind kind) noexcept;

/// Names of the symbols injected by check_stack_overflow.
inline constexpr std::string_view kTopSymbol = "%top";
inline constexpr std::string_view kFillSymbol = "%fill";

/// Initial set P x (top fill^m) x L, forbidden set P x (Gamma without top)* x
/// Gamma*: a push that runs past the m fillers overwrites the top marker.
/// `lower` is a plain regex over the model's alphabet.
Verdict check_stack_overflow(const UpdsSpec& spec, std::size_t m, std::string_view lower,
                             const CheckOptions& opts = {});

/// Forbidden set P x Gamma* a x Gamma*: `a` sits just above the stack pointer.
Verdict check_upper_read(const UpdsSpec& spec, const fsa::ConfigAutomaton& initial, SymbolId a,
                         const CheckOptions& opts = {});

/// Shared driver: the verdict for reaching `forbidden` from `initial`.
Verdict check_reachability(const UpdsSpec& spec, const fsa::ConfigAutomaton& initial,
                           const fsa::ConfigAutomaton& forbidden, const CheckOptions& opts = {});

/// Text rendering used by the command-line tool.
std::string describe(const Verdict& v);

} // namespace upds
