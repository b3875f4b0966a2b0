#pragma once

#include <random>

#include "upds/config_automaton.hpp"
#include "upds/types.hpp"
#include "upds/upper_approx.hpp"

namespace upds::testing {

/// States p p'; symbols a b x y bot; rules S_x S_y C R_a R_b E (ids 0..5).
UpdsSpec make_e1();
/// p -> "^ x (y x)* bot"
fsa::ConfigAutomaton c1_automaton(const UpdsSpec& e1);

/// State p; symbols a b c; rules C_0 C_1 R_a R_b (ids 0..3).
UpdsSpec make_e2();
/// p -> "(a b)* ^ c"
fsa::ConfigAutomaton c2_automaton(const UpdsSpec& e2);

struct RandomSpecShape {
    std::size_t max_states = 3;
    std::size_t max_symbols = 3;
    std::size_t max_rules = 6;
};

UpdsSpec random_spec(std::mt19937& rng, RandomSpecShape shape = {});

/// A random finite configuration set with total stack sizes in [min_size, max_size].
ConfigSet random_configs(std::mt19937& rng, const UpdsSpec& spec, std::size_t count,
                         std::size_t min_size, std::size_t max_size);

Configuration config(const UpdsSpec& spec, std::string_view text);

/// Random meaningful, prefix-closed trace automaton: node owners are random,
/// every edge is a rule from the owner of its source to the owner of its target.
TraceAutomaton random_trace_automaton(std::mt19937& rng, const UpdsSpec& spec,
                                      std::size_t max_nodes, std::size_t max_edges);

/// Path of a file shipped in the fixtures directory.
std::string fixture_path(std::string_view name);
std::string golden_path(std::string_view name);

} // namespace upds::testing
