#pragma once

// Graphviz export. Output depends only on the input: nodes are emitted in id
// order and edges sorted by (source, label, target).

#include <string>
#include <string_view>

#include "upds/config_automaton.hpp"
#include "upds/grammar.hpp"
#include "upds/upper_approx.hpp"

namespace upds {

/// One cluster per control state; barred letters print as "~a", epsilon as "_".
/// Lower-zone nodes are shaded.
std::string export_dot(const UpdsSpec& spec, const fsa::ConfigAutomaton& a,
                       std::string_view name = "configurations");
/// Edges are labelled with the rules they stand for.
std::string export_dot(const UpdsSpec& spec, const TraceAutomaton& at,
                       std::string_view name = "traces");
std::string export_dot(const UpdsSpec& spec, const UpperAutomaton& au,
                       std::string_view name = "upper");
/// One box per production, grouped into start, simulation and final clusters.
std::string export_dot(const CsGrammar& g, std::string_view name = "grammar");

} // namespace upds
