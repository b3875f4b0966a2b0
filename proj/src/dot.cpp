#include "upds/dot.hpp"

#include <algorithm>
#include <sstream>

namespace upds {

using fsa::kEpsilon;
using fsa::NodeId;

namespace {

std::string quote(std::string_view s)
{
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\')
            out += '\\';
        out += ch;
    }
    return out + '"';
}

struct Edge {
    NodeId from;
    std::string label;
    NodeId to;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

std::vector<Edge> sorted_edges(const fsa::Nfa& nfa,
                               const std::function<std::string(fsa::Label)>& label)
{
    std::vector<Edge> edges;
    for (NodeId q = 0; q < nfa.size(); ++q)
        for (const auto& e : nfa.out(q))
            edges.push_back({q, e.label == kEpsilon ? "_" : label(e.label), e.to});
    std::sort(edges.begin(), edges.end());
    return edges;
}

// Nodes named <prefix><id>; initial nodes get an arrow from an invisible point.
void write_nfa(std::ostream& out, const fsa::Nfa& nfa, const std::string& prefix,
               const std::function<std::string(fsa::Label)>& label,
               const std::function<std::string(NodeId)>& attrs, const std::string& indent)
{
    for (NodeId q = 0; q < nfa.size(); ++q) {
        out << indent << quote(prefix + std::to_string(q)) << " [label="
            << quote(std::to_string(q)) << ", shape=" << (nfa.is_final(q) ? "doublecircle" : "circle")
            << attrs(q) << "];\n";
    }
    for (NodeId q = 0; q < nfa.size(); ++q)
        if (nfa.is_initial(q)) {
            auto start = "start:" + prefix + std::to_string(q);
            out << indent << quote(start) << " [shape=point];\n";
            out << indent << quote(start) << " -> " << quote(prefix + std::to_string(q)) << ";\n";
        }
    for (const auto& e : sorted_edges(nfa, label))
        out << indent << quote(prefix + std::to_string(e.from)) << " -> "
            << quote(prefix + std::to_string(e.to)) << " [label=" << quote(e.label) << "];\n";
}

} // namespace

std::string export_dot(const UpdsSpec& spec, const fsa::ConfigAutomaton& a, std::string_view name)
{
    std::ostringstream out;
    out << "digraph " << quote(name) << " {\n  rankdir=LR;\n";
    auto label = [&](fsa::Label l) {
        auto s = fsa::symbol_of(l);
        std::string n = s < spec.num_symbols() ? spec.symbol_name(s) : "#" + std::to_string(s);
        return fsa::is_barred(l) ? "~" + n : n;
    };
    for (StateId p = 0; p < a.num_states(); ++p) {
        const auto& z = a.component(p);
        std::string pname = p < spec.num_states() ? spec.state_name(p) : std::to_string(p);
        out << "  subgraph " << quote("cluster_" + pname) << " {\n    label=" << quote(pname)
            << ";\n";
        write_nfa(out, z.nfa, pname + ".", label,
                  [&](NodeId q) {
                      return z.zone[q] == fsa::Zone::Lower ? std::string(", style=filled, fillcolor=lightgrey")
                                                           : std::string();
                  },
                  "    ");
        out << "  }\n";
    }
    out << "}\n";
    return out.str();
}

std::string export_dot(const UpdsSpec& spec, const TraceAutomaton& at, std::string_view name)
{
    std::ostringstream out;
    out << "digraph " << quote(name) << " {\n  rankdir=LR;\n";
    write_nfa(out, at.nfa, "q", [&](fsa::Label r) { return spec.describe_rule(r); },
              [&](NodeId q) { return ", xlabel=" + quote(spec.state_name(at.owner.at(q))); }, "  ");
    out << "}\n";
    return out.str();
}

std::string export_dot(const UpdsSpec& spec, const UpperAutomaton& au, std::string_view name)
{
    std::ostringstream out;
    out << "digraph " << quote(name) << " {\n  rankdir=LR;\n";
    write_nfa(out, au.nfa, "q", [&](fsa::Label s) { return spec.symbol_name(s); },
              [&](NodeId q) {
                  auto p = au.owner.at(q);
                  return p == UpperAutomaton::kNoOwner ? std::string()
                                                       : ", xlabel=" + quote(spec.state_name(p));
              },
              "  ");
    out << "}\n";
    return out.str();
}

std::string export_dot(const CsGrammar& g, std::string_view name)
{
    std::ostringstream out;
    out << "digraph " << quote(name) << " {\n  node [shape=box];\n";
    const std::pair<Production::Group, const char*> groups[] = {
        {Production::Group::Start, "start"},
        {Production::Group::Simulation, "simulation"},
        {Production::Group::Final, "final"},
    };
    for (auto [group, gname] : groups) {
        out << "  subgraph " << quote(std::string("cluster_") + gname) << " {\n    label="
            << quote(gname) << ";\n";
        for (std::size_t i = 0; i < g.productions.size(); ++i) {
            const auto& pr = g.productions[i];
            if (pr.group != group)
                continue;
            out << "    " << quote("r" + std::to_string(i)) << " [label="
                << quote(g.describe(pr.lhs) + " -> " + g.describe(pr.rhs)) << "];\n";
        }
        out << "  }\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace upds
