#include "upds/cli.hpp"

#include <CLI11.hpp>

#include <map>
#include <ostream>

#include "upds/checkers.hpp"
#include "upds/dot.hpp"
#include "upds/grammar.hpp"
#include "upds/kphase.hpp"
#include "upds/model.hpp"
#include "upds/oracle.hpp"
#include "upds/upper_approx.hpp"

namespace upds {

namespace {

struct Options {
    std::string model;
    std::string set;
    std::string config;
    std::string symbol;
    std::string lower;
    std::string what = "set";
    std::string abstraction;
    std::string seed;
    std::vector<std::string> at;
    std::size_t k = 3;
    std::size_t m = 0;
    std::size_t budget = MembershipOptions{}.budget;
    std::size_t depth = 8;
    std::size_t size_cap = 8;
    std::size_t max_size = 3;
    std::size_t witness_depth = CheckOptions{}.witness_depth;
    bool collapse_final = false;
};

TraceAbstraction parse_abstraction(const std::string& s, TraceAbstraction fallback)
{
    if (s.empty())
        return fallback;
    return s == "control" ? TraceAbstraction::ControlGraph : TraceAbstraction::TopOfStack;
}

UpperSeed parse_seed(const std::string& s, UpperSeed fallback)
{
    if (s.empty())
        return fallback;
    return s == "origin" ? UpperSeed::SingleOrigin : UpperSeed::Direct;
}

OverapproxOptions overapprox_options(const Options& o)
{
    OverapproxOptions x;
    x.abstraction = parse_abstraction(o.abstraction, x.abstraction);
    x.seed = parse_seed(o.seed, x.seed);
    return x;
}

// Membership when --config is given (exit 0/1), otherwise a listing of the
// small members (exit 0).
int report_set(const UpdsSpec& spec, const fsa::ConfigAutomaton& a, const Options& o,
               std::ostream& out)
{
    if (!o.config.empty()) {
        bool member = a.accepts(parse_configuration(spec, o.config));
        out << (member ? "member" : "not a member") << '\n';
        return member ? kExitTrue : kExitFalse;
    }
    out << "nodes: " << a.total_nodes() << '\n';
    for (const auto& c : fsa::members_upto(a, o.max_size))
        out << to_string(spec, c) << '\n';
    return kExitTrue;
}

int verdict_exit(const Verdict& v)
{
    switch (v.kind) {
    case Verdict::Kind::Safe: return kExitTrue;
    case Verdict::Kind::Unsafe: return kExitFalse;
    case Verdict::Kind::Unknown: return kExitUnknown;
    }
    return kExitUnknown;
}

CheckOptions check_options(const UpdsSpec& spec, const Options& o)
{
    CheckOptions c;
    for (const auto& name : o.at)
        c.states.push_back(spec.state(name));
    c.k = o.k;
    c.abstraction = parse_abstraction(o.abstraction, c.abstraction);
    c.seed = parse_seed(o.seed, c.seed);
    c.witness_depth = o.witness_depth;
    return c;
}

int run_member(const ModelFile& model, const Options& o, std::ostream& out)
{
    auto C = model.set_automaton(o.set);
    auto c = parse_configuration(model.spec, o.config);
    MembershipOptions mo;
    mo.budget = o.budget;
    mo.collapse_final = o.collapse_final;
    MembershipResult r;
    bool yes = is_reachable(model.spec, C, c, mo, &r);
    out << (yes ? "reachable" : "unreachable") << '\n' << "forms: " << r.explored << '\n';
    return yes ? kExitTrue : kExitFalse;
}

int run_oracle(const ModelFile& model, const Options& o, std::ostream& out)
{
    auto initial = fsa::members_upto(model.set_automaton(o.set), o.size_cap);
    OracleReport rep;
    auto post = oracle_post(model.spec, initial, o.depth, o.size_cap, {}, &rep);
    if (!o.config.empty()) {
        auto c = parse_configuration(model.spec, o.config);
        bool yes = post.contains(c);
        out << (yes ? "reachable" : "not reached within bounds") << '\n';
        return yes ? kExitTrue : kExitFalse;
    }
    out << "explored: " << rep.explored << '\n'
        << "saturated: " << (rep.saturated ? "yes" : "no") << '\n';
    for (const auto& c : post)
        out << to_string(model.spec, c) << '\n';
    return kExitTrue;
}

int run_export(const ModelFile& model, const Options& o, std::ostream& out)
{
    const auto& spec = model.spec;
    if (o.what == "grammar") {
        out << export_dot(build_post_grammar(single_origin(spec, model.set_automaton(o.set))));
        return kExitTrue;
    }
    auto C = model.set_automaton(o.set);
    auto abstraction = overapprox_options(o).abstraction;
    if (o.what == "set")
        out << export_dot(spec, C, o.set);
    else if (o.what == "trace")
        out << export_dot(spec, trace_overapprox(spec, C, abstraction), "traces");
    else if (o.what == "upper") {
        auto so = single_origin(spec, C);
        auto at = trace_overapprox(so.spec, fsa::from_config_set(so.spec, {so.origin()}),
                                   abstraction);
        out << export_dot(so.spec, saturate_upper(so.spec, at, so.origin()), "upper");
    } else if (o.what == "post-over")
        out << export_dot(spec, overapprox_post(spec, C, overapprox_options(o)), "post-over");
    else
        out << export_dot(spec, bounded_phase_pre_star(spec, C, o.k), "pre-under");
    return kExitTrue;
}

int dispatch(const std::map<std::string, CLI::App*>& subs, const Options& o,
             std::ostream& out)
{
    auto model = load_model(o.model);
    const auto& spec = model.spec;
    if (subs.at("print")->parsed()) {
        out << print_model(model);
        return kExitTrue;
    }
    if (subs.at("member")->parsed())
        return run_member(model, o, out);
    if (subs.at("pre-under")->parsed())
        return report_set(spec, bounded_phase_pre_star(spec, model.set_automaton(o.set), o.k), o,
                          out);
    if (subs.at("post-over")->parsed())
        return report_set(spec, overapprox_post(spec, model.set_automaton(o.set), overapprox_options(o)),
                          o, out);
    if (subs.at("check-overflow")->parsed()) {
        auto v = check_stack_overflow(spec, o.m, o.lower, check_options(spec, o));
        out << describe(v);
        return verdict_exit(v);
    }
    if (subs.at("check-read")->parsed()) {
        auto a = spec.find_symbol(o.symbol);
        if (!a)
            throw MalformedInput("undeclared symbol '" + o.symbol + "'");
        auto v = check_upper_read(spec, model.set_automaton(o.set), *a, check_options(spec, o));
        out << describe(v);
        return verdict_exit(v);
    }
    if (subs.at("export-dot")->parsed())
        return run_export(model, o, out);
    if (subs.at("oracle")->parsed())
        return run_oracle(model, o, out);
    return kExitUsage;
}

} // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Reachability analyses for pushdown systems with an upper stack"};
    app.name(args.empty() ? "upds" : args[0]);
    app.require_subcommand(1);
    Options o;
    std::map<std::string, CLI::App*> subs;

    auto add = [&](const std::string& name, const std::string& help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("model", o.model, "Model file")->required();
        subs[name] = sub;
        return sub;
    };
    auto abstraction_opt = [&](CLI::App* sub) {
        sub->add_option("--abstraction", o.abstraction, "Trace abstraction")
            ->check(CLI::IsMember({"control", "top"}));
        sub->add_option("--seed", o.seed, "Where the upper-stack saturation starts")
            ->check(CLI::IsMember({"origin", "direct"}));
    };

    add("print", "Print the model in canonical form");

    auto* member = add("member", "Exact membership in post* via the grammar");
    member->add_option("--init", o.set, "Initial set")->required();
    member->add_option("--config", o.config, "Configuration 'p: upper ^ lower'")->required();
    member->add_option("--budget", o.budget, "Maximum number of sentential forms");
    member->add_flag("--collapse-final", o.collapse_final,
                     "Compare barred forms directly instead of applying finalization rules");

    auto* pre = add("pre-under", "Bounded-phase under-approximation of pre*");
    pre->add_option("--target", o.set, "Target set")->required();
    pre->add_option("-k", o.k, "Number of phases");
    pre->add_option("--config", o.config, "Test one configuration");
    pre->add_option("--max-size", o.max_size, "List members up to this total stack size");

    auto* post = add("post-over", "Regular over-approximation of post*");
    post->add_option("--init", o.set, "Initial set")->required();
    post->add_option("--config", o.config, "Test one configuration");
    post->add_option("--max-size", o.max_size, "List members up to this total stack size");
    abstraction_opt(post);

    auto* overflow = add("check-overflow", "Can a push overwrite the top-of-stack marker?");
    overflow->add_option("-m", o.m, "Number of filler cells above the marker")->required();
    overflow->add_option("--lower", o.lower, "Regex of initial lower stacks")->required();
    overflow->add_option("--at", o.at, "Only these control states are forbidden");
    overflow->add_option("-k", o.k, "Number of phases for the under-approximation");
    overflow->add_option("--witness-depth", o.witness_depth, "Depth of the replay search");
    abstraction_opt(overflow);

    auto* read = add("check-read", "Can a symbol sit just above the stack pointer?");
    read->add_option("--init", o.set, "Initial set")->required();
    read->add_option("--symbol", o.symbol, "Forbidden symbol")->required();
    read->add_option("--at", o.at, "Only these control states are forbidden");
    read->add_option("-k", o.k, "Number of phases for the under-approximation");
    read->add_option("--witness-depth", o.witness_depth, "Depth of the replay search");
    abstraction_opt(read);

    auto* dot = add("export-dot", "Graphviz rendering of a set or a derived artifact");
    dot->add_option("--set", o.set, "Set to render or start from")->required();
    dot->add_option("--what", o.what, "Artifact")
        ->check(CLI::IsMember({"set", "trace", "upper", "grammar", "post-over", "pre-under"}));
    dot->add_option("-k", o.k, "Number of phases (pre-under)");
    abstraction_opt(dot);

    auto* oracle = add("oracle", "Bounded explicit-state forward exploration");
    oracle->add_option("--init", o.set, "Initial set")->required();
    oracle->add_option("--depth", o.depth, "Maximum trace length");
    oracle->add_option("--size-cap", o.size_cap, "Maximum total stack size");
    oracle->add_option("--config", o.config, "Test one configuration");

    try {
        std::vector<std::string> rest(args.rbegin(), args.rend());
        if (!rest.empty())
            rest.pop_back();
        app.parse(rest);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitTrue : kExitUsage;
    }

    try {
        return dispatch(subs, o, out);
    } catch (const ResourceLimit& e) {
        err << "error: " << e.what() << " (" << e.explored() << " explored)\n";
        return kExitResource;
    } catch (const MalformedInput& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

} // namespace upds
