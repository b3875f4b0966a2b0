#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <fstream>
#include <sstream>

#include "support/fixtures.hpp"
#include "upds/checkers.hpp"
#include "upds/cli.hpp"
#include "upds/dot.hpp"
#include "upds/model.hpp"
#include "upds/oracle.hpp"
#include "upds/semantics.hpp"

using namespace upds;
using testing::config;
using testing::fixture_path;

namespace {

struct Run {
    int code = 0;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "upds");
    std::ostringstream out, err;
    Run r;
    r.code = cli_main(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::size_t count(const std::string& text, std::string_view needle)
{
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1))
        ++n;
    return n;
}

const char* kFixtures[] = {"e1.upds", "e2.upds", "overflow.upds", "sp_relocation.upds"};

} // namespace

TEST_CASE("the E1 fixture parses to the running example")
{
    auto m = load_model(fixture_path("e1.upds"));
    CHECK(m.spec.num_states() == 2);
    CHECK(m.spec.num_rules() == 6);
    CHECK(m.spec == testing::make_e1());
    auto C1 = m.set_automaton("C1");
    CHECK(C1.accepts(config(m.spec, "p: ^ x y x bot")));
    CHECK_FALSE(C1.accepts(config(m.spec, "p': ^ x bot")));
    CHECK(load_model(fixture_path("e2.upds")).spec == testing::make_e2());
}

TEST_CASE("a model without rules is valid")
{
    auto m = parse_model("states p\nalphabet a\n");
    CHECK(m.spec.num_rules() == 0);
    CHECK(m.sets.empty());
    CHECK(parse_model("").spec.num_states() == 0);
}

TEST_CASE("model errors point at the offending token")
{
    auto where = [](std::string_view text) -> std::pair<std::size_t, std::size_t> {
        try {
            parse_model(text);
        } catch (const ModelError& e) {
            return {e.line(), e.column()};
        }
        return {0, 0};
    };
    CHECK(where("states p\nalphabet a\nrule p z -> p a\n") == std::pair<std::size_t, std::size_t>{3, 8});
    CHECK(where("states p\nalphabet a\nrule p a -> p\nrule p a -> p\n").first == 4);
    CHECK(where("states p\nalphabet a\nrule p a -> q\n") == std::pair<std::size_t, std::size_t>{3, 13});
    CHECK(where("states p\nalphabet a\nrule p a p\n").first == 3);
    CHECK(where("states p\nalphabet a\nrule p a -> p a a a\n").first == 3);
    CHECK(where("states p p\n") == std::pair<std::size_t, std::size_t>{1, 10});
    CHECK(where("states p\nfoo\n") == std::pair<std::size_t, std::size_t>{2, 1});
    CHECK(where("states p\nalphabet a\nset S p a ^ ^\n") == std::pair<std::size_t, std::size_t>{3, 13});
    CHECK(where("states p\nalphabet a\nset S p ^ b\n") == std::pair<std::size_t, std::size_t>{3, 11});
    CHECK(where("states p\nalphabet a\nset S p ^ a\nset S p ^\n").first == 4);
    CHECK(where("states p(\n").first == 1);
    CHECK(where("alphabet _\n").first == 1);
}

TEST_CASE("comments and blank lines are ignored")
{
    auto m = parse_model("# header\n\nstates p   # one state\nalphabet a\r\nrule p a -> p # pop\n");
    CHECK(m.spec.num_rules() == 1);
}

TEST_CASE("models print and parse back")
{
    for (auto name : kFixtures) {
        auto m = load_model(fixture_path(name));
        auto printed = print_model(m);
        CHECK(parse_model(printed) == m);
        CHECK(print_model(parse_model(printed)) == printed);
    }
}

TEST_CASE("the print subcommand emits the canonical form")
{
    auto r = run({"print", fixture_path("e2.upds")});
    CHECK(r.code == 0);
    CHECK(r.out == print_model(load_model(fixture_path("e2.upds"))));
}

TEST_CASE("golden verdicts")
{
    auto golden = nlohmann::json::parse(read_file(testing::golden_path("verdicts.json")));
    REQUIRE(golden.size() > 0);
    for (const auto& entry : golden) {
        auto args = entry["args"].get<std::vector<std::string>>();
        args[1] = fixture_path(args[1]);
        auto r = run(args);
        INFO(entry.dump());
        INFO(r.out << r.err);
        CHECK(r.code == entry["exit"].get<int>());
        CHECK(r.out.substr(0, r.out.find('\n')) == entry["first"].get<std::string>());
    }
}

TEST_CASE("unsafe verdicts replay and safe verdicts survive the explorer")
{
    auto e1 = load_model(fixture_path("e1.upds"));
    auto e2 = load_model(fixture_path("e2.upds"));
    auto ov = load_model(fixture_path("overflow.upds"));
    auto sp = load_model(fixture_path("sp_relocation.upds"));

    auto reads = [](const Configuration& c, SymbolId a, std::optional<StateId> at) {
        return !c.upper.empty() && c.upper.back() == a && (!at || c.state == *at);
    };
    auto check_read = [&](const ModelFile& m, const char* set, const char* sym,
                          std::optional<StateId> at, Verdict::Kind expected) {
        CheckOptions o;
        if (at)
            o.states = {*at};
        auto a = m.spec.symbol(sym);
        auto v = check_upper_read(m.spec, m.set_automaton(set), a, o);
        REQUIRE(v.kind == expected);
        if (v.kind == Verdict::Kind::Unsafe) {
            CHECK(m.set_automaton(set).accepts(*v.witness));
            CHECK(reads(run_trace(m.spec, *v.witness, v.trace), a, at));
        } else {
            auto init = fsa::members_upto(m.set_automaton(set), 8);
            for (const auto& c : oracle_post(m.spec, init, 12, 12))
                CHECK_FALSE(reads(c, a, at));
        }
    };
    check_read(e1, "C1", "a", {}, Verdict::Kind::Unsafe);
    check_read(e1, "C1", "x", {}, Verdict::Kind::Safe);
    check_read(e2, "C2", "c", {}, Verdict::Kind::Safe);
    check_read(e2, "C2", "b", {}, Verdict::Kind::Unsafe);
    check_read(sp, "Entry", "secret", sp.spec.state("handler"), Verdict::Kind::Safe);
    check_read(sp, "Rush", "secret", sp.spec.state("handler"), Verdict::Kind::Unsafe);

    auto check_overflow = [&](const ModelFile& m, std::size_t fill, const char* lower,
                              Verdict::Kind expected) {
        auto v = check_stack_overflow(m.spec, fill, lower);
        REQUIRE(v.kind == expected);
        auto top = v.spec.symbol(kTopSymbol);
        auto overflowed = [&](const Configuration& c) {
            return std::find(c.upper.begin(), c.upper.end(), top) == c.upper.end();
        };
        if (v.kind == Verdict::Kind::Unsafe) {
            CHECK_FALSE(overflowed(*v.witness));
            CHECK(overflowed(run_trace(v.spec, *v.witness, v.trace)));
        } else {
            ConfigSet init;
            Word upper{top};
            upper.resize(fill + 1, v.spec.symbol(kFillSymbol));
            for (const auto& l : fsa::members_upto(compile_set(m.spec, {{0, parse_regex(std::string("^ ") + lower)}}), 8))
                for (StateId p = 0; p < m.spec.num_states(); ++p)
                    init.insert({p, upper, l.lower});
            for (const auto& c : oracle_post(v.spec, init, 12, 14))
                CHECK_FALSE(overflowed(c));
        }
    };
    check_overflow(e1, 1, "x (y x)* bot", Verdict::Kind::Unsafe);
    check_overflow(ov, 0, "main", Verdict::Kind::Unsafe);
    check_overflow(ov, 1, "main", Verdict::Kind::Safe);
}

TEST_CASE("the overflow check rejects models that use the reserved names")
{
    auto m = parse_model("states p\nalphabet %top\n");
    CHECK_THROWS_AS(check_stack_overflow(m.spec, 1, "%top"), MalformedInput);
    auto r = run({"check-overflow", fixture_path("e1.upds"), "-m", "1", "--lower", "nope"});
    CHECK(r.code == kExitUsage);
}

TEST_CASE("DOT output is stable")
{
    auto path = fixture_path("e1.upds");
    auto a = run({"export-dot", path, "--set", "C1"});
    auto b = run({"export-dot", path, "--set", "C1"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == read_file(testing::golden_path("c1.dot")));
    for (auto what : {"trace", "upper", "grammar", "post-over", "pre-under"}) {
        auto x = run({"export-dot", path, "--set", "C1", "--what", what});
        auto y = run({"export-dot", path, "--set", "C1", "--what", what});
        CHECK(x.code == 0);
        CHECK(x.out == y.out);
        CHECK(x.out.rfind("digraph", 0) == 0);
    }
}

TEST_CASE("DOT shapes of small artifacts")
{
    auto e1 = testing::make_e1();
    auto empty = export_dot(e1, fsa::empty_automaton(e1));
    CHECK(count(empty, "->") == 0);

    auto c1 = export_dot(e1, testing::c1_automaton(e1));
    CHECK(count(c1, "circle") == 5);
    CHECK(count(c1, " -> ") - count(c1, "shape=point") == 6);

    auto traces = export_dot(e1, trace_overapprox(e1, testing::c1_automaton(e1)));
    CHECK(count(traces, "doublecircle") == 2);
    CHECK(count(traces, "-> \"q") == 6 + 1); // six rules plus the start arrow
}

TEST_CASE("usage errors and budgets map to exit codes")
{
    auto e1 = fixture_path("e1.upds");
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"member"}).code == kExitUsage);
    CHECK(run({"print", "/nonexistent/model.upds"}).code == kExitUsage);
    CHECK(run({"member", e1, "--init", "C1", "--config", "p: q ^"}).code == kExitUsage);
    CHECK(run({"member", e1, "--init", "NoSuchSet", "--config", "p: ^"}).code == kExitUsage);
    CHECK(run({"check-read", e1, "--init", "C1", "--symbol", "zz"}).code == kExitUsage);
    CHECK(run({"post-over", e1, "--init", "C1", "--abstraction", "weird"}).code == kExitUsage);
    auto budget = run({"member", e1, "--init", "C1", "--config", "p': a a b ^ bot", "--budget", "5"});
    CHECK(budget.code == kExitResource);
    CHECK(budget.err.find("error") != std::string::npos);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("listings")
{
    auto e2 = fixture_path("e2.upds");
    auto r = run({"pre-under", e2, "--target", "C2", "-k", "2", "--max-size", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("p: b ^ c c\n") != std::string::npos);
    auto o = run({"oracle", e2, "--init", "C2", "--depth", "2", "--size-cap", "3"});
    CHECK(o.code == 0);
    CHECK(o.out.find("p: ^ a b\n") != std::string::npos);
}
