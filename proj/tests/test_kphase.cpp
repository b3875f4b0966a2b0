#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "support/fixtures.hpp"
#include "upds/kphase.hpp"
#include "upds/oracle.hpp"

using namespace upds;
using testing::config;

namespace {

bool has_rule(const Mpds& m, const Mpds::Rule& r)
{
    return std::find(m.rules.begin(), m.rules.end(), r) != m.rules.end();
}

// Successors of an original configuration in the two-stack system, skipping
// over intermediate states.
std::set<MpdsConfig> macro_steps(const Mpds& m, std::size_t original_states, const MpdsConfig& c)
{
    std::set<MpdsConfig> out;
    for (const auto& [rule, next] : mpds_step(m, c)) {
        if (next.state < original_states) {
            out.insert(next);
            continue;
        }
        for (const auto& [rule2, last] : mpds_step(m, next))
            out.insert(last);
    }
    return out;
}

} // namespace

TEST_CASE("E1 pop rules split into a lower pop and an upper push")
{
    auto e1 = testing::make_e1();
    auto m = upds_to_mpds(e1);
    const RuleId ra = 3;
    auto mid = m.rule_state[ra];
    auto p = e1.state("p"), a = e1.symbol("a");
    CHECK(mid >= e1.num_states());
    CHECK(has_rule(m, {p, a, 2, mid, {}}));
    CHECK(has_rule(m, {mid, m.bottom, 1, p, {a, m.bottom}}));
    CHECK(m.symbol_names[m.bottom] == "_bot");
}

TEST_CASE("the bottom marker gets a fresh name")
{
    UpdsSpec s;
    s.add_state("p");
    s.add_symbol("_bot");
    auto m = upds_to_mpds(s);
    CHECK(m.bottom == 1);
    CHECK(m.symbol_names[1] != "_bot");
    CHECK(m.rules.empty());
}

TEST_CASE("the bottom marker is never removed")
{
    std::mt19937 rng(8);
    for (int i = 0; i < 20; ++i) {
        auto m = upds_to_mpds(testing::random_spec(rng));
        for (const auto& r : m.rules)
            if (r.stack == 1 && r.read == m.bottom)
                CHECK((!r.written.empty() && r.written.back() == m.bottom));
    }
}

TEST_CASE("one UPDS step is one or two MPDS steps")
{
    auto e1 = testing::make_e1();
    auto m = upds_to_mpds(e1);
    auto c = config(e1, "p: ^ a bot");
    auto d = config(e1, "p: a ^ bot");
    auto mc = to_mpds(m, c);
    CHECK(macro_steps(m, e1.num_states(), mc).contains(to_mpds(m, d)));
    CHECK(from_mpds(m, e1, to_mpds(m, d)) == d);

    std::mt19937 rng(12);
    for (int i = 0; i < 30; ++i) {
        auto spec = testing::random_spec(rng);
        auto mp = upds_to_mpds(spec);
        for (const auto& cfg : fsa::all_configurations(spec, 3)) {
            std::set<MpdsConfig> expected;
            for (const auto& [r, next] : step(spec, cfg))
                expected.insert(to_mpds(mp, next));
            CHECK(macro_steps(mp, spec.num_states(), to_mpds(mp, cfg)) == expected);
        }
    }
}

TEST_CASE("a pop phase from <p, a b, c> in E2")
{
    auto e2 = testing::make_e2();
    auto T = fsa::from_config_set(e2, {config(e2, "p: a b ^ c")});
    auto pre = phase_pre(e2, T, PhaseKind::PopPhase);
    CHECK(pre.accepts(config(e2, "p: a ^ b c")));
    CHECK(pre.accepts(config(e2, "p: ^ a b c")));
    CHECK(pre.accepts(config(e2, "p: a b ^ c")));
    CHECK_FALSE(pre.accepts(config(e2, "p: b ^ c c")));
}

TEST_CASE("a push phase consumes one upper symbol per push")
{
    auto e2 = testing::make_e2();
    auto T = fsa::from_config_set(e2, {config(e2, "p: ^ a b c")});
    auto pre = phase_pre(e2, T, PhaseKind::PushPhase);
    for (auto y : {"a", "b", "c"})
        CHECK(pre.accepts(config(e2, std::string("p: ") + y + " ^ c c")));
    CHECK(pre.accepts(config(e2, "p: ^ c c")));
    CHECK_FALSE(pre.accepts(config(e2, "p: a b ^ c c")));
}

TEST_CASE("phases contain their targets and absorb themselves")
{
    std::mt19937 rng(30);
    for (int i = 0; i < 25; ++i) {
        auto spec = testing::random_spec(rng);
        auto set = testing::random_configs(rng, spec, 3, 0, 3);
        auto T = fsa::from_config_set(spec, set);
        for (auto kind : {PhaseKind::PopPhase, PhaseKind::PushPhase}) {
            auto once = phase_pre(spec, T, kind);
            auto twice = phase_pre(spec, once, kind);
            for (const auto& c : set)
                CHECK(once.accepts(c));
            for (const auto& c : fsa::all_configurations(spec, 4))
                CHECK(once.accepts(c) == twice.accepts(c));
        }
    }
}

TEST_CASE("bounded-phase pre* on E2")
{
    auto e2 = testing::make_e2();
    auto C2 = testing::c2_automaton(e2);
    auto two = bounded_phase_pre_star(e2, C2, 2);
    CHECK(two.accepts(config(e2, "p: b ^ c c")));
    CHECK(run_trace(e2, config(e2, "p: b ^ c c"), Trace{0, 2, 3}) == config(e2, "p: a b ^ c"));
    CHECK(count_phases(e2, Trace{0, 2, 3}) == 2);
    CHECK_FALSE(bounded_phase_pre_star(e2, C2, 1).accepts(config(e2, "p: b ^ c c")));
    for (std::size_t k = 0; k <= 4; ++k)
        CHECK(bounded_phase_pre_star(e2, C2, k).accepts(config(e2, "p: a b ^ c")));

    auto zero = bounded_phase_pre_star(e2, C2, 0);
    for (const auto& c : fsa::all_configurations(e2, 4))
        CHECK(zero.accepts(c) == C2.accepts(c));
}

TEST_CASE("bounded-phase pre* grows with k and matches the explorer")
{
    std::mt19937 rng(44);
    for (int i = 0; i < 20; ++i) {
        auto spec = testing::random_spec(rng);
        auto targets = testing::random_configs(rng, spec, 3, 0, 3);
        auto T = fsa::from_config_set(spec, targets);
        auto all = fsa::all_configurations(spec, 4);
        std::optional<fsa::ConfigAutomaton> prev;
        for (std::size_t k = 0; k <= 3; ++k) {
            auto X = bounded_phase_pre_star(spec, T, k);
            auto o = oracle_pre_kphase(spec, targets, 10, k, 8);
            for (const auto& c : all) {
                CHECK(X.accepts(c) == o.contains(c));
                if (prev && prev->accepts(c))
                    CHECK(X.accepts(c));
            }
            prev = std::move(X);
        }
    }
}

TEST_CASE("phase kinds print")
{
    CHECK(std::string(to_string(PhaseKind::PopPhase)) != to_string(PhaseKind::PushPhase));
}
