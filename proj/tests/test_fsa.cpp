#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "support/fixtures.hpp"
#include "upds/config_automaton.hpp"
#include "upds/regex.hpp"

using namespace upds;
using fsa::kEpsilon;
using fsa::Nfa;
using testing::config;

namespace {

Nfa random_nfa(std::mt19937& rng, std::size_t nodes, std::size_t edges, fsa::Label letters)
{
    auto pick = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    Nfa a;
    for (std::size_t i = 0; i < nodes; ++i)
        a.add_node(pick(0, 2) == 0, pick(0, 2) == 0);
    for (std::size_t i = 0; i < edges; ++i) {
        auto l = pick(0, letters);
        a.add_edge(static_cast<fsa::NodeId>(pick(0, nodes - 1)),
                   l == letters ? kEpsilon : static_cast<fsa::Label>(l),
                   static_cast<fsa::NodeId>(pick(0, nodes - 1)));
    }
    return a;
}

std::set<std::vector<fsa::Label>> all_words(fsa::Label letters, std::size_t max_len)
{
    std::set<std::vector<fsa::Label>> out{{}};
    std::vector<std::vector<fsa::Label>> layer{{}};
    for (std::size_t n = 0; n < max_len; ++n) {
        std::vector<std::vector<fsa::Label>> next;
        for (const auto& w : layer)
            for (fsa::Label l = 0; l < letters; ++l) {
                auto v = w;
                v.push_back(l);
                next.push_back(v);
                out.insert(v);
            }
        layer = std::move(next);
    }
    return out;
}

} // namespace

TEST_CASE("nfa acceptance follows epsilon edges")
{
    Nfa a(3);
    a.set_initial(0);
    a.set_final(2);
    a.add_edge(0, kEpsilon, 1);
    a.add_edge(1, 7, 2);
    CHECK(fsa::accepts(a, std::vector<fsa::Label>{7}));
    CHECK_FALSE(fsa::accepts(a, std::vector<fsa::Label>{}));
    CHECK(fsa::epsilon_closure(a, std::vector<fsa::NodeId>{0}) == fsa::NodeSet{0, 1});
    CHECK(fsa::accepts_from(a, 1, std::vector<fsa::Label>{7}));
    CHECK_FALSE(a.add_edge(1, 7, 2));
    CHECK(*fsa::shortest_word(a) == std::vector<fsa::Label>{7});
}

TEST_CASE("empty and trivial automata")
{
    Nfa none;
    CHECK(fsa::is_empty(none));
    CHECK_FALSE(fsa::shortest_word(none));
    Nfa eps(1);
    eps.set_initial(0);
    eps.set_final(0);
    CHECK_FALSE(fsa::is_empty(eps));
    CHECK(fsa::words_upto(eps, 3) == std::set<std::vector<fsa::Label>>{{}});
}

TEST_CASE("nfa operations preserve or combine languages")
{
    std::mt19937 rng(5);
    const fsa::Label letters = 2;
    const std::size_t len = 5;
    auto universe = all_words(letters, len);
    for (int i = 0; i < 200; ++i) {
        auto a = random_nfa(rng, 4, 7, letters);
        auto b = random_nfa(rng, 3, 6, letters);
        auto la = fsa::words_upto(a, len), lb = fsa::words_upto(b, len);
        for (const auto& w : universe)
            REQUIRE(fsa::accepts(a, w) == la.contains(w));

        CHECK(fsa::words_upto(fsa::remove_epsilons(a), len) == la);
        CHECK(fsa::words_upto(fsa::trim(a), len) == la);

        std::set<std::vector<fsa::Label>> both, either = la;
        for (const auto& w : la)
            if (lb.contains(w))
                both.insert(w);
        either.insert(lb.begin(), lb.end());
        CHECK(fsa::words_upto(fsa::product(a, b), len) == both);
        CHECK(fsa::words_upto(fsa::disjoint_union(a, b), len) == either);

        std::set<std::vector<fsa::Label>> rev;
        for (auto w : la) {
            std::reverse(w.begin(), w.end());
            rev.insert(w);
        }
        CHECK(fsa::words_upto(fsa::reverse(a), len) == rev);

        std::vector<std::uint32_t> color(a.size(), 0);
        CHECK(fsa::words_upto(fsa::quotient_bisimulation(a, color), len) == la);
        CHECK(fsa::is_empty(a) == la.empty());
        if (auto w = fsa::shortest_word(a)) {
            CHECK(fsa::accepts(a, *w));
            for (const auto& v : la)
                CHECK(v.size() >= w->size());
        }
    }
}

TEST_CASE("relabel maps and erases letters")
{
    Nfa a(3);
    a.set_initial(0);
    a.set_final(2);
    a.add_edge(0, 1, 1);
    a.add_edge(1, 2, 2);
    auto b = fsa::relabel(a, [](fsa::Label l) { return l == 1 ? kEpsilon : l + 10; });
    CHECK(fsa::words_upto(b, 3) == std::set<std::vector<fsa::Label>>{{12}});
}

TEST_CASE("two-track words encode the upper stack barred")
{
    auto e1 = testing::make_e1();
    auto c = config(e1, "p': a b ^ bot");
    auto w = fsa::encode(c);
    CHECK(w == std::vector<fsa::Label>{fsa::barred(0), fsa::barred(1), fsa::plain(4)});
    CHECK(fsa::decode(1, w) == c);
    CHECK_THROWS_AS(fsa::decode(0, std::vector<fsa::Label>{fsa::plain(0), fsa::barred(1)}),
                    MalformedInput);
}

TEST_CASE("zones reject barred letters below the boundary")
{
    fsa::ZonedNfa z;
    auto u = z.add_node(fsa::Zone::Upper, true);
    auto l = z.add_node(fsa::Zone::Lower, false, true);
    z.add_edge(u, fsa::barred(0), u);
    z.add_edge(u, fsa::plain(0), l);
    CHECK_THROWS_AS(z.add_edge(l, fsa::barred(0), l), std::logic_error);
    CHECK_THROWS_AS(z.add_edge(l, kEpsilon, u), std::logic_error);
    CHECK_THROWS_AS(z.add_edge(u, fsa::plain(0), u), std::logic_error);
    CHECK(z.zones_consistent());
}

TEST_CASE("the C1 regex compiles to five nodes with a two-cycle")
{
    auto e1 = testing::make_e1();
    auto z = compile_regex(e1, "^ x (y x)* bot");
    CHECK(z.nfa.size() == 5);
    CHECK(z.nfa.initials() == std::vector<fsa::NodeId>{0});
    std::size_t back_and_forth = 0;
    for (fsa::NodeId q = 0; q < z.nfa.size(); ++q)
        for (const auto& e : z.nfa.out(q)) {
            CHECK(e.label != kEpsilon);
            for (const auto& f : z.nfa.out(e.to))
                back_and_forth += f.to == q && e.to != q;
        }
    CHECK(back_and_forth == 2);

    auto C1 = testing::c1_automaton(e1);
    CHECK(C1.accepts(config(e1, "p: ^ x bot")));
    CHECK(C1.accepts(config(e1, "p: ^ x y x y x bot")));
    CHECK_FALSE(C1.accepts(config(e1, "p: ^ x y bot")));
    CHECK_FALSE(C1.accepts(config(e1, "p: x ^ bot")));
    CHECK_FALSE(C1.accepts(config(e1, "p': ^ x bot")));
}

TEST_CASE("boundary regexes place the stack pointer")
{
    auto e2 = testing::make_e2();
    auto C2 = testing::c2_automaton(e2);
    CHECK(C2.accepts(config(e2, "p: ^ c")));
    CHECK(C2.accepts(config(e2, "p: a b a b ^ c")));
    CHECK_FALSE(C2.accepts(config(e2, "p: a ^ c")));
    CHECK_FALSE(C2.accepts(config(e2, "p: a b c ^")));

    auto alt = compile_regex(e2, "a ^ b | ^ c");
    auto ca = fsa::empty_automaton(e2);
    ca.component(0) = alt;
    CHECK(ca.accepts(config(e2, "p: a ^ b")));
    CHECK(ca.accepts(config(e2, "p: ^ c")));
    CHECK_FALSE(ca.accepts(config(e2, "p: ^ a b")));

    ca.component(0) = compile_regex(e2, "_ ^ _");
    CHECK(ca.accepts(config(e2, "p: ^")));
    CHECK(fsa::members_upto(ca, 3).size() == 1);
}

TEST_CASE("regexes print and parse back")
{
    for (auto text : {"^ x (y x)* bot", "(a b)* ^ c", "a ^ b | ^ c", "_ ^ _",
                      "((a | b) c)* ^ x*", "(a*)* ^"}) {
        auto n = parse_regex(text);
        CHECK(print_regex(n) == text);
        CHECK(parse_regex(print_regex(n)) == n);
    }
    auto plain = parse_regex("x (y x)* bot", RegexMode::Plain);
    CHECK(parse_regex(print_regex(plain), RegexMode::Plain) == plain);
}

TEST_CASE("regex errors carry columns")
{
    auto col = [](std::string_view text, RegexMode mode = RegexMode::Boundary) -> std::size_t {
        try {
            parse_regex(text, mode);
        } catch (const RegexError& e) {
            return e.column();
        }
        return 0;
    };
    CHECK(col("^ ^ a") == 3);
    CHECK(col("(a ^ b") == 7);
    CHECK(col("a )") == 3);
    CHECK(col("(^ a)*") == 2);
    CHECK(col("a | ^ b") == 1);
    CHECK(col("a ^ b", RegexMode::Plain) == 3);
    auto e1 = testing::make_e1();
    CHECK_THROWS_AS(compile_regex(e1, "^ z"), MalformedInput);
}

TEST_CASE("configuration automata from finite sets accept exactly the set")
{
    std::mt19937 rng(9);
    for (int i = 0; i < 40; ++i) {
        auto spec = testing::random_spec(rng);
        auto set = testing::random_configs(rng, spec, 4, 0, 3);
        auto a = fsa::from_config_set(spec, set);
        CHECK(a.zones_consistent());
        CHECK(fsa::members_upto(a, 3) == set);
        CHECK(fsa::members_upto(fsa::reduce(a), 3) == set);

        auto other = testing::random_configs(rng, spec, 4, 0, 3);
        auto b = fsa::from_config_set(spec, other);
        ConfigSet both, either = set;
        std::set_intersection(set.begin(), set.end(), other.begin(), other.end(),
                              std::inserter(both, both.end()));
        either.insert(other.begin(), other.end());
        CHECK(fsa::members_upto(fsa::intersect(a, b), 3) == both);
        CHECK(fsa::members_upto(fsa::unite(a, b), 3) == either);
        CHECK(fsa::is_empty(fsa::intersect(a, b)) == both.empty());

        auto m = fsa::find_member(a);
        REQUIRE(m);
        CHECK(set.contains(*m));
        for (const auto& c : set)
            CHECK(c.size() >= m->size());
    }
}

TEST_CASE("reduce keeps the language of regex-built automata")
{
    auto e1 = testing::make_e1();
    auto C1 = testing::c1_automaton(e1);
    auto r = fsa::reduce(C1);
    CHECK(r.zones_consistent());
    CHECK(fsa::members_upto(r, 8) == fsa::members_upto(C1, 8));
    CHECK(r.total_nodes() <= C1.total_nodes());
}

TEST_CASE("projections split the two tracks")
{
    auto e2 = testing::make_e2();
    auto C2 = testing::c2_automaton(e2);
    auto low = fsa::project_lower(C2);
    auto up = fsa::project_upper(C2);
    using W = std::vector<fsa::Label>;
    CHECK(fsa::words_upto(low[0], 3) == std::set<W>{{2}});
    CHECK(fsa::words_upto(up[0], 4) == std::set<W>{{}, {0, 1}, {0, 1, 0, 1}});
}

TEST_CASE("all_configurations enumerates every split of every word")
{
    auto e2 = testing::make_e2();
    // one state, three symbols: sizes 0, 1, 2 give 1 + 2*3 + 3*9 configurations
    CHECK(fsa::all_configurations(e2, 2).size() == 1 + 6 + 27);
}
