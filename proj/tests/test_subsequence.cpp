#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

#include "hxplain/subsequence.hpp"

#include <random>

using namespace hxplain;
using oracle::symbols;

TEST_CASE("pairwise LCS")
{
    SymbolSeq s = symbols("ABCBDAB");
    CHECK(lcs_pair(s, s) == s);
    CHECK(lcs_pair(s, {}).empty());
    SymbolSeq r = lcs_pair(s, symbols("BDCABA"));
    CHECK(r.size() == 4);
    CHECK(r.size() == oracle::exhaustive_lcs_length({s, symbols("BDCABA")}));
    CHECK(is_common_subsequence(r, {s, symbols("BDCABA")}));
    // fixed tie-break
    CHECK(lcs_pair(symbols("AB"), symbols("BA")) == symbols("A"));
}

TEST_CASE("multi-sequence exact DP")
{
    SymbolSeq s = symbols("HELLO");
    CHECK(lcs_multi_exact({s, s, s}) == s);
    CHECK(lcs_multi_exact({symbols("ABC"), symbols("AC"), symbols("BAC")}) == symbols("AC"));
    SymbolSeq long_seq(100, "A");
    CHECK_THROWS_AS(lcs_multi_exact({long_seq, long_seq, long_seq}, 10), BudgetExceeded);
    CHECK_FALSE(lcs_multi_fits({long_seq, long_seq, long_seq}, 10));
    CHECK(lcs_multi_fits({long_seq, long_seq}, 101 * 101));
}

TEST_CASE("exact DP matches the exhaustive oracle")
{
    std::mt19937 rng(3);
    for (int i = 0; i < 400; ++i) {
        const int m = std::uniform_int_distribution<int>(1, 3)(rng);
        std::vector<SymbolSeq> seqs;
        for (int k = 0; k < m; ++k)
            seqs.push_back(oracle::random_seq(rng, 4, std::uniform_int_distribution<int>(0, 10)(rng)));
        SymbolSeq c = lcs_multi_exact(seqs);
        CHECK(is_common_subsequence(c, seqs));
        CHECK(c.size() == oracle::exhaustive_lcs_length(seqs));
    }
}

TEST_CASE("fold is sound, bounded and locally maximal")
{
    std::mt19937 rng(21);
    for (int i = 0; i < 1000; ++i) {
        const int m = std::uniform_int_distribution<int>(1, 6)(rng);
        std::vector<SymbolSeq> seqs;
        std::size_t shortest = SIZE_MAX;
        for (int k = 0; k < m; ++k) {
            seqs.push_back(oracle::random_seq(rng, 5, std::uniform_int_distribution<int>(0, 14)(rng)));
            shortest = std::min(shortest, seqs.back().size());
        }
        SymbolSeq c = common_subsequence_fold(seqs);
        CHECK(is_common_subsequence(c, seqs));
        CHECK(c.size() <= shortest);
        if (lcs_multi_fits(seqs))
            CHECK(c.size() <= lcs_multi_exact(seqs).size());
    }
    SymbolSeq s = symbols("ABAB");
    CHECK(common_subsequence_fold({s, s, s}) == s);
}

TEST_CASE("fold order dedups and sorts by length then text")
{
    auto order = fold_order({symbols("BA"), symbols("C"), symbols("AB"), symbols("BA")});
    REQUIRE(order.size() == 3);
    CHECK(order[0] == symbols("C"));
    CHECK(order[1] == symbols("AB"));
    CHECK(order[2] == symbols("BA"));
}

TEST_CASE("subsequence validator agrees with backtracking")
{
    CHECK(is_common_subsequence(symbols("AC"), {symbols("ABC"), symbols("AXC")}));
    CHECK_FALSE(is_common_subsequence(symbols("CA"), {symbols("ABC")}));
    std::mt19937 rng(8);
    for (int i = 0; i < 3000; ++i) {
        SymbolSeq c = oracle::random_seq(rng, 3, std::uniform_int_distribution<int>(0, 4)(rng));
        SymbolSeq s = oracle::random_seq(rng, 3, std::uniform_int_distribution<int>(0, 9)(rng));
        CHECK(is_subsequence(c, s) == oracle::embeds(c, s));
    }
}

TEST_CASE("local maximality")
{
    std::vector<SymbolSeq> seqs{symbols("ABC"), symbols("ABC")};
    CHECK(is_locally_maximal(symbols("ABC"), seqs));
    CHECK_FALSE(is_locally_maximal(symbols("AC"), seqs));
    // {A, B} with AB and BA: "A" cannot grow
    CHECK(is_locally_maximal(symbols("A"), {symbols("AB"), symbols("BA")}));
}

TEST_CASE("build_chain")
{
    auto p = fixture::graph_problem({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}, "a", "c", 2);
    p.automaton.locations.at("b").invariant.push_back(fixture::c1("x", Op::LE, Rat(3)));
    WaypointChain ch = build_chain({"a", "b", "c"}, p);
    REQUIRE(ch.elements.size() == 3);
    CHECK(ch.locations() == SymbolSeq{"a", "b", "c"});
    CHECK(ch.elements[1].goal == p.automaton.location("b").invariant);
    CHECK(build_chain({"a", "c"}, p).elements.size() == 2);
    CHECK_THROWS_AS(build_chain({"a", "b"}, p), EndpointMissing);
    CHECK_THROWS_AS(build_chain({"b", "c"}, p), EndpointMissing);
}

TEST_CASE("rover fold gives the ten-element chain")
{
    auto d = fixture::bench("rover");
    const auto& p = d.problem;
    LocGraph g(p.automaton);
    EnumerateOptions o;
    o.visits = p.required_visits;
    std::set<SymbolSeq> strings;
    for (const auto& path : enumerate_paths(g, "l11", "l25", 15, o))
        strings.insert(path.locations);
    std::vector<SymbolSeq> seqs(strings.begin(), strings.end());
    SymbolSeq c = common_subsequence_fold(seqs);
    CHECK(c == SymbolSeq{"l11", "l6", "l1", "l2", "l3", "l8", "l13", "l14", "l24", "l25"});
    CHECK(is_locally_maximal(c, seqs));
    CHECK(build_chain(c, p).elements.size() == 10);
}
