#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

#include "hxplain/graph.hpp"

#include <random>

using namespace hxplain;

TEST_CASE("LocGraph mirrors the automaton")
{
    auto p = fixture::graph_problem({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}}, "a", "c", 3);
    LocGraph g(p.automaton);
    CHECK(g.num_vertices() == 3);
    CHECK(g.num_arcs() == 3);
    CHECK(g.has_arc("a", "b"));
    CHECK_FALSE(g.has_arc("b", "a"));
    CHECK_FALSE(g.index("zz").has_value());
    CHECK_THROWS_AS((void)g.require("zz"), Error);
}

TEST_CASE("rover graph has 25 vertices and 40 arcs")
{
    auto d = fixture::bench("rover");
    LocGraph g(d.problem.automaton);
    CHECK(g.num_vertices() == 25);
    CHECK(g.num_arcs() == 40);
}

TEST_CASE("6x6 warehouse graph has 36 vertices")
{
    auto d = fixture::bench("warehouse", {{"rows", "6"}, {"cols", "6"}, {"start", "1"}, {"goal", "36"},
                                          {"charger", "30"}, {"oil", ""}});
    LocGraph g(d.problem.automaton);
    CHECK(g.num_vertices() == 36);
    CHECK(g.num_arcs() == 2 * (6 * 5 + 5 * 6));
}

TEST_CASE("enumeration order is by length then arc order")
{
    auto p = fixture::graph_problem({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}, {"c", "a"}}, "a", "c", 4);
    LocGraph g(p.automaton);
    auto paths = enumerate_paths(g, "a", "c", 4);
    REQUIRE(paths.size() >= 3);
    CHECK(paths[0].str() == "a -e2-> c");
    CHECK(paths[1].str() == "a -e0-> b -e1-> c");
    for (std::size_t i = 1; i < paths.size(); ++i)
        CHECK(paths[i - 1].length() <= paths[i].length());
    CHECK(paths == oracle::brute_paths(p.automaton, "a", "c", 4));
}

TEST_CASE("enumeration agrees with brute force on random graphs")
{
    std::mt19937 rng(99);
    for (int i = 0; i < 150; ++i) {
        PlanningProblem p = oracle::random_problem(rng, 5, 9, 5);
        LocGraph g(p.automaton);
        const std::string from = p.init().location;
        for (const auto& to : g.vertices()) {
            for (bool simple : {false, true}) {
                EnumerateOptions o;
                o.mode = simple ? PathMode::Simple : PathMode::Walks;
                CHECK(enumerate_paths(g, from, to, 5, o) == oracle::brute_paths(p.automaton, from, to, 5, simple));
            }
            EnumerateOptions v;
            v.visits = {g.vertices().back()};
            CHECK(enumerate_paths(g, from, to, 5, v) ==
                  oracle::brute_paths(p.automaton, from, to, 5, false, v.visits));
        }
    }
}

TEST_CASE("budget and early stop")
{
    auto p = fixture::graph_problem({"a", "b"}, {{"a", "b"}, {"b", "a"}, {"a", "a"}}, "a", "b", 12);
    LocGraph g(p.automaton);
    EnumerateOptions o;
    o.cap = 10;
    CHECK_THROWS_AS(enumerate_paths(g, "a", "b", 12, o), BudgetExceeded);
    std::size_t seen = 0;
    std::size_t n = for_each_path(g, "a", "b", 12, {}, [&](const AbstractPath&) { return ++seen < 3; });
    CHECK(seen == 3);
    CHECK(n == 3);
}

TEST_CASE("removed arcs are skipped")
{
    auto p = fixture::graph_problem({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}}, "a", "c", 3);
    LocGraph g(p.automaton);
    std::vector<bool> removed{false, false, true};
    EnumerateOptions o;
    o.removed_arcs = &removed;
    auto paths = enumerate_paths(g, "a", "c", 3, o);
    REQUIRE(paths.size() == 1);
    CHECK(paths[0].edges == std::vector<std::string>{"e0", "e1"});
}

TEST_CASE("depth 0 and same endpoints")
{
    auto p = fixture::graph_problem({"a", "b"}, {{"a", "b"}}, "a", "b", 2);
    LocGraph g(p.automaton);
    auto self = enumerate_paths(g, "a", "a", 0);
    REQUIRE(self.size() == 1);
    CHECK(self[0].locations == std::vector<std::string>{"a"});
    CHECK(enumerate_paths(g, "a", "b", 0).empty());
}

TEST_CASE("shortest path agrees with Floyd-Warshall")
{
    std::mt19937 rng(5);
    for (int i = 0; i < 100; ++i) {
        PlanningProblem p = oracle::random_problem(rng, 6, 10, 4);
        LocGraph g(p.automaton);
        auto dist = oracle::floyd_warshall(g);
        for (std::size_t u = 0; u < g.num_vertices(); ++u)
            for (std::size_t v = 0; v < g.num_vertices(); ++v) {
                auto got = shortest_path_length(g, g.name(static_cast<int>(u)), g.name(static_cast<int>(v)));
                if (dist[u][v] < 0)
                    CHECK_FALSE(got.has_value());
                else
                    CHECK(got == std::optional<std::size_t>(static_cast<std::size_t>(dist[u][v])));
            }
    }
}

TEST_CASE("articulation points agree with vertex removal")
{
    std::mt19937 rng(17);
    for (int i = 0; i < 200; ++i) {
        PlanningProblem p = oracle::random_problem(rng, 7, 12, 4);
        LocGraph g(p.automaton);
        const auto& from = p.init().location;
        for (const auto& to : g.vertices()) {
            if (to == from)
                continue;
            if (!shortest_path_length(g, from, to)) {
                CHECK_THROWS_AS(disconnecting_articulation_points(g, from, to), Unreachable);
                continue;
            }
            CHECK(disconnecting_articulation_points(g, from, to) == oracle::brute_articulation(g, from, to));
        }
    }
}

TEST_CASE("articulation points lie on every path")
{
    auto p = fixture::graph_problem({"a", "b", "c", "d", "e"},
                                    {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}, {"d", "e"}}, "a", "e", 4);
    LocGraph g(p.automaton);
    auto cut = disconnecting_articulation_points(g, "a", "e");
    CHECK(cut == std::set<std::string>{"d"});
    for (const auto& path : enumerate_paths(g, "a", "e", 4))
        CHECK(std::find(path.locations.begin(), path.locations.end(), "d") != path.locations.end());
}

TEST_CASE("rover articulation points are among the figure's waypoints")
{
    auto d = fixture::bench("rover");
    LocGraph g(d.problem.automaton);
    auto cut = disconnecting_articulation_points(g, "l11", "l25");
    std::set<std::string> allowed{"l6", "l1", "l2", "l3", "l8", "l13", "l14", "l24"};
    CHECK_FALSE(cut.empty());
    for (const auto& v : cut)
        CHECK(allowed.count(v) == 1);
}

TEST_CASE("HXPLAIN_BUDGET overrides the default cap")
{
    setenv("HXPLAIN_BUDGET", "1234", 1);
    CHECK(default_path_cap() == 1234);
    unsetenv("HXPLAIN_BUDGET");
    CHECK(default_path_cap() > 1234);
}
