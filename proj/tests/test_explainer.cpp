#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

#include "hxplain/explainer.hpp"
#include "hxplain/report.hpp"

#include <random>

using namespace hxplain;
using fixture::c1;

namespace {

SymbolSeq locs_of(const ExplanationReport& r) { return r.chain.locations(); }

} // namespace

TEST_CASE("no discrete path means DiscreteUnsolvable")
{
    auto p = fixture::graph_problem({"a", "b", "c"}, {{"a", "b"}}, "a", "c", 4);
    auto rep = explain_unsolvability(p);
    CHECK(rep.outcome == ExplainOutcome::DiscreteUnsolvable);
    CHECK(rep.chain.elements.empty());
    CHECK_FALSE(rep.explanation.has_value());
}

TEST_CASE("two disjoint routes give the trivial chain")
{
    auto p = fixture::graph_problem({"a", "b", "c", "d"}, {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}}, "a", "d",
                                    3);
    auto wr = compute_waypoints(p);
    CHECK(wr.chain.locations() == SymbolSeq{"a", "d"});
    CHECK(wr.lcs_exact);
    CHECK(wr.num_paths == 2);
}

TEST_CASE("a solvable problem is reported as Solvable with a plan")
{
    auto p = fixture::clock_pair();
    auto rep = explain_unsolvability(p);
    CHECK(rep.outcome == ExplainOutcome::Solvable);
    REQUIRE_FALSE(rep.statuses.empty());
    const auto& last = rep.statuses.back();
    CHECK(last.goal_check);
    REQUIRE(last.outcome.kind == ReachKind::Reachable);
    CHECK(last.outcome.plan.steps.size() == 1);
    CHECK(last.outcome.plan.steps[0].time == Rat(1));
}

TEST_CASE("an unreachable goal invariant is explained at the goal")
{
    auto p = fixture::clock_pair();
    p.automaton.locations.at("l1").invariant.push_back(c1("x", Op::GE, Rat(2)));
    auto rep = explain_unsolvability(p);
    CHECK(rep.outcome == ExplainOutcome::Explained);
    REQUIRE(rep.explanation.has_value());
    CHECK(rep.statuses[*rep.explanation].location == "l1");
    CHECK(rep.feasible_before_explanation() == 1);
}

TEST_CASE("reach_subproblem reports the first witness and its replayed run")
{
    auto p = fixture::clock_pair();
    auto r = reach_subproblem(p, "l1");
    REQUIRE(r.kind == ReachKind::Reachable);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->str() == "l0 -e0-> l1");
    CHECK(check_run(p, r.run, &p.automaton.location("l1").invariant, "l1").empty());
    CHECK(r.paths_checked == 1);
}

TEST_CASE("budget exhaustion is reported, not guessed")
{
    auto p = fixture::graph_problem({"a", "b"}, {{"a", "a"}, {"a", "b"}}, "a", "b", 30);
    p.automaton.init.constraints.push_back(c1("x", Op::EQ, Rat(0)));
    p.automaton.locations.at("b").invariant.push_back(c1("x", Op::GE, Rat(1)));
    SearchOptions o;
    o.cap = 5;
    auto r = reach_subproblem(p, "b", o);
    CHECK(r.kind == ReachKind::Budget);
    CHECK_FALSE(r.reason.empty());
    auto rep = explain_unsolvability(p, o);
    CHECK(rep.outcome == ExplainOutcome::Inconclusive);
}

TEST_CASE("reachability matches the exhaustive oracle on random problems")
{
    std::mt19937 rng(4242);
    for (int i = 0; i < 40; ++i) {
        PlanningProblem p = oracle::random_problem(rng, 5, 8, 4);
        for (const auto& [id, _] : p.automaton.locations) {
            SearchOptions o;
            auto r = reach_subproblem(p, id, o);
            REQUIRE(r.kind != ReachKind::Budget);
            CHECK((r.kind == ReachKind::Reachable) == oracle::exhaustive_reachable(p, id, p.depth));
        }
    }
}

TEST_CASE("water level monitor is explained at the unsafe location")
{
    auto p = fixture::bench("water_level").problem;
    auto rep = explain_unsolvability(p);
    CHECK(rep.outcome == ExplainOutcome::Explained);
    CHECK(locs_of(rep) == SymbolSeq{"l1", "l2", "l6"});
    REQUIRE(rep.explanation.has_value());
    CHECK(rep.statuses[*rep.explanation].location == "l6");
}

TEST_CASE("rover explanation")
{
    auto p = fixture::bench("rover").problem;
    auto rep = explain_unsolvability(p);
    CHECK(locs_of(rep) == SymbolSeq{"l11", "l6", "l1", "l2", "l3", "l8", "l13", "l14", "l24", "l25"});
    CHECK(rep.outcome == ExplainOutcome::Explained);
    REQUIRE(rep.explanation.has_value());
    CHECK(rep.statuses[*rep.explanation].location == "l13");
    CHECK(rep.feasible_before_explanation() == 6);
    for (std::size_t i = 0; i < *rep.explanation; ++i)
        CHECK(rep.statuses[i].outcome.kind == ReachKind::Reachable);
    CHECK(rep.stats.num_paths > 0);
    CHECK(rep.stats.dedup_paths <= rep.stats.num_paths);
}

TEST_CASE("worker count does not change the report")
{
    auto p = fixture::bench("water_level").problem;
    SearchOptions one, many;
    many.jobs = 8;
    CHECK(strip_timing(explain_report_json(explain_unsolvability(p, one))) ==
          strip_timing(explain_report_json(explain_unsolvability(p, many))));
    auto pc = fixture::bench("city").problem;
    auto a = reach_subproblem(pc, "l7", one);
    auto b = reach_subproblem(pc, "l7", many);
    CHECK(a.kind == b.kind);
    CHECK(a.paths_checked == b.paths_checked);
    CHECK(a.witness == b.witness);
}

TEST_CASE("depth override")
{
    auto p = fixture::bench("water_level").problem;
    SearchOptions o;
    o.depth = 1;
    auto rep = explain_unsolvability(p, o);
    CHECK(rep.depth == 1);
    CHECK(rep.outcome == ExplainOutcome::DiscreteUnsolvable);
}
