#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

#include "hxplain/encoding.hpp"

#include <algorithm>
#include <random>

using namespace hxplain;
using fixture::c1;

namespace {

const char* kWorkedPath = "l7,e7_8,l8,e8_9,l9,e9_10,l10,e10_16,l16,e16_22,l22,e22_23,l23,e23_17,l17,e17_18,l18";

bool has_constraint(const EncodedPath& enc, const LinearConstraint& want, TagKind kind, std::size_t step)
{
    for (std::size_t i = 0; i < enc.system.constraints.size(); ++i)
        if (enc.tags[i].step == step && enc.tags[i].kind == kind && enc.system.constraints[i] == want)
            return true;
    return false;
}

std::string sv(std::size_t step, const std::string& v, bool out) { return EncodedPath::state_var(step, v, out); }

} // namespace

TEST_CASE("worked warehouse path encodes the expected step-0 constraints")
{
    auto agent = fixture::bench("warehouse", {{"variant", "agent"}}).problem;
    AbstractPath path = parse_path(kWorkedPath);
    EncodedPath enc = encode_path(agent, path, agent.goal.constraints);
    CHECK(enc.steps == 9);
    CHECK(enc.system.variables.size() == 9 * (1 + 2 * 3));
    CHECK(enc.tags.size() == enc.system.constraints.size());

    CHECK(has_constraint(enc, c1(sv(0, "x", false), Op::EQ, Rat(1, 2)), TagKind::Init, 0));
    CHECK(has_constraint(enc, c1(sv(0, "y", false), Op::EQ, Rat(3, 2)), TagKind::Init, 0));
    CHECK(has_constraint(enc, c1(sv(0, "c", false), Op::EQ, Rat(10)), TagKind::Init, 0));
    LinearConstraint drain({{sv(0, "c", true), Rat(1)}, {sv(0, "c", false), Rat(-1)}, {"t@0", Rat(2)}}, Op::EQ,
                           Rat(0));
    CHECK(has_constraint(enc, drain, TagKind::Flow, 0));
    CHECK(has_constraint(enc, c1(sv(0, "c", false), Op::GE, Rat(1, 10)), TagKind::InvariantIn, 0));
    CHECK(has_constraint(enc, c1(sv(0, "c", true), Op::GE, Rat(1, 10)), TagKind::InvariantOut, 0));
}

TEST_CASE("worked path is agent-infeasible on the oil segment and human-feasible")
{
    auto agent = fixture::bench("warehouse", {{"variant", "agent"}}).problem;
    auto human = fixture::bench("warehouse").problem;
    AbstractPath path = parse_path(kWorkedPath);

    auto ra = check_path(agent, path, agent.goal.constraints);
    REQUIRE(std::holds_alternative<InfeasiblePath>(ra));
    const auto& inf = std::get<InfeasiblePath>(ra);
    CHECK(inf.segment.locations == std::vector<std::string>{"l10", "l16", "l22"});
    CHECK(inf.segment.edges == std::vector<std::string>{"e10_16", "e16_22"});
    CHECK(inf.segment.str() == "l10 -e10_16-> l16 -e16_22-> l22");
    CHECK(inf.iis_tags.size() == inf.iis.indices.size());

    auto rh = check_path(human, path, human.goal.constraints);
    REQUIRE(std::holds_alternative<FeasibleRun>(rh));
    const auto& run = std::get<FeasibleRun>(rh).run;
    CHECK(check_run(human, run, &human.goal.constraints, "l18").empty());
    CHECK(run.steps[6].location == "l23");
    CHECK(run.steps[6].entry.at("c") == Rat(10));
}

TEST_CASE("clock pair dwell is exactly one")
{
    auto p = fixture::clock_pair();
    AbstractPath path = parse_path("l0,e0,l1");
    auto r = check_path(p, path, p.goal.constraints);
    REQUIRE(std::holds_alternative<FeasibleRun>(r));
    const auto& fr = std::get<FeasibleRun>(r);
    CHECK(fr.run.steps[0].dwell == Rat(1));
    REQUIRE(fr.plan.steps.size() == 1);
    CHECK(fr.plan.steps[0].time == Rat(1));
    CHECK(fr.plan.steps[0].action == "e0");
}

TEST_CASE("malformed paths raise PathMismatch")
{
    auto p = fixture::clock_pair();
    CHECK_THROWS_AS(encode_path(p, parse_path("l1"), {}), PathMismatch);
    CHECK_THROWS_AS(encode_path(p, parse_path("l0,e9,l1"), {}), PathMismatch);
    CHECK_THROWS_AS(encode_path(p, AbstractPath{{"l0", "l1"}, {}}, {}), PathMismatch);
    CHECK_THROWS_AS(parse_path(""), PathMismatch);
    CHECK(parse_path("l0").locations.size() == 1);
}

TEST_CASE("segment anchoring")
{
    // unreachable target on the final step: the core uses the target condition
    auto p = fixture::clock_pair();
    std::vector<LinearConstraint> target{c1("x", Op::LT, Rat(1))};
    auto r = check_path(p, parse_path("l0,e0,l1"), target);
    REQUIRE(std::holds_alternative<InfeasiblePath>(r));
    const auto& seg = std::get<InfeasiblePath>(r).segment;
    CHECK(seg.anchored_end);
    CHECK_FALSE(seg.anchored_start); // the guard pins x, not the initial condition
    CHECK(seg.matches(parse_path("l0,e0,l1")));
}

TEST_CASE("segment matching requires the same slice")
{
    PathSegment seg;
    seg.start = 1;
    seg.end = 2;
    seg.locations = {"b", "c"};
    seg.edges = {"e1"};
    CHECK(seg.matches(AbstractPath{{"a", "b", "c"}, {"e0", "e1"}}));
    CHECK(seg.matches(AbstractPath{{"a", "d", "b", "c"}, {"e4", "e5", "e1"}}));
    CHECK_FALSE(seg.matches(AbstractPath{{"a", "b", "d"}, {"e0", "e3"}}));
    seg.anchored_end = true;
    CHECK_FALSE(seg.matches(AbstractPath{{"a", "b", "c", "d"}, {"e0", "e1", "e2"}}));
}

TEST_CASE("witness runs replay at midpoints on random problems")
{
    std::mt19937 rng(31);
    int feasible = 0;
    for (int i = 0; i < 150; ++i) {
        PlanningProblem p = oracle::random_problem(rng, 4, 7, 3);
        LocGraph g(p.automaton);
        for (const auto& to : g.vertices()) {
            const auto& inv = p.automaton.location(to).invariant;
            for (const auto& path : enumerate_paths(g, p.init().location, to, 3)) {
                auto r = check_path(p, path, inv);
                if (auto* fr = std::get_if<FeasibleRun>(&r)) {
                    ++feasible;
                    CHECK(check_run(p, fr->run, &inv, to).empty());
                    CHECK(fr->plan.steps.size() == path.length());
                    for (const auto& st : fr->run.steps) {
                        Valuation mid;
                        for (const auto& [v, val] : st.entry)
                            mid[v] = (val + st.exit.at(v)) / Rat(2);
                        CHECK(eval_all(p.automaton.location(st.location).invariant, mid));
                    }
                } else {
                    const auto& inf = std::get<InfeasiblePath>(r);
                    EncodedPath enc = encode_path(p, path, inv);
                    CHECK_FALSE(is_feasible(solve_feasibility(enc.system.subset(inf.iis.indices))));
                    CHECK(inf.segment == segment_from_iis(path, enc, inf.iis));
                    CHECK(inf.segment.matches(path));
                    CHECK(inf.segment.end < path.locations.size());
                    CHECK(inf.segment.start <= inf.segment.end);
                }
                CHECK(path_feasible(p, path, inv).has_value() == std::holds_alternative<FeasibleRun>(r));
            }
        }
    }
    CHECK(feasible > 0);
}

TEST_CASE("every constraint carries one tag naming its step")
{
    auto p = fixture::bench("rover").problem;
    AbstractPath path = parse_path("l11,e11_6,l6,e6_1,l1");
    EncodedPath enc = encode_path(p, path, p.automaton.location("l1").invariant);
    REQUIRE(enc.tags.size() == enc.system.constraints.size());
    for (std::size_t i = 0; i < enc.tags.size(); ++i) {
        CHECK(enc.tags[i].step < enc.steps);
        CHECK(enc.system.constraints[i].tag.rfind(std::to_string(enc.tags[i].step) + ":", 0) == 0);
    }
    auto dwell = std::count_if(enc.tags.begin(), enc.tags.end(),
                               [](const ConstraintTag& t) { return t.kind == TagKind::DwellNonneg; });
    CHECK(dwell == 3);
}
