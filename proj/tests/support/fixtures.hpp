#pragma once

#include "hxplain/benchmarks.hpp"
#include "hxplain/model.hpp"

#include <string>

namespace fixture {

using namespace hxplain;

inline LinearConstraint c1(const std::string& v, Op op, Rat rhs, Rat coef = Rat(1))
{
    return LinearConstraint({{v, coef}}, op, std::move(rhs));
}

inline Location loc(const std::string& id, std::map<std::string, FlowInterval> flow,
                    std::vector<LinearConstraint> inv = {})
{
    return Location{id, std::move(inv), std::move(flow)};
}

inline Edge edge(const std::string& id, const std::string& s, const std::string& t, std::vector<LinearConstraint> guard = {},
                 std::map<std::string, AffineExpr> reset = {})
{
    return Edge{id, s, t, id, std::move(guard), std::move(reset)};
}

// l0 --e0--> l1 over one clock x with rate 1, x = 0 initially, guard x = 1.
inline PlanningProblem clock_pair()
{
    PlanningProblem p;
    auto& a = p.automaton;
    a.variables = {"x"};
    a.locations.emplace("l0", loc("l0", {{"x", {Rat(1), Rat(1)}}}));
    a.locations.emplace("l1", loc("l1", {{"x", {Rat(1), Rat(1)}}}));
    a.edges.push_back(edge("e0", "l0", "l1", {c1("x", Op::EQ, Rat(1))}));
    a.init = StateSet{"l0", {c1("x", Op::EQ, Rat(0))}};
    p.goal = StateSet{"l1", {}};
    p.depth = 1;
    return p;
}

// Directed graph problem with no continuous content beyond one idle variable.
inline PlanningProblem graph_problem(const std::vector<std::string>& locs,
                                     const std::vector<std::pair<std::string, std::string>>& arcs,
                                     const std::string& init, const std::string& goal, int depth)
{
    PlanningProblem p;
    auto& a = p.automaton;
    a.variables = {"x"};
    for (const auto& l : locs)
        a.locations.emplace(l, loc(l, {{"x", {Rat(0), Rat(0)}}}));
    int i = 0;
    for (const auto& [s, t] : arcs)
        a.edges.push_back(edge("e" + std::to_string(i++), s, t));
    a.init = StateSet{init, {}};
    p.goal = StateSet{goal, {}};
    p.depth = depth;
    return p;
}

inline ModelDocument bench(const std::string& family, std::map<std::string, std::string> params = {})
{
    return generate_benchmark(BenchmarkSpec{family, std::move(params)});
}

} // namespace fixture
