#pragma once

#include "hxplain/errors.hpp"
#include "hxplain/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hxplain {

using Valuation = std::map<std::string, Rat>;
using LinearForm = std::map<std::string, Rat>;

enum class Op { LE, LT, EQ, GE, GT };

const char* op_symbol(Op op);
std::optional<Op> op_from_symbol(const std::string& s);
bool is_strict(Op op);

struct LinearConstraint {
    LinearForm coeffs;
    Op op = Op::LE;
    Rat rhs;
    std::string tag;

    LinearConstraint() = default;
    // Zero coefficients are dropped.
    LinearConstraint(LinearForm c, Op o, Rat r, std::string t = {});

    [[nodiscard]] Rat lhs_value(const Valuation& v) const;
    [[nodiscard]] std::string str() const;

    friend bool operator==(const LinearConstraint& a, const LinearConstraint& b)
    {
        return a.coeffs == b.coeffs && a.op == b.op && a.rhs == b.rhs;
    }
};

bool eval_constraint(const LinearConstraint& c, const Valuation& v);
bool eval_all(const std::vector<LinearConstraint>& cs, const Valuation& v);

struct AffineExpr {
    LinearForm coeffs;
    Rat constant;

    static AffineExpr constant_of(Rat c) { return AffineExpr{{}, std::move(c)}; }
    [[nodiscard]] Rat eval(const Valuation& v) const;
    friend bool operator==(const AffineExpr&, const AffineExpr&) = default;
};

struct FlowInterval {
    Rat lo;
    Rat hi;
    friend bool operator==(const FlowInterval&, const FlowInterval&) = default;
};

struct Location {
    std::string id;
    std::vector<LinearConstraint> invariant;
    std::map<std::string, FlowInterval> flow;
    friend bool operator==(const Location&, const Location&) = default;
};

struct Edge {
    std::string id;
    std::string source;
    std::string target;
    std::string label;
    std::vector<LinearConstraint> guard;
    std::map<std::string, AffineExpr> reset;

    [[nodiscard]] Valuation apply_reset(const Valuation& pre) const;
    friend bool operator==(const Edge&, const Edge&) = default;
};

struct StateSet {
    std::string location;
    std::vector<LinearConstraint> constraints;
    friend bool operator==(const StateSet&, const StateSet&) = default;
};

struct Automaton {
    std::vector<std::string> variables;
    std::map<std::string, Location> locations;
    std::vector<Edge> edges;
    StateSet init;

    [[nodiscard]] const Location& location(const std::string& id) const;
    [[nodiscard]] const Edge& edge(const std::string& id) const;
    [[nodiscard]] const Edge* find_edge(const std::string& id) const;
    friend bool operator==(const Automaton&, const Automaton&) = default;
};

struct PlanningProblem {
    Automaton automaton;
    StateSet goal;
    int depth = 0;
    std::vector<std::string> required_visits;

    [[nodiscard]] const StateSet& init() const { return automaton.init; }
    friend bool operator==(const PlanningProblem&, const PlanningProblem&) = default;
};

struct PlanStep {
    Rat time;
    std::string action;
    friend bool operator==(const PlanStep&, const PlanStep&) = default;
};

struct Plan {
    std::vector<PlanStep> steps;
    Rat makespan;
    friend bool operator==(const Plan&, const Plan&) = default;
};

struct RunStep {
    std::string location;
    Valuation entry;
    Rat dwell;
    Valuation exit;
    std::string edge; // empty on the terminal step
    std::string label;
};

struct Run {
    std::vector<RunStep> steps;
};

struct ValidationReport {
    std::vector<std::string> issues;
    [[nodiscard]] bool ok() const { return issues.empty(); }
};

ValidationReport validate_automaton(const Automaton& a);
ValidationReport validate_problem(const PlanningProblem& p);

// Checks every per-step condition of a run. When `target` is given the final
// exit valuation must satisfy it, and the run must end at `target_location`
// when that is non-empty. Returns the list of violations.
std::vector<std::string> check_run(const PlanningProblem& p, const Run& run,
                                   const std::vector<LinearConstraint>* target,
                                   const std::string& target_location = {});

Plan extract_plan(const Run& run);

} // namespace hxplain
