#include "hxplain/model.hpp"

#include <set>
#include <sstream>

namespace hxplain {

const char* op_symbol(Op op)
{
    switch (op) {
    case Op::LE: return "<=";
    case Op::LT: return "<";
    case Op::EQ: return "=";
    case Op::GE: return ">=";
    case Op::GT: return ">";
    }
    return "?";
}

std::optional<Op> op_from_symbol(const std::string& s)
{
    if (s == "<=") return Op::LE;
    if (s == "<") return Op::LT;
    if (s == "=" || s == "==") return Op::EQ;
    if (s == ">=") return Op::GE;
    if (s == ">") return Op::GT;
    return std::nullopt;
}

bool is_strict(Op op) { return op == Op::LT || op == Op::GT; }

LinearConstraint::LinearConstraint(LinearForm c, Op o, Rat r, std::string t)
    : op(o), rhs(std::move(r)), tag(std::move(t))
{
    for (auto& [k, v] : c)
        if (!v.is_zero())
            coeffs.emplace(k, std::move(v));
}

Rat LinearConstraint::lhs_value(const Valuation& v) const
{
    Rat sum;
    for (const auto& [var, coef] : coeffs) {
        auto it = v.find(var);
        if (it == v.end())
            throw UnboundVariable(var);
        sum += coef * it->second;
    }
    return sum;
}

std::string LinearConstraint::str() const
{
    std::ostringstream os;
    bool first = true;
    for (const auto& [var, coef] : coeffs) {
        if (!first)
            os << (coef.sign() < 0 ? " - " : " + ");
        else if (coef.sign() < 0)
            os << "-";
        first = false;
        Rat a = abs(coef);
        if (a != Rat(1))
            os << a << "*";
        os << var;
    }
    if (first)
        os << "0";
    os << " " << op_symbol(op) << " " << rhs;
    return os.str();
}

bool eval_constraint(const LinearConstraint& c, const Valuation& v)
{
    auto cmp = c.lhs_value(v) <=> c.rhs;
    switch (c.op) {
    case Op::LE: return cmp <= 0;
    case Op::LT: return cmp < 0;
    case Op::EQ: return cmp == 0;
    case Op::GE: return cmp >= 0;
    case Op::GT: return cmp > 0;
    }
    return false;
}

bool eval_all(const std::vector<LinearConstraint>& cs, const Valuation& v)
{
    for (const auto& c : cs)
        if (!eval_constraint(c, v))
            return false;
    return true;
}

Rat AffineExpr::eval(const Valuation& v) const
{
    Rat sum = constant;
    for (const auto& [var, coef] : coeffs) {
        auto it = v.find(var);
        if (it == v.end())
            throw UnboundVariable(var);
        sum += coef * it->second;
    }
    return sum;
}

Valuation Edge::apply_reset(const Valuation& pre) const
{
    Valuation post = pre;
    for (const auto& [var, expr] : reset)
        post[var] = expr.eval(pre);
    return post;
}

const Location& Automaton::location(const std::string& id) const
{
    auto it = locations.find(id);
    if (it == locations.end())
        throw Error("unknown location " + id);
    return it->second;
}

const Edge* Automaton::find_edge(const std::string& id) const
{
    for (const auto& e : edges)
        if (e.id == id)
            return &e;
    return nullptr;
}

const Edge& Automaton::edge(const std::string& id) const
{
    if (const Edge* e = find_edge(id))
        return *e;
    throw Error("unknown edge " + id);
}

// ============================================================================
// Validation
// ============================================================================

namespace {

void check_vars(const std::vector<LinearConstraint>& cs, const std::set<std::string>& vars,
                const std::string& where, std::vector<std::string>& issues)
{
    for (const auto& c : cs)
        for (const auto& [var, coef] : c.coeffs) {
            if (!vars.count(var))
                issues.push_back(where + ": undeclared variable " + var);
            if (coef.is_zero())
                issues.push_back(where + ": zero coefficient for " + var);
        }
}

} // namespace

ValidationReport validate_automaton(const Automaton& a)
{
    ValidationReport r;
    auto& issues = r.issues;
    std::set<std::string> vars;
    for (const auto& v : a.variables) {
        if (v.empty())
            issues.push_back("empty variable name");
        if (!vars.insert(v).second)
            issues.push_back("duplicate variable " + v);
    }

    for (const auto& [id, loc] : a.locations) {
        std::string where = "location " + id;
        if (loc.id != id)
            issues.push_back(where + ": id mismatch '" + loc.id + "'");
        check_vars(loc.invariant, vars, where + " invariant", issues);
        for (const auto& v : a.variables) {
            auto it = loc.flow.find(v);
            if (it == loc.flow.end())
                issues.push_back(where + ": no flow interval for " + v);
            else if (it->second.hi < it->second.lo)
                issues.push_back(where + ": empty flow interval for " + v);
        }
        for (const auto& [v, iv] : loc.flow)
            if (!vars.count(v))
                issues.push_back(where + ": flow for undeclared variable " + v);
    }

    std::set<std::string> edge_ids;
    for (const auto& e : a.edges) {
        std::string where = "edge " + e.id;
        if (e.id.empty())
            issues.push_back("edge with empty id");
        if (!edge_ids.insert(e.id).second)
            issues.push_back("duplicate edge id " + e.id);
        if (!a.locations.count(e.source))
            issues.push_back("unknown location " + e.source + " (" + where + " source)");
        if (!a.locations.count(e.target))
            issues.push_back("unknown location " + e.target + " (" + where + " target)");
        check_vars(e.guard, vars, where + " guard", issues);
        for (const auto& [v, expr] : e.reset) {
            if (!vars.count(v))
                issues.push_back(where + ": reset of undeclared variable " + v);
            for (const auto& [u, coef] : expr.coeffs)
                if (!vars.count(u))
                    issues.push_back(where + ": reset of " + v + " reads undeclared variable " + u);
        }
    }

    if (!a.locations.count(a.init.location))
        issues.push_back("unknown location " + a.init.location + " (init)");
    check_vars(a.init.constraints, vars, "init", issues);
    return r;
}

ValidationReport validate_problem(const PlanningProblem& p)
{
    ValidationReport r = validate_automaton(p.automaton);
    std::set<std::string> vars(p.automaton.variables.begin(), p.automaton.variables.end());
    if (!p.automaton.locations.count(p.goal.location))
        r.issues.push_back("unknown location " + p.goal.location + " (goal)");
    check_vars(p.goal.constraints, vars, "goal", r.issues);
    if (p.depth < 0)
        r.issues.push_back("negative depth");
    for (const auto& l : p.required_visits)
        if (!p.automaton.locations.count(l))
            r.issues.push_back("unknown location " + l + " (required_visits)");
    return r;
}

// ============================================================================
// Runs
// ============================================================================

std::vector<std::string> check_run(const PlanningProblem& p, const Run& run,
                                   const std::vector<LinearConstraint>* target,
                                   const std::string& target_location)
{
    std::vector<std::string> bad;
    const Automaton& a = p.automaton;
    if (run.steps.empty()) {
        bad.push_back("empty run");
        return bad;
    }
    auto total = [&](const Valuation& v, const std::string& where) {
        for (const auto& var : a.variables)
            if (!v.count(var)) {
                bad.push_back(where + ": missing value for " + var);
                return false;
            }
        return true;
    };

    if (run.steps.front().location != a.init.location)
        bad.push_back("run does not start at the initial location");

    for (std::size_t i = 0; i < run.steps.size(); ++i) {
        const RunStep& s = run.steps[i];
        std::string where = "step " + std::to_string(i);
        auto lit = a.locations.find(s.location);
        if (lit == a.locations.end()) {
            bad.push_back(where + ": unknown location " + s.location);
            continue;
        }
        if (!total(s.entry, where + " entry") || !total(s.exit, where + " exit"))
            continue;
        const Location& loc = lit->second;
        if (i == 0 && !eval_all(a.init.constraints, s.entry))
            bad.push_back(where + ": entry violates the initial condition");
        if (s.dwell.sign() < 0)
            bad.push_back(where + ": negative dwell");
        if (!eval_all(loc.invariant, s.entry))
            bad.push_back(where + ": entry violates the invariant of " + loc.id);
        if (!eval_all(loc.invariant, s.exit))
            bad.push_back(where + ": exit violates the invariant of " + loc.id);
        for (const auto& var : a.variables) {
            const FlowInterval& f = loc.flow.at(var);
            Rat delta = s.exit.at(var) - s.entry.at(var);
            if (delta < f.lo * s.dwell || f.hi * s.dwell < delta)
                bad.push_back(where + ": flow of " + var + " outside its rate interval");
        }

        bool last = i + 1 == run.steps.size();
        if (last) {
            if (!s.edge.empty())
                bad.push_back(where + ": terminal step carries an edge");
            if (target && !eval_all(*target, s.exit))
                bad.push_back(where + ": final valuation outside the target set");
            if (!target_location.empty() && s.location != target_location)
                bad.push_back(where + ": run ends at " + s.location + ", not " + target_location);
            continue;
        }
        const Edge* e = a.find_edge(s.edge);
        if (!e) {
            bad.push_back(where + ": unknown edge " + s.edge);
            continue;
        }
        const RunStep& next = run.steps[i + 1];
        if (e->source != s.location || e->target != next.location)
            bad.push_back(where + ": edge " + e->id + " does not connect " + s.location + " to " + next.location);
        if (!eval_all(e->guard, s.exit))
            bad.push_back(where + ": exit violates the guard of " + e->id);
        if (total(next.entry, where + " successor entry") && e->apply_reset(s.exit) != next.entry)
            bad.push_back(where + ": successor entry does not match the reset of " + e->id);
    }
    return bad;
}

Plan extract_plan(const Run& run)
{
    Plan plan;
    Rat clock;
    for (const auto& s : run.steps) {
        clock += s.dwell;
        if (!s.edge.empty())
            plan.steps.push_back(PlanStep{clock, s.label});
    }
    plan.makespan = clock;
    return plan;
}

} // namespace hxplain
