#include "hxplain/explainer.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <set>
#include <thread>

namespace hxplain {

const char* reach_kind_name(ReachKind k)
{
    switch (k) {
    case ReachKind::Reachable: return "Reachable";
    case ReachKind::Unreachable: return "Unreachable";
    case ReachKind::Budget: return "Budget";
    }
    return "?";
}

const char* explain_outcome_name(ExplainOutcome o)
{
    switch (o) {
    case ExplainOutcome::Explained: return "Explained";
    case ExplainOutcome::DiscreteUnsolvable: return "DiscreteUnsolvable";
    case ExplainOutcome::Solvable: return "Solvable";
    case ExplainOutcome::Inconclusive: return "Inconclusive";
    }
    return "?";
}

namespace {

int effective_depth(const PlanningProblem& p, const SearchOptions& opt) { return opt.depth.value_or(p.depth); }

// Checks every path of the batch; results[i] is set for feasible paths.
void check_batch(const PlanningProblem& p, const std::vector<AbstractPath>& batch,
                 const std::vector<LinearConstraint>& target, unsigned jobs,
                 std::vector<std::optional<FeasibleRun>>& results)
{
    results.assign(batch.size(), std::nullopt);
    if (jobs <= 1 || batch.size() <= 1) {
        for (std::size_t i = 0; i < batch.size(); ++i) {
            results[i] = path_feasible(p, batch[i], target);
            if (results[i])
                return; // later paths cannot matter
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> pool;
    const unsigned n = std::min<unsigned>(jobs, static_cast<unsigned>(batch.size()));
    for (unsigned t = 0; t < n; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = next++; i < batch.size(); i = next++)
                    results[i] = path_feasible(p, batch[i], target);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool)
        th.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace

ReachOutcome reach_target(const PlanningProblem& p, const std::string& location,
                          const std::vector<LinearConstraint>& target, const std::vector<std::string>& visits,
                          const SearchOptions& opt)
{
    LocGraph g(p.automaton);
    (void)g.require(location);
    EnumerateOptions eo;
    eo.mode = opt.mode;
    eo.visits = visits;
    eo.cap = opt.cap;

    ReachOutcome out;
    const std::size_t batch_size = opt.jobs <= 1 ? 1 : static_cast<std::size_t>(opt.jobs) * 8;
    std::vector<AbstractPath> batch;
    std::vector<std::optional<FeasibleRun>> results;

    auto flush = [&]() -> bool {
        check_batch(p, batch, target, opt.jobs, results);
        for (std::size_t i = 0; i < batch.size(); ++i) {
            ++out.paths_checked;
            if (results[i]) {
                out.kind = ReachKind::Reachable;
                out.witness = batch[i];
                out.run = std::move(results[i]->run);
                out.plan = std::move(results[i]->plan);
                out.strictness_margin = results[i]->strictness_margin;
                return true;
            }
        }
        batch.clear();
        return false;
    };

    try {
        bool found = false;
        for_each_path(g, p.init().location, location, effective_depth(p, opt), eo, [&](const AbstractPath& path) {
            batch.push_back(path);
            if (batch.size() >= batch_size && flush()) {
                found = true;
                return false;
            }
            return true;
        });
        if (!found && !batch.empty())
            found = flush();
        if (!found)
            out.kind = ReachKind::Unreachable;
    } catch (const BudgetExceeded& e) {
        // Paths emitted before the cap still count, as they would sequentially.
        if (batch.empty() || !flush()) {
            const std::size_t checked = out.paths_checked;
            out = ReachOutcome{};
            out.paths_checked = checked;
            out.kind = ReachKind::Budget;
            out.reason = e.what();
            return out;
        }
    }

    if (out.kind == ReachKind::Reachable) {
        auto issues = check_run(p, out.run, &target, location);
        if (!issues.empty())
            throw InvariantViolation("witness run for " + location + " does not replay: " + issues.front());
    }
    return out;
}

ReachOutcome reach_subproblem(const PlanningProblem& p, const std::string& location, const SearchOptions& opt)
{
    return reach_target(p, location, p.automaton.location(location).invariant, {}, opt);
}

WaypointResult compute_waypoints(const PlanningProblem& p, const SearchOptions& opt)
{
    LocGraph g(p.automaton);
    EnumerateOptions eo;
    eo.mode = opt.mode;
    eo.visits = p.required_visits;
    eo.cap = opt.cap;

    WaypointResult r;
    std::set<SymbolSeq> strings;
    r.num_paths = for_each_path(g, p.init().location, p.goal.location, effective_depth(p, opt), eo,
                                [&](const AbstractPath& path) {
                                    strings.insert(path.locations);
                                    return true;
                                });
    r.dedup_paths = strings.size();
    r.peak_paths_in_memory = strings.size();
    if (strings.empty()) {
        r.discrete_unsolvable = true;
        return r;
    }
    std::vector<SymbolSeq> seqs(strings.begin(), strings.end());
    SymbolSeq c;
    if (lcs_multi_fits(seqs)) {
        c = lcs_multi_exact(seqs);
        r.lcs_exact = true;
    } else {
        c = common_subsequence_fold(seqs);
        r.lcs_locally_maximal = is_locally_maximal(c, seqs);
    }
    if (!is_common_subsequence(c, seqs))
        throw InvariantViolation("waypoint chain is not a common subsequence of the path strings");
    r.chain = build_chain(c, p);
    return r;
}

std::size_t ExplanationReport::feasible_before_explanation() const
{
    std::size_t n = 0;
    for (std::size_t i = 0; i < statuses.size(); ++i) {
        if (explanation && i >= *explanation)
            break;
        if (statuses[i].outcome.kind == ReachKind::Reachable)
            ++n;
    }
    return n;
}

std::size_t ExplanationReport::feasible_total() const
{
    std::size_t n = 0;
    for (const auto& s : statuses)
        if (s.outcome.kind == ReachKind::Reachable)
            ++n;
    return n;
}

ExplanationReport explain_unsolvability(const PlanningProblem& p, const SearchOptions& opt, const std::string& name)
{
    const auto t0 = std::chrono::steady_clock::now();
    ExplanationReport rep;
    rep.problem = name;
    rep.depth = effective_depth(p, opt);

    auto finish = [&]() {
        rep.stats.elapsed_ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
        for (const auto& s : rep.statuses)
            rep.stats.paths_checked += s.outcome.paths_checked;
        return rep;
    };

    WaypointResult wr;
    try {
        wr = compute_waypoints(p, opt);
    } catch (const BudgetExceeded& e) {
        rep.outcome = ExplainOutcome::Inconclusive;
        rep.reason = e.what();
        return finish();
    }
    rep.stats.num_paths = wr.num_paths;
    rep.stats.dedup_paths = wr.dedup_paths;
    rep.stats.lcs_exact = wr.lcs_exact;
    rep.stats.lcs_locally_maximal = wr.lcs_locally_maximal;
    rep.stats.peak_paths_in_memory = wr.peak_paths_in_memory;
    if (wr.discrete_unsolvable) {
        rep.outcome = ExplainOutcome::DiscreteUnsolvable;
        rep.reason = "no path from " + p.init().location + " to " + p.goal.location + " within depth " +
                     std::to_string(rep.depth);
        return finish();
    }
    rep.chain = wr.chain;

    auto record = [&](WaypointStatus st) -> bool {
        const ReachKind k = st.outcome.kind;
        rep.statuses.push_back(std::move(st));
        if (k == ReachKind::Budget) {
            rep.outcome = ExplainOutcome::Inconclusive;
            rep.reason = rep.statuses.back().outcome.reason;
            return false;
        }
        if (k == ReachKind::Unreachable) {
            rep.outcome = ExplainOutcome::Explained;
            rep.explanation = rep.statuses.size() - 1;
            return false;
        }
        return true;
    };

    for (const auto& sp : rep.chain.elements) {
        WaypointStatus st;
        st.location = sp.location;
        st.outcome = reach_target(p, sp.location, sp.goal, {}, opt);
        if (!record(std::move(st)))
            return finish();
    }

    // Every waypoint is reachable; the true goal decides.
    WaypointStatus st;
    st.location = p.goal.location;
    st.goal_check = true;
    st.outcome = reach_target(p, p.goal.location, p.goal.constraints, p.required_visits, opt);
    if (record(std::move(st)))
        rep.outcome = ExplainOutcome::Solvable;
    return finish();
}

} // namespace hxplain
