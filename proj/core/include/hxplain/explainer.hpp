#pragma once

#include "hxplain/encoding.hpp"
#include "hxplain/graph.hpp"
#include "hxplain/subsequence.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hxplain {

struct SearchOptions {
    PathMode mode = PathMode::Walks;
    std::optional<int> depth; // overrides the problem's depth
    std::size_t cap = default_path_cap();
    unsigned jobs = 1;
};

enum class ReachKind { Reachable, Unreachable, Budget };

const char* reach_kind_name(ReachKind k);

struct ReachOutcome {
    ReachKind kind = ReachKind::Unreachable;
    std::size_t paths_checked = 0;
    // Reachable only
    std::optional<AbstractPath> witness;
    Run run;
    Plan plan;
    Rat strictness_margin;
    // Budget only
    std::string reason;
};

// Bounded reachability of (location, target) from the initial states. The
// first feasible path in enumeration order is the witness, whatever `jobs`.
ReachOutcome reach_target(const PlanningProblem& p, const std::string& location,
                          const std::vector<LinearConstraint>& target, const std::vector<std::string>& visits,
                          const SearchOptions& opt = {});

// Target is the full invariant of `location`.
ReachOutcome reach_subproblem(const PlanningProblem& p, const std::string& location, const SearchOptions& opt = {});

struct WaypointResult {
    bool discrete_unsolvable = false;
    WaypointChain chain;
    std::size_t num_paths = 0;
    std::size_t dedup_paths = 0;
    bool lcs_exact = false;
    bool lcs_locally_maximal = true;
    std::size_t peak_paths_in_memory = 0;
};

// Throws BudgetExceeded when path enumeration is capped.
WaypointResult compute_waypoints(const PlanningProblem& p, const SearchOptions& opt = {});

enum class ExplainOutcome { Explained, DiscreteUnsolvable, Solvable, Inconclusive };

const char* explain_outcome_name(ExplainOutcome o);

struct WaypointStatus {
    std::string location;
    bool goal_check = false; // target is S_goal rather than Inv(location)
    ReachOutcome outcome;
};

struct ExplanationStats {
    std::size_t num_paths = 0;
    std::size_t dedup_paths = 0;
    bool lcs_exact = false;
    bool lcs_locally_maximal = true;
    std::int64_t elapsed_ms = 0;
    std::size_t peak_paths_in_memory = 0;
    std::size_t paths_checked = 0;
};

struct ExplanationReport {
    std::string problem;
    int depth = 0;
    WaypointChain chain;
    std::vector<WaypointStatus> statuses;
    std::optional<std::size_t> explanation; // index into statuses
    ExplainOutcome outcome = ExplainOutcome::Inconclusive;
    std::string reason; // for Inconclusive and DiscreteUnsolvable
    ExplanationStats stats;

    // Reachable statuses before the explanation, and over the whole report.
    [[nodiscard]] std::size_t feasible_before_explanation() const;
    [[nodiscard]] std::size_t feasible_total() const;
};

ExplanationReport explain_unsolvability(const PlanningProblem& p, const SearchOptions& opt = {},
                                        const std::string& name = {});

} // namespace hxplain
