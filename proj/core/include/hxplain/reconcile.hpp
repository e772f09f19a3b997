#pragma once

#include "hxplain/encoding.hpp"
#include "hxplain/explainer.hpp"
#include "hxplain/model_io.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hxplain {

struct ModelPair {
    PlanningProblem human;
    PlanningProblem agent;
};

// Throws ValidationError when the pair does not share variables, problem
// definition, or the human location namespace.
void validate_pair(const ModelPair& pair);

struct InvalidEdge {
    std::string edge;
    std::string source;
    std::string target;
    std::size_t position = 0; // index of the edge on the witnessing path
    AbstractPath witness;
};

// First human edge whose (source, target) has no agent arc.
std::optional<InvalidEdge> discrete_feasibility(const AbstractPath& path, const LocGraph& agent);

std::optional<FeasibleRun> human_feasibility(const AbstractPath& path, const PlanningProblem& human);

// Rewrites a human path onto agent edge ids: the same id when it connects the
// same locations, else the first agent edge between them. Throws PathMismatch.
AbstractPath to_agent_path(const AbstractPath& path, const PlanningProblem& agent);

// Throws NotInfeasible when the agent encoding is feasible.
InfeasiblePath agent_iis(const AbstractPath& agent_path, const PlanningProblem& agent);

enum class Disposition {
    PrunedByE,
    PrunedByIPPrefix,
    PrunedBySSegment,
    InvalidEdge,
    HumanInfeasible,
    AgentIIS,
    AgentFeasible,
};

const char* disposition_name(Disposition d);

struct PathRecord {
    AbstractPath path;
    Disposition disposition = Disposition::HumanInfeasible;
    // Index into invalid_edges, infeasible_paths or iis_segments, by disposition.
    std::optional<std::size_t> ref;
};

struct InfeasibleRecord {
    AbstractPath path;
    bool agent = false; // agent-infeasible rather than human-infeasible
    // Whether every extension is infeasible too (the core avoids the goal).
    bool prunes_extensions = false;
};

struct SegmentRecord {
    PathSegment segment;
    AbstractPath path; // agent path the IIS came from
    std::vector<std::string> constraints;
    std::vector<ConstraintTag> tags;
};

enum class ReconcileOutcome { Reconciled, HumanHasValidAgentPlan };

const char* reconcile_outcome_name(ReconcileOutcome o);

struct ReconcileStats {
    std::size_t num_paths = 0;
    std::size_t lp_checks = 0;
    std::int64_t elapsed_ms = 0;
};

struct ReconciliationReport {
    std::vector<InvalidEdge> invalid_edges;
    std::vector<InfeasibleRecord> infeasible_paths;
    std::vector<SegmentRecord> iis_segments;
    std::vector<PathRecord> paths;
    ReconcileOutcome outcome = ReconcileOutcome::Reconciled;
    std::optional<AbstractPath> witness; // agent-feasible human path
    std::optional<Plan> witness_plan;
    ModelDocument updated_human;
    int depth = 0;
    ReconcileStats stats;
};

// Paths are processed sequentially in enumeration order; processing stops at
// the first agent-feasible path.
ReconciliationReport reconcile(const ModelPair& pair, const SearchOptions& opt = {});

} // namespace hxplain
