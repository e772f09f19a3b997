#pragma once

#include "hxplain/feasibility.hpp"
#include "hxplain/graph.hpp"
#include "hxplain/model.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hxplain {

enum class TagKind { Init, Reset, DwellNonneg, Flow, InvariantIn, InvariantOut, Guard, Target };

const char* tag_kind_name(TagKind k);

struct ConstraintTag {
    std::size_t step = 0;
    TagKind kind = TagKind::Flow;
    friend bool operator==(const ConstraintTag&, const ConstraintTag&) = default;
};

struct EncodedPath {
    ConstraintSystem system;
    std::vector<ConstraintTag> tags; // parallel to system.constraints
    std::size_t steps = 0;           // n + 1

    static std::string state_var(std::size_t step, const std::string& var, bool out);
    static std::string dwell_var(std::size_t step);
};

// Throws PathMismatch when the path is not a well-formed path from l_0.
EncodedPath encode_path(const PlanningProblem& p, const AbstractPath& path,
                        const std::vector<LinearConstraint>& target);

struct PathSegment {
    std::size_t start = 0;
    std::size_t end = 0;
    std::vector<std::string> locations;
    std::vector<std::string> edges;
    // Set when the core reads the reset of the edge entering `start`.
    std::optional<std::string> entry_edge;
    bool anchored_start = false; // core uses the initial condition
    bool anchored_end = false;   // core uses the target condition

    [[nodiscard]] std::string str() const;
    // Whether this segment's core is present in `path` (as a contiguous slice
    // with the same anchoring), so `path` is infeasible for the same reason.
    [[nodiscard]] bool matches(const AbstractPath& path) const;
    friend bool operator==(const PathSegment&, const PathSegment&) = default;
};

struct FeasibleRun {
    Run run;
    Plan plan;
    Rat strictness_margin;
};

struct InfeasiblePath {
    IIS iis;
    PathSegment segment;
    std::vector<ConstraintTag> iis_tags;
};

using PathFeasibility = std::variant<FeasibleRun, InfeasiblePath>;

Run run_from_witness(const PlanningProblem& p, const AbstractPath& path, const EncodedPath& enc,
                     const Valuation& witness);

// Feasibility only; no IIS extraction.
std::optional<FeasibleRun> path_feasible(const PlanningProblem& p, const AbstractPath& path,
                                         const std::vector<LinearConstraint>& target);

PathFeasibility check_path(const PlanningProblem& p, const AbstractPath& path,
                           const std::vector<LinearConstraint>& target);

PathSegment segment_from_iis(const AbstractPath& path, const EncodedPath& enc, const IIS& iis);

// Parses "l7,e1,l8,..." (alternating location and edge ids).
AbstractPath parse_path(const std::string& text);

} // namespace hxplain
