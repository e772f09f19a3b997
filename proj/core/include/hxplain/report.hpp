#pragma once

#include "hxplain/encoding.hpp"
#include "hxplain/explainer.hpp"
#include "hxplain/reconcile.hpp"

#include <string>

namespace hxplain {

// JSON documents (sorted keys, two-space indent, trailing newline). Each
// carries a "kind" field naming the report type.
std::string explain_report_json(const ExplanationReport& rep);
std::string reconcile_report_json(const ReconciliationReport& rep);
std::string reach_report_json(const PlanningProblem& p, const std::string& location, const ReachOutcome& out);
std::string check_path_report_json(const AbstractPath& path, const std::string& target, const PathFeasibility& r,
                                   const EncodedPath& enc);

// Human-readable rendering; a pure function of the JSON text.
std::string render_text(const std::string& report_json);

// Report JSON with timing fields removed, for comparisons.
std::string strip_timing(const std::string& report_json);

} // namespace hxplain
