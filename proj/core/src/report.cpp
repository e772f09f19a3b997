#include "hxplain/report.hpp"

#include <json.hpp>

#include <sstream>

namespace hxplain {

using nlohmann::json;

namespace {

json rat_json(const Rat& r)
{
    if (r.is_integer() && r.num().fits_slong_p())
        return json(r.num().get_si());
    return json(r.str());
}

std::string rat_text(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

json valuation_json(const Valuation& v)
{
    json o = json::object();
    for (const auto& [k, x] : v)
        o[k] = rat_json(x);
    return o;
}

json path_json(const AbstractPath& p) { return json{{"locations", p.locations}, {"edges", p.edges}}; }

json plan_json(const Plan& plan)
{
    json steps = json::array();
    for (const auto& s : plan.steps)
        steps.push_back(json{{"time", rat_json(s.time)}, {"action", s.action}});
    return json{{"steps", steps}, {"makespan", rat_json(plan.makespan)}};
}

json run_json(const Run& run)
{
    json steps = json::array();
    for (const auto& s : run.steps) {
        json j{{"location", s.location},
               {"entry", valuation_json(s.entry)},
               {"dwell", rat_json(s.dwell)},
               {"exit", valuation_json(s.exit)}};
        if (!s.edge.empty()) {
            j["edge"] = s.edge;
            j["label"] = s.label;
        }
        steps.push_back(std::move(j));
    }
    return steps;
}

json segment_json(const PathSegment& s)
{
    json j{{"start", s.start},
           {"end", s.end},
           {"locations", s.locations},
           {"edges", s.edges},
           {"anchored_start", s.anchored_start},
           {"anchored_end", s.anchored_end},
           {"text", s.str()}};
    if (s.entry_edge)
        j["entry_edge"] = *s.entry_edge;
    return j;
}

json reach_json(const ReachOutcome& o)
{
    json j{{"outcome", reach_kind_name(o.kind)}, {"paths_checked", o.paths_checked}};
    if (o.kind == ReachKind::Reachable && o.witness) {
        j["witness"] = json{{"path", path_json(*o.witness)},
                            {"plan", plan_json(o.plan)},
                            {"run", run_json(o.run)},
                            {"strictness_margin", rat_json(o.strictness_margin)}};
    }
    if (o.kind == ReachKind::Budget)
        j["reason"] = o.reason;
    return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string join(const json& arr, const char* sep = " ")
{
    std::string s;
    for (const auto& x : arr) {
        if (!s.empty())
            s += sep;
        s += x.get<std::string>();
    }
    return s;
}

std::string path_text(const json& p)
{
    std::string s;
    const auto& locs = p.at("locations");
    const auto& edges = p.at("edges");
    for (std::size_t i = 0; i < locs.size(); ++i) {
        if (i)
            s += " -" + edges[i - 1].get<std::string>() + "-> ";
        s += locs[i].get<std::string>();
    }
    return s;
}

void plan_text(std::ostringstream& os, const json& plan, const char* indent)
{
    for (const auto& s : plan.at("steps"))
        os << indent << "t=" << rat_text(s.at("time")) << "  " << s.at("action").get<std::string>() << "\n";
    os << indent << "makespan " << rat_text(plan.at("makespan")) << "\n";
}

std::string explain_text(const json& j)
{
    std::ostringstream os;
    if (!j.at("problem").get<std::string>().empty())
        os << "problem: " << j.at("problem").get<std::string>() << "\n";
    os << "depth: " << j.at("depth").get<int>() << "\n";
    os << "outcome: " << j.at("outcome").get<std::string>() << "\n";
    if (j.contains("reason"))
        os << "reason: " << j.at("reason").get<std::string>() << "\n";
    const auto& chain = j.at("chain");
    if (!chain.empty())
        os << "chain: " << join(chain) << " (" << chain.size() << ")\n";
    std::size_t i = 0;
    for (const auto& s : j.at("statuses")) {
        os << "  [" << i++ << "] " << s.at("loc").get<std::string>();
        if (s.at("target").get<std::string>() == "goal")
            os << " (goal)";
        os << "  " << s.at("outcome").get<std::string>() << "  paths checked " << s.at("paths_checked").get<std::size_t>()
           << "\n";
        if (s.contains("witness"))
            os << "      via " << path_text(s.at("witness").at("path")) << "\n";
    }
    if (j.contains("explanation"))
        os << "explanation: " << j.at("explanation").get<std::string>() << "\n";
    if (j.contains("plan")) {
        os << "plan:\n";
        plan_text(os, j.at("plan"), "  ");
    }
    const auto& f = j.at("feasible_waypoints");
    os << "feasible waypoints: " << f.at("before_explanation").get<std::size_t>() << " before the explanation, "
       << f.at("total").get<std::size_t>() << " in total\n";
    const auto& st = j.at("stats");
    os << "paths: " << st.at("num_paths").get<std::size_t>() << " enumerated, " << st.at("dedup_paths").get<std::size_t>()
       << " distinct strings, lcs " << (st.at("lcs_exact").get<bool>() ? "exact" : "folded");
    if (!st.at("lcs_locally_maximal").get<bool>())
        os << " (not locally maximal)";
    os << "\n";
    os << "elapsed: " << st.at("elapsed_ms").get<long long>() << " ms\n";
    return os.str();
}

std::string reconcile_text(const json& j)
{
    std::ostringstream os;
    os << "depth: " << j.at("depth").get<int>() << "\n";
    os << "outcome: " << j.at("outcome").get<std::string>() << "\n";
    const auto& e = j.at("invalid_edges");
    os << "invalid edges (" << e.size() << "):\n";
    for (const auto& x : e)
        os << "  " << x.at("edge").get<std::string>() << " " << x.at("source").get<std::string>() << " -> "
           << x.at("target").get<std::string>() << "  at position " << x.at("position").get<std::size_t>() << " of "
           << path_text(x.at("witness")) << "\n";
    const auto& s = j.at("iis_segments");
    os << "iis segments (" << s.size() << "):\n";
    for (const auto& x : s) {
        os << "  " << x.at("segment").at("text").get<std::string>() << "  steps " << x.at("segment").at("start").get<std::size_t>()
           << ".." << x.at("segment").at("end").get<std::size_t>() << "\n";
        for (const auto& c : x.at("constraints"))
            os << "      " << c.get<std::string>() << "\n";
    }
    const auto& ip = j.at("infeasible_paths");
    std::size_t human = 0, agent = 0;
    for (const auto& x : ip)
        (x.at("agent").get<bool>() ? agent : human)++;
    os << "infeasible paths: " << human << " human, " << agent << " agent\n";
    if (j.contains("witness")) {
        os << "agent-feasible path: " << path_text(j.at("witness").at("path")) << "\n";
        plan_text(os, j.at("witness").at("plan"), "  ");
    }
    os << "dispositions:\n";
    for (const auto& [name, n] : j.at("disposition_counts").items())
        os << "  " << name << " " << n.get<std::size_t>() << "\n";
    const auto& st = j.at("stats");
    os << "paths: " << st.at("num_paths").get<std::size_t>() << " enumerated, " << st.at("lp_checks").get<std::size_t>()
       << " lp checks\n";
    os << "elapsed: " << st.at("elapsed_ms").get<long long>() << " ms\n";
    return os.str();
}

std::string reach_text(const json& j)
{
    std::ostringstream os;
    os << "target: " << j.at("loc").get<std::string>() << "\n";
    os << "outcome: " << j.at("outcome").get<std::string>() << "\n";
    os << "paths checked: " << j.at("paths_checked").get<std::size_t>() << "\n";
    if (j.contains("reason"))
        os << "reason: " << j.at("reason").get<std::string>() << "\n";
    if (j.contains("witness")) {
        os << "path: " << path_text(j.at("witness").at("path")) << "\n";
        os << "plan:\n";
        plan_text(os, j.at("witness").at("plan"), "  ");
    }
    return os.str();
}

std::string check_path_text(const json& j)
{
    std::ostringstream os;
    os << "path: " << path_text(j.at("path")) << "\n";
    os << "target: " << j.at("target").get<std::string>() << "\n";
    os << "result: " << j.at("result").get<std::string>() << "\n";
    if (j.contains("plan")) {
        os << "strictness margin: " << rat_text(j.at("strictness_margin")) << "\n";
        os << "run:\n";
        for (const auto& s : j.at("run")) {
            os << "  " << s.at("location").get<std::string>() << "  dwell " << rat_text(s.at("dwell")) << "  in";
            for (const auto& [k, v] : s.at("entry").items())
                os << " " << k << "=" << rat_text(v);
            os << "  out";
            for (const auto& [k, v] : s.at("exit").items())
                os << " " << k << "=" << rat_text(v);
            if (s.contains("edge"))
                os << "  then " << s.at("edge").get<std::string>();
            os << "\n";
        }
        os << "plan:\n";
        plan_text(os, j.at("plan"), "  ");
    }
    if (j.contains("segment")) {
        os << "iis segment: " << j.at("segment").at("text").get<std::string>() << "\n";
        for (const auto& c : j.at("iis"))
            os << "  " << c.get<std::string>() << "\n";
    }
    return os.str();
}

void strip(json& j)
{
    if (j.is_object()) {
        j.erase("elapsed_ms");
        for (auto& [k, v] : j.items())
            strip(v);
    } else if (j.is_array()) {
        for (auto& v : j)
            strip(v);
    }
}

} // namespace

std::string explain_report_json(const ExplanationReport& rep)
{
    json j;
    j["kind"] = "explain";
    j["problem"] = rep.problem;
    j["depth"] = rep.depth;
    j["chain"] = rep.chain.locations();
    json statuses = json::array();
    for (const auto& s : rep.statuses) {
        json x = reach_json(s.outcome);
        x["loc"] = s.location;
        x["target"] = s.goal_check ? "goal" : "inv";
        statuses.push_back(std::move(x));
    }
    j["statuses"] = statuses;
    if (rep.explanation) {
        j["explanation"] = rep.statuses[*rep.explanation].location;
        j["explanation_index"] = *rep.explanation;
    }
    if (rep.outcome == ExplainOutcome::Solvable && !rep.statuses.empty())
        j["plan"] = plan_json(rep.statuses.back().outcome.plan);
    j["outcome"] = explain_outcome_name(rep.outcome);
    if (!rep.reason.empty())
        j["reason"] = rep.reason;
    j["feasible_waypoints"] = json{{"before_explanation", rep.feasible_before_explanation()},
                                   {"total", rep.feasible_total()}};
    j["stats"] = json{{"num_paths", rep.stats.num_paths},
                      {"dedup_paths", rep.stats.dedup_paths},
                      {"lcs_exact", rep.stats.lcs_exact},
                      {"lcs_locally_maximal", rep.stats.lcs_locally_maximal},
                      {"elapsed_ms", rep.stats.elapsed_ms},
                      {"peak_paths_in_memory", rep.stats.peak_paths_in_memory},
                      {"paths_checked", rep.stats.paths_checked}};
    return dump(j);
}

std::string reconcile_report_json(const ReconciliationReport& rep)
{
    json j;
    j["kind"] = "reconcile";
    j["depth"] = rep.depth;
    j["outcome"] = reconcile_outcome_name(rep.outcome);
    json e = json::array();
    for (const auto& x : rep.invalid_edges)
        e.push_back(json{{"edge", x.edge},
                         {"source", x.source},
                         {"target", x.target},
                         {"position", x.position},
                         {"witness", path_json(x.witness)}});
    j["invalid_edges"] = e;
    json ip = json::array();
    for (const auto& x : rep.infeasible_paths)
        ip.push_back(json{{"path", path_json(x.path)}, {"agent", x.agent}, {"prunes_extensions", x.prunes_extensions}});
    j["infeasible_paths"] = ip;
    json s = json::array();
    for (const auto& x : rep.iis_segments) {
        json tags = json::array();
        for (const auto& t : x.tags)
            tags.push_back(std::to_string(t.step) + ":" + tag_kind_name(t.kind));
        s.push_back(json{{"segment", segment_json(x.segment)},
                         {"path", path_json(x.path)},
                         {"constraints", x.constraints},
                         {"tags", tags}});
    }
    j["iis_segments"] = s;
    json paths = json::array();
    std::map<std::string, std::size_t> counts;
    for (const auto& d : {Disposition::PrunedByE, Disposition::PrunedByIPPrefix, Disposition::PrunedBySSegment,
                          Disposition::InvalidEdge, Disposition::HumanInfeasible, Disposition::AgentIIS,
                          Disposition::AgentFeasible})
        counts[disposition_name(d)] = 0;
    for (const auto& r : rep.paths) {
        json x{{"path", path_json(r.path)}, {"disposition", disposition_name(r.disposition)}};
        if (r.ref)
            x["ref"] = *r.ref;
        paths.push_back(std::move(x));
        ++counts[disposition_name(r.disposition)];
    }
    j["paths"] = paths;
    j["disposition_counts"] = counts;
    if (rep.witness) {
        j["witness"] = json{{"path", path_json(*rep.witness)}, {"plan", plan_json(*rep.witness_plan)}};
    }
    j["updated_human"] = json::parse(serialize_model(rep.updated_human));
    j["stats"] = json{{"num_paths", rep.stats.num_paths},
                      {"lp_checks", rep.stats.lp_checks},
                      {"elapsed_ms", rep.stats.elapsed_ms}};
    return dump(j);
}

std::string reach_report_json(const PlanningProblem& p, const std::string& location, const ReachOutcome& out)
{
    json j = reach_json(out);
    j["kind"] = "reach";
    j["loc"] = location;
    j["depth"] = p.depth;
    return dump(j);
}

std::string check_path_report_json(const AbstractPath& path, const std::string& target, const PathFeasibility& r,
                                   const EncodedPath& enc)
{
    json j;
    j["kind"] = "check-path";
    j["path"] = path_json(path);
    j["target"] = target;
    if (const auto* f = std::get_if<FeasibleRun>(&r)) {
        j["result"] = "Feasible";
        j["run"] = run_json(f->run);
        j["plan"] = plan_json(f->plan);
        j["strictness_margin"] = rat_json(f->strictness_margin);
    } else {
        const auto& inf = std::get<InfeasiblePath>(r);
        j["result"] = "Infeasible";
        j["segment"] = segment_json(inf.segment);
        json iis = json::array();
        for (auto i : inf.iis.indices)
            iis.push_back(enc.system.constraints[i].tag + " " + enc.system.constraints[i].str());
        j["iis"] = iis;
    }
    return dump(j);
}

std::string render_text(const std::string& report_json)
{
    json j = json::parse(report_json);
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "explain")
        return explain_text(j);
    if (kind == "reconcile")
        return reconcile_text(j);
    if (kind == "reach")
        return reach_text(j);
    if (kind == "check-path")
        return check_path_text(j);
    throw Error("unknown report kind " + kind);
}

std::string strip_timing(const std::string& report_json)
{
    json j = json::parse(report_json);
    strip(j);
    return dump(j);
}

} // namespace hxplain
