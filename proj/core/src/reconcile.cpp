#include "hxplain/reconcile.hpp"

#include <chrono>
#include <set>

namespace hxplain {

const char* disposition_name(Disposition d)
{
    switch (d) {
    case Disposition::PrunedByE: return "pruned-by-E";
    case Disposition::PrunedByIPPrefix: return "pruned-by-IP-prefix";
    case Disposition::PrunedBySSegment: return "pruned-by-S-segment";
    case Disposition::InvalidEdge: return "invalid-edge";
    case Disposition::HumanInfeasible: return "human-infeasible";
    case Disposition::AgentIIS: return "agent-IIS";
    case Disposition::AgentFeasible: return "agent-feasible";
    }
    return "?";
}

const char* reconcile_outcome_name(ReconcileOutcome o)
{
    return o == ReconcileOutcome::Reconciled ? "Reconciled" : "HumanHasValidAgentPlan";
}

void validate_pair(const ModelPair& pair)
{
    const auto& h = pair.human;
    const auto& a = pair.agent;
    if (h.automaton.variables != a.automaton.variables)
        throw ValidationError("human and agent models declare different variables");
    if (h.automaton.init != a.automaton.init)
        throw ValidationError("human and agent models have different initial conditions");
    if (h.goal != a.goal)
        throw ValidationError("human and agent models have different goals");
    if (h.depth != a.depth)
        throw ValidationError("human and agent models have different depths");
    if (h.required_visits != a.required_visits)
        throw ValidationError("human and agent models have different required visits");
    for (const auto& [id, loc] : h.automaton.locations)
        if (!a.automaton.locations.count(id))
            throw ValidationError("human location " + id + " is missing from the agent model");
}

std::optional<InvalidEdge> discrete_feasibility(const AbstractPath& path, const LocGraph& agent)
{
    for (std::size_t i = 0; i < path.edges.size(); ++i) {
        if (!agent.has_arc(path.locations[i], path.locations[i + 1]))
            return InvalidEdge{path.edges[i], path.locations[i], path.locations[i + 1], i, path};
    }
    return std::nullopt;
}

std::optional<FeasibleRun> human_feasibility(const AbstractPath& path, const PlanningProblem& human)
{
    return path_feasible(human, path, human.goal.constraints);
}

AbstractPath to_agent_path(const AbstractPath& path, const PlanningProblem& agent)
{
    AbstractPath out;
    out.locations = path.locations;
    for (std::size_t i = 0; i < path.edges.size(); ++i) {
        const auto& s = path.locations[i];
        const auto& t = path.locations[i + 1];
        const Edge* same = agent.automaton.find_edge(path.edges[i]);
        if (same && same->source == s && same->target == t) {
            out.edges.push_back(same->id);
            continue;
        }
        const Edge* first = nullptr;
        for (const auto& e : agent.automaton.edges)
            if (e.source == s && e.target == t) {
                first = &e;
                break;
            }
        if (!first)
            throw PathMismatch("agent model has no edge from " + s + " to " + t);
        out.edges.push_back(first->id);
    }
    return out;
}

InfeasiblePath agent_iis(const AbstractPath& agent_path, const PlanningProblem& agent)
{
    auto r = check_path(agent, agent_path, agent.goal.constraints);
    if (std::holds_alternative<FeasibleRun>(r))
        throw NotInfeasible();
    return std::get<InfeasiblePath>(std::move(r));
}

namespace {

std::string edge_key(const std::vector<std::string>& edges, std::size_t n)
{
    std::string k;
    for (std::size_t i = 0; i < n; ++i) {
        k += edges[i];
        k += '\x1f';
    }
    return k;
}

} // namespace

ReconciliationReport reconcile(const ModelPair& pair, const SearchOptions& opt)
{
    validate_pair(pair);
    const auto t0 = std::chrono::steady_clock::now();
    const PlanningProblem& human = pair.human;
    const PlanningProblem& agent = pair.agent;

    ReconciliationReport rep;
    rep.depth = opt.depth.value_or(human.depth);
    LocGraph hg(human.automaton);
    LocGraph ag(agent.automaton);
    std::vector<bool> removed(hg.num_arcs(), false);
    std::set<std::string> ip_prefixes; // edge strings of paths whose extensions are pruned

    EnumerateOptions eo;
    eo.mode = opt.mode;
    eo.visits = human.required_visits;
    eo.cap = opt.cap;
    eo.removed_arcs = &removed;

    auto process = [&](const AbstractPath& path) -> bool {
        PathRecord rec;
        rec.path = path;

        for (std::size_t i = 0; i < path.edges.size(); ++i) {
            for (std::size_t e = 0; e < rep.invalid_edges.size(); ++e)
                if (rep.invalid_edges[e].edge == path.edges[i]) {
                    rec.disposition = Disposition::PrunedByE;
                    rec.ref = e;
                }
        }
        if (!rec.ref) {
            for (std::size_t n = 1; n < path.edges.size() && !ip_prefixes.empty(); ++n)
                if (ip_prefixes.count(edge_key(path.edges, n))) {
                    rec.disposition = Disposition::PrunedByIPPrefix;
                    rec.ref = std::nullopt;
                    for (std::size_t j = 0; j < rep.infeasible_paths.size(); ++j) {
                        const auto& ip = rep.infeasible_paths[j];
                        if (ip.prunes_extensions && ip.path.edges.size() == n &&
                            std::equal(ip.path.edges.begin(), ip.path.edges.end(), path.edges.begin())) {
                            rec.ref = j;
                            break;
                        }
                    }
                    break;
                }
        }
        if (!rec.ref) {
            // Segments carry agent edge ids, so match against the agent rewrite.
            std::optional<AbstractPath> ap;
            if (!discrete_feasibility(path, ag))
                ap = to_agent_path(path, agent);
            for (std::size_t s = 0; ap && s < rep.iis_segments.size(); ++s)
                if (rep.iis_segments[s].segment.matches(*ap)) {
                    rec.disposition = Disposition::PrunedBySSegment;
                    rec.ref = s;
                    break;
                }
        }
        if (rec.ref) {
            rep.paths.push_back(std::move(rec));
            return true;
        }

        if (auto bad = discrete_feasibility(path, ag)) {
            for (std::size_t a = 0; a < hg.num_arcs(); ++a)
                if (hg.arcs()[a].edge == bad->edge)
                    removed[a] = true;
            rec.disposition = Disposition::InvalidEdge;
            rec.ref = rep.invalid_edges.size();
            rep.invalid_edges.push_back(std::move(*bad));
            rep.paths.push_back(std::move(rec));
            return true;
        }

        ++rep.stats.lp_checks;
        if (!human_feasibility(path, human)) {
            InfeasibleRecord ip{path, false, false};
            ++rep.stats.lp_checks;
            ip.prunes_extensions = !path_feasible(human, path, {});
            if (ip.prunes_extensions)
                ip_prefixes.insert(edge_key(path.edges, path.edges.size()));
            rec.disposition = Disposition::HumanInfeasible;
            rec.ref = rep.infeasible_paths.size();
            rep.infeasible_paths.push_back(std::move(ip));
            rep.paths.push_back(std::move(rec));
            return true;
        }

        const AbstractPath ap = to_agent_path(path, agent);
        ++rep.stats.lp_checks;
        auto res = check_path(agent, ap, agent.goal.constraints);
        if (auto* fr = std::get_if<FeasibleRun>(&res)) {
            rec.disposition = Disposition::AgentFeasible;
            rep.outcome = ReconcileOutcome::HumanHasValidAgentPlan;
            rep.witness = path;
            rep.witness_plan = fr->plan;
            rep.paths.push_back(std::move(rec));
            return false;
        }
        auto& inf = std::get<InfeasiblePath>(res);
        SegmentRecord seg;
        seg.segment = inf.segment;
        seg.path = ap;
        seg.tags = inf.iis_tags;
        EncodedPath enc = encode_path(agent, ap, agent.goal.constraints);
        for (auto i : inf.iis.indices)
            seg.constraints.push_back(enc.system.constraints[i].tag + " " + enc.system.constraints[i].str());
        const bool ext = !inf.segment.anchored_end;
        if (ext)
            ip_prefixes.insert(edge_key(path.edges, path.edges.size()));
        rep.infeasible_paths.push_back(InfeasibleRecord{path, true, ext});
        rec.disposition = Disposition::AgentIIS;
        rec.ref = rep.iis_segments.size();
        rep.iis_segments.push_back(std::move(seg));
        rep.paths.push_back(std::move(rec));
        return true;
    };

    rep.stats.num_paths = for_each_path(hg, human.init().location, human.goal.location, rep.depth, eo, process);

    // Updated human model: the working graph minus E, annotated with S.
    ModelDocument upd;
    upd.problem = human;
    std::set<std::string> gone;
    for (const auto& e : rep.invalid_edges)
        gone.insert(e.edge);
    std::erase_if(upd.problem.automaton.edges, [&](const Edge& e) { return gone.count(e.id) > 0; });
    upd.metadata["name"] = "updated-human";
    std::string segs;
    for (const auto& s : rep.iis_segments) {
        if (!segs.empty())
            segs += "; ";
        segs += s.segment.str();
    }
    upd.metadata["unusable_segments"] = segs;
    std::string removed_ids;
    for (const auto& id : gone) {
        if (!removed_ids.empty())
            removed_ids += ",";
        removed_ids += id;
    }
    upd.metadata["removed_edges"] = removed_ids;
    rep.updated_human = std::move(upd);

    rep.stats.elapsed_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace hxplain
