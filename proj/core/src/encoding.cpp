#include "hxplain/encoding.hpp"

#include <algorithm>
#include <sstream>

namespace hxplain {

const char* tag_kind_name(TagKind k)
{
    switch (k) {
    case TagKind::Init: return "init";
    case TagKind::Reset: return "reset";
    case TagKind::DwellNonneg: return "dwell_nonneg";
    case TagKind::Flow: return "flow";
    case TagKind::InvariantIn: return "invariant_in";
    case TagKind::InvariantOut: return "invariant_out";
    case TagKind::Guard: return "guard";
    case TagKind::Target: return "target";
    }
    return "?";
}

std::string EncodedPath::state_var(std::size_t step, const std::string& var, bool out)
{
    return var + "@" + std::to_string(step) + (out ? ".out" : ".in");
}

std::string EncodedPath::dwell_var(std::size_t step) { return "t@" + std::to_string(step); }

namespace {

// Renames the variables of c to a step's in/out copies.
LinearConstraint instantiate(const LinearConstraint& c, std::size_t step, bool out)
{
    LinearForm f;
    for (const auto& [var, coef] : c.coeffs)
        f[EncodedPath::state_var(step, var, out)] = coef;
    return LinearConstraint(std::move(f), c.op, c.rhs);
}

void check_well_formed(const PlanningProblem& p, const AbstractPath& path)
{
    const Automaton& a = p.automaton;
    if (path.locations.empty())
        throw PathMismatch("empty path");
    if (path.locations.size() != path.edges.size() + 1)
        throw PathMismatch("path must alternate locations and edges");
    if (path.locations.front() != a.init.location)
        throw PathMismatch("path starts at " + path.locations.front() + ", not at the initial location " +
                           a.init.location);
    for (const auto& l : path.locations)
        if (!a.locations.count(l))
            throw PathMismatch("unknown location " + l);
    for (std::size_t i = 0; i < path.edges.size(); ++i) {
        const Edge* e = a.find_edge(path.edges[i]);
        if (!e)
            throw PathMismatch("unknown edge " + path.edges[i]);
        if (e->source != path.locations[i] || e->target != path.locations[i + 1])
            throw PathMismatch("edge " + e->id + " does not connect " + path.locations[i] + " to " +
                               path.locations[i + 1]);
    }
}

} // namespace

EncodedPath encode_path(const PlanningProblem& p, const AbstractPath& path,
                        const std::vector<LinearConstraint>& target)
{
    check_well_formed(p, path);
    const Automaton& a = p.automaton;
    const std::size_t n1 = path.locations.size();

    EncodedPath enc;
    enc.steps = n1;
    auto& vars = enc.system.variables;
    for (std::size_t i = 0; i < n1; ++i) {
        vars.push_back(EncodedPath::dwell_var(i));
        for (const auto& v : a.variables)
            vars.push_back(EncodedPath::state_var(i, v, false));
        for (const auto& v : a.variables)
            vars.push_back(EncodedPath::state_var(i, v, true));
    }

    auto add = [&](LinearConstraint c, std::size_t step, TagKind kind) {
        c.tag = std::to_string(step) + ":" + tag_kind_name(kind);
        enc.system.constraints.push_back(std::move(c));
        enc.tags.push_back(ConstraintTag{step, kind});
    };

    for (std::size_t i = 0; i < n1; ++i) {
        const Location& loc = a.location(path.locations[i]);
        const std::string t = EncodedPath::dwell_var(i);

        if (i == 0) {
            for (const auto& c : a.init.constraints)
                add(instantiate(c, 0, false), 0, TagKind::Init);
        } else {
            const Edge& e = a.edge(path.edges[i - 1]);
            for (const auto& v : a.variables) {
                LinearForm f;
                f[EncodedPath::state_var(i, v, false)] = Rat(1);
                Rat rhs;
                auto r = e.reset.find(v);
                if (r == e.reset.end()) {
                    f[EncodedPath::state_var(i - 1, v, true)] -= Rat(1);
                } else {
                    for (const auto& [u, coef] : r->second.coeffs)
                        f[EncodedPath::state_var(i - 1, u, true)] -= coef;
                    rhs = r->second.constant;
                }
                add(LinearConstraint(std::move(f), Op::EQ, rhs), i, TagKind::Reset);
            }
        }

        add(LinearConstraint({{t, Rat(1)}}, Op::GE, Rat(0)), i, TagKind::DwellNonneg);

        for (const auto& v : a.variables) {
            const FlowInterval& fl = loc.flow.at(v);
            auto delta = [&](const Rat& rate) {
                LinearForm f;
                f[EncodedPath::state_var(i, v, true)] = Rat(1);
                f[EncodedPath::state_var(i, v, false)] = Rat(-1);
                f[t] = -rate;
                return f;
            };
            if (fl.lo == fl.hi) {
                add(LinearConstraint(delta(fl.lo), Op::EQ, Rat(0)), i, TagKind::Flow);
            } else {
                add(LinearConstraint(delta(fl.lo), Op::GE, Rat(0)), i, TagKind::Flow);
                add(LinearConstraint(delta(fl.hi), Op::LE, Rat(0)), i, TagKind::Flow);
            }
        }

        for (const auto& c : loc.invariant)
            add(instantiate(c, i, false), i, TagKind::InvariantIn);
        for (const auto& c : loc.invariant)
            add(instantiate(c, i, true), i, TagKind::InvariantOut);

        if (i + 1 < n1) {
            for (const auto& c : a.edge(path.edges[i]).guard)
                add(instantiate(c, i, true), i, TagKind::Guard);
        } else {
            for (const auto& c : target)
                add(instantiate(c, i, true), i, TagKind::Target);
        }
    }
    return enc;
}

std::string PathSegment::str() const
{
    std::string s;
    for (std::size_t i = 0; i < locations.size(); ++i) {
        if (i) {
            s += " -";
            s += edges[i - 1];
            s += "-> ";
        }
        s += locations[i];
    }
    return s;
}

bool PathSegment::matches(const AbstractPath& path) const
{
    const std::size_t len = locations.size();
    const std::size_t n1 = path.locations.size();
    if (len == 0 || len > n1)
        return false;
    for (std::size_t i = 0; i + len <= n1; ++i) {
        if (anchored_start && i != 0)
            break;
        if (anchored_end && i + len != n1)
            continue;
        if (entry_edge && (i == 0 || path.edges[i - 1] != *entry_edge))
            continue;
        if (!std::equal(locations.begin(), locations.end(), path.locations.begin() + static_cast<std::ptrdiff_t>(i)))
            continue;
        if (!std::equal(edges.begin(), edges.end(), path.edges.begin() + static_cast<std::ptrdiff_t>(i)))
            continue;
        return true;
    }
    return false;
}

Run run_from_witness(const PlanningProblem& p, const AbstractPath& path, const EncodedPath& enc,
                     const Valuation& w)
{
    const Automaton& a = p.automaton;
    Run run;
    for (std::size_t i = 0; i < enc.steps; ++i) {
        RunStep s;
        s.location = path.locations[i];
        s.dwell = w.at(EncodedPath::dwell_var(i));
        for (const auto& v : a.variables) {
            s.entry[v] = w.at(EncodedPath::state_var(i, v, false));
            s.exit[v] = w.at(EncodedPath::state_var(i, v, true));
        }
        if (i < path.edges.size()) {
            s.edge = path.edges[i];
            s.label = a.edge(s.edge).label;
        }
        run.steps.push_back(std::move(s));
    }
    return run;
}

std::optional<FeasibleRun> path_feasible(const PlanningProblem& p, const AbstractPath& path,
                                         const std::vector<LinearConstraint>& target)
{
    EncodedPath enc = encode_path(p, path, target);
    auto res = solve_feasibility(enc.system);
    if (!is_feasible(res))
        return std::nullopt;
    const auto& f = std::get<Feasible>(res);
    FeasibleRun fr;
    fr.run = run_from_witness(p, path, enc, f.witness);
    fr.plan = extract_plan(fr.run);
    fr.strictness_margin = f.strictness_margin;
    return fr;
}

PathSegment segment_from_iis(const AbstractPath& path, const EncodedPath& enc, const IIS& iis)
{
    PathSegment seg;
    if (iis.indices.empty())
        throw InvariantViolation("empty IIS");
    seg.start = enc.tags[iis.indices.front()].step;
    seg.end = seg.start;
    for (auto i : iis.indices) {
        seg.start = std::min(seg.start, enc.tags[i].step);
        seg.end = std::max(seg.end, enc.tags[i].step);
    }
    for (auto i : iis.indices) {
        const auto& t = enc.tags[i];
        if (t.kind == TagKind::Init)
            seg.anchored_start = true;
        if (t.kind == TagKind::Target)
            seg.anchored_end = true;
        if (t.kind == TagKind::Reset && t.step == seg.start && seg.start > 0)
            seg.entry_edge = path.edges[seg.start - 1];
    }
    for (std::size_t s = seg.start; s <= seg.end; ++s) {
        seg.locations.push_back(path.locations[s]);
        if (s < seg.end)
            seg.edges.push_back(path.edges[s]);
    }
    return seg;
}

PathFeasibility check_path(const PlanningProblem& p, const AbstractPath& path,
                           const std::vector<LinearConstraint>& target)
{
    EncodedPath enc = encode_path(p, path, target);
    auto res = solve_feasibility(enc.system);
    if (is_feasible(res)) {
        const auto& f = std::get<Feasible>(res);
        FeasibleRun fr;
        fr.run = run_from_witness(p, path, enc, f.witness);
        fr.plan = extract_plan(fr.run);
        fr.strictness_margin = f.strictness_margin;
        return fr;
    }
    InfeasiblePath ip;
    ip.iis = deletion_filter_iis(enc.system);
    for (auto i : ip.iis.indices)
        ip.iis_tags.push_back(enc.tags[i]);
    ip.segment = segment_from_iis(path, enc, ip.iis);
    return ip;
}

AbstractPath parse_path(const std::string& text)
{
    std::vector<std::string> items;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        items.push_back(b == std::string::npos ? std::string() : item.substr(b, e - b + 1));
    }
    if (items.empty() || items.size() % 2 == 0)
        throw PathMismatch("path must alternate locations and edges, starting and ending with a location");
    AbstractPath p;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (items[i].empty())
            throw PathMismatch("empty path element");
        (i % 2 == 0 ? p.locations : p.edges).push_back(items[i]);
    }
    return p;
}

} // namespace hxplain
