#include "hxplain/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <limits>

namespace hxplain {

LocGraph::LocGraph(const Automaton& a)
{
    for (const auto& [id, loc] : a.locations)
        names_.push_back(id);
    out_.resize(names_.size());
    for (const auto& e : a.edges) {
        Arc arc{require(e.source), require(e.target), e.id};
        out_[arc.source].push_back(static_cast<int>(arcs_.size()));
        arcs_.push_back(std::move(arc));
    }
}

std::optional<int> LocGraph::index(const std::string& id) const
{
    // names_ is sorted because the automaton keeps locations in a std::map.
    auto it = std::lower_bound(names_.begin(), names_.end(), id);
    if (it == names_.end() || *it != id)
        return std::nullopt;
    return static_cast<int>(it - names_.begin());
}

int LocGraph::require(const std::string& id) const
{
    auto i = index(id);
    if (!i)
        throw Error("unknown location " + id);
    return *i;
}

bool LocGraph::has_arc(const std::string& source, const std::string& target) const
{
    auto s = index(source);
    auto t = index(target);
    if (!s || !t)
        return false;
    for (int a : out_[*s])
        if (arcs_[a].target == *t)
            return true;
    return false;
}

std::string AbstractPath::str() const
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

std::size_t default_path_cap()
{
    if (const char* env = std::getenv("HXPLAIN_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0)
            return static_cast<std::size_t>(v);
    }
    return 1'000'000;
}

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 2;

// Hop distance from every vertex to `to`, skipping `banned`.
std::vector<int> distances_to(const LocGraph& g, int to, int banned = -1)
{
    std::vector<std::vector<int>> in(g.num_vertices());
    for (const auto& a : g.arcs())
        in[a.target].push_back(a.source);
    std::vector<int> dist(g.num_vertices(), kInf);
    if (to == banned)
        return dist;
    std::deque<int> q{to};
    dist[to] = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int u : in[v])
            if (u != banned && dist[u] == kInf) {
                dist[u] = dist[v] + 1;
                q.push_back(u);
            }
    }
    return dist;
}

struct Walker {
    const LocGraph& g;
    const EnumerateOptions& opt;
    const std::function<bool(const AbstractPath&)>& visit;
    std::vector<int> dist;
    int to = 0;
    std::vector<int> need; // required vertices
    std::vector<int> stack_v;
    std::vector<int> stack_a;
    std::vector<int> on_path;
    std::size_t emitted = 0;
    bool stopped = false;

    bool stack_uses_removed() const
    {
        if (!opt.removed_arcs)
            return false;
        for (int a : stack_a)
            if ((*opt.removed_arcs)[a])
                return true;
        return false;
    }

    void emit()
    {
        for (int r : need)
            if (!on_path[r])
                return;
        if (stack_uses_removed())
            return;
        if (++emitted > opt.cap)
            throw BudgetExceeded("path budget exceeded (" + std::to_string(opt.cap) + " paths)");
        AbstractPath p;
        p.locations.reserve(stack_v.size());
        for (int v : stack_v)
            p.locations.push_back(g.name(v));
        for (int a : stack_a)
            p.edges.push_back(g.arcs()[a].edge);
        if (!visit(p))
            stopped = true;
    }

    void dfs(int remaining)
    {
        int v = stack_v.back();
        if (remaining == 0) {
            if (v == to)
                emit();
            return;
        }
        for (int a : g.out_arcs(v)) {
            if (stopped)
                return;
            if (opt.removed_arcs && (*opt.removed_arcs)[a])
                continue;
            int w = g.arcs()[a].target;
            if (dist[w] > remaining - 1)
                continue;
            if (opt.mode == PathMode::Simple && on_path[w])
                continue;
            stack_v.push_back(w);
            stack_a.push_back(a);
            ++on_path[w];
            dfs(remaining - 1);
            --on_path[w];
            stack_a.pop_back();
            stack_v.pop_back();
            if (stack_uses_removed())
                return;
        }
    }
};

} // namespace

std::size_t for_each_path(const LocGraph& g, const std::string& from, const std::string& to, int depth,
                          const EnumerateOptions& opt, const std::function<bool(const AbstractPath&)>& visit)
{
    int s = g.require(from);
    Walker w{g, opt, visit, {}, g.require(to), {}, {}, {}, {}, 0, false};
    for (const auto& r : opt.visits)
        w.need.push_back(g.require(r));
    w.dist = distances_to(g, w.to);
    w.on_path.assign(g.num_vertices(), 0);
    for (int len = 0; len <= depth && !w.stopped; ++len) {
        if (w.dist[s] > len)
            continue;
        w.stack_v = {s};
        w.stack_a.clear();
        std::fill(w.on_path.begin(), w.on_path.end(), 0);
        w.on_path[s] = 1;
        w.dfs(len);
    }
    return w.emitted;
}

std::vector<AbstractPath> enumerate_paths(const LocGraph& g, const std::string& from, const std::string& to,
                                          int depth, const EnumerateOptions& opt)
{
    std::vector<AbstractPath> out;
    for_each_path(g, from, to, depth, opt, [&](const AbstractPath& p) {
        out.push_back(p);
        return true;
    });
    return out;
}

std::optional<std::size_t> shortest_path_length(const LocGraph& g, const std::string& from, const std::string& to)
{
    auto dist = distances_to(g, g.require(to));
    int d = dist[g.require(from)];
    if (d == kInf)
        return std::nullopt;
    return static_cast<std::size_t>(d) + 1;
}

std::set<std::string> disconnecting_articulation_points(const LocGraph& g, const std::string& from,
                                                        const std::string& to)
{
    int s = g.require(from);
    int t = g.require(to);
    if (distances_to(g, t)[s] == kInf)
        throw Unreachable(to + " is not reachable from " + from);
    std::set<std::string> out;
    for (int v = 0; v < static_cast<int>(g.num_vertices()); ++v) {
        if (v == s || v == t)
            continue;
        if (distances_to(g, t, v)[s] == kInf)
            out.insert(g.name(v));
    }
    return out;
}

} // namespace hxplain
