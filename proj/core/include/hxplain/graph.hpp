#pragma once

#include "hxplain/model.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace hxplain {

struct Arc {
    int source = 0;
    int target = 0;
    std::string edge;
};

// Vertices follow the automaton's location order; arcs follow edge order.
class LocGraph {
public:
    LocGraph() = default;
    explicit LocGraph(const Automaton& a);

    [[nodiscard]] std::size_t num_vertices() const { return names_.size(); }
    [[nodiscard]] std::size_t num_arcs() const { return arcs_.size(); }
    [[nodiscard]] const std::vector<std::string>& vertices() const { return names_; }
    [[nodiscard]] const std::vector<Arc>& arcs() const { return arcs_; }
    [[nodiscard]] const std::vector<int>& out_arcs(int v) const { return out_[v]; }
    [[nodiscard]] const std::string& name(int v) const { return names_[v]; }
    [[nodiscard]] std::optional<int> index(const std::string& id) const;
    [[nodiscard]] int require(const std::string& id) const;
    [[nodiscard]] bool has_arc(const std::string& source, const std::string& target) const;

private:
    std::vector<std::string> names_;
    std::vector<Arc> arcs_;
    std::vector<std::vector<int>> out_;
};

struct AbstractPath {
    std::vector<std::string> locations;
    std::vector<std::string> edges;

    [[nodiscard]] std::size_t length() const { return edges.size(); }
    [[nodiscard]] std::string str() const;
    friend bool operator==(const AbstractPath&, const AbstractPath&) = default;
    friend auto operator<=>(const AbstractPath&, const AbstractPath&) = default;
};

using PathString = std::vector<std::string>;

enum class PathMode { Walks, Simple };

struct EnumerateOptions {
    PathMode mode = PathMode::Walks;
    std::vector<std::string> visits;
    std::size_t cap = 1'000'000;
    // Arcs (by index) that must not be used; consulted lazily so callers may
    // extend it while a streaming enumeration is in progress.
    const std::vector<bool>* removed_arcs = nullptr;
};

// Streams paths in breadth-first order (length, then arc order). The visitor
// returns false to stop early. Throws BudgetExceeded past `cap` paths.
// Returns the number of paths emitted.
std::size_t for_each_path(const LocGraph& g, const std::string& from, const std::string& to, int depth,
                          const EnumerateOptions& opt, const std::function<bool(const AbstractPath&)>& visit);

std::vector<AbstractPath> enumerate_paths(const LocGraph& g, const std::string& from, const std::string& to,
                                          int depth, const EnumerateOptions& opt = {});

// Number of locations on a shortest path, or nullopt.
std::optional<std::size_t> shortest_path_length(const LocGraph& g, const std::string& from, const std::string& to);

std::set<std::string> disconnecting_articulation_points(const LocGraph& g, const std::string& from,
                                                        const std::string& to);

// Default path cap, overridden by HXPLAIN_BUDGET.
std::size_t default_path_cap();

} // namespace hxplain
