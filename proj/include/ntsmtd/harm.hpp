// harm.hpp - three-layer security model and attack path enumeration.
#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "ntsmtd/scenario.hpp"

namespace ntsmtd {

// Upper layer: VLAN reachability; middle layer: node connectivity (exactly the
// topology's edges); lower layer: per-node vulnerability sets with OR
// semantics (any exploited vulnerability grants root).
struct HarmModel {
    const Scenario* scenario = nullptr;
    Topology topology;
    std::vector<std::vector<NodeIdx>> adjacency; // sorted out-neighbors per node
    std::vector<std::pair<int, int>> vlan_edges; // upper layer

    const Node& node(NodeIdx i) const { return scenario->nodes[i]; }
};

enum class PathKind { real_target, decoy_target };

struct AttackPath {
    std::vector<NodeIdx> nodes; // entry .. target
    PathKind kind = PathKind::real_target;

    bool operator==(const AttackPath&) const = default;
};

struct PathSet {
    std::vector<AttackPath> real_paths;  // AP_r
    std::vector<AttackPath> decoy_paths; // AP_d
    bool overflowed = false;             // a count hit the cap; sets are partial
};

struct PathCount {
    std::uint64_t count = 0;
    bool overflowed = false;
};

HarmModel build_harm(const Scenario& s, const Topology& t);

// All simple directed paths from the entry points to the targets, in
// lexicographic node-id-sequence order. AP_r paths traverse only real nodes;
// AP_d paths may mix (decoys cannot reach back into real nodes structurally).
// Enumeration stops with overflowed=true once cap paths were collected.
PathSet enumerate_paths(const HarmModel& h, std::span<const NodeIdx> entry_points,
                        std::span<const NodeIdx> real_targets,
                        std::span<const NodeIdx> decoy_targets, std::size_t max_len,
                        std::uint64_t cap);

// Count-only variants used by the simulator (no path materialization).
PathCount count_decoy_target_paths(const HarmModel& h, std::span<const NodeIdx> entry_points,
                                   std::span<const NodeIdx> decoy_targets, std::uint64_t cap);
PathCount count_real_target_paths(const HarmModel& h, std::span<const NodeIdx> entry_points,
                                  std::span<const NodeIdx> real_targets, std::uint64_t cap);

// |DP_{m_i}| for every real non-target node m_i: the number of simple paths
// from m_i to any decoy target.
std::map<NodeIdx, std::uint64_t> decoy_paths_per_entry(const HarmModel& h,
                                                       std::span<const NodeIdx> decoy_targets,
                                                       std::uint64_t cap);

// Expected time to root a node: 1/(sum of vulnerability rates); first-success
// OR semantics over a decoy's vulnerability list.
double expected_node_compromise_time(const Node& n);

namespace detail {

// Depth-first walk over every simple path from `source` whose last node is a
// target, restricted to `allowed` nodes. Visits paths in sorted-adjacency
// order; stops once `budget` target paths were seen (budget decremented).
// visit(path) is called with the full node sequence.
template <class Visit>
void simple_path_dfs(const std::vector<std::vector<NodeIdx>>& adjacency, NodeIdx at,
                     const std::vector<char>& targets, const std::vector<char>& allowed,
                     std::size_t max_len, std::uint64_t& budget, std::vector<NodeIdx>& path,
                     std::vector<char>& visited, Visit&& visit) {
    if (budget == 0) return;
    path.push_back(at);
    visited[at] = 1;
    if (targets[at]) {
        visit(static_cast<const std::vector<NodeIdx>&>(path));
        --budget;
    }
    if (path.size() < max_len && budget > 0) {
        for (NodeIdx next : adjacency[at]) {
            if (visited[next] || !allowed[next]) continue;
            simple_path_dfs(adjacency, next, targets, allowed, max_len, budget, path, visited,
                            visit);
            if (budget == 0) break;
        }
    }
    visited[at] = 0;
    path.pop_back();
}

template <class Visit>
std::uint64_t for_each_simple_path(const std::vector<std::vector<NodeIdx>>& adjacency,
                                   std::span<const NodeIdx> sources,
                                   const std::vector<char>& targets,
                                   const std::vector<char>& allowed, std::size_t max_len,
                                   std::uint64_t cap, bool* overflowed, Visit&& visit) {
    std::uint64_t budget = cap;
    std::vector<NodeIdx> path;
    std::vector<char> visited(adjacency.size(), 0);
    path.reserve(adjacency.size());
    for (NodeIdx s : sources) {
        if (budget == 0) break;
        if (s >= adjacency.size() || !allowed[s]) continue;
        simple_path_dfs(adjacency, s, targets, allowed, max_len, budget, path, visited, visit);
    }
    if (overflowed) *overflowed = budget == 0;
    return cap - budget;
}

} // namespace detail

} // namespace ntsmtd
