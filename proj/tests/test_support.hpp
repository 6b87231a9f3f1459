// test_support.hpp - independent oracles and random scenario generators used
// across the test suites. The path oracle deliberately shares no code with the
// library's enumerator.
#pragma once

#include <algorithm>
#include <deque>
#include <set>
#include <vector>

#include "ntsmtd/harm.hpp"
#include "ntsmtd/rng.hpp"
#include "ntsmtd/scenario.hpp"

namespace testsupport {

using namespace ntsmtd;

// Brute-force simple-path enumeration by breadth-first extension of partial
// paths, scanning the raw edge list at every step.
inline std::vector<std::vector<NodeIdx>> oracle_simple_paths(
    std::size_t node_count, const std::vector<Edge>& edges, const std::vector<NodeIdx>& sources,
    const std::set<NodeIdx>& targets, const std::set<NodeIdx>& allowed, std::size_t max_len) {
    std::vector<std::vector<NodeIdx>> found;
    std::deque<std::vector<NodeIdx>> frontier;
    for (NodeIdx s : sources)
        if (s < node_count && allowed.count(s)) frontier.push_back({s});
    while (!frontier.empty()) {
        std::vector<NodeIdx> path = frontier.front();
        frontier.pop_front();
        if (targets.count(path.back())) found.push_back(path);
        if (path.size() >= max_len) continue;
        for (const auto& [a, b] : edges) {
            if (a != path.back()) continue;
            if (!allowed.count(b)) continue;
            if (std::find(path.begin(), path.end(), b) != path.end()) continue;
            auto next = path;
            next.push_back(b);
            frontier.push_back(std::move(next));
        }
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

inline std::set<NodeIdx> real_nodes(const Scenario& s) {
    std::set<NodeIdx> out;
    for (NodeIdx i = 0; i < s.nodes.size(); ++i)
        if (!s.nodes[i].is_decoy) out.insert(i);
    return out;
}

inline std::set<NodeIdx> all_nodes(const Scenario& s) {
    std::set<NodeIdx> out;
    for (NodeIdx i = 0; i < s.nodes.size(); ++i) out.insert(i);
    return out;
}

// Oracle counterpart of enumerate_paths: (AP_r, AP_d) as sorted node-sequence
// sets.
inline std::pair<std::vector<std::vector<NodeIdx>>, std::vector<std::vector<NodeIdx>>>
oracle_attack_paths(const Scenario& s, const Topology& t, std::size_t max_len) {
    std::set<NodeIdx> rt(s.real_targets.begin(), s.real_targets.end());
    std::set<NodeIdx> dt(s.decoy_targets.begin(), s.decoy_targets.end());
    auto ap_r = oracle_simple_paths(s.nodes.size(), t.edges, s.entry_points, rt, real_nodes(s),
                                    max_len);
    auto ap_d = oracle_simple_paths(s.nodes.size(), t.edges, s.entry_points, dt, all_nodes(s),
                                    max_len);
    return {ap_r, ap_d};
}

// Small single-VLAN scenario with random real/decoy roles and random valid
// edges; used for oracle-equivalence and generator property tests.
inline Scenario random_toy_scenario(Rng& rng, int max_nodes = 8, bool all_decoys_targets = false) {
    Scenario s;
    int n_real = 2 + static_cast<int>(rng.uniform_int(3));  // 2..4
    int n_decoy = 1 + static_cast<int>(rng.uniform_int(3)); // 1..3
    while (n_real + n_decoy > max_nodes) --n_decoy;
    if (n_decoy < 1) {
        n_decoy = 1;
        n_real = max_nodes - 1;
    }
    for (int i = 0; i < n_real; ++i) {
        Node nd;
        nd.id = "r" + std::to_string(i);
        nd.label = nd.id;
        nd.vlan = 1;
        nd.vulnerabilities.push_back(
            {"CVE-TOY-" + std::to_string(i), std::nullopt, 0.004 + 0.038 * rng.uniform01()});
        s.nodes.push_back(std::move(nd));
    }
    for (int i = 0; i < n_decoy; ++i) {
        Node nd;
        nd.id = "d" + std::to_string(i);
        nd.label = nd.id;
        nd.vlan = 1;
        nd.is_decoy = true;
        nd.fidelity = rng.bernoulli(0.5) ? DecoyFidelity::emulated : DecoyFidelity::full_os;
        int vulns = 1 + static_cast<int>(rng.uniform_int(3));
        for (int v = 0; v < vulns; ++v)
            nd.vulnerabilities.push_back({"CVE-TOY-D" + std::to_string(i) + std::to_string(v),
                                          std::nullopt, 0.004 + 0.038 * rng.uniform01()});
        s.nodes.push_back(std::move(nd));
    }
    const auto total = static_cast<NodeIdx>(s.nodes.size());
    s.topology.node_count = total;
    s.topology.vlan_reachability = {{1, 1}};
    double p = 0.2 + 0.4 * rng.uniform01();
    for (NodeIdx a = 0; a < total; ++a)
        for (NodeIdx b = 0; b < total; ++b) {
            if (a == b) continue;
            if (s.nodes[a].is_decoy && !s.nodes[b].is_decoy) continue;
            if (rng.bernoulli(p)) s.topology.edges.emplace_back(a, b);
        }
    // roles: one critical real target, the rest of the reals are entries
    NodeIdx target = static_cast<NodeIdx>(rng.uniform_int(n_real));
    s.nodes[target].is_critical = true;
    s.real_targets = {target};
    for (NodeIdx i = 0; i < static_cast<NodeIdx>(n_real); ++i)
        if (i != target) s.entry_points.push_back(i);
    for (NodeIdx i = static_cast<NodeIdx>(n_real); i < total; ++i)
        if (all_decoys_targets || rng.bernoulli(0.6)) s.decoy_targets.push_back(i);
    if (s.decoy_targets.empty()) s.decoy_targets.push_back(static_cast<NodeIdx>(n_real));
    // re-derive role flags and validate through the normal path
    return scenario_from_json_text(scenario_to_json_text(s));
}

} // namespace testsupport
