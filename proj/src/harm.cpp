// harm.cpp - HARM construction and attack path enumeration.
#include "ntsmtd/harm.hpp"

#include <algorithm>
#include <stdexcept>

namespace ntsmtd {

namespace {

std::vector<char> mask_of(std::size_t n, std::span<const NodeIdx> members) {
    std::vector<char> m(n, 0);
    for (NodeIdx i : members)
        if (i < n) m[i] = 1;
    return m;
}

std::vector<char> real_mask(const Scenario& s) {
    std::vector<char> m(s.nodes.size(), 0);
    for (NodeIdx i = 0; i < s.nodes.size(); ++i) m[i] = !s.nodes[i].is_decoy;
    return m;
}

// Wraps the streaming core with exceeds-cap detection: counts saturate at cap
// and overflowed reports that more paths exist.
template <class Visit>
PathCount capped_walk(const HarmModel& h, std::span<const NodeIdx> sources,
                      const std::vector<char>& targets, const std::vector<char>& allowed,
                      std::size_t max_len, std::uint64_t cap, Visit&& visit) {
    bool hit = false;
    std::uint64_t seen = detail::for_each_simple_path(h.adjacency, sources, targets, allowed,
                                                      max_len, cap + 1, &hit,
                                                      std::forward<Visit>(visit));
    PathCount out;
    out.overflowed = hit;
    out.count = hit ? cap : seen;
    return out;
}

} // namespace

HarmModel build_harm(const Scenario& s, const Topology& t) {
    if (t.node_count != s.nodes.size())
        throw std::invalid_argument("harm: topology node count does not match scenario");
    HarmModel h;
    h.scenario = &s;
    h.topology = t;
    h.topology.normalize();
    h.adjacency.assign(s.nodes.size(), {});
    for (const auto& [a, b] : h.topology.edges) h.adjacency[a].push_back(b);
    for (auto& nbrs : h.adjacency) std::sort(nbrs.begin(), nbrs.end());
    h.vlan_edges = h.topology.vlan_reachability;
    for (const auto& n : s.nodes)
        if (n.vulnerabilities.empty())
            throw std::invalid_argument("harm: node " + n.id + " has no vulnerability data");
    return h;
}

PathSet enumerate_paths(const HarmModel& h, std::span<const NodeIdx> entry_points,
                        std::span<const NodeIdx> real_targets,
                        std::span<const NodeIdx> decoy_targets, std::size_t max_len,
                        std::uint64_t cap) {
    const Scenario& s = *h.scenario;
    if (entry_points.empty()) throw std::invalid_argument("enumerate_paths: no entry points");
    if (max_len < 1) throw std::invalid_argument("enumerate_paths: max_len must be >= 1");
    PathSet out;

    auto reals = real_mask(s);
    auto rt = mask_of(s.nodes.size(), real_targets);
    PathCount pr = capped_walk(h, entry_points, rt, reals, max_len, cap,
                               [&](const std::vector<NodeIdx>& p) {
                                   out.real_paths.push_back({p, PathKind::real_target});
                               });

    std::vector<char> all(s.nodes.size(), 1);
    auto dt = mask_of(s.nodes.size(), decoy_targets);
    PathCount pd = capped_walk(h, entry_points, dt, all, max_len, cap,
                               [&](const std::vector<NodeIdx>& p) {
                                   out.decoy_paths.push_back({p, PathKind::decoy_target});
                               });
    out.overflowed = pr.overflowed || pd.overflowed;

    auto by_id_sequence = [&](const AttackPath& a, const AttackPath& b) {
        return std::lexicographical_compare(
            a.nodes.begin(), a.nodes.end(), b.nodes.begin(), b.nodes.end(),
            [&](NodeIdx x, NodeIdx y) { return s.nodes[x].id < s.nodes[y].id; });
    };
    std::sort(out.real_paths.begin(), out.real_paths.end(), by_id_sequence);
    std::sort(out.decoy_paths.begin(), out.decoy_paths.end(), by_id_sequence);
    return out;
}

PathCount count_decoy_target_paths(const HarmModel& h, std::span<const NodeIdx> entry_points,
                                   std::span<const NodeIdx> decoy_targets, std::uint64_t cap) {
    const Scenario& s = *h.scenario;
    std::vector<char> all(s.nodes.size(), 1);
    auto dt = mask_of(s.nodes.size(), decoy_targets);
    return capped_walk(h, entry_points, dt, all, s.nodes.size(), cap,
                       [](const std::vector<NodeIdx>&) {});
}

PathCount count_real_target_paths(const HarmModel& h, std::span<const NodeIdx> entry_points,
                                  std::span<const NodeIdx> real_targets, std::uint64_t cap) {
    const Scenario& s = *h.scenario;
    auto reals = real_mask(s);
    auto rt = mask_of(s.nodes.size(), real_targets);
    return capped_walk(h, entry_points, rt, reals, s.nodes.size(), cap,
                       [](const std::vector<NodeIdx>&) {});
}

std::map<NodeIdx, std::uint64_t> decoy_paths_per_entry(const HarmModel& h,
                                                       std::span<const NodeIdx> decoy_targets,
                                                       std::uint64_t cap) {
    const Scenario& s = *h.scenario;
    std::map<NodeIdx, std::uint64_t> out;
    std::vector<char> all(s.nodes.size(), 1);
    auto dt = mask_of(s.nodes.size(), decoy_targets);
    for (NodeIdx i = 0; i < s.nodes.size(); ++i) {
        const Node& n = s.nodes[i];
        if (n.is_decoy || n.is_target) continue;
        NodeIdx src[1] = {i};
        out[i] = capped_walk(h, src, dt, all, s.nodes.size(), cap,
                             [](const std::vector<NodeIdx>&) {})
                     .count;
    }
    return out;
}

double expected_node_compromise_time(const Node& n) {
    double rate = n.total_rate();
    if (!(rate > 0.0))
        throw std::invalid_argument("expected_node_compromise_time: node has no positive rate");
    return 1.0 / rate;
}

} // namespace ntsmtd
