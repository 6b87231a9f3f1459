// HARM construction and attack path enumeration against the brute-force
// oracle.
#include <doctest.h>

#include "test_support.hpp"

using namespace ntsmtd;
using namespace testsupport;

namespace {

Scenario chain_scenario() {
    // e -> a -> t, all real, t is the critical target
    return scenario_from_json_text(R"({
        "nodes": [
            {"id":"e","vlan":1,"vulnerabilities":[{"cve_id":"E","rate":0.01}]},
            {"id":"a","vlan":1,"vulnerabilities":[{"cve_id":"A","rate":0.01}]},
            {"id":"t","vlan":1,"critical":true,"vulnerabilities":[{"cve_id":"T","rate":0.01}]}
        ],
        "edges": [["e","a"],["a","t"]],
        "vlan_reachability": [[1,1]],
        "roles": {"entry_points":["e"],"real_targets":["t"],"decoy_targets":[]}
    })");
}

Scenario decoy_toy_scenario() {
    // e->a, e->d1, a->d1, d1->d2 with d2 the decoy target
    return scenario_from_json_text(R"({
        "nodes": [
            {"id":"e","vlan":1,"vulnerabilities":[{"cve_id":"E","rate":0.01}]},
            {"id":"a","vlan":1,"vulnerabilities":[{"cve_id":"A","rate":0.01}]},
            {"id":"t","vlan":1,"critical":true,"vulnerabilities":[{"cve_id":"T","rate":0.01}]},
            {"id":"d1","vlan":1,"kind":"decoy","vulnerabilities":[{"cve_id":"D1","rate":0.02}]},
            {"id":"d2","vlan":1,"kind":"decoy","vulnerabilities":[{"cve_id":"D2","rate":0.02}]}
        ],
        "edges": [["e","a"],["e","d1"],["a","d1"],["d1","d2"]],
        "vlan_reachability": [[1,1]],
        "roles": {"entry_points":["e","a"],"real_targets":["t"],"decoy_targets":["d2"]}
    })");
}

std::vector<std::vector<NodeIdx>> sequences(const std::vector<AttackPath>& paths) {
    std::vector<std::vector<NodeIdx>> out;
    for (const auto& p : paths) out.push_back(p.nodes);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("build_harm layers") {
    Scenario s = baseline_scenario();
    HarmModel h = build_harm(s, s.topology);
    CHECK(h.adjacency.size() == 12); // middle layer: 8 real + 4 decoys
    std::size_t middle_edges = 0;
    for (const auto& nbrs : h.adjacency) middle_edges += nbrs.size();
    CHECK(middle_edges == s.topology.edges.size());
    CHECK(h.vlan_edges == s.topology.vlan_reachability);

    SUBCASE("empty edge set gives an empty middle layer") {
        Topology empty = s.topology;
        empty.edges.clear();
        HarmModel he = build_harm(s, empty);
        for (const auto& nbrs : he.adjacency) CHECK(nbrs.empty());
    }
    SUBCASE("missing vulnerability data is rejected") {
        Scenario bad = s;
        bad.nodes[0].vulnerabilities.clear();
        CHECK_THROWS_AS((void)build_harm(bad, bad.topology), std::invalid_argument);
    }
    SUBCASE("toy chain matches hand construction") {
        Scenario c = chain_scenario();
        HarmModel hc = build_harm(c, c.topology);
        CHECK(hc.adjacency[c.index_of("e")] == std::vector<NodeIdx>{c.index_of("a")});
        CHECK(hc.adjacency[c.index_of("a")] == std::vector<NodeIdx>{c.index_of("t")});
        CHECK(hc.adjacency[c.index_of("t")].empty());
    }
}

TEST_CASE("single chain yields one real path and no decoy paths") {
    Scenario s = chain_scenario();
    HarmModel h = build_harm(s, s.topology);
    PathSet ps = enumerate_paths(h, s.entry_points, s.real_targets, s.decoy_targets,
                                 s.nodes.size(), 1000);
    REQUIRE(ps.real_paths.size() == 1);
    CHECK(ps.real_paths[0].nodes ==
          std::vector<NodeIdx>{s.index_of("e"), s.index_of("a"), s.index_of("t")});
    CHECK(ps.real_paths[0].kind == PathKind::real_target);
    CHECK(ps.decoy_paths.empty());
    CHECK_FALSE(ps.overflowed);
}

TEST_CASE("decoy toy enumerates the two decoy paths") {
    Scenario s = decoy_toy_scenario();
    HarmModel h = build_harm(s, s.topology);
    PathSet ps = enumerate_paths(h, s.entry_points, s.real_targets, s.decoy_targets,
                                 s.nodes.size(), 1000);
    auto e = s.index_of("e"), a = s.index_of("a"), d1 = s.index_of("d1"), d2 = s.index_of("d2");
    CHECK(sequences(ps.decoy_paths) ==
          std::vector<std::vector<NodeIdx>>{{e, a, d1, d2}, {e, d1, d2}});
    CHECK(ps.real_paths.empty()); // t is unreachable

    // oracle agrees
    auto [oracle_r, oracle_d] = oracle_attack_paths(s, s.topology, s.nodes.size());
    CHECK(sequences(ps.decoy_paths) == oracle_d);

    SUBCASE("per-entry decoy path counts") {
        auto counts = decoy_paths_per_entry(h, s.decoy_targets, 1000);
        CHECK(counts.at(e) == 2);
        CHECK(counts.at(a) == 1);
        // consistency: entry-initiated AP_d splits by first node
        std::uint64_t sum = 0;
        for (NodeIdx ep : s.entry_points) sum += counts.at(ep);
        CHECK(sum == ps.decoy_paths.size());
    }
}

TEST_CASE("a node with no outgoing edges has zero decoy paths") {
    Scenario s = decoy_toy_scenario();
    Topology t = s.topology;
    t.edges.clear(); // isolate everything
    HarmModel h = build_harm(s, t);
    auto counts = decoy_paths_per_entry(h, s.decoy_targets, 1000);
    for (const auto& [node, c] : counts) CHECK(c == 0);
}

TEST_CASE("enumeration order is lexicographic by node id sequence") {
    Scenario s = decoy_toy_scenario();
    HarmModel h = build_harm(s, s.topology);
    PathSet ps = enumerate_paths(h, s.entry_points, s.real_targets, s.decoy_targets,
                                 s.nodes.size(), 1000);
    for (std::size_t i = 1; i < ps.decoy_paths.size(); ++i) {
        std::vector<std::string> prev, cur;
        for (NodeIdx n : ps.decoy_paths[i - 1].nodes) prev.push_back(s.nodes[n].id);
        for (NodeIdx n : ps.decoy_paths[i].nodes) cur.push_back(s.nodes[n].id);
        CHECK(prev <= cur);
    }
}

TEST_CASE("path cap reports counted overflow") {
    Scenario s = baseline_scenario();
    HarmModel h = build_harm(s, s.topology);
    PathSet ps = enumerate_paths(h, s.entry_points, s.real_targets, s.decoy_targets,
                                 s.nodes.size(), 3);
    CHECK(ps.overflowed);
    PathCount c = count_decoy_target_paths(h, s.entry_points, s.decoy_targets, 3);
    CHECK(c.overflowed);
    CHECK(c.count == 3); // saturates at the cap
}

TEST_CASE("expected node compromise time") {
    Scenario s = baseline_scenario();
    CHECK(expected_node_compromise_time(s.nodes[s.index_of("mri")]) ==
          doctest::Approx(166.6667).epsilon(1e-4));
    // OR semantics over the decoy camera's three 0.042 vulnerabilities
    CHECK(expected_node_compromise_time(s.nodes[s.index_of("d_camera")]) ==
          doctest::Approx(1.0 / 0.126).epsilon(1e-6));
    Node unit;
    unit.vulnerabilities.push_back({"X", std::nullopt, 1.0});
    CHECK(expected_node_compromise_time(unit) == doctest::Approx(1.0));
}

TEST_CASE("enumerate_paths equals the brute-force oracle on random digraphs") {
    Rng rng(2024);
    for (int i = 0; i < 150; ++i) {
        Scenario s = random_toy_scenario(rng);
        HarmModel h = build_harm(s, s.topology);
        PathSet ps = enumerate_paths(h, s.entry_points, s.real_targets, s.decoy_targets,
                                     s.nodes.size(), 1000000);
        auto [oracle_r, oracle_d] = oracle_attack_paths(s, s.topology, s.nodes.size());
        CHECK(sequences(ps.real_paths) == oracle_r);
        CHECK(sequences(ps.decoy_paths) == oracle_d);
        // AP_r and AP_d are disjoint and AP_r never contains a decoy
        for (const auto& p : ps.real_paths)
            for (NodeIdx n : p.nodes) CHECK_FALSE(s.nodes[n].is_decoy);
    }
}

TEST_CASE("adding an edge never decreases the decoy path count") {
    Rng rng(555);
    for (int i = 0; i < 60; ++i) {
        Scenario s = random_toy_scenario(rng);
        HarmModel h = build_harm(s, s.topology);
        auto before = count_decoy_target_paths(h, s.entry_points, s.decoy_targets, 1000000);
        // pick a random legal absent edge
        std::vector<Edge> absent;
        for (NodeIdx a = 0; a < s.nodes.size(); ++a)
            for (NodeIdx b = 0; b < s.nodes.size(); ++b) {
                if (a == b || s.topology.has_edge(a, b)) continue;
                if (s.nodes[a].is_decoy && !s.nodes[b].is_decoy) continue;
                absent.emplace_back(a, b);
            }
        if (absent.empty()) continue;
        Topology t = s.topology;
        t.edges.push_back(absent[rng.uniform_int(absent.size())]);
        t.normalize();
        HarmModel h2 = build_harm(s, t);
        auto after = count_decoy_target_paths(h2, s.entry_points, s.decoy_targets, 1000000);
        CHECK(after.count >= before.count);
    }
}
