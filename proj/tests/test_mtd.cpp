// Shuffle triggers and the three topology generators.
#include <doctest.h>

#include "test_support.hpp"

using namespace ntsmtd;
using namespace testsupport;

namespace {

std::uint64_t diff_on_candidates(const Scenario& s, const Topology& a, const Topology& b) {
    std::uint64_t n = 0;
    for (const Edge& e : candidate_edges(s))
        if (a.has_edge(e.first, e.second) != b.has_edge(e.first, e.second)) ++n;
    return n;
}

std::uint64_t oracle_decoy_count(const Scenario& s, const Topology& t) {
    auto [r, d] = oracle_attack_paths(s, t, s.nodes.size());
    (void)r;
    return d.size();
}

} // namespace

TEST_CASE("fixed trigger fires on the interval") {
    Rng rng(1);
    SsvTrace trace;
    auto w = WhenStrategy::fixed(24.0);
    TriggerDecision d = next_trigger(w, 0.0, 0.0, trace, rng);
    CHECK_FALSE(d.shuffle_now);
    CHECK(d.next_check_at == doctest::Approx(24.0));
    CHECK(next_trigger(w, 24.0, 0.0, trace, rng).shuffle_now);
    CHECK(next_trigger(w, 30.0, 10.0, trace, rng).next_check_at == doctest::Approx(34.0));
}

TEST_CASE("random trigger draws an exponential interval") {
    auto w = WhenStrategy::random_interval(24.0);
    SsvTrace trace;
    Rng a(7), b(7);
    TriggerDecision da = next_trigger(w, 0.0, 0.0, trace, a);
    TriggerDecision db = next_trigger(w, 0.0, 0.0, trace, b);
    CHECK(da.next_check_at == db.next_check_at); // same seed, same draw
    Rng rng(99);
    double sum = 0;
    int n = 4000;
    for (int i = 0; i < n; ++i) sum += next_trigger(w, 0.0, 0.0, trace, rng).next_check_at;
    CHECK(sum / n == doctest::Approx(24.0).epsilon(0.05));
}

TEST_CASE("adaptive trigger follows the SSV condition") {
    Rng rng(1);
    auto w = WhenStrategy::adaptive(0.01, 0.1, 24.0);
    SsvTrace trace;
    trace.record(0.0, 0.0);
    trace.record(30.0, 0.15); // jump 0 -> 0.15 at one event
    CHECK(next_trigger(w, 30.0, 0.0, trace, rng).shuffle_now);

    SUBCASE("level below rho does not fire") {
        SsvTrace low;
        low.record(0.0, 0.0);
        low.record(30.0, 0.05);
        CHECK_FALSE(next_trigger(w, 30.0, 0.0, low, rng).shuffle_now);
    }
    SUBCASE("no recent increase does not fire") {
        SsvTrace flat;
        flat.record(0.0, 0.15);
        CHECK_FALSE(next_trigger(w, 40.0, 0.0, flat, rng).shuffle_now);
    }
    SUBCASE("adaptive alone schedules nothing") {
        SsvTrace empty;
        CHECK(next_trigger(w, 5.0, 0.0, empty, rng).next_check_at == kNever);
    }
}

TEST_CASE("hybrid trigger caps the delay at gamma2") {
    Rng rng(1);
    auto w = WhenStrategy::hybrid(0.01, 0.1, 24.0, 120.0);
    SsvTrace trace; // SSV never moves: AS side never fires
    TriggerDecision d = next_trigger(w, 10.0, 0.0, trace, rng);
    CHECK_FALSE(d.shuffle_now);
    CHECK(d.next_check_at == doctest::Approx(120.0));
    CHECK(next_trigger(w, 120.0, 0.0, trace, rng).shuffle_now);
    trace.record(60.0, 0.2);
    CHECK(next_trigger(w, 60.0, 0.0, trace, rng).shuffle_now); // AS side
}

TEST_CASE("rnt boundary probabilities") {
    Scenario s = baseline_scenario();
    auto cands = candidate_edges(s);
    Rng rng(5);
    ShuffleResult all = rnt_shuffle(s, s.topology, 1.0, rng);
    for (const Edge& e : cands) CHECK(all.topology.has_edge(e.first, e.second));

    std::uint64_t present = 0;
    for (const Edge& e : cands)
        if (s.topology.has_edge(e.first, e.second)) ++present;
    ShuffleResult none = rnt_shuffle(s, s.topology, 0.0, rng);
    for (const Edge& e : cands) CHECK_FALSE(none.topology.has_edge(e.first, e.second));
    CHECK(none.edges_changed == present);

    Rng r1(42), r2(42);
    CHECK(rnt_shuffle(s, s.topology, 0.5, r1).topology ==
          rnt_shuffle(s, s.topology, 0.5, r2).topology);
}

TEST_CASE("dpnt connects every real IoT node to at least half of the decoys") {
    Rng rng(31);
    for (int i = 0; i < 60; ++i) {
        Scenario s = random_toy_scenario(rng);
        Rng sr(rng.next_u64());
        ShuffleResult res = dpnt_shuffle(s, s.topology, s.params.zeta, sr);
        std::size_t decoys = s.decoy_count();
        std::size_t need = (decoys + 1) / 2; // single VLAN: everything reachable
        for (NodeIdx n = 0; n < s.nodes.size(); ++n) {
            if (s.nodes[n].is_decoy || s.nodes[n].is_target) continue;
            std::size_t connected = 0;
            for (const auto& [a, b] : res.topology.edges)
                if (a == n && s.nodes[b].is_decoy) ++connected;
            CHECK(connected >= need);
        }
        // the result is a valid topology for the scenario
        Scenario check = s;
        check.topology = res.topology;
        validate_scenario(check);
    }
}

TEST_CASE("dpnt with zeta=1 connects every reachable decoy") {
    Rng rng(8);
    Scenario s = random_toy_scenario(rng);
    Rng sr(9);
    ShuffleResult res = dpnt_shuffle(s, s.topology, 1.0, sr);
    for (NodeIdx n = 0; n < s.nodes.size(); ++n) {
        if (s.nodes[n].is_decoy || s.nodes[n].is_target) continue;
        for (NodeIdx d = 0; d < s.nodes.size(); ++d)
            if (s.nodes[d].is_decoy) CHECK(res.topology.has_edge(n, d));
    }
}

TEST_CASE("dpnt removes stale links to undrawn non-target decoys") {
    // zeta=0 forces the drawn set to the top-up minimum, so with four decoys
    // and need=2 some previously wired decoys must be dropped
    Scenario s = scenario_from_json_text(R"({
        "nodes": [
            {"id":"a","vlan":1,"vulnerabilities":[{"cve_id":"A","rate":0.01}]},
            {"id":"t","vlan":1,"critical":true,"vulnerabilities":[{"cve_id":"T","rate":0.01}]},
            {"id":"d0","vlan":1,"kind":"decoy","vulnerabilities":[{"cve_id":"D0","rate":0.02}]},
            {"id":"d1","vlan":1,"kind":"decoy","vulnerabilities":[{"cve_id":"D1","rate":0.02}]},
            {"id":"d2","vlan":1,"kind":"decoy","vulnerabilities":[{"cve_id":"D2","rate":0.02}]},
            {"id":"d3","vlan":1,"kind":"decoy","vulnerabilities":[{"cve_id":"D3","rate":0.02}]}
        ],
        "edges": [["a","d0"],["a","d1"],["a","d2"],["a","d3"]],
        "vlan_reachability": [[1,1]],
        "roles": {"entry_points":["a"],"real_targets":["t"],"decoy_targets":["d0"]}
    })");
    Rng rng(3);
    ShuffleResult res = dpnt_shuffle(s, s.topology, 0.0, rng);
    std::size_t kept = 0;
    for (NodeIdx d = 0; d < s.nodes.size(); ++d)
        if (s.nodes[d].is_decoy && res.topology.has_edge(s.index_of("a"), d)) ++kept;
    // decoy target d0 always survives; drawn top-up keeps exactly 2
    CHECK(res.topology.has_edge(s.index_of("a"), s.index_of("d0")));
    CHECK(kept <= 3);
    CHECK(res.edges_changed > 0);
}

TEST_CASE("dpnt phase 2 is a no-op on a fully tied toy") {
    // two symmetric entries with identical decoy wiring: Min == Max
    Scenario s = scenario_from_json_text(R"({
        "nodes": [
            {"id":"a","vlan":1,"vulnerabilities":[{"cve_id":"A","rate":0.01}]},
            {"id":"b","vlan":1,"vulnerabilities":[{"cve_id":"B","rate":0.01}]},
            {"id":"t","vlan":1,"critical":true,"vulnerabilities":[{"cve_id":"T","rate":0.01}]},
            {"id":"d","vlan":1,"kind":"decoy","vulnerabilities":[{"cve_id":"D","rate":0.02}]}
        ],
        "edges": [],
        "vlan_reachability": [[1,1]],
        "roles": {"entry_points":["a","b"],"real_targets":["t"],"decoy_targets":["d"]}
    })");
    Rng rng(4);
    ShuffleResult res = dpnt_shuffle(s, s.topology, 1.0, rng);
    // both nodes end with exactly the d edge; no real-real edges appear
    for (const auto& [x, y] : res.topology.edges) CHECK(s.nodes[y].is_decoy);
}

TEST_CASE("dpnt on the fixed toy does not lose decoy paths") {
    Rng rng(12);
    Scenario s = random_toy_scenario(rng, 6, /*all_decoys_targets=*/true);
    std::uint64_t before = oracle_decoy_count(s, s.topology);
    Rng sr(2718);
    ShuffleResult res = dpnt_shuffle(s, s.topology, s.params.zeta, sr);
    std::uint64_t after = oracle_decoy_count(s, res.topology);
    CHECK(after >= before);
}

TEST_CASE("edges_changed equals the candidate-set diff for all generators") {
    Rng rng(606);
    for (int i = 0; i < 25; ++i) {
        Scenario s = random_toy_scenario(rng);
        Rng r1(1000 + i), r2(2000 + i), r3(3000 + i);
        ShuffleResult a = rnt_shuffle(s, s.topology, 0.5, r1);
        CHECK(a.edges_changed == diff_on_candidates(s, s.topology, a.topology));
        ShuffleResult b = dpnt_shuffle(s, s.topology, 0.5, r2);
        CHECK(b.edges_changed == diff_on_candidates(s, s.topology, b.topology));
        GaParams ga;
        ga.population = 8;
        ga.generations = 5;
        ShuffleResult c = gant_shuffle(s, s.topology, ga, r3);
        CHECK(c.edges_changed == diff_on_candidates(s, s.topology, c.topology));
    }
}

TEST_CASE("generators are deterministic for a fixed seed") {
    Scenario s = baseline_scenario();
    GaParams ga;
    ga.population = 10;
    ga.generations = 6;
    for (int variant = 0; variant < 3; ++variant) {
        Rng r1(50 + variant), r2(50 + variant);
        ShuffleResult a, b;
        switch (variant) {
        case 0:
            a = rnt_shuffle(s, s.topology, 0.5, r1);
            b = rnt_shuffle(s, s.topology, 0.5, r2);
            break;
        case 1:
            a = dpnt_shuffle(s, s.topology, 0.5, r1);
            b = dpnt_shuffle(s, s.topology, 0.5, r2);
            break;
        default:
            a = gant_shuffle(s, s.topology, ga, r1);
            b = gant_shuffle(s, s.topology, ga, r2);
            break;
        }
        CHECK(a.topology == b.topology);
        CHECK(a.edges_changed == b.edges_changed);
    }
}

TEST_CASE("gant degenerate single-individual run returns that individual") {
    Scenario s = baseline_scenario();
    GaParams ga;
    ga.population = 1;
    ga.generations = 1;
    ga.mutation_rate = 0.0;
    ga.crossover_rate = 0.0;
    Rng rng(11);
    ShuffleResult res = gant_shuffle(s, s.topology, ga, rng);
    CHECK(res.edges_changed == diff_on_candidates(s, s.topology, res.topology));
    REQUIRE(res.stats.has_value());
    CHECK(res.stats->best_fitness_per_generation.size() == 1);
}

TEST_CASE("gant best fitness never decreases across generations") {
    Scenario s = baseline_scenario();
    GaParams ga;
    ga.population = 20;
    ga.generations = 12;
    ga.stall_generations = 0; // run all generations
    Rng rng(21);
    ShuffleResult res = gant_shuffle(s, s.topology, ga, rng);
    REQUIRE(res.stats.has_value());
    const auto& best = res.stats->best_fitness_per_generation;
    for (std::size_t g = 1; g < best.size(); ++g) CHECK(best[g] >= best[g - 1] - 1e-12);
}

TEST_CASE("gant with pure decoy-path objective finds the densest toy topology") {
    Rng rng(17);
    Scenario s = random_toy_scenario(rng, 6, true);
    GaParams ga;
    ga.population = 16;
    ga.generations = 30;
    ga.w_n = 1.0;
    ga.w_m = 0.0;
    ga.w_c = 0.0;
    Rng sr(8);
    ShuffleResult res = gant_shuffle(s, s.topology, ga, sr);
    // exhaustive check over every chromosome on this tiny candidate set
    auto cands = candidate_edges(s);
    REQUIRE(cands.size() <= 12);
    std::uint64_t best = 0;
    for (std::uint64_t bits = 0; bits < (1ull << cands.size()); ++bits) {
        Topology t = s.topology;
        std::vector<Edge> edges;
        std::set<Edge> cand_set(cands.begin(), cands.end());
        for (const Edge& e : s.topology.edges)
            if (!cand_set.count(e)) edges.push_back(e);
        for (std::size_t i = 0; i < cands.size(); ++i)
            if (bits & (1ull << i)) edges.push_back(cands[i]);
        t.edges = edges;
        t.normalize();
        best = std::max(best, oracle_decoy_count(s, t));
    }
    CHECK(oracle_decoy_count(s, res.topology) == best);
}

TEST_CASE("mttsf proxy matches hand-computed expectations") {
    SUBCASE("single critical node") {
        Scenario s = scenario_from_json_text(R"({
            "nodes": [{"id":"solo","vlan":1,"critical":true,
                       "vulnerabilities":[{"cve_id":"S","rate":0.02}]}],
            "edges": [], "vlan_reachability": [[1,1]],
            "roles": {"entry_points":["solo"],"real_targets":["solo"],"decoy_targets":[]}
        })");
        CHECK(mttsf_proxy(s, s.topology) == doctest::Approx(50.0));
    }
    SUBCASE("three-node chain") {
        // e(0.01) -> a(0.02) -> c(0.005): SFC1 needs 2 cracks: 50+100 = 150;
        // SFC2 via the full chain costs 100+50+200 = 350; min is 150
        Scenario s = scenario_from_json_text(R"({
            "nodes": [
                {"id":"e","vlan":1,"vulnerabilities":[{"cve_id":"E","rate":0.01}]},
                {"id":"a","vlan":1,"vulnerabilities":[{"cve_id":"A","rate":0.02}]},
                {"id":"c","vlan":1,"critical":true,"vulnerabilities":[{"cve_id":"C","rate":0.005}]}
            ],
            "edges": [["e","a"],["a","c"]],
            "vlan_reachability": [[1,1]],
            "roles": {"entry_points":["e"],"real_targets":["c"],"decoy_targets":[]}
        })");
        CHECK(mttsf_proxy(s, s.topology) == doctest::Approx(150.0));
    }
    SUBCASE("an engaging decoy on the only path raises the estimate") {
        Scenario s = scenario_from_json_text(R"({
            "nodes": [
                {"id":"e","vlan":1,"vulnerabilities":[{"cve_id":"E","rate":0.01}]},
                {"id":"c","vlan":1,"critical":true,"vulnerabilities":[{"cve_id":"C","rate":0.01}]},
                {"id":"d","vlan":1,"kind":"decoy","fidelity":"full_os",
                 "vulnerabilities":[{"cve_id":"D","rate":0.05}]}
            ],
            "edges": [["e","c"]],
            "vlan_reachability": [[1,1]],
            "roles": {"entry_points":["e"],"real_targets":["c"],"decoy_targets":["d"]}
        })");
        double without = mttsf_proxy(s, s.topology);
        Topology with_decoy = s.topology;
        with_decoy.edges.emplace_back(s.index_of("e"), s.index_of("d"));
        with_decoy.normalize();
        CHECK(mttsf_proxy(s, with_decoy) > without);
    }
}

TEST_CASE("mttsf proxy is monotone non-increasing in real compromise rates") {
    Rng rng(909);
    for (int i = 0; i < 30; ++i) {
        Scenario s = random_toy_scenario(rng);
        double base = mttsf_proxy(s, s.topology);
        Scenario faster = s;
        for (auto& n : faster.nodes)
            if (!n.is_decoy)
                for (auto& v : n.vulnerabilities) v.compromise_rate *= 2.0;
        CHECK(mttsf_proxy(faster, faster.topology) <= base + 1e-9);
    }
}
