// scenario.hpp - network data model, scenario file I/O and the built-in
// smart-hospital scenarios.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ntsmtd {

using NodeIdx = std::uint32_t;
using Edge = std::pair<NodeIdx, NodeIdx>;

struct Vulnerability {
    std::string cve_id;
    std::optional<double> base_score; // CVSS, advisory
    double compromise_rate = 0.0;     // successful exploits per hour

    bool operator==(const Vulnerability&) const = default;
};

enum class DecoyFidelity { emulated, full_os };

struct Node {
    std::string id;
    std::string label;
    int vlan = 0;
    bool compromised = false; // n_i.c, always false in a scenario file
    bool is_decoy = false;    // n_i.d
    DecoyFidelity fidelity = DecoyFidelity::emulated; // decoys only
    bool is_critical = false; // n_i.r
    std::vector<Vulnerability> vulnerabilities; // n_i.v, non-empty
    // role flags, derived from the scenario's role sets at validation time
    bool is_entry_candidate = false;
    bool is_target = false;

    double total_rate() const {
        double s = 0.0;
        for (const auto& v : vulnerabilities) s += v.compromise_rate;
        return s;
    }

    bool operator==(const Node&) const = default;
};

// Directed connection graph. Nodes are indices into Scenario::nodes; edges are
// kept sorted and duplicate-free.
struct Topology {
    NodeIdx node_count = 0;
    std::vector<Edge> edges;
    std::vector<std::pair<int, int>> vlan_reachability; // ordered VLAN pairs, sorted

    bool has_edge(NodeIdx a, NodeIdx b) const;
    bool vlan_permits(int from, int to) const;
    void normalize(); // sort + dedupe

    bool operator==(const Topology&) const = default;
};

struct GaParams {
    int population = 100;     // N
    int generations = 100;    // N_g (maximum)
    double crossover_rate = 0.8; // r_c
    double mutation_rate = 0.2;  // r_m
    double w_n = 1.0 / 3.0;
    double w_m = 1.0 / 3.0;
    double w_c = 1.0 / 3.0;
    // implementation knobs
    std::uint64_t fitness_path_cap = 5000; // |AP_d| saturation inside fitness
    int stall_generations = 15;            // early stop; <=0 disables
    bool normalize_per_generation = true;  // false: post-hoc final-population pass
    std::string trace_path;                // optional per-generation diagnostics sink

    bool operator==(const GaParams&) const = default;
};

struct Params {
    double w1 = 0.5; // SSV weight, SFC1 side
    double w2 = 0.5; // SSV weight, SFC2 side
    double p_d_em = 0.9;
    double p_d_os = 1.0;
    double p_a_d = 0.5;
    double p_a_m = 0.0; // Table 3 lists 0.5; the baseline preset uses 0 (see docs)
    int k_hops = 1;
    double beta = 0.01;
    double rho = 0.1;
    double delta = 24.0;    // AS check interval, hours
    double gamma1 = 24.0;   // FS interval, hours
    double gamma2 = 120.0;  // HS maximum delay, hours
    double lambda_rs = 24.0; // RS mean interval, hours
    double p_r = 0.5;       // RNT rewiring probability
    double zeta = 0.5;      // DPNT decoy-selection probability
    GaParams ga;
    // simulation guards
    double sim_hour_cap = 1e5;
    std::uint64_t path_cap = 10000000; // 10^7 simple paths

    bool operator==(const Params&) const = default;
};

struct Scenario {
    std::vector<Node> nodes;
    Topology topology;
    Params params;
    std::vector<NodeIdx> entry_points;
    std::vector<NodeIdx> real_targets;
    std::vector<NodeIdx> decoy_targets;

    NodeIdx index_of(const std::string& id) const; // throws if unknown
    std::size_t real_count() const;
    std::size_t decoy_count() const;

    bool operator==(const Scenario&) const = default;
};

class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bucketed CVSS base score -> compromise rate per hour mapping.
// 10.0 -> 0.042 (once/day), [7.5,10) -> 0.012, [6.5,7.5) -> 0.006, else 0.004.
double rate_from_score(double base_score);

// Checks every scenario invariant; throws ScenarioError naming the violation.
void validate_scenario(const Scenario& s);

Scenario load_scenario(const std::string& path);
Scenario scenario_from_json_text(const std::string& text);
std::string scenario_to_json_text(const Scenario& s);
void write_scenario(const Scenario& s, const std::string& path);

// Built-in smart-hospital scenarios.
struct HospitalConfig {
    int decoys_per_vlan = 1; // 1..3
    bool extended = false;   // false: 7 real IoT nodes; true: 12
};
Scenario baseline_scenario();
Scenario hospital_scenario(const HospitalConfig& cfg);
// Same real network with every decoy (and decoy edge/role) removed.
Scenario strip_decoys(const Scenario& s);

// All shufflable edges: source is a real non-target node, destination is a
// real non-target node or any decoy, VLAN-permitted, no self-loop. Sorted.
std::vector<Edge> candidate_edges(const Scenario& s);

} // namespace ntsmtd
