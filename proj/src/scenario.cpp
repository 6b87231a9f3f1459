// scenario.cpp - scenario validation, JSON file I/O, built-in hospital nets.
#include "ntsmtd/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace ntsmtd {

using json = nlohmann::ordered_json;

bool Topology::has_edge(NodeIdx a, NodeIdx b) const {
    return std::binary_search(edges.begin(), edges.end(), Edge{a, b});
}

bool Topology::vlan_permits(int from, int to) const {
    return std::binary_search(vlan_reachability.begin(), vlan_reachability.end(),
                              std::pair<int, int>{from, to});
}

void Topology::normalize() {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    std::sort(vlan_reachability.begin(), vlan_reachability.end());
    vlan_reachability.erase(std::unique(vlan_reachability.begin(), vlan_reachability.end()),
                            vlan_reachability.end());
}

NodeIdx Scenario::index_of(const std::string& id) const {
    for (NodeIdx i = 0; i < nodes.size(); ++i)
        if (nodes[i].id == id) return i;
    throw ScenarioError("unknown node id: " + id);
}

std::size_t Scenario::real_count() const {
    std::size_t n = 0;
    for (const auto& nd : nodes)
        if (!nd.is_decoy) ++n;
    return n;
}

std::size_t Scenario::decoy_count() const { return nodes.size() - real_count(); }

double rate_from_score(double base_score) {
    if (base_score < 0.0 || base_score > 10.0)
        throw ScenarioError("base score out of range [0,10]");
    if (base_score >= 10.0) return 0.042;
    if (base_score >= 7.5) return 0.012;
    if (base_score >= 6.5) return 0.006;
    return 0.004;
}

namespace {

bool prob_ok(double p) { return p >= 0.0 && p <= 1.0; }

void check_params(const Params& p) {
    if (std::abs(p.w1 + p.w2 - 1.0) > 1e-9)
        throw ScenarioError("weights must sum to 1 (w1 + w2)");
    if (std::abs(p.ga.w_n + p.ga.w_m + p.ga.w_c - 1.0) > 1e-9)
        throw ScenarioError("objective weights must sum to 1 (w_N + w_M + w_C)");
    for (double v : {p.p_d_em, p.p_d_os, p.p_a_d, p.p_a_m, p.p_r, p.zeta,
                     p.ga.crossover_rate, p.ga.mutation_rate})
        if (!prob_ok(v)) throw ScenarioError("probability out of range [0,1]");
    for (double v : {p.delta, p.gamma1, p.gamma2, p.lambda_rs, p.sim_hour_cap})
        if (!(v > 0.0)) throw ScenarioError("time quantities must be positive");
    if (!(p.beta > 0.0 && p.beta < 1.0)) throw ScenarioError("beta must be in (0,1)");
    if (!(p.rho > 0.0 && p.rho <= 1.0)) throw ScenarioError("rho must be in (0,1]");
    if (p.k_hops < 1) throw ScenarioError("k must be >= 1");
    if (p.ga.population < 1 || p.ga.generations < 1)
        throw ScenarioError("GA population and generations must be >= 1");
}

} // namespace

void validate_scenario(const Scenario& s) {
    if (s.nodes.empty()) throw ScenarioError("scenario has no nodes");
    std::unordered_set<std::string> ids;
    for (const auto& n : s.nodes) {
        if (!ids.insert(n.id).second) throw ScenarioError("duplicate node id: " + n.id);
        if (n.vulnerabilities.empty())
            throw ScenarioError("node " + n.id + " has no vulnerabilities");
        for (const auto& v : n.vulnerabilities) {
            if (!(v.compromise_rate > 0.0))
                throw ScenarioError("compromise_rate must be > 0 (node " + n.id + ")");
            if (v.base_score && (*v.base_score < 0.0 || *v.base_score > 10.0))
                throw ScenarioError("base score out of range [0,10] (node " + n.id + ")");
        }
        if (n.is_critical && n.is_decoy)
            throw ScenarioError("critical node must not be a decoy: " + n.id);
    }
    if (s.topology.node_count != s.nodes.size())
        throw ScenarioError("topology node count does not match node list");

    const auto& t = s.topology;
    for (std::size_t i = 1; i < t.edges.size(); ++i)
        if (t.edges[i] == t.edges[i - 1]) throw ScenarioError("duplicate edge");
    for (const auto& [a, b] : t.edges) {
        if (a >= s.nodes.size() || b >= s.nodes.size())
            throw ScenarioError("edge endpoint out of range");
        if (a == b) throw ScenarioError("self-loop edge on " + s.nodes[a].id);
        if (s.nodes[a].is_decoy && !s.nodes[b].is_decoy)
            throw ScenarioError("decoy-to-real edge: " + s.nodes[a].id + " -> " + s.nodes[b].id);
        if (!t.vlan_permits(s.nodes[a].vlan, s.nodes[b].vlan))
            throw ScenarioError("edge not permitted by vlan_reachability: " + s.nodes[a].id +
                                " -> " + s.nodes[b].id);
    }

    if (s.entry_points.empty()) throw ScenarioError("entry_points must be non-empty");
    if (s.real_targets.empty()) throw ScenarioError("real_targets must be non-empty");
    for (NodeIdx i : s.entry_points) {
        if (i >= s.nodes.size()) throw ScenarioError("role index out of range");
        if (s.nodes[i].is_decoy) throw ScenarioError("entry point must be a real node");
    }
    for (NodeIdx i : s.real_targets) {
        if (i >= s.nodes.size() || s.nodes[i].is_decoy)
            throw ScenarioError("real target must be a real node");
    }
    for (NodeIdx i : s.decoy_targets) {
        if (i >= s.nodes.size() || !s.nodes[i].is_decoy)
            throw ScenarioError("decoy target must be a decoy node");
    }
    // role flags must agree with the role sets
    for (NodeIdx i = 0; i < s.nodes.size(); ++i) {
        bool entry = std::find(s.entry_points.begin(), s.entry_points.end(), i) != s.entry_points.end();
        bool target = std::find(s.real_targets.begin(), s.real_targets.end(), i) != s.real_targets.end() ||
                      std::find(s.decoy_targets.begin(), s.decoy_targets.end(), i) != s.decoy_targets.end();
        if (s.nodes[i].is_entry_candidate != entry || s.nodes[i].is_target != target)
            throw ScenarioError("role flags out of sync for node " + s.nodes[i].id);
    }
    check_params(s.params);
}

namespace {

// Normalizes topology, derives role flags from role sets, validates.
void finalize_scenario(Scenario& s) {
    s.topology.node_count = static_cast<NodeIdx>(s.nodes.size());
    s.topology.normalize();
    std::sort(s.entry_points.begin(), s.entry_points.end());
    std::sort(s.real_targets.begin(), s.real_targets.end());
    std::sort(s.decoy_targets.begin(), s.decoy_targets.end());
    for (auto& n : s.nodes) {
        n.is_entry_candidate = false;
        n.is_target = false;
        n.compromised = false;
    }
    for (NodeIdx i : s.entry_points)
        if (i < s.nodes.size()) s.nodes[i].is_entry_candidate = true;
    for (NodeIdx i : s.real_targets)
        if (i < s.nodes.size()) s.nodes[i].is_target = true;
    for (NodeIdx i : s.decoy_targets)
        if (i < s.nodes.size()) s.nodes[i].is_target = true;
    validate_scenario(s);
}

const char* fidelity_name(DecoyFidelity f) {
    return f == DecoyFidelity::emulated ? "emulated" : "full_os";
}

DecoyFidelity fidelity_from(const std::string& s) {
    if (s == "emulated") return DecoyFidelity::emulated;
    if (s == "full_os") return DecoyFidelity::full_os;
    throw ScenarioError("unknown decoy fidelity: " + s);
}

void expect_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw ScenarioError("unknown key '" + it.key() + "' in " + where);
}

Params params_from_json(const json& j) {
    Params p;
    expect_keys(j, {"w1", "w2", "p_d_em", "p_d_os", "p_a_d", "p_a_m", "k", "beta", "rho",
                    "delta", "gamma1", "gamma2", "lambda_rs", "p_r", "zeta",
                    "sim_hour_cap", "path_cap", "ga"},
                "params");
    p.w1 = j.value("w1", p.w1);
    p.w2 = j.value("w2", p.w2);
    p.p_d_em = j.value("p_d_em", p.p_d_em);
    p.p_d_os = j.value("p_d_os", p.p_d_os);
    p.p_a_d = j.value("p_a_d", p.p_a_d);
    p.p_a_m = j.value("p_a_m", p.p_a_m);
    p.k_hops = j.value("k", p.k_hops);
    p.beta = j.value("beta", p.beta);
    p.rho = j.value("rho", p.rho);
    p.delta = j.value("delta", p.delta);
    p.gamma1 = j.value("gamma1", p.gamma1);
    p.gamma2 = j.value("gamma2", p.gamma2);
    p.lambda_rs = j.value("lambda_rs", p.lambda_rs);
    p.p_r = j.value("p_r", p.p_r);
    p.zeta = j.value("zeta", p.zeta);
    p.sim_hour_cap = j.value("sim_hour_cap", p.sim_hour_cap);
    p.path_cap = j.value("path_cap", p.path_cap);
    if (j.contains("ga")) {
        const json& g = j.at("ga");
        expect_keys(g, {"population", "generations", "crossover_rate", "mutation_rate",
                        "w_n", "w_m", "w_c", "fitness_path_cap", "stall_generations",
                        "normalize_per_generation"},
                    "params.ga");
        p.ga.population = g.value("population", p.ga.population);
        p.ga.generations = g.value("generations", p.ga.generations);
        p.ga.crossover_rate = g.value("crossover_rate", p.ga.crossover_rate);
        p.ga.mutation_rate = g.value("mutation_rate", p.ga.mutation_rate);
        p.ga.w_n = g.value("w_n", p.ga.w_n);
        p.ga.w_m = g.value("w_m", p.ga.w_m);
        p.ga.w_c = g.value("w_c", p.ga.w_c);
        p.ga.fitness_path_cap = g.value("fitness_path_cap", p.ga.fitness_path_cap);
        p.ga.stall_generations = g.value("stall_generations", p.ga.stall_generations);
        p.ga.normalize_per_generation =
            g.value("normalize_per_generation", p.ga.normalize_per_generation);
    }
    return p;
}

json params_to_json(const Params& p) {
    json g{{"population", p.ga.population},
           {"generations", p.ga.generations},
           {"crossover_rate", p.ga.crossover_rate},
           {"mutation_rate", p.ga.mutation_rate},
           {"w_n", p.ga.w_n},
           {"w_m", p.ga.w_m},
           {"w_c", p.ga.w_c},
           {"fitness_path_cap", p.ga.fitness_path_cap},
           {"stall_generations", p.ga.stall_generations},
           {"normalize_per_generation", p.ga.normalize_per_generation}};
    return json{{"w1", p.w1},
                {"w2", p.w2},
                {"p_d_em", p.p_d_em},
                {"p_d_os", p.p_d_os},
                {"p_a_d", p.p_a_d},
                {"p_a_m", p.p_a_m},
                {"k", p.k_hops},
                {"beta", p.beta},
                {"rho", p.rho},
                {"delta", p.delta},
                {"gamma1", p.gamma1},
                {"gamma2", p.gamma2},
                {"lambda_rs", p.lambda_rs},
                {"p_r", p.p_r},
                {"zeta", p.zeta},
                {"sim_hour_cap", p.sim_hour_cap},
                {"path_cap", p.path_cap},
                {"ga", std::move(g)}};
}

} // namespace

Scenario scenario_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ScenarioError(std::string("parse error: ") + e.what());
    }
    expect_keys(j, {"nodes", "edges", "vlan_reachability", "roles", "params"}, "scenario");
    Scenario s;
    std::unordered_map<std::string, NodeIdx> index;
    if (!j.contains("nodes") || !j.at("nodes").is_array())
        throw ScenarioError("scenario needs a 'nodes' list");
    for (const json& nj : j.at("nodes")) {
        expect_keys(nj, {"id", "label", "vlan", "kind", "fidelity", "critical", "vulnerabilities"},
                    "node entry");
        Node n;
        n.id = nj.at("id").get<std::string>();
        n.label = nj.value("label", n.id);
        n.vlan = nj.at("vlan").get<int>();
        std::string kind = nj.value("kind", std::string("real"));
        if (kind != "real" && kind != "decoy")
            throw ScenarioError("node kind must be 'real' or 'decoy': " + n.id);
        n.is_decoy = kind == "decoy";
        if (nj.contains("fidelity")) {
            if (!n.is_decoy) throw ScenarioError("fidelity is only valid on decoys: " + n.id);
            n.fidelity = fidelity_from(nj.at("fidelity").get<std::string>());
        }
        n.is_critical = nj.value("critical", false);
        if (nj.contains("vulnerabilities")) {
            for (const json& vj : nj.at("vulnerabilities")) {
                expect_keys(vj, {"cve_id", "rate", "base_score"}, "vulnerability entry");
                Vulnerability v;
                v.cve_id = vj.value("cve_id", std::string("unspecified"));
                if (vj.contains("base_score")) v.base_score = vj.at("base_score").get<double>();
                if (vj.contains("rate"))
                    v.compromise_rate = vj.at("rate").get<double>();
                else if (v.base_score)
                    v.compromise_rate = rate_from_score(*v.base_score);
                else
                    throw ScenarioError("vulnerability needs 'rate' or 'base_score' (node " +
                                        n.id + ")");
                n.vulnerabilities.push_back(std::move(v));
            }
        }
        if (!index.emplace(n.id, static_cast<NodeIdx>(s.nodes.size())).second)
            throw ScenarioError("duplicate node id: " + n.id);
        s.nodes.push_back(std::move(n));
    }
    auto idx = [&](const std::string& id) {
        auto it = index.find(id);
        if (it == index.end()) throw ScenarioError("unknown node id: " + id);
        return it->second;
    };
    if (j.contains("edges"))
        for (const json& ej : j.at("edges")) {
            if (!ej.is_array() || ej.size() != 2)
                throw ScenarioError("edge entries must be [src, dst] pairs");
            s.topology.edges.emplace_back(idx(ej[0].get<std::string>()),
                                          idx(ej[1].get<std::string>()));
        }
    // reject duplicates before normalize() would silently drop them
    {
        auto copy = s.topology.edges;
        std::sort(copy.begin(), copy.end());
        if (std::adjacent_find(copy.begin(), copy.end()) != copy.end())
            throw ScenarioError("duplicate edge");
    }
    if (j.contains("vlan_reachability"))
        for (const json& vj : j.at("vlan_reachability")) {
            if (!vj.is_array() || vj.size() != 2)
                throw ScenarioError("vlan_reachability entries must be [from, to] pairs");
            s.topology.vlan_reachability.emplace_back(vj[0].get<int>(), vj[1].get<int>());
        }
    if (j.contains("roles")) {
        const json& r = j.at("roles");
        expect_keys(r, {"entry_points", "real_targets", "decoy_targets"}, "roles");
        for (const json& e : r.value("entry_points", json::array()))
            s.entry_points.push_back(idx(e.get<std::string>()));
        for (const json& e : r.value("real_targets", json::array()))
            s.real_targets.push_back(idx(e.get<std::string>()));
        for (const json& e : r.value("decoy_targets", json::array()))
            s.decoy_targets.push_back(idx(e.get<std::string>()));
    }
    if (j.contains("params")) s.params = params_from_json(j.at("params"));
    finalize_scenario(s);
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return scenario_from_json_text(ss.str());
}

std::string scenario_to_json_text(const Scenario& s) {
    json nodes = json::array();
    for (const auto& n : s.nodes) {
        json vulns = json::array();
        for (const auto& v : n.vulnerabilities) {
            json vj{{"cve_id", v.cve_id}, {"rate", v.compromise_rate}};
            if (v.base_score) vj["base_score"] = *v.base_score;
            vulns.push_back(std::move(vj));
        }
        json nj{{"id", n.id},
                {"label", n.label},
                {"vlan", n.vlan},
                {"kind", n.is_decoy ? "decoy" : "real"}};
        if (n.is_decoy) nj["fidelity"] = fidelity_name(n.fidelity);
        nj["critical"] = n.is_critical;
        nj["vulnerabilities"] = std::move(vulns);
        nodes.push_back(std::move(nj));
    }
    json edges = json::array();
    for (const auto& [a, b] : s.topology.edges)
        edges.push_back(json::array({s.nodes[a].id, s.nodes[b].id}));
    json vlans = json::array();
    for (const auto& [a, b] : s.topology.vlan_reachability)
        vlans.push_back(json::array({a, b}));
    auto names = [&](const std::vector<NodeIdx>& v) {
        json out = json::array();
        for (NodeIdx i : v) out.push_back(s.nodes[i].id);
        return out;
    };
    json j{{"nodes", std::move(nodes)},
           {"edges", std::move(edges)},
           {"vlan_reachability", std::move(vlans)},
           {"roles",
            {{"entry_points", names(s.entry_points)},
             {"real_targets", names(s.real_targets)},
             {"decoy_targets", names(s.decoy_targets)}}},
           {"params", params_to_json(s.params)}};
    return j.dump(2) + "\n";
}

void write_scenario(const Scenario& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ScenarioError("cannot write scenario file: " + path);
    out << scenario_to_json_text(s);
}

namespace {

struct NodeSpec {
    std::string id, label, cve;
    int vlan;
    double rate;
};

} // namespace

Scenario hospital_scenario(const HospitalConfig& cfg) {
    if (cfg.decoys_per_vlan < 1 || cfg.decoys_per_vlan > 3)
        throw ScenarioError("decoys_per_vlan must be in [1,3]");
    Scenario s;
    auto add_real = [&](const NodeSpec& ns, bool critical = false) {
        Node n;
        n.id = ns.id;
        n.label = ns.label;
        n.vlan = ns.vlan;
        n.is_critical = critical;
        n.vulnerabilities.push_back({ns.cve, std::nullopt, ns.rate});
        s.nodes.push_back(std::move(n));
        return static_cast<NodeIdx>(s.nodes.size() - 1);
    };

    std::vector<NodeSpec> reals = {
        {"mri", "MRI", "CVE-2018-8308", 1, 0.006},
        {"ct_scan", "CT Scan", "CVE-2018-8308", 1, 0.006},
        {"thermostat", "Smart Thermostat", "CVE-2018-11315", 2, 0.006},
        {"meter", "Smart Meter", "CVE-2017-9944", 2, 0.042},
        {"camera", "Smart Camera", "CVE-2018-10660", 2, 0.042},
        {"tv", "Smart TV", "CVE-2018-4094", 3, 0.012},
        {"laptop", "Laptop", "CVE-2018-8345", 3, 0.004},
    };
    if (cfg.extended) {
        // (2, 6, 4, 1) real IoT nodes per VLAN: medical devices stay at two.
        reals.push_back({"thermostat_2", "Smart Thermostat 2", "CVE-2018-11315", 2, 0.006});
        reals.push_back({"meter_2", "Smart Meter 2", "CVE-2017-9944", 2, 0.042});
        reals.push_back({"camera_2", "Smart Camera 2", "CVE-2018-10660", 2, 0.042});
        reals.push_back({"tv_2", "Smart TV 2", "CVE-2018-4094", 3, 0.012});
        reals.push_back({"laptop_2", "Laptop 2", "CVE-2018-8345", 3, 0.004});
    }
    for (const auto& ns : reals) add_real(ns);
    NodeIdx server = add_real({"server", "Server", "CVE-2018-8273", 4, 0.006}, /*critical=*/true);

    auto add_decoy = [&](const std::string& id, const std::string& label, int vlan,
                         DecoyFidelity f, std::vector<Vulnerability> vulns) {
        Node n;
        n.id = id;
        n.label = label;
        n.vlan = vlan;
        n.is_decoy = true;
        n.fidelity = f;
        n.vulnerabilities = std::move(vulns);
        s.nodes.push_back(std::move(n));
        return static_cast<NodeIdx>(s.nodes.size() - 1);
    };

    std::vector<NodeIdx> d_ct, d_cam, d_tv, d_srv;
    for (int c = 1; c <= cfg.decoys_per_vlan; ++c) {
        std::string sfx = c == 1 ? "" : "_" + std::to_string(c);
        std::string lsfx = c == 1 ? "" : " " + std::to_string(c);
        d_ct.push_back(add_decoy("d_ct_scan" + sfx, "Decoy CT Scan" + lsfx, 1,
                                 DecoyFidelity::emulated,
                                 {{"CVE-2018-8308", std::nullopt, 0.006},
                                  {"CVE-2018-8136", std::nullopt, 0.012}}));
        d_cam.push_back(add_decoy("d_camera" + sfx, "Decoy Smart Camera" + lsfx, 2,
                                  DecoyFidelity::emulated,
                                  {{"CVE-2018-6294", std::nullopt, 0.042},
                                   {"CVE-2018-6295", std::nullopt, 0.042},
                                   {"CVE-2018-6297", std::nullopt, 0.042}}));
        d_tv.push_back(add_decoy("d_tv" + sfx, "Decoy Smart TV" + lsfx, 3,
                                 DecoyFidelity::emulated,
                                 {{"CVE-2018-4094", std::nullopt, 0.012},
                                  {"CVE-2018-4095", std::nullopt, 0.012}}));
        d_srv.push_back(add_decoy("d_server" + sfx, "Decoy Server" + lsfx, 4,
                                  DecoyFidelity::full_os,
                                  {{"CVE-2016-1930", std::nullopt, 0.042},
                                   {"CVE-2016-1935", std::nullopt, 0.012},
                                   {"CVE-2016-1962", std::nullopt, 0.042}}));
    }

    s.topology.vlan_reachability = {{1, 1}, {1, 2}, {1, 3}, {1, 4}, {2, 1}, {2, 2},
                                    {2, 3}, {2, 4}, {3, 1}, {3, 2}, {3, 3}, {3, 4},
                                    {4, 1}, {4, 2}, {4, 3}, {4, 4}};

    auto id = [&](const std::string& nid) { return s.index_of(nid); };
    auto edge = [&](const std::string& a, const std::string& b) {
        s.topology.edges.emplace_back(id(a), id(b));
    };

    if (!cfg.extended) {
        // service uplink: the camera head-end streams everything to the server
        edge("camera", "server");
        // management downlinks from the server to the rest of the fleet
        for (const char* dst : {"mri", "ct_scan", "thermostat", "meter", "tv", "laptop"})
            edge("server", dst);
        // sensor mesh: readings flow into the meter, the meter feeds the
        // camera head-end, the camera streams to the aggregators and the TV
        edge("thermostat", "meter");
        edge("laptop", "meter");
        edge("tv", "meter");
        edge("meter", "camera");
        edge("camera", "thermostat");
        edge("camera", "laptop");
        edge("camera", "tv");
        // initial decoy hookup
        edge("mri", "d_ct_scan");
        edge("ct_scan", "d_ct_scan");
        edge("thermostat", "d_camera");
        edge("meter", "d_camera");
        edge("camera", "d_camera");
        edge("tv", "d_tv");
        edge("laptop", "d_tv");
        edge("thermostat", "d_tv");
        edge("meter", "d_tv");
        edge("camera", "d_tv");
        edge("tv", "d_camera");
        edge("laptop", "d_camera");
        // every device keeps a decoy-server link so there is always a decoy
        // to probe
        for (const char* src : {"mri", "ct_scan", "thermostat", "meter", "camera", "tv", "laptop"})
            edge(src, "d_server");
    } else {
        // the larger fleet doubles the VLAN2/3 wings; both camera head-ends
        // stream to the server
        edge("camera", "server");
        edge("camera_2", "server");
        for (const char* dst :
             {"meter", "meter_2", "thermostat", "thermostat_2", "laptop", "laptop_2"})
            edge("server", dst);
        // readings from every ward flow into both meters
        for (const char* src : {"thermostat", "laptop", "tv", "thermostat_2", "laptop_2", "tv_2"}) {
            edge(src, "meter");
            edge(src, "meter_2");
        }
        edge("meter", "camera");
        edge("meter", "camera_2");
        edge("meter_2", "camera");
        edge("meter_2", "camera_2");
        edge("meter", "meter_2");
        edge("meter_2", "meter");
        edge("camera", "camera_2");
        edge("camera_2", "camera");
        edge("tv", "camera");
        edge("tv_2", "camera_2");
        for (const char* dst : {"thermostat", "laptop", "thermostat_2", "laptop_2"}) {
            edge("camera", dst);
            edge("camera_2", dst);
        }
        edge("thermostat", "laptop");
        edge("laptop", "thermostat");
        edge("thermostat_2", "laptop_2");
        edge("laptop_2", "thermostat_2");
        edge("mri", "d_ct_scan");
        edge("ct_scan", "d_ct_scan");
        for (const char* src : {"thermostat", "meter", "camera", "thermostat_2", "meter_2", "camera_2"})
            edge(src, "d_camera");
        for (const char* src : {"tv", "laptop", "tv_2", "laptop_2"})
            edge(src, "d_tv");
        for (const char* src : {"mri", "ct_scan", "thermostat", "meter", "camera", "tv", "laptop",
                                "thermostat_2", "meter_2", "camera_2", "tv_2", "laptop_2"})
            edge(src, "d_server");
    }
    // decoy subsystem wiring (fixed: decoy sources are never shuffled); the
    // camera decoys funnel through the TV decoys so intruders walk a chain
    // before reaching a decoy server
    for (NodeIdx srv_d : d_srv) {
        for (NodeIdx x : d_ct) s.topology.edges.emplace_back(x, srv_d);
        for (NodeIdx x : d_tv) s.topology.edges.emplace_back(x, srv_d);
    }
    for (NodeIdx c : d_cam)
        for (NodeIdx t : d_tv) s.topology.edges.emplace_back(c, t);

    for (NodeIdx i = 0; i < s.nodes.size(); ++i)
        if (!s.nodes[i].is_decoy && i != server) s.entry_points.push_back(i);
    s.real_targets = {server};
    s.decoy_targets = d_srv;

    finalize_scenario(s);
    return s;
}

Scenario baseline_scenario() { return hospital_scenario(HospitalConfig{}); }

Scenario strip_decoys(const Scenario& s) {
    Scenario out;
    out.params = s.params;
    std::vector<NodeIdx> remap(s.nodes.size(), 0);
    for (NodeIdx i = 0; i < s.nodes.size(); ++i) {
        if (s.nodes[i].is_decoy) continue;
        remap[i] = static_cast<NodeIdx>(out.nodes.size());
        out.nodes.push_back(s.nodes[i]);
    }
    out.topology.vlan_reachability = s.topology.vlan_reachability;
    for (const auto& [a, b] : s.topology.edges)
        if (!s.nodes[a].is_decoy && !s.nodes[b].is_decoy)
            out.topology.edges.emplace_back(remap[a], remap[b]);
    for (NodeIdx i : s.entry_points) out.entry_points.push_back(remap[i]);
    for (NodeIdx i : s.real_targets) out.real_targets.push_back(remap[i]);
    finalize_scenario(out);
    return out;
}

std::vector<Edge> candidate_edges(const Scenario& s) {
    std::vector<Edge> out;
    const auto& t = s.topology;
    for (NodeIdx a = 0; a < s.nodes.size(); ++a) {
        const Node& na = s.nodes[a];
        if (na.is_decoy || na.is_target) continue;
        for (NodeIdx b = 0; b < s.nodes.size(); ++b) {
            if (a == b) continue;
            const Node& nb = s.nodes[b];
            if (!nb.is_decoy && nb.is_target) continue;
            if (!t.vlan_permits(na.vlan, nb.vlan)) continue;
            out.emplace_back(a, b);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace ntsmtd
