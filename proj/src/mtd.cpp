// mtd.cpp - shuffle triggers, RNT/DPNT/GANT generators, analytic MTTSF proxy.
#include "ntsmtd/mtd.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "ntsmtd/harm.hpp"

namespace ntsmtd {

WhenStrategy WhenStrategy::fixed(double g1) {
    WhenStrategy w;
    w.kind = Kind::fixed;
    w.gamma1 = g1;
    return w;
}
WhenStrategy WhenStrategy::random_interval(double mean) {
    WhenStrategy w;
    w.kind = Kind::random;
    w.lambda_rs = mean;
    return w;
}
WhenStrategy WhenStrategy::adaptive(double beta, double rho, double delta) {
    WhenStrategy w;
    w.kind = Kind::adaptive;
    w.beta = beta;
    w.rho = rho;
    w.delta = delta;
    return w;
}
WhenStrategy WhenStrategy::hybrid(double beta, double rho, double delta, double g2) {
    WhenStrategy w = adaptive(beta, rho, delta);
    w.kind = Kind::hybrid;
    w.gamma2 = g2;
    return w;
}
WhenStrategy WhenStrategy::none() {
    WhenStrategy w;
    w.kind = Kind::none;
    return w;
}

HowStrategy HowStrategy::rnt(double p_r) {
    HowStrategy h;
    h.kind = Kind::rnt;
    h.p_r = p_r;
    return h;
}
HowStrategy HowStrategy::gant(const GaParams& ga) {
    HowStrategy h;
    h.kind = Kind::gant;
    h.ga = ga;
    return h;
}
HowStrategy HowStrategy::dpnt(double zeta) {
    HowStrategy h;
    h.kind = Kind::dpnt;
    h.zeta = zeta;
    return h;
}
HowStrategy HowStrategy::none() {
    HowStrategy h;
    h.kind = Kind::none;
    return h;
}

TriggerDecision next_trigger(const WhenStrategy& w, double now, double last_shuffle,
                             const SsvTrace& trace, Rng& rng) {
    if (now < last_shuffle) throw std::invalid_argument("next_trigger: now < last_shuffle");
    TriggerDecision d;
    switch (w.kind) {
    case WhenStrategy::Kind::fixed: {
        double at = last_shuffle + w.gamma1;
        if (now >= at)
            d.shuffle_now = true;
        else
            d.next_check_at = at;
        return d;
    }
    case WhenStrategy::Kind::random: {
        double at = last_shuffle + rng.exponential_mean(w.lambda_rs);
        if (now >= at)
            d.shuffle_now = true;
        else
            d.next_check_at = at;
        return d;
    }
    case WhenStrategy::Kind::adaptive:
    case WhenStrategy::Kind::hybrid: {
        double ssv_now = trace.value_at(now);
        double ssv_prev = trace.value_at(now - w.delta);
        bool fire = (ssv_now - ssv_prev > w.beta) && (ssv_now > w.rho);
        if (w.kind == WhenStrategy::Kind::hybrid) {
            double cap_at = last_shuffle + w.gamma2;
            if (fire || now >= cap_at)
                d.shuffle_now = true;
            else
                d.next_check_at = cap_at;
        } else {
            d.shuffle_now = fire;
        }
        return d;
    }
    case WhenStrategy::Kind::none:
        return d;
    }
    return d;
}

namespace {

std::uint64_t candidate_diff(const Scenario& s, const Topology& a, const Topology& b) {
    std::uint64_t c = 0;
    for (const Edge& e : candidate_edges(s))
        if (a.has_edge(e.first, e.second) != b.has_edge(e.first, e.second)) ++c;
    return c;
}

Topology with_edges(const Topology& base, std::vector<Edge> edges) {
    Topology t = base;
    t.edges = std::move(edges);
    t.normalize();
    return t;
}

} // namespace

ShuffleResult rnt_shuffle(const Scenario& s, const Topology& current, double p_r, Rng& rng) {
    std::vector<Edge> cands = candidate_edges(s);
    std::set<Edge> keep(current.edges.begin(), current.edges.end());
    std::uint64_t changed = 0;
    for (const Edge& e : cands) {
        bool present = current.has_edge(e.first, e.second);
        bool want = rng.bernoulli(p_r);
        if (want != present) ++changed;
        if (want)
            keep.insert(e);
        else
            keep.erase(e);
    }
    ShuffleResult res;
    res.topology = with_edges(current, {keep.begin(), keep.end()});
    res.edges_changed = changed;
    return res;
}

ShuffleResult dpnt_shuffle(const Scenario& s, const Topology& current, double zeta, Rng& rng) {
    if (s.decoy_targets.empty())
        throw std::invalid_argument("dpnt_shuffle: scenario has no decoy targets");
    std::set<Edge> edges(current.edges.begin(), current.edges.end());
    std::uint64_t cost = 0;

    std::vector<NodeIdx> all_decoys;
    for (NodeIdx i = 0; i < s.nodes.size(); ++i)
        if (s.nodes[i].is_decoy) all_decoys.push_back(i);
    std::set<NodeIdx> target_set(s.decoy_targets.begin(), s.decoy_targets.end());

    // Phase 1: rewire each real IoT node's decoy links around a fresh draw.
    for (NodeIdx mi = 0; mi < s.nodes.size(); ++mi) {
        const Node& n = s.nodes[mi];
        if (n.is_decoy || n.is_target) continue;
        std::vector<NodeIdx> reachable;
        for (NodeIdx d : all_decoys)
            if (current.vlan_permits(n.vlan, s.nodes[d].vlan)) reachable.push_back(d);
        // draw each reachable decoy with probability zeta, then top up so the
        // node ends connected to at least half of all decoys (capped at what
        // the VLANs allow)
        std::vector<NodeIdx> drawn;
        for (NodeIdx d : reachable)
            if (rng.bernoulli(zeta)) drawn.push_back(d);
        std::size_t need = std::min((all_decoys.size() + 1) / 2, reachable.size());
        if (drawn.size() < need) {
            std::vector<NodeIdx> rest;
            for (NodeIdx d : reachable)
                if (std::find(drawn.begin(), drawn.end(), d) == drawn.end()) rest.push_back(d);
            while (drawn.size() < need && !rest.empty()) {
                std::size_t pick = rng.uniform_int(rest.size());
                drawn.push_back(rest[pick]);
                rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pick));
            }
        }
        std::set<NodeIdx> drawn_set(drawn.begin(), drawn.end());
        for (NodeIdx d : reachable) {
            if (drawn_set.count(d) && !edges.count({mi, d})) {
                edges.insert({mi, d});
                ++cost;
            }
        }
        // remove stale links to decoys outside the draw, keeping decoy targets
        std::vector<NodeIdx> outgoing;
        for (const Edge& e : edges)
            if (e.first == mi) outgoing.push_back(e.second);
        for (NodeIdx mk : outgoing) {
            if (s.nodes[mk].is_decoy && !target_set.count(mk) && !drawn_set.count(mk)) {
                edges.erase({mi, mk});
                ++cost;
            }
        }
    }

    Topology phase1 = with_edges(current, {edges.begin(), edges.end()});

    // Phase 2: connect minimum-decoy-path nodes to maximum-decoy-path nodes.
    HarmModel h = build_harm(s, phase1);
    auto dic = decoy_paths_per_entry(h, s.decoy_targets, s.params.path_cap);
    if (!dic.empty()) {
        std::uint64_t lo = UINT64_MAX, hi = 0;
        for (const auto& [node, cnt] : dic) {
            lo = std::min(lo, cnt);
            hi = std::max(hi, cnt);
        }
        if (lo != hi) { // full tie: phase 2 is a no-op
            for (const auto& [mi, cnt] : dic) {
                if (cnt != lo) continue;
                for (const auto& [mj, cnt2] : dic) {
                    if (cnt2 != hi || mi == mj) continue;
                    if (!phase1.vlan_permits(s.nodes[mi].vlan, s.nodes[mj].vlan)) continue;
                    if (edges.count({mi, mj})) continue;
                    edges.insert({mi, mj});
                    ++cost;
                }
            }
        }
    }

    ShuffleResult res;
    res.topology = with_edges(current, {edges.begin(), edges.end()});
    res.edges_changed = cost;
    return res;
}

namespace {

using Bits = std::vector<char>;

struct RawFitness {
    double n_dt = 0;   // |AP_d|, saturated at the fitness cap
    double mttsf = 0;  // analytic proxy
    double cost = 0;   // C_T - C_D against the pre-shuffle topology
};

// Evaluates chromosomes without constructing Topology/HarmModel values: the
// fixed adjacency is compiled once and candidate edges toggle in place.
struct GaContext {
    const Scenario* s;
    std::vector<Edge> cands;
    std::vector<Edge> fixed; // non-candidate edges of the current topology
    Bits current_bits;
    const GaParams* ga;
    std::unordered_map<std::string, RawFitness> memo;

    std::vector<std::vector<NodeIdx>> fixed_adj;
    std::vector<std::vector<std::pair<NodeIdx, std::size_t>>> cand_out; // dst, bit
    std::vector<char> decoy_target_mask, entry_mask, critical_mask;
    std::vector<double> base_cost;   // expected compromise time per real node
    std::vector<double> engage_prob; // P_d per decoy node
    std::size_t real_total = 0, sfc1_need = 0;

    // scratch reused across evaluations
    mutable std::vector<std::vector<NodeIdx>> adj;
    mutable std::vector<char> visited;
    mutable std::vector<double> cost, dist;
    mutable std::vector<double> reach_scratch;

    void compile() {
        const std::size_t n = s->nodes.size();
        fixed_adj.assign(n, {});
        for (const Edge& e : fixed) fixed_adj[e.first].push_back(e.second);
        cand_out.assign(n, {});
        for (std::size_t i = 0; i < cands.size(); ++i)
            cand_out[cands[i].first].emplace_back(cands[i].second, i);
        decoy_target_mask.assign(n, 0);
        for (NodeIdx i : s->decoy_targets) decoy_target_mask[i] = 1;
        entry_mask.assign(n, 0);
        for (NodeIdx i : s->entry_points) entry_mask[i] = 1;
        critical_mask.assign(n, 0);
        base_cost.assign(n, 0.0);
        engage_prob.assign(n, 0.0);
        for (NodeIdx i = 0; i < n; ++i) {
            const Node& nd = s->nodes[i];
            if (nd.is_decoy) {
                engage_prob[i] = nd.fidelity == DecoyFidelity::full_os ? s->params.p_d_os
                                                                       : s->params.p_d_em;
            } else {
                ++real_total;
                critical_mask[i] = nd.is_critical;
            }
            base_cost[i] = expected_node_compromise_time(nd);
        }
        sfc1_need = real_total / 3 + 1;
        adj.assign(n, {});
        visited.assign(n, 0);
        cost.assign(n, 0.0);
        dist.assign(n, 0.0);
    }

    void assemble(const Bits& b) const {
        const std::size_t n = s->nodes.size();
        for (std::size_t u = 0; u < n; ++u) {
            adj[u].assign(fixed_adj[u].begin(), fixed_adj[u].end());
            for (const auto& [dst, bit] : cand_out[u])
                if (b[bit]) adj[u].push_back(dst);
            std::sort(adj[u].begin(), adj[u].end());
        }
    }

    std::uint64_t count_paths(NodeIdx at, std::uint64_t budget) const {
        // simple paths ending at decoy targets; decoys never lead back to
        // real nodes so one visited mask suffices
        visited[at] = 1;
        if (decoy_target_mask[at]) --budget;
        if (budget > 0) {
            for (NodeIdx next : adj[at]) {
                if (visited[next]) continue;
                budget = count_paths(next, budget);
                if (budget == 0) break;
            }
        }
        visited[at] = 0;
        return budget;
    }

    double proxy() const {
        const std::size_t n = s->nodes.size();
        const double kUnreachable = 1e7;
        for (NodeIdx i = 0; i < n; ++i) {
            if (s->nodes[i].is_decoy) continue;
            double c = base_cost[i];
            for (NodeIdx j : adj[i])
                if (s->nodes[j].is_decoy) c += engage_prob[j] * base_cost[j];
            cost[i] = c;
        }
        double sum = 0.0;
        std::size_t entries = 0;
        for (NodeIdx e = 0; e < n; ++e) {
            if (!entry_mask[e]) continue;
            ++entries;
            // nodes are few, so a linear-scan Dijkstra beats a heap here
            std::fill(dist.begin(), dist.end(), kUnreachable);
            std::fill(visited.begin(), visited.end(), 0);
            dist[e] = cost[e];
            while (true) {
                double best = kUnreachable;
                std::size_t u = n;
                for (std::size_t i = 0; i < n; ++i)
                    if (!visited[i] && dist[i] < best) {
                        best = dist[i];
                        u = i;
                    }
                if (u == n) break;
                visited[u] = 1;
                for (NodeIdx v : adj[u]) {
                    if (s->nodes[v].is_decoy) continue;
                    double ndist = best + cost[v];
                    if (ndist < dist[v]) dist[v] = ndist;
                }
            }
            std::fill(visited.begin(), visited.end(), 0);
            double t_sfc2 = kUnreachable;
            reach_scratch.clear();
            for (NodeIdx v = 0; v < n; ++v) {
                if (s->nodes[v].is_decoy || dist[v] >= kUnreachable) continue;
                reach_scratch.push_back(cost[v]);
                if (critical_mask[v]) t_sfc2 = std::min(t_sfc2, dist[v]);
            }
            double t_sfc1 = kUnreachable;
            if (reach_scratch.size() >= sfc1_need) {
                std::sort(reach_scratch.begin(), reach_scratch.end());
                t_sfc1 = 0.0;
                for (std::size_t i = 0; i < sfc1_need; ++i) t_sfc1 += reach_scratch[i];
            }
            sum += std::min({t_sfc1, t_sfc2, kUnreachable});
        }
        return entries ? sum / static_cast<double>(entries) : kUnreachable;
    }

    Topology decode(const Bits& b) const {
        std::vector<Edge> edges = fixed;
        for (std::size_t i = 0; i < cands.size(); ++i)
            if (b[i]) edges.push_back(cands[i]);
        Topology t;
        t.node_count = static_cast<NodeIdx>(s->nodes.size());
        t.vlan_reachability = s->topology.vlan_reachability;
        t.edges = std::move(edges);
        t.normalize();
        return t;
    }

    RawFitness raw(const Bits& b) {
        std::string key(b.begin(), b.end());
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        assemble(b);
        RawFitness f;
        std::uint64_t budget = ga->fitness_path_cap;
        for (NodeIdx e = 0; e < s->nodes.size() && budget > 0; ++e)
            if (entry_mask[e]) budget = count_paths(e, budget);
        f.n_dt = static_cast<double>(ga->fitness_path_cap - budget);
        f.mttsf = proxy();
        std::uint64_t flips = 0;
        for (std::size_t i = 0; i < b.size(); ++i)
            if (b[i] != current_bits[i]) ++flips;
        f.cost = static_cast<double>(cands.size() - flips);
        memo.emplace(std::move(key), f);
        return f;
    }
};

double scalarize(const RawFitness& f, const RawFitness& maxima, const GaParams& ga) {
    auto norm = [](double x, double m) { return m > 0.0 ? x / m : 0.0; };
    return ga.w_n * norm(f.n_dt, maxima.n_dt) + ga.w_m * norm(f.mttsf, maxima.mttsf) +
           ga.w_c * norm(f.cost, maxima.cost);
}

RawFitness population_maxima(const std::vector<RawFitness>& raws) {
    RawFitness m;
    for (const auto& f : raws) {
        m.n_dt = std::max(m.n_dt, f.n_dt);
        m.mttsf = std::max(m.mttsf, f.mttsf);
        m.cost = std::max(m.cost, f.cost);
    }
    return m;
}

} // namespace

ShuffleResult gant_shuffle(const Scenario& s, const Topology& current, const GaParams& ga,
                           Rng& rng) {
    if (ga.population < 1 || ga.generations < 1)
        throw std::invalid_argument("gant_shuffle: population and generations must be >= 1");
    GaContext ctx;
    ctx.s = &s;
    ctx.cands = candidate_edges(s);
    ctx.ga = &ga;
    {
        std::set<Edge> cand_set(ctx.cands.begin(), ctx.cands.end());
        for (const Edge& e : current.edges)
            if (!cand_set.count(e)) ctx.fixed.push_back(e);
        ctx.current_bits.assign(ctx.cands.size(), 0);
        for (std::size_t i = 0; i < ctx.cands.size(); ++i)
            ctx.current_bits[i] = current.has_edge(ctx.cands[i].first, ctx.cands[i].second);
    }
    ctx.compile();
    const std::size_t len = ctx.cands.size();
    const int n = ga.population;

    std::vector<Bits> pop(n, Bits(len, 0));
    for (auto& b : pop)
        for (std::size_t i = 0; i < len; ++i) b[i] = rng.bernoulli(0.5);

    GaDiagnostics diag;
    std::vector<RawFitness> raws(n);
    std::vector<double> fit(n);
    int best_idx = 0;
    int stall = 0;

    auto evaluate = [&](std::vector<Bits>& population) {
        for (int i = 0; i < n; ++i) raws[i] = ctx.raw(population[i]);
        RawFitness maxima = population_maxima(raws);
        for (int i = 0; i < n; ++i) fit[i] = scalarize(raws[i], maxima, ga);
        best_idx = 0;
        for (int i = 1; i < n; ++i)
            if (fit[i] > fit[best_idx]) best_idx = i;
    };

    int generations_run = 0;
    for (int g = 0; g < ga.generations; ++g) {
        evaluate(pop);
        ++generations_run;
        double mean = 0;
        for (double f : fit) mean += f;
        mean /= n;
        diag.best_fitness_per_generation.push_back(fit[best_idx]);
        diag.mean_fitness_per_generation.push_back(mean);

        // fitness is renormalized every generation, so improvement is judged
        // within one frame: the carried elite sits at slot 0 from the second
        // generation on, and a stall means nobody beat it
        bool improved = g == 0 || (best_idx != 0 && fit[best_idx] > fit[0] + 1e-9);
        if (improved) {
            stall = 0;
        } else if (ga.stall_generations > 0 && ++stall >= ga.stall_generations) {
            break;
        }
        if (g == ga.generations - 1) break;

        auto tournament = [&]() -> const Bits& {
            std::size_t a = rng.uniform_int(n), b = rng.uniform_int(n);
            return fit[a] >= fit[b] ? pop[a] : pop[b];
        };
        std::vector<Bits> next;
        next.reserve(n);
        next.push_back(pop[best_idx]); // elitism of 1
        while (static_cast<int>(next.size()) < n) {
            Bits child = tournament();
            if (len >= 2 && rng.bernoulli(ga.crossover_rate)) {
                const Bits& other = tournament();
                std::size_t cut = 1 + rng.uniform_int(len - 1);
                for (std::size_t i = cut; i < len; ++i) child[i] = other[i];
            }
            for (std::size_t i = 0; i < len; ++i)
                if (rng.bernoulli(ga.mutation_rate)) child[i] = !child[i];
            next.push_back(std::move(child));
        }
        pop = std::move(next);
    }

    // final pass so the returned individual has maximal fitness in the final
    // population; optionally re-normalize against the final population only
    evaluate(pop);
    if (!ga.normalize_per_generation) {
        RawFitness maxima = population_maxima(raws);
        for (int i = 0; i < n; ++i) fit[i] = scalarize(raws[i], maxima, ga);
        best_idx = 0;
        for (int i = 1; i < n; ++i)
            if (fit[i] > fit[best_idx]) best_idx = i;
    }

    if (!ga.trace_path.empty()) {
        std::ofstream tr(ga.trace_path, std::ios::app);
        for (std::size_t g = 0; g < diag.best_fitness_per_generation.size(); ++g)
            tr << g << ' ' << diag.best_fitness_per_generation[g] << ' '
               << diag.mean_fitness_per_generation[g] << '\n';
    }

    ShuffleResult res;
    res.topology = ctx.decode(pop[best_idx]);
    res.edges_changed = candidate_diff(s, current, res.topology);
    res.stats = std::move(diag);
    return res;
}

ShuffleResult apply_shuffle(const Scenario& s, const Topology& current, const HowStrategy& how,
                            Rng& rng) {
    switch (how.kind) {
    case HowStrategy::Kind::rnt:
        return rnt_shuffle(s, current, how.p_r, rng);
    case HowStrategy::Kind::dpnt:
        return dpnt_shuffle(s, current, how.zeta, rng);
    case HowStrategy::Kind::gant:
        return gant_shuffle(s, current, how.ga, rng);
    case HowStrategy::Kind::none:
        break;
    }
    ShuffleResult res;
    res.topology = current;
    res.edges_changed = 0;
    return res;
}

double mttsf_proxy(const Scenario& s, const Topology& t) {
    const std::size_t n = s.nodes.size();
    std::vector<std::vector<NodeIdx>> adj(n);
    for (const auto& [a, b] : t.edges) adj[a].push_back(b);

    double p_d_em = s.params.p_d_em, p_d_os = s.params.p_d_os;
    // node cost: expected compromise time plus expected delay wasted on the
    // node's adjacent decoys
    std::vector<double> cost(n, 0.0);
    std::size_t real_total = 0;
    for (NodeIdx i = 0; i < n; ++i) {
        if (s.nodes[i].is_decoy) continue;
        ++real_total;
        double c = expected_node_compromise_time(s.nodes[i]);
        for (NodeIdx j : adj[i]) {
            const Node& d = s.nodes[j];
            if (!d.is_decoy) continue;
            double p = d.fidelity == DecoyFidelity::full_os ? p_d_os : p_d_em;
            c += p * expected_node_compromise_time(d);
        }
        cost[i] = c;
    }

    const double kUnreachable = 1e7;
    std::size_t sfc1_need = real_total / 3 + 1; // strictly more than a third

    std::vector<char> is_critical(n, 0);
    for (NodeIdx i = 0; i < n; ++i) is_critical[i] = s.nodes[i].is_critical && !s.nodes[i].is_decoy;

    double sum = 0.0;
    std::size_t entries = 0;
    for (NodeIdx e : s.entry_points) {
        ++entries;
        // node-weighted Dijkstra over the real subgraph from e
        std::vector<double> dist(n, kUnreachable);
        using Item = std::pair<double, NodeIdx>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> q;
        dist[e] = cost[e];
        q.push({dist[e], e});
        while (!q.empty()) {
            auto [d, u] = q.top();
            q.pop();
            if (d > dist[u]) continue;
            for (NodeIdx v : adj[u]) {
                if (s.nodes[v].is_decoy) continue;
                double nd = d + cost[v];
                if (nd < dist[v]) {
                    dist[v] = nd;
                    q.push({nd, v});
                }
            }
        }
        double t_sfc2 = kUnreachable;
        std::vector<double> reachable_costs;
        for (NodeIdx v = 0; v < n; ++v) {
            if (s.nodes[v].is_decoy || dist[v] >= kUnreachable) continue;
            reachable_costs.push_back(cost[v]);
            if (is_critical[v]) t_sfc2 = std::min(t_sfc2, dist[v]);
        }
        double t_sfc1 = kUnreachable;
        if (reachable_costs.size() >= sfc1_need) {
            std::sort(reachable_costs.begin(), reachable_costs.end());
            t_sfc1 = 0.0;
            for (std::size_t i = 0; i < sfc1_need; ++i) t_sfc1 += reachable_costs[i];
        }
        sum += std::min({t_sfc1, t_sfc2, kUnreachable});
    }
    return entries ? sum / static_cast<double>(entries) : kUnreachable;
}

} // namespace ntsmtd
