// engine.cpp - attacker-vs-defense event loop.
#include "ntsmtd/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <set>
#include <sstream>

namespace ntsmtd {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTickEps = 1e-9; // keeps event timestamps strictly increasing
} // namespace

const char* event_kind_name(EventKind k) {
    switch (k) {
    case EventKind::run_start: return "run_start";
    case EventKind::entry: return "entry";
    case EventKind::detect_decoy: return "detect_decoy";
    case EventKind::compromise_real: return "compromise_real";
    case EventKind::compromise_decoy: return "compromise_decoy";
    case EventKind::decoy_reset: return "decoy_reset";
    case EventKind::shuffle: return "shuffle";
    case EventKind::sfc: return "sfc";
    case EventKind::ssv_threshold: return "ssv_threshold";
    case EventKind::run_end: return "run_end";
    }
    return "?";
}

const char* failure_kind_name(FailureKind k) {
    switch (k) {
    case FailureKind::sfc1: return "SFC1";
    case FailureKind::sfc2: return "SFC2";
    case FailureKind::ssv_threshold: return "SSV-threshold";
    case FailureKind::capped: return "capped";
    }
    return "?";
}

std::string serialize_event_log(const std::vector<Event>& events) {
    std::string out;
    char buf[64];
    for (const Event& e : events) {
        std::snprintf(buf, sizeof buf, "%.6f", e.t);
        out += buf;
        out += ' ';
        out += event_kind_name(e.kind);
        out += ' ';
        out += e.subject.empty() ? "-" : e.subject;
        out += ' ';
        out += e.payload.empty() ? "-" : e.payload;
        out += '\n';
    }
    return out;
}

Sfc check_sfc(const std::vector<char>& compromised, const Scenario& s) {
    std::size_t real_total = 0, real_compromised = 0;
    for (NodeIdx i = 0; i < s.nodes.size(); ++i) {
        if (s.nodes[i].is_decoy) continue;
        ++real_total;
        if (compromised[i]) {
            ++real_compromised;
            if (s.nodes[i].is_critical) return Sfc::sfc2;
        }
    }
    if (3 * real_compromised > real_total) return Sfc::sfc1;
    return Sfc::none;
}

double compute_ssv(const std::vector<char>& compromised, const Scenario& s, const Topology& t,
                   int k) {
    if (check_sfc(compromised, s) != Sfc::none) return 1.0;
    const std::size_t n = s.nodes.size();
    std::size_t real_total = 0, real_compromised = 0;
    for (NodeIdx i = 0; i < n; ++i) {
        if (s.nodes[i].is_decoy) continue;
        ++real_total;
        if (compromised[i]) ++real_compromised;
    }
    // L_k: real nodes within k undirected hops of any critical node
    std::vector<std::vector<NodeIdx>> undirected(n);
    for (const auto& [a, b] : t.edges) {
        if (s.nodes[a].is_decoy || s.nodes[b].is_decoy) continue;
        undirected[a].push_back(b);
        undirected[b].push_back(a);
    }
    std::vector<int> depth(n, -1);
    std::deque<NodeIdx> queue;
    for (NodeIdx i = 0; i < n; ++i)
        if (s.nodes[i].is_critical && !s.nodes[i].is_decoy) {
            depth[i] = 0;
            queue.push_back(i);
        }
    while (!queue.empty()) {
        NodeIdx u = queue.front();
        queue.pop_front();
        if (depth[u] >= k) continue;
        for (NodeIdx v : undirected[u])
            if (depth[v] < 0) {
                depth[v] = depth[u] + 1;
                queue.push_back(v);
            }
    }
    std::size_t n_ck = 0, cn_ck = 0;
    for (NodeIdx i = 0; i < n; ++i) {
        if (s.nodes[i].is_decoy || s.nodes[i].is_critical) continue;
        if (depth[i] > 0) {
            ++n_ck;
            if (compromised[i]) ++cn_ck;
        }
    }
    double term1 = real_total ? static_cast<double>(real_compromised) / real_total : 0.0;
    double term2 = n_ck ? static_cast<double>(cn_ck) / n_ck : 0.0;
    return s.params.w1 * term1 + s.params.w2 * term2;
}

double sample_pdr_interval(const HarmModel& h, const std::vector<char>& compromised, Rng& rng) {
    const Scenario& s = *h.scenario;
    bool any = false;
    for (NodeIdx i = 0; i < s.nodes.size(); ++i)
        if (compromised[i] && !s.nodes[i].is_decoy) any = true;

    std::vector<char> reals(s.nodes.size(), 0), targets(s.nodes.size(), 0);
    for (NodeIdx i = 0; i < s.nodes.size(); ++i) reals[i] = !s.nodes[i].is_decoy;
    for (NodeIdx i : s.real_targets) targets[i] = 1;

    if (!any) {
        // nothing on any service path can interfere; avoid the walk entirely
        return 1.0;
    }
    std::uint64_t delivered = 0, total = 0;
    double p_drop = s.params.p_a_d, p_manip = s.params.p_a_m;
    bool overflow = false;
    detail::for_each_simple_path(
        h.adjacency, std::span<const NodeIdx>(s.entry_points), targets, reals, s.nodes.size(),
        s.params.path_cap, &overflow, [&](const std::vector<NodeIdx>& path) {
            ++total;
            for (NodeIdx v : path) {
                if (!compromised[v]) continue;
                if (rng.bernoulli(p_drop) || rng.bernoulli(p_manip)) return;
            }
            ++delivered;
        });
    if (total == 0) return 1.0; // no service path is exposed to attack
    return static_cast<double>(delivered) / static_cast<double>(total);
}

namespace {

struct Attacker {
    std::optional<NodeIdx> position;
    std::set<NodeIdx> detected; // decoys recognized this epoch
};

struct Engine {
    const Scenario& s;
    const WhenStrategy& when;
    const HowStrategy& how;
    Rng rng;

    Topology topology;
    HarmModel harm;
    std::vector<char> compromised;
    std::vector<double> compromise_time;
    std::vector<double> accumulated; // attack hours spent per node
    std::vector<double> required;    // drawn exponential requirement, NaN = undrawn
    Attacker attacker;
    SsvTrace trace;

    double clock = 0.0;
    double last_event_t = -1.0;
    double last_shuffle = 0.0;
    double epoch_start = 0.0;
    double scheduled_next = kNever;
    std::uint32_t shuffles = 0;
    std::uint64_t edges_changed_total = 0;

    RunResult out;

    Engine(const Scenario& sc, const WhenStrategy& w, const HowStrategy& hw, std::uint64_t seed)
        : s(sc), when(w), how(hw), rng(seed), topology(sc.topology),
          harm(build_harm(sc, sc.topology)) {
        const std::size_t n = s.nodes.size();
        compromised.assign(n, 0);
        compromise_time.assign(n, kInf);
        accumulated.assign(n, 0.0);
        required.assign(n, std::numeric_limits<double>::quiet_NaN());
        out.seed = seed;
    }

    void log(EventKind kind, const std::string& subject, const std::string& payload = {}) {
        clock = std::max(clock, last_event_t + kTickEps);
        last_event_t = clock;
        out.events.push_back({clock, kind, subject, payload});
    }

    double p_engage(const Node& d) const {
        return d.fidelity == DecoyFidelity::full_os ? s.params.p_d_os : s.params.p_d_em;
    }

    void sample_n_dt() {
        PathCount c =
            count_decoy_target_paths(harm, s.entry_points, s.decoy_targets, s.params.path_cap);
        out.n_dt_ap_samples.push_back(static_cast<double>(c.count));
        out.n_dt_overflow = out.n_dt_overflow || c.overflowed;
    }

    void close_epoch(double t_end) {
        // sub-microsecond epochs are artifacts of the tick bumps, not
        // sampling intervals
        if (!(t_end - epoch_start > 1e-6)) return;
        double mid = 0.5 * (epoch_start + t_end);
        std::vector<char> at_mid(s.nodes.size(), 0);
        for (NodeIdx i = 0; i < s.nodes.size(); ++i)
            at_mid[i] = !s.nodes[i].is_decoy && compromise_time[i] <= mid;
        out.pdr_samples.push_back(sample_pdr_interval(harm, at_mid, rng));
    }

    void clear_decoy_state() {
        for (NodeIdx i = 0; i < s.nodes.size(); ++i) {
            if (!s.nodes[i].is_decoy) continue;
            compromised[i] = 0;
            compromise_time[i] = kInf;
            accumulated[i] = 0.0;
            required[i] = std::numeric_limits<double>::quiet_NaN();
        }
        attacker.detected.clear();
    }

    void schedule_next() {
        scheduled_next = next_trigger(when, clock, last_shuffle, trace, rng).next_check_at;
    }

    void do_shuffle() {
        close_epoch(clock);
        ShuffleResult res = apply_shuffle(s, topology, how, rng);
        topology = res.topology;
        harm = build_harm(s, topology);
        edges_changed_total += res.edges_changed;
        ++shuffles;
        clear_decoy_state();
        last_shuffle = clock;
        epoch_start = clock;
        attacker.position.reset();
        log(EventKind::shuffle, scheme_subject(), std::to_string(res.edges_changed));
        trace.record(clock, compute_ssv(compromised, s, topology, s.params.k_hops));
        sample_n_dt();
        schedule_next();
    }

    std::string scheme_subject() const {
        switch (how.kind) {
        case HowStrategy::Kind::rnt: return "RNT";
        case HowStrategy::Kind::gant: return "GANT";
        case HowStrategy::Kind::dpnt: return "DPNT";
        case HowStrategy::Kind::none: return "none";
        }
        return "?";
    }

    // Picks the next attack target from the current position, drawing
    // engage/detect decisions for first-contact decoys. Returns the target or
    // nothing when the position is a dead end.
    std::optional<NodeIdx> pick_from_position(NodeIdx pos) {
        std::vector<NodeIdx> avail;
        for (NodeIdx j : harm.adjacency[pos])
            if (!compromised[j] && !attacker.detected.count(j)) avail.push_back(j);
        while (!avail.empty()) {
            std::size_t k = rng.uniform_int(avail.size());
            NodeIdx j = avail[k];
            const Node& nd = s.nodes[j];
            if (!nd.is_decoy) return j;
            if (rng.bernoulli(p_engage(nd))) return j;
            // attacker recognizes the decoy and drops the interaction
            attacker.detected.insert(j);
            log(EventKind::detect_decoy, nd.id);
            avail.erase(avail.begin() + static_cast<std::ptrdiff_t>(k));
        }
        return std::nullopt;
    }

    // Places the attacker (re-entering if outside) and returns the node it
    // attacks next; nothing if no progress is possible anywhere.
    std::optional<NodeIdx> choose_attack() {
        while (true) {
            if (!attacker.position) {
                std::vector<NodeIdx> entries = s.entry_points;
                std::vector<NodeIdx> dead_ended;
                while (!entries.empty()) {
                    std::size_t k = rng.uniform_int(entries.size());
                    NodeIdx e = entries[k];
                    entries.erase(entries.begin() + static_cast<std::ptrdiff_t>(k));
                    attacker.position = e;
                    log(EventKind::entry, s.nodes[e].id);
                    auto t = pick_from_position(e);
                    if (t) return t;
                    if (!compromised[e]) dead_ended.push_back(e);
                    attacker.position.reset();
                }
                // every entry is a dead end; as a last resort the attacker
                // works on an uncompromised foothold itself
                if (!dead_ended.empty()) {
                    NodeIdx e = dead_ended[rng.uniform_int(dead_ended.size())];
                    attacker.position = e;
                    return e;
                }
                return std::nullopt;
            }
            NodeIdx pos = *attacker.position;
            auto t = pick_from_position(pos);
            if (t) return t;
            if (!compromised[pos] && harm.adjacency[pos].empty()) return pos;
            attacker.position.reset(); // dead end; find another way in
        }
    }

    RunResult run() {
        log(EventKind::run_start, "-");
        trace.record(0.0, 0.0);
        sample_n_dt();
        schedule_next();

        while (true) {
            auto target_opt = choose_attack();
            if (!target_opt) {
                // nowhere to make progress; idle until the next shuffle
                if (scheduled_next < s.params.sim_hour_cap) {
                    clock = scheduled_next;
                    do_shuffle();
                    continue;
                }
                clock = s.params.sim_hour_cap;
                return finish(FailureKind::capped, true);
            }
            NodeIdx target = *target_opt;
            const Node& nd = s.nodes[target];
            if (std::isnan(required[target]))
                required[target] = rng.exponential_mean(1.0 / nd.total_rate());
            double remaining = std::max(required[target] - accumulated[target], kTickEps);
            double t_done = clock + remaining;

            if (scheduled_next < t_done) {
                // shuffle interrupts the attack in progress; effort on real
                // nodes is banked, effort on decoys dies with the clearing
                if (!nd.is_decoy) accumulated[target] += scheduled_next - clock;
                clock = scheduled_next;
                do_shuffle();
                continue;
            }
            if (t_done > s.params.sim_hour_cap) {
                if (!nd.is_decoy) accumulated[target] += s.params.sim_hour_cap - clock;
                clock = s.params.sim_hour_cap;
                return finish(FailureKind::capped, true);
            }

            clock = t_done;
            accumulated[target] = required[target];
            compromised[target] = 1;
            compromise_time[target] = clock;
            log(nd.is_decoy ? EventKind::compromise_decoy : EventKind::compromise_real, nd.id);

            if (nd.is_decoy) {
                bool is_decoy_target = std::binary_search(s.decoy_targets.begin(),
                                                          s.decoy_targets.end(), target);
                if (is_decoy_target) {
                    // intelligence center spots the interaction and re-images
                    // the decoy system; the attacker loses its foothold
                    log(EventKind::decoy_reset, nd.id);
                    clear_decoy_state();
                    attacker.position.reset();
                } else {
                    attacker.position = target;
                }
                continue;
            }

            // real compromise: update SSV, check failure conditions
            double ssv = compute_ssv(compromised, s, topology, s.params.k_hops);
            trace.record(clock, ssv);
            Sfc sfc = check_sfc(compromised, s);
            if (sfc != Sfc::none) {
                log(EventKind::sfc, nd.id, sfc == Sfc::sfc1 ? "SFC1" : "SFC2");
                return finish(sfc == Sfc::sfc1 ? FailureKind::sfc1 : FailureKind::sfc2, false);
            }
            if (when.adaptive_kind()) {
                TriggerDecision dec = next_trigger(when, clock, last_shuffle, trace, rng);
                if (dec.shuffle_now) {
                    do_shuffle();
                    double after = trace.latest();
                    if (after > when.rho) {
                        log(EventKind::ssv_threshold, "-", format_double(after));
                        return finish(FailureKind::ssv_threshold, false);
                    }
                    continue;
                }
            }
            attacker.position = target;
        }
    }

    static std::string format_double(double v) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "%.6f", v);
        return buf;
    }

    RunResult finish(FailureKind kind, bool capped) {
        close_epoch(clock);
        log(EventKind::run_end, "-", failure_kind_name(kind));
        out.mttsf = clock;
        out.failure_kind = kind;
        out.capped = capped;
        out.defense_cost_total = edges_changed_total;
        out.shuffle_count = shuffles;
        double sum = 0.0;
        for (double v : out.pdr_samples) sum += v;
        out.pdr_mean = out.pdr_samples.empty() ? 1.0 : sum / out.pdr_samples.size();
        return std::move(out);
    }
};

} // namespace

RunResult simulate_run(const Scenario& s, const WhenStrategy& when, const HowStrategy& how,
                       std::uint64_t seed) {
    Engine e(s, when, how, seed);
    return e.run();
}

} // namespace ntsmtd
