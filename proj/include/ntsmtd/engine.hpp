// engine.hpp - discrete-event Monte-Carlo simulation of one attacker against
// the shuffling defense; one run per seed.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ntsmtd/harm.hpp"
#include "ntsmtd/mtd.hpp"
#include "ntsmtd/rng.hpp"
#include "ntsmtd/scenario.hpp"

namespace ntsmtd {

enum class EventKind {
    run_start,
    entry,
    detect_decoy,
    compromise_real,
    compromise_decoy,
    decoy_reset, // decoy-target interaction detected; decoy system cleared
    shuffle,
    sfc,
    ssv_threshold,
    run_end,
};

const char* event_kind_name(EventKind k);

struct Event {
    double t = 0.0;
    EventKind kind = EventKind::run_start;
    std::string subject; // node id or strategy label
    std::string payload; // free-form, stable formatting
};

// One line per event: "<t> <kind> <subject> <payload>" with fixed 6-decimal
// timestamps; suitable for golden-file comparison.
std::string serialize_event_log(const std::vector<Event>& events);

enum class Sfc { none, sfc1, sfc2 };

struct SimState {
    double clock = 0.0;
    Topology topology;
    std::vector<char> compromised;        // by node index (real and decoy)
    std::vector<double> compromise_time;  // infinity when not compromised
    std::optional<NodeIdx> attacker_position; // nullopt = outside the network
    std::vector<double> accumulated_work; // hours of attack effort per node
    std::uint32_t shuffle_count = 0;
    std::uint64_t total_edges_changed = 0;
    SsvTrace ssv_trace;
};

enum class FailureKind { sfc1, sfc2, ssv_threshold, capped };

const char* failure_kind_name(FailureKind k);

struct RunResult {
    double mttsf = 0.0;
    FailureKind failure_kind = FailureKind::sfc1;
    bool capped = false;
    std::vector<double> n_dt_ap_samples; // |AP_d| at run start and after each shuffle
    bool n_dt_overflow = false;
    std::uint64_t defense_cost_total = 0; // sum of edges_changed over shuffles
    std::uint32_t shuffle_count = 0;
    std::vector<double> pdr_samples; // one per positive-length shuffle epoch
    double pdr_mean = 1.0;
    std::vector<Event> events;
    std::uint64_t seed = 0;
};

// SFC1: more than a third of real nodes compromised; SFC2: any critical node
// compromised. SFC2 is checked first at an equal instant.
Sfc check_sfc(const std::vector<char>& compromised, const Scenario& s);

// System security vulnerability level in [0,1]; 1 when an SFC holds. Hop
// distance is measured over the undirected closure of the topology restricted
// to real nodes.
double compute_ssv(const std::vector<char>& compromised, const Scenario& s, const Topology& t,
                   int k);

// Fraction of AP_r paths that deliver a packet given per-node drop/manipulate
// draws on compromised nodes; 1.0 when AP_r is empty or nothing is compromised.
double sample_pdr_interval(const HarmModel& h, const std::vector<char>& compromised, Rng& rng);

RunResult simulate_run(const Scenario& s, const WhenStrategy& when, const HowStrategy& how,
                       std::uint64_t seed);

} // namespace ntsmtd
