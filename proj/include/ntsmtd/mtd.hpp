// mtd.hpp - when-to-shuffle triggers and how-to-shuffle topology generators.
#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ntsmtd/rng.hpp"
#include "ntsmtd/scenario.hpp"

namespace ntsmtd {

// Time-stamped SSV samples, non-decreasing in time.
struct SsvTrace {
    std::vector<std::pair<double, double>> samples; // (t, ssv)

    void record(double t, double ssv) { samples.emplace_back(t, ssv); }
    // SSV as seen at time t (step function; 0 before the first sample)
    double value_at(double t) const {
        double v = 0.0;
        for (const auto& [st, sv] : samples) {
            if (st > t) break;
            v = sv;
        }
        return v;
    }
    double latest() const { return samples.empty() ? 0.0 : samples.back().second; }
};

struct WhenStrategy {
    enum class Kind { fixed, random, adaptive, hybrid, none };
    Kind kind = Kind::fixed;
    double gamma1 = 24.0;   // FS interval
    double lambda_rs = 24.0; // RS mean interval
    double beta = 0.01;     // AS/HS SSV increase threshold
    double rho = 0.1;       // AS/HS SSV level threshold
    double delta = 24.0;    // AS/HS check interval
    double gamma2 = 120.0;  // HS maximum delay

    static WhenStrategy fixed(double g1);
    static WhenStrategy random_interval(double mean);
    static WhenStrategy adaptive(double beta, double rho, double delta);
    static WhenStrategy hybrid(double beta, double rho, double delta, double g2);
    static WhenStrategy none();
    bool adaptive_kind() const { return kind == Kind::adaptive || kind == Kind::hybrid; }
};

constexpr double kNever = std::numeric_limits<double>::infinity();

struct TriggerDecision {
    bool shuffle_now = false;
    double next_check_at = kNever; // scheduled shuffle time; kNever if event-driven only
};

// FS: shuffle at last_shuffle + gamma1. RS: at last_shuffle + Exp(lambda_rs)
// drawn from rng (call once per epoch and cache). AS: shuffle-now when
// (SSV(now) - SSV(now - delta) > beta) and SSV(now) > rho, evaluated at
// compromise-detection events. HS: AS condition, capped at last_shuffle+gamma2.
TriggerDecision next_trigger(const WhenStrategy& w, double now, double last_shuffle,
                             const SsvTrace& trace, Rng& rng);

struct GaDiagnostics {
    std::vector<double> best_fitness_per_generation;
    std::vector<double> mean_fitness_per_generation;
};

struct HowStrategy {
    enum class Kind { rnt, gant, dpnt, none };
    Kind kind = Kind::rnt;
    double p_r = 0.5;  // RNT
    double zeta = 0.5; // DPNT
    GaParams ga;       // GANT

    static HowStrategy rnt(double p_r);
    static HowStrategy gant(const GaParams& ga);
    static HowStrategy dpnt(double zeta);
    static HowStrategy none();
};

struct ShuffleResult {
    Topology topology;
    std::uint64_t edges_changed = 0; // symmetric difference on candidate edges
    std::optional<GaDiagnostics> stats;
};

ShuffleResult rnt_shuffle(const Scenario& s, const Topology& current, double p_r, Rng& rng);
ShuffleResult dpnt_shuffle(const Scenario& s, const Topology& current, double zeta, Rng& rng);
ShuffleResult gant_shuffle(const Scenario& s, const Topology& current, const GaParams& ga,
                           Rng& rng);
ShuffleResult apply_shuffle(const Scenario& s, const Topology& current, const HowStrategy& how,
                            Rng& rng);

// Deterministic analytic MTTSF estimate used as the GA fitness term: expected
// time for a uniform-random-entry attacker taking shortest-expected-time
// lateral moves to trigger SFC1 or SFC2, with per-node decoy diversion delays.
double mttsf_proxy(const Scenario& s, const Topology& t);

} // namespace ntsmtd
