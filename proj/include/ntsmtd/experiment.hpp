// experiment.hpp - experiment harness: scheme grids, sweeps, report files.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ntsmtd/metrics.hpp"

namespace ntsmtd {

// One of the 12 when x how labels, or "no-defense", with optional per-scheme
// strategy parameter overrides (used by the optimal-setting comparison).
struct SchemeSetting {
    std::string label;
    std::optional<double> gamma1;
    std::optional<double> lambda_rs;
    std::optional<double> rho;
    std::optional<double> gamma2;
};

const std::vector<std::string>& all_scheme_labels(); // the 12 combinations
bool is_scheme_label(const std::string& label);      // incl. "no-defense"

WhenStrategy when_from_label(const std::string& label, const Params& p);
HowStrategy how_from_label(const std::string& label, const Params& p);

struct SweepPoint {
    std::string label = "-";
    std::optional<std::pair<double, double>> p_d; // (P_d^em, P_d^os)
    std::optional<std::pair<double, double>> p_a; // (P_a^d, P_a^m)
    std::optional<int> decoys_per_vlan;           // builtin scenario only
    std::optional<bool> extended_real;            // builtin scenario only
    std::optional<double> gamma2;
    std::optional<double> rho;
};

struct ExperimentSpec {
    std::string scenario_source = "builtin"; // "builtin" or a scenario file path
    std::vector<SchemeSetting> schemes;
    int runs = 100;
    std::uint64_t master_seed = 1;
    std::vector<SweepPoint> sweep; // empty: single default point
    std::string out_dir;
    enum class Format { table, records } format = Format::table;
    // name -> value patches applied to Params after loading (CLI flags)
    std::vector<std::pair<std::string, double>> param_patch;
    bool keep_event_logs = false; // write per-run event logs under out_dir/events
    std::string ga_trace_path;    // stream GA diagnostics here (single worker only)
};

struct ExperimentResult {
    std::vector<ExperimentSummary> summaries; // one per scheme x sweep point
    std::vector<std::string> written_files;
};

// Applies a named parameter patch ("rho", "gamma1", "p_d_em", ...). Throws on
// unknown names.
void patch_param(Params& p, const std::string& name, double value);

Scenario resolve_scenario(const ExperimentSpec& spec, const SweepPoint& point,
                          const SchemeSetting& scheme);

// Runs the full grid with seeds derived from the master seed, writes
// summary.csv (and runs.csv under records format) into out_dir, and returns
// the summaries. Deterministic: equal spec => byte-identical files.
ExperimentResult run_experiment(const ExperimentSpec& spec);

// The paper's ready-made studies, keyed by preset name: intelligence,
// severity, decoys, real-nodes, gamma2, rho.
std::map<std::string, ExperimentSpec> sweep_presets();

ExperimentSpec compare12_spec();
// No-defense baseline vs the DPNT schemes at their optimal settings.
ExperimentSpec baseline_comparison_spec();

// Serializes summaries (and per-run records when given) into out_dir.
// Returns the written file paths; throws on empty summaries.
std::vector<std::string> emit_report(const std::vector<ExperimentSummary>& summaries,
                                     const std::vector<std::vector<RunResult>>* per_cell_runs,
                                     const std::string& out_dir, ExperimentSpec::Format format);

// Rebuilds summaries from a runs.csv records file.
std::vector<ExperimentSummary> summaries_from_records(const std::string& runs_csv_path);

int worker_count(); // NTSMTD_WORKERS env var, else hardware concurrency

} // namespace ntsmtd
