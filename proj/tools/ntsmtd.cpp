// ntsmtd.cpp - experiment harness CLI for the topology-shuffling defense
// simulator.
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ntsmtd/experiment.hpp"

using namespace ntsmtd;

namespace {

struct ParamFlags {
    std::vector<std::pair<std::string, double>> patch;

    void add(CLI::App* app) {
        // mirrors the design-parameter table; every flag simply patches Params
        static const std::vector<std::pair<std::string, std::string>> names = {
            {"w1", "SSV weight for the integrity term"},
            {"w2", "SSV weight for the critical-neighborhood term"},
            {"p_d_em", "attacker interaction probability, emulated decoy"},
            {"p_d_os", "attacker interaction probability, full-OS decoy"},
            {"p_a_d", "packet drop probability on compromised nodes"},
            {"p_a_m", "packet manipulation probability on compromised nodes"},
            {"k", "hop radius for the critical neighborhood"},
            {"beta", "SSV increase threshold (AS/HS)"},
            {"rho", "SSV level threshold (AS/HS)"},
            {"delta", "SSV check interval in hours (AS/HS)"},
            {"gamma1", "fixed shuffle interval in hours (FS)"},
            {"gamma2", "maximum delay in hours (HS)"},
            {"lambda_rs", "mean random interval in hours (RS)"},
            {"p_r", "rewiring probability (RNT)"},
            {"zeta", "decoy selection probability (DPNT)"},
            {"ga_population", "GA population size"},
            {"ga_generations", "GA maximum generations"},
            {"ga_crossover_rate", "GA crossover rate"},
            {"ga_mutation_rate", "GA per-bit mutation rate"},
            {"ga_w_n", "GA weight on the decoy-path term"},
            {"ga_w_m", "GA weight on the lifetime term"},
            {"ga_w_c", "GA weight on the cost term"},
            {"sim_hour_cap", "hard cap on simulated hours"},
            {"path_cap", "simple-path enumeration cap"},
        };
        for (const auto& [name, help] : names) {
            app->add_option_function<double>(
                   "--" + name, [this, name = name](double v) { patch.emplace_back(name, v); },
                   help)
                ->expected(1);
        }
    }
};

void add_common(CLI::App* cmd, ExperimentSpec& spec, std::string& format) {
    cmd->add_option("--scenario", spec.scenario_source,
                    "scenario file path, or 'builtin' for the smart-hospital baseline")
        ->capture_default_str();
    cmd->add_option("--runs", spec.runs, "simulation runs per scheme and sweep point")
        ->capture_default_str();
    cmd->add_option("--seed", spec.master_seed, "master seed")->capture_default_str();
    cmd->add_option("--out", spec.out_dir, "output directory")->required();
    cmd->add_option("--format", format, "output format: table or records")
        ->check(CLI::IsMember({"table", "records"}))
        ->capture_default_str();
}

int finish(const ExperimentSpec& spec) {
    ExperimentResult res = run_experiment(spec);
    for (const auto& s : res.summaries)
        std::printf("%-12s %-22s runs=%zu mttsf=%.1f sd=%.1f n_dt_ap=%.1f c_d=%.3f pdr=%.3f\n",
                    s.scheme.c_str(), s.sweep_point.c_str(), s.runs, s.mttsf_mean, s.mttsf_std,
                    s.n_dt_ap_mean, s.c_d_mean, s.pdr_mean);
    for (const auto& f : res.written_files) std::printf("wrote %s\n", f.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ntsmtd - Monte-Carlo evaluation of topology-shuffling MTD with decoys.\n"
                 "Worker threads: set NTSMTD_WORKERS (default: hardware concurrency)."};
    app.require_subcommand(1);

    ExperimentSpec spec;
    std::string format = "table";
    ParamFlags params;

    auto* run = app.add_subcommand("run", "run selected schemes on one scenario");
    std::vector<std::string> scheme_labels;
    run->add_option("--scheme", scheme_labels,
                    "scheme label (repeatable): FS|RS|AS|HS - RNT|GANT|DPNT, or no-defense")
        ->required();
    add_common(run, spec, format);
    params.add(run);
    run->add_flag("--event-logs", spec.keep_event_logs,
                  "write per-run event logs under <out>/events");
    std::string ga_trace;
    run->add_option("--ga-trace", ga_trace,
                    "append GA per-generation diagnostics to this file (forces 1 worker)");

    auto* cmp = app.add_subcommand("compare12", "run all 12 when x how schemes at defaults");
    add_common(cmp, spec, format);
    params.add(cmp);

    auto* sweep = app.add_subcommand("sweep", "run a named parameter study");
    std::string preset;
    {
        std::string names;
        for (const auto& [k, v] : sweep_presets()) names += (names.empty() ? "" : ", ") + k;
        sweep->add_option("preset", preset, "one of: " + names)->required();
    }
    add_common(sweep, spec, format);
    params.add(sweep);

    auto* basevs = app.add_subcommand(
        "baseline-vs", "no-defense baseline vs DPNT schemes at optimal settings");
    add_common(basevs, spec, format);
    params.add(basevs);

    auto* report = app.add_subcommand("report", "rebuild a summary table from a runs.csv file");
    std::string records_path, report_out;
    report->add_option("--records", records_path, "runs.csv written by a records-format run")
        ->required();
    report->add_option("--out", report_out, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        spec.format = format == "records" ? ExperimentSpec::Format::records
                                          : ExperimentSpec::Format::table;
        spec.param_patch = params.patch;

        if (run->parsed()) {
            for (const auto& label : scheme_labels) {
                if (!is_scheme_label(label))
                    throw std::invalid_argument("invalid scheme label: " + label);
                spec.schemes.push_back({label, {}, {}, {}, {}});
            }
            if (!ga_trace.empty()) {
                spec.ga_trace_path = ga_trace;
                setenv("NTSMTD_WORKERS", "1", 1); // appending from one writer only
            }
            return finish(spec);
        }
        if (cmp->parsed()) {
            ExperimentSpec c = compare12_spec();
            c.scenario_source = spec.scenario_source;
            c.runs = spec.runs;
            c.master_seed = spec.master_seed;
            c.out_dir = spec.out_dir;
            c.format = spec.format;
            c.param_patch = spec.param_patch;
            return finish(c);
        }
        if (sweep->parsed()) {
            auto presets = sweep_presets();
            auto it = presets.find(preset);
            if (it == presets.end()) throw std::invalid_argument("unknown sweep preset: " + preset);
            ExperimentSpec c = it->second;
            c.scenario_source = spec.scenario_source;
            c.runs = spec.runs;
            c.master_seed = spec.master_seed;
            c.out_dir = spec.out_dir;
            c.format = spec.format;
            c.param_patch = spec.param_patch;
            return finish(c);
        }
        if (basevs->parsed()) {
            ExperimentSpec c = baseline_comparison_spec();
            c.scenario_source = spec.scenario_source;
            c.runs = spec.runs;
            c.master_seed = spec.master_seed;
            c.out_dir = spec.out_dir;
            c.format = spec.format;
            c.param_patch = spec.param_patch;
            return finish(c);
        }
        if (report->parsed()) {
            auto summaries = summaries_from_records(records_path);
            auto files = emit_report(summaries, nullptr, report_out,
                                     ExperimentSpec::Format::table);
            for (const auto& f : files) std::printf("wrote %s\n", f.c_str());
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
