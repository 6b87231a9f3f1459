// experiment.cpp - scheme grid execution, sweeps, and report serialization.
#include "ntsmtd/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ntsmtd {

namespace fs = std::filesystem;

const std::vector<std::string>& all_scheme_labels() {
    static const std::vector<std::string> labels = {
        "FS-RNT", "RS-RNT", "AS-RNT", "HS-RNT", "FS-GANT", "RS-GANT",
        "AS-GANT", "HS-GANT", "FS-DPNT", "RS-DPNT", "AS-DPNT", "HS-DPNT"};
    return labels;
}

bool is_scheme_label(const std::string& label) {
    if (label == "no-defense") return true;
    const auto& all = all_scheme_labels();
    return std::find(all.begin(), all.end(), label) != all.end();
}

WhenStrategy when_from_label(const std::string& label, const Params& p) {
    if (label == "no-defense") return WhenStrategy::none();
    auto dash = label.find('-');
    std::string when = label.substr(0, dash);
    if (when == "FS") return WhenStrategy::fixed(p.gamma1);
    if (when == "RS") return WhenStrategy::random_interval(p.lambda_rs);
    if (when == "AS") return WhenStrategy::adaptive(p.beta, p.rho, p.delta);
    if (when == "HS") return WhenStrategy::hybrid(p.beta, p.rho, p.delta, p.gamma2);
    throw std::invalid_argument("unknown scheme label: " + label);
}

HowStrategy how_from_label(const std::string& label, const Params& p) {
    if (label == "no-defense") return HowStrategy::none();
    auto dash = label.find('-');
    std::string how = dash == std::string::npos ? label : label.substr(dash + 1);
    if (how == "RNT") return HowStrategy::rnt(p.p_r);
    if (how == "GANT") return HowStrategy::gant(p.ga);
    if (how == "DPNT") return HowStrategy::dpnt(p.zeta);
    throw std::invalid_argument("unknown scheme label: " + label);
}

void patch_param(Params& p, const std::string& name, double value) {
    if (name == "w1") p.w1 = value;
    else if (name == "w2") p.w2 = value;
    else if (name == "p_d_em") p.p_d_em = value;
    else if (name == "p_d_os") p.p_d_os = value;
    else if (name == "p_a_d") p.p_a_d = value;
    else if (name == "p_a_m") p.p_a_m = value;
    else if (name == "k") p.k_hops = static_cast<int>(value);
    else if (name == "beta") p.beta = value;
    else if (name == "rho") p.rho = value;
    else if (name == "delta") p.delta = value;
    else if (name == "gamma1") p.gamma1 = value;
    else if (name == "gamma2") p.gamma2 = value;
    else if (name == "lambda_rs") p.lambda_rs = value;
    else if (name == "p_r") p.p_r = value;
    else if (name == "zeta") p.zeta = value;
    else if (name == "ga_population") p.ga.population = static_cast<int>(value);
    else if (name == "ga_generations") p.ga.generations = static_cast<int>(value);
    else if (name == "ga_crossover_rate") p.ga.crossover_rate = value;
    else if (name == "ga_mutation_rate") p.ga.mutation_rate = value;
    else if (name == "ga_w_n") p.ga.w_n = value;
    else if (name == "ga_w_m") p.ga.w_m = value;
    else if (name == "ga_w_c") p.ga.w_c = value;
    else if (name == "sim_hour_cap") p.sim_hour_cap = value;
    else if (name == "path_cap") p.path_cap = static_cast<std::uint64_t>(value);
    else throw std::invalid_argument("unknown parameter name: " + name);
}

Scenario resolve_scenario(const ExperimentSpec& spec, const SweepPoint& point,
                          const SchemeSetting& scheme) {
    Scenario s;
    if (point.decoys_per_vlan || point.extended_real) {
        if (spec.scenario_source != "builtin")
            throw std::invalid_argument(
                "decoy/real population sweeps require the builtin scenario");
        HospitalConfig cfg;
        cfg.decoys_per_vlan = point.decoys_per_vlan.value_or(1);
        cfg.extended = point.extended_real.value_or(false);
        s = hospital_scenario(cfg);
    } else if (spec.scenario_source == "builtin") {
        s = baseline_scenario();
    } else {
        s = load_scenario(spec.scenario_source);
    }
    for (const auto& [name, value] : spec.param_patch) patch_param(s.params, name, value);
    if (!spec.ga_trace_path.empty()) s.params.ga.trace_path = spec.ga_trace_path;
    if (point.p_d) {
        s.params.p_d_em = point.p_d->first;
        s.params.p_d_os = point.p_d->second;
    }
    if (point.p_a) {
        s.params.p_a_d = point.p_a->first;
        s.params.p_a_m = point.p_a->second;
    }
    if (point.gamma2) s.params.gamma2 = *point.gamma2;
    if (point.rho) s.params.rho = *point.rho;
    if (scheme.gamma1) s.params.gamma1 = *scheme.gamma1;
    if (scheme.lambda_rs) s.params.lambda_rs = *scheme.lambda_rs;
    if (scheme.rho) s.params.rho = *scheme.rho;
    if (scheme.gamma2) s.params.gamma2 = *scheme.gamma2;
    validate_scenario(s);
    if (scheme.label == "no-defense") s = strip_decoys(s);
    return s;
}

int worker_count() {
    if (const char* env = std::getenv("NTSMTD_WORKERS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

struct Cell {
    SchemeSetting scheme;
    SweepPoint point;
    Scenario scenario;
    WhenStrategy when;
    HowStrategy how;
    std::vector<std::uint64_t> seeds;
    std::vector<RunResult> runs;
};

} // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    if (spec.runs < 1) throw std::invalid_argument("runs must be >= 1");
    if (spec.schemes.empty()) throw std::invalid_argument("no schemes selected");
    for (const auto& sc : spec.schemes)
        if (!is_scheme_label(sc.label))
            throw std::invalid_argument("invalid scheme label: " + sc.label);

    std::vector<SweepPoint> points = spec.sweep;
    if (points.empty()) points.push_back(SweepPoint{});

    std::vector<Cell> cells;
    for (const auto& sc : spec.schemes) {
        for (const auto& pt : points) {
            Cell c;
            c.scheme = sc;
            c.point = pt;
            c.scenario = resolve_scenario(spec, pt, sc);
            c.when = when_from_label(sc.label, c.scenario.params);
            c.how = how_from_label(sc.label, c.scenario.params);
            for (int i = 0; i < spec.runs; ++i)
                c.seeds.push_back(
                    derive_seed(spec.master_seed, sc.label, pt.label, static_cast<std::uint64_t>(i)));
            c.runs.resize(spec.runs);
            cells.push_back(std::move(c));
        }
    }

    // derived seeds must be pairwise distinct across the whole grid
    {
        std::set<std::uint64_t> seen;
        for (const Cell& c : cells)
            for (std::uint64_t sd : c.seeds)
                if (!seen.insert(sd).second)
                    throw std::runtime_error("seed derivation collision detected");
    }

    struct Task {
        std::size_t cell, run;
    };
    std::vector<Task> tasks;
    for (std::size_t ci = 0; ci < cells.size(); ++ci)
        for (std::size_t ri = 0; ri < cells[ci].runs.size(); ++ri) tasks.push_back({ci, ri});

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            std::size_t t = next.fetch_add(1);
            if (t >= tasks.size()) break;
            Cell& c = cells[tasks[t].cell];
            std::size_t ri = tasks[t].run;
            RunResult r = simulate_run(c.scenario, c.when, c.how, c.seeds[ri]);
            if (!spec.keep_event_logs) {
                r.events.clear();
                r.events.shrink_to_fit();
            }
            c.runs[ri] = std::move(r);
        }
    };
    int workers = std::min<int>(worker_count(), static_cast<int>(tasks.size()));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    ExperimentResult out;
    std::vector<std::vector<RunResult>> per_cell;
    for (Cell& c : cells) {
        out.summaries.push_back(aggregate(c.runs, c.scheme.label, c.point.label));
        per_cell.push_back(std::move(c.runs));
    }
    if (!spec.out_dir.empty()) {
        out.written_files = emit_report(out.summaries, &per_cell, spec.out_dir, spec.format);
        if (spec.keep_event_logs) {
            fs::create_directories(fs::path(spec.out_dir) / "events");
            for (std::size_t ci = 0; ci < cells.size(); ++ci) {
                for (std::size_t ri = 0; ri < per_cell[ci].size(); ++ri) {
                    std::string name = cells[ci].scheme.label + "_" + cells[ci].point.label +
                                       "_" + std::to_string(ri) + ".log";
                    std::replace(name.begin(), name.end(), '/', '_');
                    fs::path p = fs::path(spec.out_dir) / "events" / name;
                    std::ofstream f(p);
                    f << serialize_event_log(per_cell[ci][ri].events);
                    out.written_files.push_back(p.string());
                }
            }
        }
    }
    return out;
}

std::vector<std::string> emit_report(const std::vector<ExperimentSummary>& summaries,
                                     const std::vector<std::vector<RunResult>>* per_cell_runs,
                                     const std::string& out_dir, ExperimentSpec::Format format) {
    if (summaries.empty()) throw std::invalid_argument("emit_report: no summaries");
    fs::create_directories(out_dir);
    std::vector<std::string> written;

    fs::path summary_path = fs::path(out_dir) / "summary.csv";
    {
        std::ofstream f(summary_path);
        if (!f) throw std::runtime_error("cannot write " + summary_path.string());
        f << "scheme,sweep_point,runs,mttsf_mean,mttsf_std,n_dt_ap_mean,c_d_mean,pdr_mean\n";
        for (const auto& s : summaries)
            f << s.scheme << ',' << s.sweep_point << ',' << s.runs << ',' << fmt(s.mttsf_mean)
              << ',' << fmt(s.mttsf_std) << ',' << fmt(s.n_dt_ap_mean) << ',' << fmt(s.c_d_mean)
              << ',' << fmt(s.pdr_mean) << '\n';
    }
    written.push_back(summary_path.string());

    if (format == ExperimentSpec::Format::records) {
        if (!per_cell_runs || per_cell_runs->size() != summaries.size())
            throw std::invalid_argument("emit_report: records format needs per-run results");
        fs::path runs_path = fs::path(out_dir) / "runs.csv";
        std::ofstream f(runs_path);
        if (!f) throw std::runtime_error("cannot write " + runs_path.string());
        f << "scheme,sweep_point,run,seed,mttsf,failure,n_dt_ap,c_d,pdr,shuffles,edges_changed\n";
        for (std::size_t ci = 0; ci < summaries.size(); ++ci) {
            const auto& runs = (*per_cell_runs)[ci];
            for (std::size_t ri = 0; ri < runs.size(); ++ri) {
                const RunResult& r = runs[ri];
                f << summaries[ci].scheme << ',' << summaries[ci].sweep_point << ',' << ri << ','
                  << r.seed << ',' << fmt(r.mttsf) << ',' << failure_kind_name(r.failure_kind)
                  << ',' << fmt(n_dt_ap(r)) << ',' << fmt(defense_cost_rate(r)) << ','
                  << fmt(r.pdr_mean) << ',' << r.shuffle_count << ',' << r.defense_cost_total
                  << '\n';
            }
        }
        written.push_back(runs_path.string());
    }
    return written;
}

std::vector<ExperimentSummary> summaries_from_records(const std::string& runs_csv_path) {
    std::ifstream f(runs_csv_path);
    if (!f) throw std::runtime_error("cannot open records file: " + runs_csv_path);
    std::string line;
    if (!std::getline(f, line)) throw std::runtime_error("empty records file");
    struct Key {
        std::string scheme, point;
        bool operator<(const Key& o) const {
            return scheme < o.scheme || (scheme == o.scheme && point < o.point);
        }
    };
    std::map<Key, std::vector<RunResult>> groups;
    std::vector<Key> order;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) cols.push_back(tok);
        if (cols.size() < 11) throw std::runtime_error("malformed records row: " + line);
        RunResult r;
        r.seed = std::stoull(cols[3]);
        r.mttsf = std::stod(cols[4]);
        r.n_dt_ap_samples = {std::stod(cols[6])};
        r.pdr_mean = std::stod(cols[8]);
        r.shuffle_count = static_cast<std::uint32_t>(std::stoul(cols[9]));
        r.defense_cost_total = std::stoull(cols[10]);
        Key k{cols[0], cols[1]};
        if (!groups.count(k)) order.push_back(k);
        groups[k].push_back(std::move(r));
    }
    std::vector<ExperimentSummary> out;
    for (const Key& k : order) out.push_back(aggregate(groups[k], k.scheme, k.point));
    return out;
}

ExperimentSpec compare12_spec() {
    ExperimentSpec spec;
    for (const auto& label : all_scheme_labels()) spec.schemes.push_back({label, {}, {}, {}, {}});
    return spec;
}

ExperimentSpec baseline_comparison_spec() {
    ExperimentSpec spec;
    spec.schemes.push_back({"no-defense", {}, {}, {}, {}});
    SchemeSetting fs{"FS-DPNT", {}, {}, {}, {}};
    fs.gamma1 = 72.0; // optimal fixed interval
    SchemeSetting rs{"RS-DPNT", {}, {}, {}, {}};
    rs.lambda_rs = 24.0; // optimal mean interval
    SchemeSetting as{"AS-DPNT", {}, {}, {}, {}};
    as.rho = 0.6; // optimal SSV threshold for AS
    SchemeSetting hs{"HS-DPNT", {}, {}, {}, {}};
    hs.rho = 0.4; // optimal SSV threshold for HS
    spec.schemes.insert(spec.schemes.end(), {fs, rs, as, hs});
    return spec;
}

std::map<std::string, ExperimentSpec> sweep_presets() {
    std::map<std::string, ExperimentSpec> out;
    {
        ExperimentSpec spec;
        spec.schemes = {{"AS-DPNT", {}, {}, {}, {}}, {"HS-DPNT", {}, {}, {}, {}}};
        for (auto [label, em, os] : {std::tuple<const char*, double, double>{"intelligence=low", 0.9, 1.0},
                                     {"intelligence=medium", 0.5, 0.7},
                                     {"intelligence=high", 0.1, 0.3}}) {
            SweepPoint p;
            p.label = label;
            p.p_d = {em, os};
            spec.sweep.push_back(p);
        }
        out["intelligence"] = spec;
    }
    {
        ExperimentSpec spec;
        spec.schemes = {{"FS-DPNT", {}, {}, {}, {}},
                        {"RS-DPNT", {}, {}, {}, {}},
                        {"AS-DPNT", {}, {}, {}, {}},
                        {"HS-DPNT", {}, {}, {}, {}}};
        for (auto [label, d, m] : {std::tuple<const char*, double, double>{"severity=low", 0.1, 0.1},
                                   {"severity=medium", 0.5, 0.5},
                                   {"severity=high", 1.0, 1.0}}) {
            SweepPoint p;
            p.label = label;
            p.p_a = {d, m};
            spec.sweep.push_back(p);
        }
        out["severity"] = spec;
    }
    {
        ExperimentSpec spec;
        spec.schemes = {{"AS-DPNT", {}, {}, {}, {}}, {"HS-DPNT", {}, {}, {}, {}}};
        for (int d : {1, 2, 3}) {
            SweepPoint p;
            p.label = "decoys_per_vlan=" + std::to_string(d);
            p.decoys_per_vlan = d;
            spec.sweep.push_back(p);
        }
        out["decoys"] = spec;
    }
    {
        ExperimentSpec spec;
        spec.schemes = {{"HS-DPNT", {}, {}, {}, {}}};
        for (bool ext : {false, true}) {
            SweepPoint p;
            p.label = ext ? "real_iot=12" : "real_iot=7";
            p.extended_real = ext;
            spec.sweep.push_back(p);
        }
        out["real-nodes"] = spec;
    }
    {
        ExperimentSpec spec;
        spec.schemes = {{"HS-DPNT", {}, {}, {}, {}}};
        for (double g : {48.0, 72.0, 96.0, 120.0, 144.0, 168.0}) {
            SweepPoint p;
            p.label = "gamma2=" + std::to_string(static_cast<int>(g));
            p.gamma2 = g;
            spec.sweep.push_back(p);
        }
        out["gamma2"] = spec;
    }
    {
        ExperimentSpec spec;
        spec.schemes = {{"HS-DPNT", {}, {}, {}, {}}};
        for (int i = 1; i <= 9; ++i) {
            SweepPoint p;
            char buf[32];
            std::snprintf(buf, sizeof buf, "rho=%.1f", 0.1 * i);
            p.label = buf;
            p.rho = 0.1 * i;
            spec.sweep.push_back(p);
        }
        out["rho"] = spec;
    }
    return out;
}

} // namespace ntsmtd
