// metrics.cpp
#include "ntsmtd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ntsmtd {

double mttsf(const RunResult& r) { return r.mttsf; }

double n_dt_ap(const RunResult& r) {
    if (r.n_dt_ap_samples.empty()) return 0.0;
    double s = 0.0;
    for (double v : r.n_dt_ap_samples) s += v;
    return s / static_cast<double>(r.n_dt_ap_samples.size());
}

double defense_cost_rate(const RunResult& r) {
    if (!(r.mttsf > 0.0)) return 0.0;
    return static_cast<double>(r.defense_cost_total) / r.mttsf;
}

namespace {

double sorted_mean(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double sorted_sample_std(std::vector<double> v, double mean) {
    if (v.size() < 2) return 0.0;
    std::sort(v.begin(), v.end());
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

} // namespace

ExperimentSummary aggregate(const std::vector<RunResult>& runs, const std::string& scheme,
                            const std::string& sweep_point) {
    if (runs.empty()) throw std::invalid_argument("aggregate: no runs");
    ExperimentSummary out;
    out.scheme = scheme;
    out.sweep_point = sweep_point;
    out.runs = runs.size();
    for (const RunResult& r : runs) {
        out.mttsf_raw.push_back(mttsf(r));
        out.n_dt_ap_raw.push_back(n_dt_ap(r));
        out.c_d_raw.push_back(defense_cost_rate(r));
        out.pdr_raw.push_back(r.pdr_mean);
        out.any_capped = out.any_capped || r.capped;
    }
    for (auto* v : {&out.mttsf_raw, &out.n_dt_ap_raw, &out.c_d_raw, &out.pdr_raw})
        std::sort(v->begin(), v->end());
    out.mttsf_mean = sorted_mean(out.mttsf_raw);
    out.mttsf_std = sorted_sample_std(out.mttsf_raw, out.mttsf_mean);
    out.n_dt_ap_mean = sorted_mean(out.n_dt_ap_raw);
    // lifetime-weighted rate (total changes over total uptime): a plain mean
    // of per-run rates is unbounded when a run dies within a fraction of an
    // hour of its first shuffle
    {
        std::vector<double> costs;
        double hours = 0.0;
        for (const RunResult& r : runs) {
            costs.push_back(static_cast<double>(r.defense_cost_total));
            hours += r.mttsf;
        }
        std::sort(costs.begin(), costs.end());
        double total = 0.0;
        for (double c : costs) total += c;
        out.c_d_mean = hours > 0.0 ? total / hours : 0.0;
    }
    out.pdr_mean = sorted_mean(out.pdr_raw);
    return out;
}

} // namespace ntsmtd
