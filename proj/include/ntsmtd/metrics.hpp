// metrics.hpp - the paper's metric suite computed from run results.
#pragma once

#include <string>
#include <vector>

#include "ntsmtd/engine.hpp"

namespace ntsmtd {

struct ExperimentSummary {
    std::string scheme;
    std::string sweep_point;
    std::size_t runs = 0;
    double mttsf_mean = 0.0;
    double mttsf_std = 0.0; // sample standard deviation
    double n_dt_ap_mean = 0.0;
    double c_d_mean = 0.0; // edge changes per hour of uptime, lifetime-weighted
    double pdr_mean = 0.0;
    bool any_capped = false;
    // per-run raw vectors, sorted ascending so the summary is
    // permutation-invariant in the input order
    std::vector<double> mttsf_raw;
    std::vector<double> n_dt_ap_raw;
    std::vector<double> c_d_raw;
    std::vector<double> pdr_raw;
};

// System lifetime of one run; the capped flag propagates via RunResult.
double mttsf(const RunResult& r);

// Mean per-shuffle-epoch |AP_d|.
double n_dt_ap(const RunResult& r);

// Defense cost per hour: total edge changes / lifetime.
double defense_cost_rate(const RunResult& r);

// Order-independent aggregation (values are sorted before reduction, so any
// permutation of `runs` yields a bit-identical summary).
ExperimentSummary aggregate(const std::vector<RunResult>& runs, const std::string& scheme,
                            const std::string& sweep_point = "-");

} // namespace ntsmtd
