#pragma once

// Strategy/weight matrix runner with Pareto and cross-metric reports.

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "speedopt/mission.hpp"

namespace speedopt {

struct RunRow {
    CostSpec cost;
    std::string label;
};

struct RunMatrix {
    std::vector<RunRow> rows;
    MissionConfig config;

    // Labels must be unique and a minimum_time baseline present.
    void validate() const;
};

// Execute every row over the shared road.  Rows run concurrently up to
// `workers`; results come back in row order regardless of completion
// order, and per-row failures are reported in the row's status without
// aborting siblings.
std::vector<MissionResult> run_matrix(const PathSpline& road, const RunMatrix& matrix,
                                      int workers = 1);

struct ParetoRow {
    std::string label;
    double travel_time = 0.0;
    double msi_unipg = 0.0;
    double msi_iso = 0.0;
    bool dominated_unipg = false;  // some run is strictly better in both
    bool dominated_iso = false;
};

// Rows sorted by travel time, each flagged dominated/non-dominated under
// both metrics.  Requires at least 2 successful results.
std::vector<ParetoRow> pareto_report(const std::vector<MissionResult>& results);

struct CrossMetricReport {
    std::vector<ParetoRow> rows;        // per-run (UniPG max, ISO max) pairs
    std::optional<double> kendall_tau;  // n/a with fewer than 2 runs
};

CrossMetricReport cross_metric_report(const std::vector<MissionResult>& results);

// Kendall tau-b rank correlation.
std::optional<double> kendall_tau(const std::vector<double>& a, const std::vector<double>& b);

void write_pareto_csv(std::ostream& os, const std::vector<ParetoRow>& rows);

}  // namespace speedopt
