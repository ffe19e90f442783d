#include "speedopt/run_matrix.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <stdexcept>
#include <thread>

namespace speedopt {

void RunMatrix::validate() const {
    if (rows.empty()) throw std::invalid_argument("RunMatrix: no rows");
    std::set<std::string> labels;
    bool baseline = false;
    for (const auto& row : rows) {
        if (!labels.insert(row.label).second)
            throw std::invalid_argument("RunMatrix: duplicate label '" + row.label + "'");
        if (row.cost.kind == CostKind::minimum_time) baseline = true;
        row.cost.validate();
    }
    if (!baseline)
        throw std::invalid_argument("RunMatrix: a minimum_time baseline row is required");
}

std::vector<MissionResult> run_matrix(const PathSpline& road, const RunMatrix& matrix,
                                      int workers) {
    matrix.validate();
    const int n = static_cast<int>(matrix.rows.size());
    std::vector<MissionResult> results(n);

    workers = std::clamp(workers, 1, n);
    std::atomic<int> next{0};
    auto work = [&]() {
        while (true) {
            const int i = next.fetch_add(1);
            if (i >= n) break;
            const RunRow& row = matrix.rows[i];
            try {
                results[i] = receding_loop(road, row.cost, matrix.config, row.label);
            } catch (const std::exception& e) {
                results[i].label = row.label;
                results[i].status = MissionStatus::solver_failure;
                results[i].message = e.what();
            }
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    return results;
}

std::vector<ParetoRow> pareto_report(const std::vector<MissionResult>& results) {
    std::vector<ParetoRow> rows;
    for (const auto& r : results) {
        if (r.status != MissionStatus::ok) continue;
        rows.push_back({r.label, r.travel_time, r.max_msi_unipg, r.max_msi_iso, false, false});
    }
    if (rows.size() < 2)
        throw std::invalid_argument("pareto_report: need at least 2 successful results");

    for (auto& row : rows) {
        for (const auto& other : rows) {
            if (&other == &row) continue;
            if (other.travel_time < row.travel_time && other.msi_unipg < row.msi_unipg)
                row.dominated_unipg = true;
            if (other.travel_time < row.travel_time && other.msi_iso < row.msi_iso)
                row.dominated_iso = true;
        }
    }
    std::sort(rows.begin(), rows.end(), [](const ParetoRow& a, const ParetoRow& b) {
        return a.travel_time != b.travel_time ? a.travel_time < b.travel_time
                                              : a.label < b.label;
    });
    return rows;
}

CrossMetricReport cross_metric_report(const std::vector<MissionResult>& results) {
    CrossMetricReport report;
    std::vector<double> unipg, iso;
    for (const auto& r : results) {
        if (r.status != MissionStatus::ok) continue;
        report.rows.push_back({r.label, r.travel_time, r.max_msi_unipg, r.max_msi_iso, false,
                               false});
        unipg.push_back(r.max_msi_unipg);
        iso.push_back(r.max_msi_iso);
    }
    report.kendall_tau = kendall_tau(unipg, iso);
    return report;
}

std::optional<double> kendall_tau(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    if (n != b.size() || n < 2) return std::nullopt;
    long concordant = 0, discordant = 0, ties_a = 0, ties_b = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double da = a[i] - a[j];
            const double db = b[i] - b[j];
            if (da == 0.0 && db == 0.0) continue;
            if (da == 0.0) { ++ties_a; continue; }
            if (db == 0.0) { ++ties_b; continue; }
            if (da * db > 0.0) ++concordant;
            else ++discordant;
        }
    }
    const double n0 = 0.5 * static_cast<double>(n) * (n - 1);
    const double denom = std::sqrt((n0 - ties_a) * (n0 - ties_b));
    if (denom == 0.0) return std::nullopt;
    return (concordant - discordant) / denom;
}

void write_pareto_csv(std::ostream& os, const std::vector<ParetoRow>& rows) {
    os << "label,travel_time_s,msi_max_unipg_pct,msi_max_iso_pct,dominated_unipg,dominated_iso\n";
    char line[256];
    for (const auto& r : rows) {
        std::snprintf(line, sizeof(line), "%s,%.6f,%.6f,%.6f,%d,%d\n", r.label.c_str(),
                      r.travel_time, r.msi_unipg, r.msi_iso, r.dominated_unipg ? 1 : 0,
                      r.dominated_iso ? 1 : 0);
        os << line;
    }
}

}  // namespace speedopt
