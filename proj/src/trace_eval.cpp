#include "speedopt/trace_eval.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace speedopt {

MsiSeries evaluate_trace(const std::vector<TraceSample>& trace,
                         const ConflictModelParams& params) {
    if (trace.empty()) throw std::invalid_argument("evaluate_trace: empty trace");
    params.validate();

    MsiSeries out;
    const std::size_t n = trace.size();
    out.t.reserve(n);
    out.h.reserve(n);
    out.msi_unipg.reserve(n);
    out.msi_iso.reserve(n);

    SicknessState conflict = initial_sickness_state();
    IsoFilterState iso_long, iso_lat;

    out.t.push_back(trace.front().t);
    out.h.push_back(conflict.disturb);
    out.msi_unipg.push_back(msi(conflict, params));
    out.msi_iso.push_back(iso_msi_combined(iso_long, iso_lat));

    for (std::size_t i = 1; i < n; ++i) {
        const double dt = trace[i].t - trace[i - 1].t;
        if (!(dt > 0.0))
            throw std::invalid_argument("evaluate_trace: non-increasing time at node " +
                                        std::to_string(i));
        const std::array<double, 3> f = {trace[i].a_long, trace[i].a_lat, kGravity};
        conflict = detail::conflict_advance(conflict, f, dt, params);
        // ISO filter caps its own step; split the same way
        const int pieces = std::max(1, static_cast<int>(std::ceil(dt / kStepTime)));
        const double h = dt / pieces;
        for (int k = 0; k < pieces; ++k) {
            iso_long = iso_step(iso_long, trace[i].a_long, h);
            iso_lat = iso_step(iso_lat, trace[i].a_lat, h);
        }

        out.t.push_back(trace[i].t);
        out.h.push_back(conflict.disturb);
        out.msi_unipg.push_back(msi(conflict, params));
        out.msi_iso.push_back(iso_msi_combined(iso_long, iso_lat));
    }

    out.max_unipg = *std::max_element(out.msi_unipg.begin(), out.msi_unipg.end());
    out.max_iso = *std::max_element(out.msi_iso.begin(), out.msi_iso.end());
    return out;
}

}  // namespace speedopt
