#pragma once

// Runs both sickness metrics over an acceleration history.

#include <vector>

#include "speedopt/conflict_model.hpp"
#include "speedopt/iso_filter.hpp"

namespace speedopt {

struct TraceSample {
    double t = 0.0;       // s
    double a_long = 0.0;  // m/s^2 tangential
    double a_lat = 0.0;   // m/s^2, v^2 * curvature
};

struct MsiSeries {
    std::vector<double> t;
    std::vector<double> h;          // conflict-model instantaneous disturbance
    std::vector<double> msi_unipg;  // conflict-model incidence [%]
    std::vector<double> msi_iso;    // ISO-weighted incidence [%], combined axes
    double max_unipg = 0.0;
    double max_iso = 0.0;
};

// Evaluate both models over the trace.  The input between node i and i+1
// is held at the node i+1 value; steps longer than 0.5 s are subdivided
// internally.  Throws std::invalid_argument on dt <= 0 between nodes or
// an empty trace.
MsiSeries evaluate_trace(const std::vector<TraceSample>& trace,
                         const ConflictModelParams& params = {});

}  // namespace speedopt
