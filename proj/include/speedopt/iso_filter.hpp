#pragma once

// ISO 2631 style motion-sickness dose metric: a fifth-order approximation
// of the w_f frequency weighting (coefficients frozen from
// scripts/fit_iso_weighting.py) feeding an accumulated squared-output
// integral.  MSDV = sqrt(accumulator); incidence = MSDV / 3 percent,
// clamped to 100.  The metric is monotone in time by construction.

#include <array>

namespace speedopt {

struct IsoFilterState {
    std::array<double, 5> x{};  // weighting filter states
    double accumulator = 0.0;   // (m/s^2)^2 * s of weighted acceleration
    double elapsed = 0.0;       // s
};

// Advance one step with the scalar weighted-axis input held over dt.
// dt must be in (0, 0.5] s; throws std::invalid_argument otherwise or on
// non-finite input.
IsoFilterState iso_step(const IsoFilterState& state, double accel, double dt);

// Motion-sickness dose value, sqrt of the accumulated squared weighted
// acceleration [m/s^1.5].
double iso_msdv(const IsoFilterState& state);

// Incidence estimate in percent from the dose value, clamped to [0, 100].
double iso_msi(const IsoFilterState& state);

// Combined-axis incidence from independently filtered axes
// (root-sum-of-squares of the accumulators).
double iso_msi_combined(const IsoFilterState& a, const IsoFilterState& b);

}  // namespace speedopt
