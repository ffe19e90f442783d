#pragma once

// Fifth-order approximation of the ISO 2631-1 motion-sickness weighting
// (w_f).  Generated by scripts/fit_iso_weighting.py; do not edit by hand.
//
//   H(s) = (b[0] s^3 + b[1] s^2) / (s^5 + a[0] s^4 + ... + a[4])
//
// Fit residual over 0.01-2 Hz: rms 0.958 dB, max 3.800 dB.
// Peak response at 0.1481 Hz (reference peaks at 0.1737 Hz).

namespace speedopt {

inline constexpr double kIsoWeightingNum[4] = {
    0.0000000000000000e+00, 4.6375079197059366e+00, 0.0000000000000000e+00, 0.0000000000000000e+00
};

inline constexpr double kIsoWeightingDen[5] = {
    3.1376514341017594e+00, 9.2723530955265865e+00, 1.0526928576638781e+01, 7.6961058605238470e+00, 2.9946185211441705e+00
};

}  // namespace speedopt
