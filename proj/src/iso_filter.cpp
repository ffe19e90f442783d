#include "speedopt/iso_filter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "speedopt/iso_weighting_coeffs.hpp"

namespace speedopt {

namespace {

constexpr double kMsiPerMsdv = 1.0 / 3.0;  // percent per unit dose, seated adults
constexpr double kMaxFilterSubstep = 0.02; // s, RK4 resolution for ~0.6 Hz poles

// Controllable canonical form of H(s) = (b3 s^3 + b2 s^2) / (s^5 + a4 s^4 + ... + a0):
// states x1..x5 with x' = A x + B u, y = C x.
struct Deriv {
    std::array<double, 5> dx;
    double y;
};

Deriv rhs(const std::array<double, 5>& x, double u) {
    Deriv d;
    d.dx[0] = x[1];
    d.dx[1] = x[2];
    d.dx[2] = x[3];
    d.dx[3] = x[4];
    d.dx[4] = u;
    for (int i = 0; i < 5; ++i) d.dx[4] -= kIsoWeightingDen[i] * x[4 - i];
    // numerator rows: b3 s^3 + b2 s^2 -> y = b3*x4 + b2*x3 (see header comment)
    d.y = kIsoWeightingNum[0] * x[3] + kIsoWeightingNum[1] * x[2];
    return d;
}

double output(const std::array<double, 5>& x) {
    return kIsoWeightingNum[0] * x[3] + kIsoWeightingNum[1] * x[2];
}

}  // namespace

IsoFilterState iso_step(const IsoFilterState& state, double accel, double dt) {
    if (!(dt > 0.0) || dt > 0.5 + 1e-12)
        throw std::invalid_argument("iso_step: dt must be in (0, 0.5] s");
    if (!std::isfinite(accel)) throw std::invalid_argument("iso_step: non-finite input");

    const int substeps = std::max(1, static_cast<int>(std::ceil(dt / kMaxFilterSubstep)));
    const double h = dt / substeps;

    IsoFilterState out = state;
    double y_prev = output(out.x);
    for (int k = 0; k < substeps; ++k) {
        const auto k1 = rhs(out.x, accel);
        std::array<double, 5> x2, x3, x4;
        for (int i = 0; i < 5; ++i) x2[i] = out.x[i] + 0.5 * h * k1.dx[i];
        const auto k2 = rhs(x2, accel);
        for (int i = 0; i < 5; ++i) x3[i] = out.x[i] + 0.5 * h * k2.dx[i];
        const auto k3 = rhs(x3, accel);
        for (int i = 0; i < 5; ++i) x4[i] = out.x[i] + h * k3.dx[i];
        const auto k4 = rhs(x4, accel);
        for (int i = 0; i < 5; ++i)
            out.x[i] += h / 6.0 * (k1.dx[i] + 2.0 * k2.dx[i] + 2.0 * k3.dx[i] + k4.dx[i]);
        const double y = output(out.x);
        out.accumulator += 0.5 * (y_prev * y_prev + y * y) * h;
        y_prev = y;
    }
    out.elapsed += dt;
    return out;
}

double iso_msdv(const IsoFilterState& state) { return std::sqrt(state.accumulator); }

double iso_msi(const IsoFilterState& state) {
    return std::min(100.0, kMsiPerMsdv * iso_msdv(state));
}

double iso_msi_combined(const IsoFilterState& a, const IsoFilterState& b) {
    return std::min(100.0, kMsiPerMsdv * std::sqrt(a.accumulator + b.accumulator));
}

}  // namespace speedopt
