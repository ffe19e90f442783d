#pragma once

// Subjective-vertical conflict model of motion sickness.
//
// Structure: the sensed specific force is low-passed per axis (vestibular
// channel); a slower first-order estimator tracks it as the subjective
// vertical; the conflict is the difference of the two channels.  A
// saturating nonlinearity maps the squared conflict norm to the
// instantaneous disturbance h, which drives a pair of leaky accumulators
// whose weighted mix, scaled to percent, is the motion-sickness incidence
// (MSI).  The parallel accumulator pair makes MSI strictly decay once the
// conflict has washed out, matching the observed post-stimulus behavior.
//
// Per step the two linear channels are advanced with exact exponential
// updates (unconditionally stable for any dt); the accumulators use a
// trapezoidal estimate of h over the step.  Templated on the scalar so
// the optimizer can differentiate through h and MSI.

#include <array>
#include <cmath>
#include <stdexcept>

#include "speedopt/dual.hpp"
#include "speedopt/dynamics.hpp"

namespace speedopt {

struct ConflictModelParams {
    double tau_sensed = 0.7;    // s, vestibular low-pass
    double tau_vertical = 1.25; // s, subjective-vertical tracker
    double hill_half = 1.0;     // m/s^2, conflict magnitude giving h = 1/2
    double msi_gain = 85.0;     // %, population scale of the incidence
    double mu_slow = 720.0;     // s, slow accumulator leak
    double mu_fast = 180.0;     // s, fast accumulator leak
    double slow_weight = 0.5;   // mix of slow vs fast accumulator

    // Analytic peak of the linear conflict chain, 1 / (2*pi*sqrt(tau_v*tau_sv)).
    double peak_frequency_hz() const;

    // Throws std::invalid_argument unless all constants are positive, the
    // time constants are distinct, and the chain peaks in [0.1, 0.3] Hz.
    void validate() const;
};

template <class T>
struct SicknessStateT {
    std::array<T, 3> sensed{};    // filtered specific force [m/s^2]
    std::array<T, 3> vertical{};  // subjective vertical estimate [m/s^2]
    T disturb{};                  // h, dimensionless, >= 0
    T acc_fast{};                 // leaky accumulator states
    T acc_slow{};
};
using SicknessState = SicknessStateT<double>;

// Rest state: both channels aligned with gravity, no disturbance.
inline SicknessState initial_sickness_state() {
    SicknessState s;
    s.sensed = {0.0, 0.0, kGravity};
    s.vertical = {0.0, 0.0, kGravity};
    return s;
}

// Current incidence in percent, clamped to [0, 100].
template <class T>
T msi(const SicknessStateT<T>& state, const ConflictModelParams& params) {
    T m = T(params.msi_gain) * (T(params.slow_weight) * state.acc_slow +
                                T(1.0 - params.slow_weight) * state.acc_fast);
    if (value_of(m) < 0.0) return T(0.0);
    if (value_of(m) > 100.0) return T(100.0);
    return m;
}

namespace detail {

// Single exact-exponential step; dt must be positive.
template <class T>
SicknessStateT<T> conflict_substep(const SicknessStateT<T>& state,
                                   const std::array<T, 3>& specific_force, const T& dt,
                                   const ConflictModelParams& p) {
    const T e_v = exp(-dt / T(p.tau_sensed));
    const T e_s = exp(-dt / T(p.tau_vertical));
    // coupling coefficient of the sensed transient into the tracker
    const double beta = p.tau_sensed / (p.tau_sensed - p.tau_vertical);

    SicknessStateT<T> out = state;
    T conflict_sq = T(0.0);
    for (int i = 0; i < 3; ++i) {
        const T f = specific_force[i];
        const T transient = state.sensed[i] - f;
        out.sensed[i] = f + transient * e_v;
        out.vertical[i] = f + (state.vertical[i] - f) * e_s + transient * T(beta) * (e_v - e_s);
        const T d = out.sensed[i] - out.vertical[i];
        conflict_sq += d * d;
    }

    const double b2 = p.hill_half * p.hill_half;
    out.disturb = conflict_sq / (conflict_sq + T(b2));

    const T h_mid = T(0.5) * (state.disturb + out.disturb);
    const T e_fast = exp(-dt / T(p.mu_fast));
    const T e_slow = exp(-dt / T(p.mu_slow));
    out.acc_fast = h_mid + (state.acc_fast - h_mid) * e_fast;
    out.acc_slow = h_mid + (state.acc_slow - h_mid) * e_slow;
    return out;
}

// Internal stepping without the public dt <= 0.5 s contract: longer steps
// are subdivided (input held constant).
template <class T>
SicknessStateT<T> conflict_advance(const SicknessStateT<T>& state,
                                   const std::array<T, 3>& specific_force, const T& dt,
                                   const ConflictModelParams& p) {
    const int pieces = std::max(1, static_cast<int>(std::ceil(value_of(dt) / kStepTime)));
    const T h = dt / T(static_cast<double>(pieces));
    SicknessStateT<T> s = state;
    for (int k = 0; k < pieces; ++k) s = conflict_substep(s, specific_force, h, p);
    return s;
}

}  // namespace detail

// Advance the model one step.  `specific_force` is (longitudinal, lateral,
// gravity-aligned vertical) in m/s^2; dt must lie in (0, 0.5] s.  Throws
// std::invalid_argument on non-finite input or out-of-range dt.
template <class T>
SicknessStateT<T> conflict_step(const SicknessStateT<T>& state,
                                const std::array<T, 3>& specific_force, const T& dt,
                                const ConflictModelParams& params) {
    if (!(value_of(dt) > 0.0) || value_of(dt) > kStepTime + 1e-12)
        throw std::invalid_argument("conflict_step: dt must be in (0, 0.5] s");
    for (const auto& f : specific_force)
        if (!std::isfinite(value_of(f)))
            throw std::invalid_argument("conflict_step: non-finite acceleration");
    return detail::conflict_substep(state, specific_force, dt, params);
}

inline double ConflictModelParams::peak_frequency_hz() const {
    return 1.0 / (2.0 * M_PI * std::sqrt(tau_sensed * tau_vertical));
}

inline void ConflictModelParams::validate() const {
    if (!(tau_sensed > 0.0) || !(tau_vertical > 0.0) || !(hill_half > 0.0) || !(mu_slow > 0.0) ||
        !(mu_fast > 0.0))
        throw std::invalid_argument("ConflictModelParams: constants must be positive");
    if (std::abs(tau_sensed - tau_vertical) < 1e-3 * std::max(tau_sensed, tau_vertical))
        throw std::invalid_argument("ConflictModelParams: channel time constants must differ");
    if (!(msi_gain > 0.0) || msi_gain > 100.0)
        throw std::invalid_argument("ConflictModelParams: msi_gain must be in (0, 100]");
    if (slow_weight < 0.0 || slow_weight > 1.0)
        throw std::invalid_argument("ConflictModelParams: slow_weight must be in [0, 1]");
    const double pk = peak_frequency_hz();
    if (pk < 0.1 || pk > 0.3)
        throw std::invalid_argument(
            "ConflictModelParams: conflict chain must peak in [0.1, 0.3] Hz, got " +
            std::to_string(pk));
}

}  // namespace speedopt
