#pragma once

// The five speed-profile cost strategies.  All share the travel-time term
// C_t / v plus a small input regularization; the strategies differ in the
// comfort term: none, a heavy jerk penalty, an acceleration penalty, a
// penalty on the instantaneous sickness disturbance h, or h gated by the
// running incidence (the adaptive strategy).

#include <stdexcept>
#include <string>

#include "speedopt/conflict_model.hpp"
#include "speedopt/dynamics.hpp"

namespace speedopt {

enum class CostKind { minimum_time, jerk, acceleration, ms, adaptive_ms };

std::string to_string(CostKind kind);
CostKind cost_kind_from_string(const std::string& name);

struct CostSpec {
    CostKind kind = CostKind::minimum_time;
    double c_t = 1.0;    // travel-time weight
    double c_u = 0.01;   // small input regularization (minimum-time family)
    double c_j = 0.0;    // heavy jerk weight (jerk strategy)
    double c_a = 0.0;    // acceleration weight
    double c_ms = 0.0;   // sickness weight (ms / adaptive strategies)

    // Study switches; defaults reproduce the standard formulation.
    bool linear_jerk_term = false;     // literal signed jerk cost instead of squared
    bool squared_lateral_term = false; // (v^2 rho)^2 instead of v^2 rho in the accel cost

    void validate() const {
        if (c_t < 0 || c_u < 0 || c_j < 0 || c_a < 0 || c_ms < 0)
            throw std::invalid_argument("CostSpec: weights must be nonnegative");
    }
};

// Per-node stage cost.  `sick` is consulted only by the ms / adaptive_ms
// kinds; curvature only by the acceleration kind.
template <class T>
T stage_cost(const CostSpec& spec, const VehicleStateT<T>& state, const T& jerk,
             const SicknessStateT<T>& sick, double rho, const ConflictModelParams& params) {
    const T time_term = T(spec.c_t) / state.v;
    const T jerk_term = spec.linear_jerk_term ? jerk : jerk * jerk;
    switch (spec.kind) {
        case CostKind::minimum_time:
            return time_term + T(spec.c_u) * jerk_term;
        case CostKind::jerk:
            return time_term + T(spec.c_j) * jerk_term;
        case CostKind::acceleration: {
            const T lat = lateral_accel(state.v, rho);
            const T lat_term = spec.squared_lateral_term ? lat * lat : lat;
            return time_term + T(spec.c_u) * jerk_term +
                   T(spec.c_a) * (state.a * state.a + lat_term);
        }
        case CostKind::ms:
            return time_term + T(spec.c_u) * jerk_term + T(spec.c_ms) * sick.disturb;
        case CostKind::adaptive_ms:
            return time_term + T(spec.c_u) * jerk_term +
                   T(spec.c_ms) * sick.disturb * msi(sick, params);
    }
    throw std::invalid_argument("stage_cost: unknown cost kind");
}

// Whether the sickness states must be rolled forward inside a horizon.
inline bool needs_sickness_rollout(CostKind kind) {
    return kind == CostKind::ms || kind == CostKind::adaptive_ms;
}

}  // namespace speedopt
