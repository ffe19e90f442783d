#pragma once

// Space-transformed point-mass longitudinal dynamics on a planar path.
//
// The plant state is (s, v, a, t) with tangential jerk as the only input;
// lateral acceleration follows from v^2 * curvature.  With arc length as
// the independent variable the dynamics read
//
//   dv/ds = a / v,   da/ds = j / v,   dt/ds = 1 / v
//
// and curvature is held fixed per integration step.  Everything here is
// templated on the scalar so horizon rollouts can run on Dual numbers.

#include <cmath>
#include <stdexcept>

#include "speedopt/dual.hpp"

namespace speedopt {

inline constexpr double kGravity = 9.80665;  // m/s^2

struct Limits {
    double a_max_total = 0.3 * kGravity;  // m/s^2, combined accel bound
    double j_max = 3.0;                   // m/s^3
    double v_min = 5.0;                   // m/s (space transform is singular at 0)
    double v_max = 130.0 / 3.6;           // m/s, motorway limit

    void validate() const {
        if (!(a_max_total > 0.0) || !(j_max > 0.0) || !(v_min > 0.0) || !(v_min < v_max))
            throw std::invalid_argument("Limits: need positive bounds with v_min < v_max");
    }
};

template <class T>
struct VehicleStateT {
    T s{};  // m along the path
    T v{};  // m/s tangential velocity
    T a{};  // m/s^2 tangential acceleration
    T t{};  // s elapsed
};
using VehicleState = VehicleStateT<double>;

struct ControlInput {
    double j = 0.0;  // m/s^3 tangential jerk
};

template <class T>
T lateral_accel(const T& v, double rho) {
    return v * v * rho;
}

template <class T>
T accel_modulus(const T& a, const T& v, double rho) {
    const T lat = lateral_accel(v, rho);
    return sqrt(a * a + lat * lat);
}
inline double accel_modulus(double a, double v, double rho) {
    return std::hypot(a, lateral_accel(v, rho));
}

// Step rule: the space travelled in 0.5 s at the horizon's initial
// velocity, which keeps the effective sampling at 2 Hz or better.
inline constexpr double kStepTime = 0.5;  // s
inline double adaptive_step_size(double v0) { return kStepTime * v0; }

template <class T>
struct StepResult {
    VehicleStateT<T> state;
    bool clamped = false;  // v hit v_min during the step
};

namespace detail {
// Velocity floor inside 1/v terms only; keeps line-search iterates finite
// far outside the feasible set without altering feasible trajectories.
inline constexpr double kVelocityFloor = 0.5;  // m/s
inline constexpr double kMaxSubstep = 2.0;     // m
}  // namespace detail

// One spatial integration step of length ds under constant jerk and frozen
// curvature, RK4 with ~2 m substeps.  When `clamp_at_v_min` is set the
// velocity is clamped at limits.v_min (flagged in the result); the
// optimizer disables clamping and handles the bound as a constraint.
template <class T>
StepResult<T> step_spatial(const VehicleStateT<T>& state, const T& jerk, double ds, double rho,
                           const Limits& limits, bool clamp_at_v_min = true) {
    if (!(ds > 0.0)) throw std::invalid_argument("step_spatial: ds must be positive");
    if (!std::isfinite(value_of(state.v)) || !std::isfinite(value_of(jerk)))
        throw std::invalid_argument("step_spatial: non-finite state or input");
    (void)rho;  // curvature does not enter the longitudinal ODE; kept in the
                // signature because callers evaluate constraints against it

    const int substeps = std::max(1, static_cast<int>(std::ceil(ds / detail::kMaxSubstep)));
    const double h = ds / substeps;

    StepResult<T> out;
    T v = state.v, a = state.a, t = state.t;
    bool clamped = false;

    auto rhs = [&](const T& vv, const T& aa, T& dv, T& da, T& dt) {
        const T v_safe = max_with(vv, detail::kVelocityFloor);
        const T inv = T(1.0) / v_safe;
        dv = aa * inv;
        da = jerk * inv;
        dt = inv;
    };

    for (int k = 0; k < substeps; ++k) {
        T k1v, k1a, k1t, k2v, k2a, k2t, k3v, k3a, k3t, k4v, k4a, k4t;
        rhs(v, a, k1v, k1a, k1t);
        rhs(v + T(0.5 * h) * k1v, a + T(0.5 * h) * k1a, k2v, k2a, k2t);
        rhs(v + T(0.5 * h) * k2v, a + T(0.5 * h) * k2a, k3v, k3a, k3t);
        rhs(v + T(h) * k3v, a + T(h) * k3a, k4v, k4a, k4t);
        v += T(h / 6.0) * (k1v + T(2.0) * k2v + T(2.0) * k3v + k4v);
        a += T(h / 6.0) * (k1a + T(2.0) * k2a + T(2.0) * k3a + k4a);
        t += T(h / 6.0) * (k1t + T(2.0) * k2t + T(2.0) * k3t + k4t);
        if (clamp_at_v_min && value_of(v) < limits.v_min) {
            v = T(limits.v_min);
            clamped = true;
        }
    }

    out.state.s = state.s + T(ds);
    out.state.v = v;
    out.state.a = a;
    out.state.t = t;
    out.clamped = clamped;
    return out;
}

}  // namespace speedopt
