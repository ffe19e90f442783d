#include "speedopt/mission.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace speedopt {

ConstraintAudit audit_trajectory(const std::vector<TrajectoryNode>& trajectory,
                                 const Limits& limits) {
    ConstraintAudit audit;
    for (const auto& node : trajectory) {
        const double accel_excess = node.a_mod - limits.a_max_total;
        const double jerk_excess = std::abs(node.j) - limits.j_max;
        const double v_excess =
            std::max(node.v - limits.v_max, limits.v_min - node.v);
        bool bad = false;
        if (accel_excess > kAuditAccelTol) bad = true;
        if (jerk_excess > kAuditJerkTol) bad = true;
        if (v_excess > kAuditVelTol) bad = true;
        if (bad) ++audit.violations;
        audit.worst_accel_excess = std::max(audit.worst_accel_excess, accel_excess);
        audit.worst_jerk_excess = std::max(audit.worst_jerk_excess, jerk_excess);
        audit.worst_v_excess = std::max(audit.worst_v_excess, v_excess);
    }
    audit.worst_accel_excess = std::max(0.0, audit.worst_accel_excess);
    audit.worst_jerk_excess = std::max(0.0, audit.worst_jerk_excess);
    audit.worst_v_excess = std::max(0.0, audit.worst_v_excess);
    return audit;
}

MissionResult receding_loop(const PathSpline& spline, const CostSpec& cost,
                            const MissionConfig& config, const std::string& label) {
    config.limits.validate();
    config.sickness.validate();
    cost.validate();
    const double length = spline.total_length();
    const double nominal_span =
        adaptive_step_size(config.start_v) * (config.horizon_nodes - 1);
    if (length <= nominal_span)
        throw std::invalid_argument(
            "receding_loop: path shorter than one horizon (" + std::to_string(length) + " m <= " +
            std::to_string(nominal_span) + " m); reduce horizon_nodes or extend the road");

    MissionResult result;
    result.label = label;

    VehicleState state{0.0, config.start_v, config.start_a, 0.0};
    SicknessState sick = initial_sickness_state();
    double incumbent_jerk = 0.0;

    result.trajectory.push_back({0.0, 0.0, state.v, state.a,
                                 lateral_accel(state.v, spline.curvature(0.0)),
                                 accel_modulus(state.a, state.v, spline.curvature(0.0)), 0.0});

    SolveOptions warm;
    warm.kkt_tolerance = config.kkt_tolerance;
    warm.max_iterations = config.max_iterations;

    while (state.s < length - 1e-9) {
        HorizonProblem problem;
        problem.start = state;
        problem.sick_start = sick;
        problem.incumbent_jerk = incumbent_jerk;
        problem.limits = config.limits;
        problem.cost = cost;
        problem.sickness = config.sickness;
        problem.accel_mode = config.accel_mode;
        problem.gate_mode = config.gate_mode;

        // adaptive spacing; the horizon reaching the path end is truncated
        // to land exactly on it and committed in full
        double ds = adaptive_step_size(state.v);
        int nodes = config.horizon_nodes;
        const double remaining = length - state.s;
        bool terminal = false;
        if (ds * (nodes - 1) >= remaining - 1e-9) {
            nodes = std::max(2, static_cast<int>(std::ceil(remaining / ds)) + 1);
            nodes = std::min(nodes, config.horizon_nodes);
            ds = remaining / (nodes - 1);
            terminal = true;
        }
        problem.nodes = nodes;
        problem.ds = ds;
        problem.curvature.resize(nodes);
        for (int k = 0; k < nodes; ++k)
            problem.curvature[k] = spline.curvature(std::min(state.s + k * ds, length));

        const HorizonSolution solution = solve_horizon(problem, warm);
        ++result.stats.horizons;
        result.stats.total_iterations += solution.iterations;
        result.stats.worst_kkt = std::max(result.stats.worst_kkt, solution.kkt_residual);
        if (solution.status == SolveStatus::max_iter) ++result.stats.max_iterations_hit;

        if (solution.status == SolveStatus::infeasible) {
            result.status = MissionStatus::infeasible;
            result.failed_station = state.s;
            result.message = "horizon infeasible at s = " + std::to_string(state.s) + " m";
            return result;
        }

        // committed nodes must stand up to the audit even if the solver
        // stopped at the iteration cap
        const int commit_count = terminal ? nodes - 1 : 1;
        bool commit_failed = false;
        for (int k = 1; k <= commit_count; ++k) {
            const VehicleState committed = solution.states[k];
            const double rho = problem.curvature[k];
            const double a_lat = lateral_accel(committed.v, rho);
            const double a_mod = accel_modulus(committed.a, committed.v, rho);
            if (a_mod > config.limits.a_max_total + kAuditAccelTol ||
                committed.v > config.limits.v_max + kAuditVelTol ||
                committed.v < config.limits.v_min - kAuditVelTol) {
                result.status = MissionStatus::solver_failure;
                result.failed_station = state.s;
                result.message = "committed node violates constraints at s = " +
                                 std::to_string(committed.s) + " m (solver status " +
                                 std::to_string(static_cast<int>(solution.status)) + ")";
                commit_failed = true;
                break;
            }

            result.trajectory.push_back({committed.s, committed.t, committed.v, committed.a,
                                         a_lat, a_mod, solution.jerk[k - 1]});

            // advance the committed sickness state over the interval
            const double dt = committed.t - state.t;
            const std::array<double, 3> f = {committed.a, a_lat, kGravity};
            sick = detail::conflict_advance(sick, f, dt, config.sickness);
            state = committed;
        }
        if (commit_failed) return result;
        if (terminal) break;

        // re-anchor at the second node: states and input
        incumbent_jerk = solution.jerk.size() > 1 ? solution.jerk[1] : solution.jerk[0];

        // shift the solution one interval for the next warm start
        warm.jerk_guess.assign(solution.jerk.begin() + 1, solution.jerk.end());
        if (!warm.jerk_guess.empty()) warm.jerk_guess.push_back(warm.jerk_guess.back());
        warm.hessian_guess = solution.hessian;
    }

    result.travel_time = state.t;

    // sickness metrics over the committed trajectory
    std::vector<TraceSample> trace;
    trace.reserve(result.trajectory.size());
    for (const auto& node : result.trajectory) trace.push_back({node.t, node.a_t, node.a_lat});
    result.msi = evaluate_trace(trace, config.sickness);
    result.max_msi_unipg = result.msi.max_unipg;
    result.max_msi_iso = result.msi.max_iso;

    result.audit = audit_trajectory(result.trajectory, config.limits);
    return result;
}

}  // namespace speedopt
