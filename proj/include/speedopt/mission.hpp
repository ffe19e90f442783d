#pragma once

// Receding-horizon mission: chain horizons along the path with one-step
// advance, committing the first interval of each solution and re-anchoring
// at its second node (states and input alike, per the ideal-plant rule).

#include <memory>
#include <string>
#include <vector>

#include "speedopt/horizon.hpp"
#include "speedopt/spline.hpp"
#include "speedopt/trace_eval.hpp"

namespace speedopt {

struct MissionConfig {
    int horizon_nodes = 40;
    double start_v = 25.0;  // m/s, motorway entry speed
    double start_a = 0.0;
    Limits limits;
    ConflictModelParams sickness;
    AccelConstraintMode accel_mode = AccelConstraintMode::modulus;
    AdaptiveGateMode gate_mode = AdaptiveGateMode::rolled;
    double kkt_tolerance = 1e-6;
    int max_iterations = 200;
};

struct TrajectoryNode {
    double s = 0.0;
    double t = 0.0;
    double v = 0.0;
    double a_t = 0.0;
    double a_lat = 0.0;
    double a_mod = 0.0;
    double j = 0.0;  // input over the interval ending at this node
};

struct ConstraintAudit {
    int violations = 0;
    double worst_accel_excess = 0.0;  // max(a_mod - a_max), clamped at 0
    double worst_jerk_excess = 0.0;
    double worst_v_excess = 0.0;
};

struct SolverStats {
    int horizons = 0;
    long total_iterations = 0;
    int max_iterations_hit = 0;  // horizons that ended at the cap
    double worst_kkt = 0.0;
};

enum class MissionStatus { ok, infeasible, solver_failure };

struct MissionResult {
    std::string label;
    MissionStatus status = MissionStatus::ok;
    double travel_time = 0.0;       // s, at s = total_length
    double max_msi_unipg = 0.0;     // %
    double max_msi_iso = 0.0;       // %
    std::vector<TrajectoryNode> trajectory;
    MsiSeries msi;
    ConstraintAudit audit;
    SolverStats stats;
    double failed_station = -1.0;   // s of the infeasible horizon, if any
    std::string message;
};

// Audit tolerances: committed trajectories must satisfy the constraints
// to within these bounds at every node.
inline constexpr double kAuditAccelTol = 1e-6;
inline constexpr double kAuditJerkTol = 1e-9;
inline constexpr double kAuditVelTol = 1e-6;

ConstraintAudit audit_trajectory(const std::vector<TrajectoryNode>& trajectory,
                                 const Limits& limits);

// Run the full mission.  Throws std::invalid_argument on a road shorter
// than one horizon; infeasibility is reported via MissionResult::status.
MissionResult receding_loop(const PathSpline& spline, const CostSpec& cost,
                            const MissionConfig& config, const std::string& label = "");

}  // namespace speedopt
