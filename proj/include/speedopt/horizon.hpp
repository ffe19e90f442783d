#pragma once

// One receding-horizon subproblem: N nodes spaced ds apart along the
// path, curvature frozen per node, jerk per interval as the decision
// vector.  The rollout integrates the spatial dynamics and, for the
// sickness-aware costs, the conflict model; objective and constraint
// derivatives come from a forward-mode pass over the same rollout.

#include <vector>

#include <Eigen/Dense>

#include "speedopt/cost.hpp"
#include "speedopt/dynamics.hpp"
#include "speedopt/nlp.hpp"

namespace speedopt {

enum class AccelConstraintMode {
    modulus,   // sqrt(a^2 + (v^2 rho)^2) <= a_max
    per_axis,  // |a| <= a_max and v^2 rho <= a_max separately
};

enum class AdaptiveGateMode {
    rolled,  // gate h by the MSI rolled forward within the horizon
    anchor,  // gate by the committed MSI at the horizon anchor
};

struct HorizonProblem {
    VehicleState start;          // anchor state (node 0)
    SicknessState sick_start;    // committed sickness state at the anchor
    double incumbent_jerk = 0.0; // input at the anchor, seeds the warm start
    int nodes = 40;              // N >= 2
    double ds = 0.0;             // per-node spacing [m]
    std::vector<double> curvature;  // rho at node stations, size N
    Limits limits;
    CostSpec cost;
    ConflictModelParams sickness;
    AccelConstraintMode accel_mode = AccelConstraintMode::modulus;
    AdaptiveGateMode gate_mode = AdaptiveGateMode::rolled;

    void validate() const;  // throws std::invalid_argument
};

enum class SolveStatus { converged, max_iter, infeasible };

struct HorizonSolution {
    std::vector<double> jerk;          // N-1 interval inputs
    std::vector<VehicleState> states;  // N rolled-out states
    std::vector<SicknessState> sick;   // N rolled-out sickness states
    double objective = 0.0;
    SolveStatus status = SolveStatus::infeasible;
    int iterations = 0;
    double kkt_residual = 0.0;
    Eigen::MatrixXd hessian;  // BFGS carry-over for the next horizon
};

struct SolveOptions {
    double kkt_tolerance = 1e-6;
    int max_iterations = 200;
    // warm start: previous jerk sequence (shifted by the caller) and Hessian
    std::vector<double> jerk_guess;
    Eigen::MatrixXd hessian_guess;
};

// Roll the plant (and sickness model when the cost needs it) through the
// horizon for a given jerk sequence.  Templated so T = Dual yields every
// sensitivity in one pass.
template <class T>
struct HorizonRollout {
    std::vector<VehicleStateT<T>> states;
    std::vector<SicknessStateT<T>> sick;
    T objective{};
};

template <class T>
HorizonRollout<T> roll_horizon(const HorizonProblem& p, const std::vector<T>& jerk);

// Tolerance applied to the anchor-state feasibility precheck.
inline constexpr double kAnchorFeasTol = 1e-6;

HorizonSolution solve_horizon(const HorizonProblem& problem, const SolveOptions& options = {});

}  // namespace speedopt
