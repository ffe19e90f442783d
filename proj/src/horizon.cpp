#include "speedopt/horizon.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace speedopt {

void HorizonProblem::validate() const {
    if (nodes < 2) throw std::invalid_argument("HorizonProblem: need at least 2 nodes");
    if (nodes > kMaxSeeds)
        throw std::invalid_argument("HorizonProblem: node count exceeds derivative capacity (" +
                                    std::to_string(kMaxSeeds) + ")");
    if (!(ds > 0.0)) throw std::invalid_argument("HorizonProblem: ds must be positive");
    if (curvature.size() != static_cast<std::size_t>(nodes))
        throw std::invalid_argument("HorizonProblem: curvature samples must match node count");
    for (double r : curvature)
        if (r < 0.0) throw std::invalid_argument("HorizonProblem: curvature must be >= 0");
    limits.validate();
    cost.validate();
    sickness.validate();
}

template <class T>
HorizonRollout<T> roll_horizon(const HorizonProblem& p, const std::vector<T>& jerk) {
    const int n_ctl = p.nodes - 1;
    if (static_cast<int>(jerk.size()) != n_ctl)
        throw std::invalid_argument("roll_horizon: jerk sequence size mismatch");

    const bool with_sickness = needs_sickness_rollout(p.cost.kind);
    // anchor gate: adaptive cost with anchor mode multiplies by a constant MSI
    CostSpec spec = p.cost;
    double anchor_gate = 1.0;
    if (p.cost.kind == CostKind::adaptive_ms && p.gate_mode == AdaptiveGateMode::anchor) {
        anchor_gate = msi(p.sick_start, p.sickness);
        spec.kind = CostKind::ms;
        spec.c_ms = p.cost.c_ms * anchor_gate;
    }

    HorizonRollout<T> out;
    out.states.resize(p.nodes);
    out.states[0] = {T(p.start.s), T(p.start.v), T(p.start.a), T(p.start.t)};
    if (with_sickness || p.cost.kind == CostKind::adaptive_ms) {
        out.sick.resize(p.nodes);
        SicknessStateT<T> s0;
        for (int i = 0; i < 3; ++i) {
            s0.sensed[i] = T(p.sick_start.sensed[i]);
            s0.vertical[i] = T(p.sick_start.vertical[i]);
        }
        s0.disturb = T(p.sick_start.disturb);
        s0.acc_fast = T(p.sick_start.acc_fast);
        s0.acc_slow = T(p.sick_start.acc_slow);
        out.sick[0] = s0;
    }

    out.objective = T(0.0);
    const SicknessStateT<T> rest_sick{};
    for (int k = 0; k < n_ctl; ++k) {
        const auto step = step_spatial(out.states[k], jerk[k], p.ds, p.curvature[k], p.limits,
                                       /*clamp_at_v_min=*/false);
        out.states[k + 1] = step.state;

        if (!out.sick.empty()) {
            const T dt = out.states[k + 1].t - out.states[k].t;
            const std::array<T, 3> f = {out.states[k + 1].a,
                                        lateral_accel(out.states[k + 1].v, p.curvature[k + 1]),
                                        T(kGravity)};
            out.sick[k + 1] = detail::conflict_advance(out.sick[k], f, dt, p.sickness);
        }

        const SicknessStateT<T>& sick_node = out.sick.empty() ? rest_sick : out.sick[k + 1];
        out.objective += stage_cost(spec, out.states[k + 1], jerk[k], sick_node,
                                    p.curvature[k + 1], p.sickness);
    }
    return out;
}

template HorizonRollout<double> roll_horizon(const HorizonProblem&, const std::vector<double>&);
template HorizonRollout<Dual> roll_horizon(const HorizonProblem&, const std::vector<Dual>&);

namespace {

// Constraint rows per node k = 1..N-1 appended in order.
int rows_per_node(AccelConstraintMode mode) {
    return mode == AccelConstraintMode::modulus ? 3 : 5;
}

template <class T>
void node_constraints(const HorizonProblem& p, const VehicleStateT<T>& x, int node,
                      std::vector<T>& out) {
    const double rho = p.curvature[node];
    const double a_max = p.limits.a_max_total;
    if (p.accel_mode == AccelConstraintMode::modulus) {
        const T lat = lateral_accel(x.v, rho);
        out.push_back(x.a * x.a + lat * lat - T(a_max * a_max));
    } else {
        out.push_back(x.a - T(a_max));
        out.push_back(-x.a - T(a_max));
        out.push_back(lateral_accel(x.v, rho) - T(a_max));
    }
    out.push_back(x.v - T(p.limits.v_max));
    out.push_back(T(p.limits.v_min) - x.v);
}

bool anchor_feasible(const HorizonProblem& p) {
    const double amod = accel_modulus(p.start.a, p.start.v, p.curvature[0]);
    const bool accel_ok = p.accel_mode == AccelConstraintMode::modulus
                              ? amod <= p.limits.a_max_total + kAnchorFeasTol
                              : std::abs(p.start.a) <= p.limits.a_max_total + kAnchorFeasTol &&
                                    lateral_accel(p.start.v, p.curvature[0]) <=
                                        p.limits.a_max_total + kAnchorFeasTol;
    return accel_ok && p.start.v >= p.limits.v_min - kAnchorFeasTol &&
           p.start.v <= p.limits.v_max + kAnchorFeasTol;
}

}  // namespace

HorizonSolution solve_horizon(const HorizonProblem& problem, const SolveOptions& options) {
    problem.validate();

    HorizonSolution sol;
    if (!anchor_feasible(problem)) {
        sol.status = SolveStatus::infeasible;
        return sol;
    }

    const int n_ctl = problem.nodes - 1;
    const int per_node = rows_per_node(problem.accel_mode);
    const int m = per_node * (problem.nodes - 1);

    NlpProblem nlp;
    nlp.n = n_ctl;
    nlp.m = m;
    nlp.lower = Eigen::VectorXd::Constant(n_ctl, -problem.limits.j_max);
    nlp.upper = Eigen::VectorXd::Constant(n_ctl, problem.limits.j_max);

    nlp.objective = [&problem](const Eigen::VectorXd& u, Eigen::VectorXd* grad) {
        if (!grad) {
            std::vector<double> jerk(u.data(), u.data() + u.size());
            return roll_horizon(problem, jerk).objective;
        }
        std::vector<Dual> jerk(u.size());
        for (int i = 0; i < u.size(); ++i)
            jerk[i] = Dual::seeded(u(i), i, static_cast<int>(u.size()));
        const auto roll = roll_horizon(problem, jerk);
        for (int i = 0; i < u.size(); ++i) (*grad)(i) = roll.objective.deriv(i);
        return roll.objective.value();
    };

    nlp.constraints = [&problem, per_node](const Eigen::VectorXd& u, Eigen::VectorXd& c,
                                           Eigen::MatrixXd* jac) {
        const int n = static_cast<int>(u.size());
        const int rows = per_node * n;
        c.resize(rows);
        if (!jac) {
            std::vector<double> jerk(u.data(), u.data() + u.size());
            const auto roll = roll_horizon(problem, jerk);
            std::vector<double> vals;
            vals.reserve(rows);
            for (int k = 1; k < problem.nodes; ++k)
                node_constraints(problem, roll.states[k], k, vals);
            for (int i = 0; i < rows; ++i) c(i) = vals[i];
            return;
        }
        std::vector<Dual> jerk(u.size());
        for (int i = 0; i < n; ++i) jerk[i] = Dual::seeded(u(i), i, n);
        const auto roll = roll_horizon(problem, jerk);
        std::vector<Dual> vals;
        vals.reserve(rows);
        for (int k = 1; k < problem.nodes; ++k) node_constraints(problem, roll.states[k], k, vals);
        jac->resize(rows, n);
        for (int i = 0; i < rows; ++i) {
            c(i) = vals[i].value();
            for (int j = 0; j < n; ++j) (*jac)(i, j) = vals[i].deriv(j);
        }
    };

    Eigen::VectorXd u0 = Eigen::VectorXd::Constant(n_ctl, problem.incumbent_jerk);
    if (!options.jerk_guess.empty()) {
        for (int i = 0; i < n_ctl && i < static_cast<int>(options.jerk_guess.size()); ++i)
            u0(i) = options.jerk_guess[i];
    }
    u0 = u0.cwiseMax(nlp.lower).cwiseMin(nlp.upper);

    NlpOptions nopt;
    nopt.kkt_tolerance = options.kkt_tolerance;
    nopt.max_iterations = options.max_iterations;
    if (options.hessian_guess.rows() == n_ctl && options.hessian_guess.cols() == n_ctl)
        nopt.initial_hessian = options.hessian_guess;

    const NlpResult nres = solve_nlp(nlp, u0, nopt);

    sol.jerk.assign(nres.x.data(), nres.x.data() + nres.x.size());
    // snap bound roundoff so committed inputs respect |j| <= j_max exactly
    for (double& j : sol.jerk)
        j = std::clamp(j, -problem.limits.j_max, problem.limits.j_max);

    const auto roll = roll_horizon(problem, sol.jerk);
    sol.states.resize(problem.nodes);
    for (int k = 0; k < problem.nodes; ++k) sol.states[k] = roll.states[k];
    if (!roll.sick.empty()) {
        sol.sick.resize(problem.nodes);
        for (int k = 0; k < problem.nodes; ++k) sol.sick[k] = roll.sick[k];
    }
    sol.objective = roll.objective;
    sol.iterations = nres.iterations;
    sol.kkt_residual = nres.kkt_residual;
    sol.hessian = nres.hessian;
    switch (nres.status) {
        case NlpStatus::converged: sol.status = SolveStatus::converged; break;
        case NlpStatus::max_iterations: sol.status = SolveStatus::max_iter; break;
        case NlpStatus::infeasible: sol.status = SolveStatus::infeasible; break;
    }
    return sol;
}

}  // namespace speedopt
