#pragma once

// Embedded smooth NLP solver:
//
//   minimize    f(x)
//   subject to  c(x) <= 0,  lb <= x <= ub
//
// Sequential quadratic programming with damped BFGS updates of the
// Lagrangian Hessian, an l1 merit-function backtracking line search, and
// dual active-set QP subproblems.  An elastic (single-slack) subproblem
// covers infeasible linearizations; a projected-gradient step on the
// merit function is the fallback when the QP cannot be solved at all.

#include <functional>

#include <Eigen/Dense>

namespace speedopt {

struct NlpProblem {
    int n = 0;  // variables
    int m = 0;  // inequality constraints c(x) <= 0
    Eigen::VectorXd lower, upper;

    // value = objective(x, grad); grad filled when non-null.
    std::function<double(const Eigen::VectorXd&, Eigen::VectorXd*)> objective;
    // constraints(x, c, jac); jac (m x n) filled when non-null.  May be
    // empty when m == 0.
    std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&, Eigen::MatrixXd*)> constraints;
};

enum class NlpStatus { converged, max_iterations, infeasible };

struct NlpOptions {
    double kkt_tolerance = 1e-6;
    int max_iterations = 200;
    double constraint_tolerance = 1e-8;
    // optional Hessian seed carried between warm-started solves
    Eigen::MatrixXd initial_hessian;
};

struct NlpResult {
    Eigen::VectorXd x;
    Eigen::VectorXd multipliers;  // for c(x) <= 0 rows
    NlpStatus status = NlpStatus::max_iterations;
    int iterations = 0;
    double objective = 0.0;
    double kkt_residual = 0.0;
    double max_violation = 0.0;
    Eigen::MatrixXd hessian;  // final BFGS matrix, reusable as a warm start
};

// Throws std::invalid_argument on malformed problems and
// std::runtime_error when an evaluator returns NaN (the message names the
// evaluation point).
NlpResult solve_nlp(const NlpProblem& problem, const Eigen::VectorXd& x0,
                    const NlpOptions& options = {});

}  // namespace speedopt
