#pragma once

// Dense strictly convex quadratic programming by the dual active-set
// method (Goldfarb-Idnani):
//
//   minimize    1/2 x' H x + g' x
//   subject to  A x <= b
//
// Starts from the unconstrained minimizer and adds violated constraints
// one at a time, dropping blocking ones as dictated by the dual step, so
// primal feasibility holds only at termination while dual feasibility is
// maintained throughout.  H must be positive definite.

#include <Eigen/Dense>

namespace speedopt {

enum class QpStatus { optimal, infeasible, max_iterations };

struct QpResult {
    Eigen::VectorXd x;
    Eigen::VectorXd multipliers;  // one per row of A, >= 0
    QpStatus status = QpStatus::optimal;
    int iterations = 0;
    double objective = 0.0;
};

QpResult solve_qp(const Eigen::MatrixXd& H, const Eigen::VectorXd& g, const Eigen::MatrixXd& A,
                  const Eigen::VectorXd& b);

}  // namespace speedopt
