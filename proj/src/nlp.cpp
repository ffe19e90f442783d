#include "speedopt/nlp.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "speedopt/qp.hpp"

namespace speedopt {

namespace {

void check_finite(double v, const Eigen::VectorXd& x, const char* what) {
    if (std::isfinite(v)) return;
    std::ostringstream os;
    os << "solve_nlp: " << what << " returned a non-finite value at x = [";
    for (int i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x(i);
    os << "]";
    throw std::runtime_error(os.str());
}

struct Evaluation {
    double f = 0.0;
    Eigen::VectorXd grad;
    Eigen::VectorXd c;
    Eigen::MatrixXd jac;
};

double merit(const Evaluation& e, double sigma) {
    double viol = 0.0;
    for (int i = 0; i < e.c.size(); ++i) viol += std::max(0.0, e.c(i));
    return e.f + sigma * viol;
}

double sum_violation(const Eigen::VectorXd& c) {
    double viol = 0.0;
    for (int i = 0; i < c.size(); ++i) viol += std::max(0.0, c(i));
    return viol;
}

}  // namespace

NlpResult solve_nlp(const NlpProblem& problem, const Eigen::VectorXd& x0,
                    const NlpOptions& options) {
    const int n = problem.n;
    const int m = problem.m;
    if (n <= 0 || x0.size() != n || problem.lower.size() != n || problem.upper.size() != n)
        throw std::invalid_argument("solve_nlp: inconsistent dimensions");
    if (!problem.objective) throw std::invalid_argument("solve_nlp: missing objective");
    if (m > 0 && !problem.constraints)
        throw std::invalid_argument("solve_nlp: missing constraint evaluator");

    auto evaluate = [&](const Eigen::VectorXd& x, bool with_derivatives, Evaluation& e) {
        if (with_derivatives) {
            e.grad.resize(n);
            e.f = problem.objective(x, &e.grad);
            for (int i = 0; i < n; ++i) check_finite(e.grad(i), x, "objective gradient");
        } else {
            e.f = problem.objective(x, nullptr);
        }
        check_finite(e.f, x, "objective");
        if (m > 0) {
            if (with_derivatives) {
                e.jac.resize(m, n);
                problem.constraints(x, e.c, &e.jac);
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < n; ++j) check_finite(e.jac(i, j), x, "constraint jacobian");
            } else {
                problem.constraints(x, e.c, nullptr);
            }
            for (int i = 0; i < m; ++i) check_finite(e.c(i), x, "constraint");
        } else {
            e.c.resize(0);
        }
    };

    NlpResult res;
    res.x = x0.cwiseMax(problem.lower).cwiseMin(problem.upper);

    Eigen::MatrixXd B = options.initial_hessian.rows() == n && options.initial_hessian.cols() == n
                            ? options.initial_hessian
                            : Eigen::MatrixXd::Identity(n, n);

    Evaluation cur;
    evaluate(res.x, true, cur);

    Eigen::VectorXd lambda = Eigen::VectorXd::Zero(m);
    double sigma = 1.0;

    for (res.iterations = 0; res.iterations < options.max_iterations; ++res.iterations) {
        // ---- QP subproblem over the step d ----
        // rows: general linearized constraints, then box bounds as x+d in [lb, ub]
        const int rows = m + 2 * n;
        Eigen::MatrixXd A(rows, n);
        Eigen::VectorXd b(rows);
        if (m > 0) {
            A.topRows(m) = cur.jac;
            b.head(m) = -cur.c;
        }
        A.middleRows(m, n) = Eigen::MatrixXd::Identity(n, n);
        b.segment(m, n) = problem.upper - res.x;
        A.bottomRows(n) = -Eigen::MatrixXd::Identity(n, n);
        b.tail(n) = res.x - problem.lower;

        QpResult qp = solve_qp(B, cur.grad, A, b);
        Eigen::VectorXd d;
        Eigen::VectorXd new_lambda = lambda;

        if (qp.status == QpStatus::optimal) {
            d = qp.x;
            new_lambda = qp.multipliers.head(m);
        } else {
            // elastic subproblem: one slack relaxing the general rows
            const double gamma = 1e4 * (1.0 + cur.grad.cwiseAbs().maxCoeff());
            Eigen::MatrixXd He = Eigen::MatrixXd::Zero(n + 1, n + 1);
            He.topLeftCorner(n, n) = B;
            He(n, n) = 1e-8;  // keep the QP strictly convex
            Eigen::VectorXd ge(n + 1);
            ge.head(n) = cur.grad;
            ge(n) = gamma;
            Eigen::MatrixXd Ae = Eigen::MatrixXd::Zero(rows + 1, n + 1);
            Ae.topLeftCorner(rows, n) = A;
            for (int i = 0; i < m; ++i) Ae(i, n) = -1.0;  // c + J d <= slack
            Ae(rows, n) = -1.0;                           // slack >= 0
            Eigen::VectorXd be(rows + 1);
            be.head(rows) = b;
            be(rows) = 0.0;
            QpResult eqp = solve_qp(He, ge, Ae, be);
            if (eqp.status == QpStatus::optimal) {
                d = eqp.x.head(n);
                new_lambda = eqp.multipliers.head(m);
            } else {
                // projected-gradient fallback on the merit function
                d = -(cur.grad);
                if (m > 0) {
                    for (int i = 0; i < m; ++i)
                        if (cur.c(i) > 0.0) d -= sigma * cur.jac.row(i).transpose();
                }
                const double norm = d.norm();
                if (norm > 1.0) d /= norm;
                d = (res.x + d).cwiseMax(problem.lower).cwiseMin(problem.upper) - res.x;
                new_lambda.setZero();
            }
        }

        // ---- convergence test (stationarity via projected gradient) ----
        Eigen::VectorXd lag_grad = cur.grad;
        if (m > 0) lag_grad += cur.jac.transpose() * new_lambda;
        const Eigen::VectorXd projected =
            res.x - (res.x - lag_grad).cwiseMax(problem.lower).cwiseMin(problem.upper);
        double comp = 0.0;
        for (int i = 0; i < m; ++i) comp = std::max(comp, std::abs(new_lambda(i) * cur.c(i)));
        const double viol = m > 0 ? cur.c.maxCoeff() : 0.0;
        res.kkt_residual = std::max({projected.lpNorm<Eigen::Infinity>(), comp, viol});
        if (res.kkt_residual <= options.kkt_tolerance) {
            lambda = new_lambda;
            res.status = NlpStatus::converged;
            break;
        }
        if (d.lpNorm<Eigen::Infinity>() < 1e-14) {
            // no progress possible; classify by feasibility
            lambda = new_lambda;
            res.status = viol <= options.constraint_tolerance ? NlpStatus::converged
                                                              : NlpStatus::infeasible;
            break;
        }

        // ---- l1 merit line search ----
        double lambda_inf = 0.0;
        for (int i = 0; i < m; ++i) lambda_inf = std::max(lambda_inf, std::abs(new_lambda(i)));
        sigma = std::max({sigma, 1.2 * lambda_inf, 1.0});

        const double phi0 = merit(cur, sigma);
        const double dderiv = cur.grad.dot(d) - sigma * sum_violation(cur.c);

        double alpha = 1.0;
        Evaluation trial;
        bool accepted = false;
        for (int ls = 0; ls < 30; ++ls) {
            evaluate(res.x + alpha * d, false, trial);
            if (merit(trial, sigma) <= phi0 + 1e-4 * alpha * std::min(dderiv, 0.0)) {
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) {
            // merit is locally flat; accept the smallest step to avoid stalling
            evaluate(res.x + alpha * d, false, trial);
        }

        const Eigen::VectorXd x_new = res.x + alpha * d;
        Evaluation next;
        evaluate(x_new, true, next);

        // ---- damped BFGS update on the Lagrangian gradient ----
        Eigen::VectorXd grad_lag_old = cur.grad;
        Eigen::VectorXd grad_lag_new = next.grad;
        if (m > 0) {
            grad_lag_old += cur.jac.transpose() * new_lambda;
            grad_lag_new += next.jac.transpose() * new_lambda;
        }
        const Eigen::VectorXd s = x_new - res.x;
        Eigen::VectorXd y = grad_lag_new - grad_lag_old;
        const double sBs = s.dot(B * s);
        const double sy = s.dot(y);
        if (sBs > 0.0 && s.norm() > 1e-14) {
            if (sy < 0.2 * sBs) {  // Powell damping keeps B positive definite
                const double theta = 0.8 * sBs / (sBs - sy);
                y = theta * y + (1.0 - theta) * (B * s);
            }
            const double sy_d = s.dot(y);
            if (sy_d > 1e-12 * s.norm() * y.norm()) {
                const Eigen::VectorXd Bs = B * s;
                B += (y * y.transpose()) / sy_d - (Bs * Bs.transpose()) / sBs;
            }
        }

        res.x = x_new;
        cur = next;
        lambda = new_lambda;
    }

    res.multipliers = lambda;
    res.objective = cur.f;
    res.max_violation = m > 0 ? std::max(0.0, cur.c.maxCoeff()) : 0.0;
    res.hessian = B;
    return res;
}

}  // namespace speedopt
