#include "speedopt/qp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace speedopt {

namespace {

constexpr double kFeasTol = 1e-10;   // constraint violation considered active
constexpr double kSingTol = 1e-11;   // step direction treated as zero

}  // namespace

QpResult solve_qp(const Eigen::MatrixXd& H, const Eigen::VectorXd& g, const Eigen::MatrixXd& A,
                  const Eigen::VectorXd& b) {
    const int n = static_cast<int>(H.rows());
    const int m = static_cast<int>(A.rows());
    if (H.cols() != n || g.size() != n || (m > 0 && A.cols() != n) || b.size() != m)
        throw std::invalid_argument("solve_qp: dimension mismatch");

    Eigen::LLT<Eigen::MatrixXd> llt(H);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("solve_qp: H is not positive definite");

    QpResult res;
    res.x = -llt.solve(g);
    res.multipliers = Eigen::VectorXd::Zero(m);

    std::vector<int> active;                 // working set, rows of A
    Eigen::MatrixXd Hinv_At(n, 0);           // cached H^{-1} a_i for active rows
    Eigen::VectorXd u(0);                    // multipliers of the working set

    const double scale = 1.0 + g.cwiseAbs().maxCoeff() + H.cwiseAbs().maxCoeff();
    const int max_iter = 100 * (n + m + 1);

    auto violation = [&](int row) { return A.row(row).dot(res.x) - b(row); };

    for (res.iterations = 0; res.iterations < max_iter; ++res.iterations) {
        // most violated constraint
        int p = -1;
        double worst = kFeasTol * scale;
        for (int i = 0; i < m; ++i) {
            const double v = violation(i);
            if (v > worst) {
                worst = v;
                p = i;
            }
        }
        if (p < 0) break;  // feasible, hence optimal

        const Eigen::VectorXd a_p = A.row(p).transpose();
        const Eigen::VectorXd hinv_ap = llt.solve(a_p);
        double u_p = 0.0;  // multiplier being built up for constraint p

        // inner loop: take full/partial steps until p joins the working set
        while (true) {
            const int k = static_cast<int>(active.size());

            // primal step direction z and dual change r for adding a_p
            Eigen::VectorXd z = hinv_ap;
            Eigen::VectorXd r(k);
            if (k > 0) {
                // S = A_W H^{-1} A_W',  r = S^{-1} A_W H^{-1} a_p
                Eigen::MatrixXd S(k, k);
                Eigen::VectorXd rhs(k);
                for (int i = 0; i < k; ++i) {
                    rhs(i) = A.row(active[i]).dot(hinv_ap);
                    for (int j = 0; j < k; ++j) S(i, j) = A.row(active[i]).dot(Hinv_At.col(j));
                }
                r = S.ldlt().solve(rhs);
                z -= Hinv_At * r;
            }

            const double ztap = a_p.dot(z);
            double t_full = std::numeric_limits<double>::infinity();
            if (ztap > kSingTol * scale) t_full = violation(p) / ztap;

            // max dual step before some active multiplier hits zero
            double t_dual = std::numeric_limits<double>::infinity();
            int blocking = -1;
            for (int j = 0; j < k; ++j) {
                if (r(j) > kSingTol) {
                    const double t = u(j) / r(j);
                    if (t < t_dual) {
                        t_dual = t;
                        blocking = j;
                    }
                }
            }

            if (!std::isfinite(t_full) && !std::isfinite(t_dual)) {
                res.status = QpStatus::infeasible;
                return res;
            }

            const double t = std::min(t_full, t_dual);
            if (std::isfinite(t_full)) res.x -= t * z;
            for (int j = 0; j < k; ++j) u(j) -= t * r(j);
            u_p += t;

            if (t == t_full && std::isfinite(t_full)) {
                // constraint p becomes active
                active.push_back(p);
                Hinv_At.conservativeResize(Eigen::NoChange, k + 1);
                Hinv_At.col(k) = hinv_ap;
                u.conservativeResize(k + 1);
                u(k) = u_p;
                break;
            }
            // drop the blocking constraint and continue the dual step
            active.erase(active.begin() + blocking);
            for (int c = blocking; c + 1 < k; ++c) Hinv_At.col(c) = Hinv_At.col(c + 1);
            Hinv_At.conservativeResize(Eigen::NoChange, k - 1);
            for (int c = blocking; c + 1 < k; ++c) u(c) = u(c + 1);
            u.conservativeResize(k - 1);
        }
    }
    if (res.iterations >= max_iter) res.status = QpStatus::max_iterations;

    for (std::size_t j = 0; j < active.size(); ++j) res.multipliers(active[j]) = u(j);
    res.objective = 0.5 * res.x.dot(H * res.x) + g.dot(res.x);
    return res;
}

}  // namespace speedopt
