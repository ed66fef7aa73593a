#pragma once

#include <Eigen/Core>

namespace atri::lp
{

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
    Status status{Status::Infeasible};
    Eigen::VectorXd x;
    double objective{0.0};
};

/**
 * @brief Maximize c.x subject to A x = b, x >= 0
 *
 * Dense two-phase tableau simplex with Bland's rule. Redundant equality
 * rows are detected and dropped after phase one. Throws
 * LPNumericalFailure if the pivot budget is exhausted.
 */
Result maximize(const Eigen::VectorXd& c, const Eigen::MatrixXd& A, const Eigen::VectorXd& b);

}  // namespace atri::lp
