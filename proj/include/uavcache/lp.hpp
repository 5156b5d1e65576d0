#pragma once

#include <Eigen/Dense>

namespace uavcache {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Eigen::VectorXd x;
    double objective = 0.0;
};

/// Minimizes c'x subject to A x <= b and x >= 0.
/// Two-phase dense simplex; Dantzig pricing with index tie-breaks, switching to
/// Bland's rule after a stall so cycling cannot occur. Fully deterministic.
LpResult solve_lp(const Eigen::VectorXd& c, const Eigen::MatrixXd& A,
                  const Eigen::VectorXd& b);

/// Same with per-variable bounds lo <= x <= hi. Lower bounds must be finite;
/// infinite upper bounds are allowed.
LpResult solve_lp(const Eigen::VectorXd& c, const Eigen::MatrixXd& A,
                  const Eigen::VectorXd& b, const Eigen::VectorXd& lo,
                  const Eigen::VectorXd& hi);

}  // namespace uavcache
