#pragma once

#include <cstddef>

#include <Eigen/Dense>

namespace beliefkit {

/// min cᵀx subject to a_ub x ≤ b_ub, a_eq x = b_eq, x ≥ 0. Either block may
/// have zero rows.
struct LinearProgram {
  Eigen::VectorXd c;
  Eigen::MatrixXd a_ub;
  Eigen::VectorXd b_ub;
  Eigen::MatrixXd a_eq;
  Eigen::VectorXd b_eq;
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
  std::size_t pivots = 0;
};

/// Dense two-phase tableau simplex with Bland's rule.
LpResult solve_lp(const LinearProgram& lp, std::size_t max_pivots = 200000, double tol = 1e-10);

}  // namespace beliefkit
