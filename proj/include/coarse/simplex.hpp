#pragma once

#include <Eigen/Dense>

namespace coarse {

/// Result of `simplex_max`. `duals` are the row multipliers read off the
/// slack columns of the final tableau.
struct LpSolution {
  Eigen::VectorXd x;
  Eigen::VectorXd duals;
  double value = 0.0;
  int pivots = 0;
  bool optimal = false;
  bool unbounded = false;
};

/// Dense tableau simplex for  max c.x  s.t.  A x <= b,  x >= 0  with b >= 0,
/// so the slack basis is feasible and no phase one is needed. Bland's rule
/// is used throughout, which rules out cycling on degenerate vertices.
/// Throws Error(InvalidArgument) on a negative right-hand side.
LpSolution simplex_max(const Eigen::VectorXd& c, const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                       int max_pivots = 100000);

}  // namespace coarse
