#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace coarse {

/// Dense primal-dual interior-point solver for
///
///   maximize  objective . y
///   subject to  G(y) is PSD,  coef_l . y <= rhs_l  for every row l,
///
/// where the first m(m+1)/2 entries of y are the upper triangle of the
/// symmetric m x m matrix G (see `gram_var`) and any further entries are
/// free scalars. Internally the problem is the dual of a standard-form SDP
/// with one PSD block and one diagonal block; the HKM search direction is
/// combined with Mehrotra's predictor-corrector.
struct SparseRow {
  std::vector<std::pair<int, double>> terms;
  double rhs = 0.0;
};

struct SdpProblem {
  int psd_dim = 0;
  int free_vars = 0;
  Eigen::VectorXd objective;
  std::vector<SparseRow> rows;

  int gram_var_count() const { return psd_dim * (psd_dim + 1) / 2; }
  int var_count() const { return gram_var_count() + free_vars; }
};

/// Index of G(a, b) in y.
inline int gram_var(int a, int b, int m) {
  if (a > b) std::swap(a, b);
  return a * m - a * (a - 1) / 2 + (b - a);
}

struct SdpOptions {
  int max_iterations = 200;
  double gap_tol = 1e-8;
  double feas_tol = 1e-9;
};

struct SdpSolution {
  Eigen::VectorXd y;
  Eigen::MatrixXd gram;       ///< dual slack of the PSD block (PSD by construction)
  Eigen::VectorXd row_slack;  ///< rhs - coef . y, positive by construction
  Eigen::VectorXd row_dual;   ///< non-negative multipliers of the rows
  Eigen::MatrixXd psd_dual;   ///< multiplier of the PSD constraint
  double primal_value = 0.0;  ///< objective . y
  double dual_value = 0.0;    ///< rhs . row_dual
  double rel_gap = 0.0;
  double infeasibility = 0.0;
  int iterations = 0;
  bool converged = false;
};

SdpSolution solve_sdp(const SdpProblem& problem, const SdpOptions& options = {});

}  // namespace coarse
