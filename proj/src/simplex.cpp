#include "coarse/simplex.hpp"

#include "coarse/error.hpp"

#include <vector>

namespace coarse {

LpSolution simplex_max(const Eigen::VectorXd& c, const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                       int max_pivots) {
  using Eigen::Index;
  const Index m = A.rows();
  const Index n = A.cols();
  if (c.size() != n || b.size() != m) throw Error(Errc::InvalidArgument, "LP dimensions disagree");
  if (m > 0 && b.minCoeff() < 0.0) throw Error(Errc::InvalidArgument, "LP right-hand side must be non-negative");

  constexpr double kTol = 1e-11;
  // Rows 0..m-1 are constraints, row m is the objective row (reduced costs).
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  T.block(0, 0, m, n) = A;
  T.block(0, n, m, m).setIdentity();
  T.block(0, n + m, m, 1) = b;
  T.block(m, 0, 1, n) = -c.transpose();
  std::vector<Index> basis(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;

  LpSolution out;
  while (out.pivots < max_pivots) {
    Index enter = -1;
    for (Index j = 0; j < n + m; ++j) {
      if (T(m, j) < -kTol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) {
      out.optimal = true;
      break;
    }
    Index leave = -1;
    double best = 0.0;
    for (Index i = 0; i < m; ++i) {
      if (T(i, enter) <= kTol) continue;
      const double ratio = T(i, n + m) / T(i, enter);
      const bool better = leave < 0 || ratio < best - kTol ||
                          (ratio <= best + kTol && basis[static_cast<std::size_t>(i)] <
                                                       basis[static_cast<std::size_t>(leave)]);
      if (better) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) {
      out.unbounded = true;
      break;
    }
    T.row(leave) /= T(leave, enter);
    for (Index i = 0; i <= m; ++i) {
      if (i != leave && T(i, enter) != 0.0) T.row(i) -= T(i, enter) * T.row(leave);
    }
    basis[static_cast<std::size_t>(leave)] = enter;
    ++out.pivots;
  }

  out.x = Eigen::VectorXd::Zero(n);
  for (Index i = 0; i < m; ++i) {
    const Index v = basis[static_cast<std::size_t>(i)];
    if (v < n) out.x(v) = T(i, n + m);
  }
  out.duals = T.block(m, n, 1, m).transpose();
  out.value = c.dot(out.x);
  return out;
}

}  // namespace coarse
