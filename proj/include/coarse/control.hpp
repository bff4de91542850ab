#pragma once

#include <utility>
#include <vector>

namespace coarse {

/// Non-decreasing piecewise-linear function on [0, inf), stored as sorted
/// (t, value) breakpoints. Before the first breakpoint the first value is
/// used; past the last one the final segment is extended linearly (a single
/// breakpoint gives a constant).
class PiecewiseLinear {
 public:
  PiecewiseLinear() = default;
  /// Throws Error(InvalidArgument) on empty, unsorted, negative or decreasing input.
  explicit PiecewiseLinear(std::vector<std::pair<double, double>> breakpoints);

  double operator()(double t) const;
  double final_slope() const;
  bool unbounded() const { return final_slope() > 0.0; }
  const std::vector<std::pair<double, double>>& breakpoints() const { return points_; }

 private:
  std::vector<std::pair<double, double>> points_;
};

/// Distortion controls (rho_minus, rho_plus) of a coarse embedding.
struct ControlPair {
  PiecewiseLinear rho_minus;
  PiecewiseLinear rho_plus;

  /// rho_minus <= rho_plus on the union of both breakpoint grids plus one
  /// point past the last breakpoint; throws Error(InvalidArgument) otherwise.
  static ControlPair make(PiecewiseLinear lower, PiecewiseLinear upper);
};

}  // namespace coarse
