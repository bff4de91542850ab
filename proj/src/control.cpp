#include "coarse/control.hpp"

#include <algorithm>
#include <cmath>

#include "coarse/error.hpp"

namespace coarse {

PiecewiseLinear::PiecewiseLinear(std::vector<std::pair<double, double>> breakpoints)
    : points_(std::move(breakpoints)) {
  if (points_.empty()) throw Error(Errc::InvalidArgument, "control function needs a breakpoint");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto [t, v] = points_[i];
    if (!std::isfinite(t) || !std::isfinite(v) || t < 0.0 || v < 0.0) {
      throw Error(Errc::InvalidArgument, "control breakpoints must be finite and non-negative");
    }
    if (i > 0) {
      if (!(t > points_[i - 1].first)) throw Error(Errc::InvalidArgument, "breakpoints not strictly increasing in t");
      if (v < points_[i - 1].second) throw Error(Errc::InvalidArgument, "control function decreases");
    }
  }
}

double PiecewiseLinear::final_slope() const {
  if (points_.size() < 2) return 0.0;
  const auto& [t0, v0] = points_[points_.size() - 2];
  const auto& [t1, v1] = points_.back();
  return (v1 - v0) / (t1 - t0);
}

double PiecewiseLinear::operator()(double t) const {
  if (points_.empty()) return 0.0;
  if (t <= points_.front().first) return points_.front().second;
  if (t >= points_.back().first) return points_.back().second + final_slope() * (t - points_.back().first);
  auto it = std::upper_bound(points_.begin(), points_.end(), t,
                             [](double x, const auto& p) { return x < p.first; });
  const auto& [t1, v1] = *it;
  const auto& [t0, v0] = *(it - 1);
  return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
}

ControlPair ControlPair::make(PiecewiseLinear lower, PiecewiseLinear upper) {
  std::vector<double> grid;
  for (const auto& p : lower.breakpoints()) grid.push_back(p.first);
  for (const auto& p : upper.breakpoints()) grid.push_back(p.first);
  const double last = grid.empty() ? 0.0 : *std::max_element(grid.begin(), grid.end());
  grid.push_back(last + 1.0);
  grid.push_back(2.0 * last + 10.0);
  for (double t : grid) {
    if (lower(t) > upper(t) + 1e-12) {
      throw Error(Errc::InvalidArgument, "rho_minus exceeds rho_plus at t=" + std::to_string(t));
    }
  }
  return ControlPair{std::move(lower), std::move(upper)};
}

}  // namespace coarse
