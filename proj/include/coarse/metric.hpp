#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace coarse {

/// Absolute tolerance used for every metric axiom check.
inline constexpr double kMetricTol = 1e-9;

/// A finite labelled point set with a validated distance matrix.
///
/// Instances are only produced by `validate_metric` (or by operations that
/// provably preserve the axioms, such as taking a subspace), so holding one
/// means the matrix is symmetric, zero exactly on the diagonal, positive off
/// it, and satisfies the triangle inequality within `kMetricTol`.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const Eigen::MatrixXd& dist() const { return dist_; }
  double operator()(std::size_t i, std::size_t j) const { return dist_(i, j); }

  double diameter() const;

  /// Restriction to `points` (in the given order). Restriction of a metric is
  /// a metric, so no re-validation happens.
  FiniteMetricSpace subspace(std::span<const std::size_t> points) const;

  /// Multiply every distance by `alpha` > 0.
  FiniteMetricSpace scaled(double alpha) const;

 private:
  friend FiniteMetricSpace validate_metric(const Eigen::MatrixXd&, std::vector<std::string>);
  FiniteMetricSpace(std::vector<std::string> labels, Eigen::MatrixXd dist)
      : labels_(std::move(labels)), dist_(std::move(dist)) {}

  std::vector<std::string> labels_;
  Eigen::MatrixXd dist_;
};

/// Checks every FiniteMetricSpace invariant. Labels default to "0".."n-1".
/// Throws Error with NotSquare, NonFinite, Asymmetric, NegativeEntry,
/// ZeroDistance or TriangleViolation (indices = {x, y, z} with
/// d(x,z) > d(x,y) + d(y,z)).
FiniteMetricSpace validate_metric(const Eigen::MatrixXd& matrix,
                                  std::vector<std::string> labels = {});

/// Coarse disjoint union of finite blocks. Cross-block distances follow the
/// rule d(x, y) = R_n + R_m for x in block n and y in block m (n != m), with
/// R_k = k + sum_{j <= k} diam(block_j) and blocks numbered from 1.
class BlockSpace {
 public:
  static constexpr const char* kUnionRule = "k_plus_prefix_diameter";

  BlockSpace() = default;

  std::size_t block_count() const { return blocks_.size(); }
  const std::vector<FiniteMetricSpace>& blocks() const { return blocks_; }
  /// Block by 1-based number.
  const FiniteMetricSpace& block(std::size_t number) const { return blocks_.at(number - 1); }
  /// R_k for the 1-based block number k.
  double separation_radius(std::size_t number) const { return radii_.at(number - 1); }
  const std::vector<double>& separation_radii() const { return radii_; }

  std::size_t point_count() const;
  /// Global index of the first point of block `number` in the materialized space.
  std::size_t offset(std::size_t number) const;
  double cross_distance(std::size_t n, std::size_t m) const;

 private:
  friend BlockSpace coarse_disjoint_union(std::vector<FiniteMetricSpace> blocks);
  std::vector<FiniteMetricSpace> blocks_;
  std::vector<double> radii_;
};

/// Throws Error(EmptyInput) for an empty list.
BlockSpace coarse_disjoint_union(std::vector<FiniteMetricSpace> blocks);

/// The whole union as one matrix, re-validated. Labels are "b<k>:<label>".
FiniteMetricSpace materialize(const BlockSpace& space);

/// A bounded subset of one block, lying outside the excluded prefix of blocks.
struct Window {
  enum class Kind { Ball, WholeBlock };

  std::size_t block = 0;             ///< 1-based block number
  std::vector<std::size_t> points;   ///< sorted block-local indices
  double radius_bound = 0.0;         ///< R: diam(points) <= R
  std::size_t exclude_below = 1;     ///< blocks numbered below this form K_R
  double diameter = 0.0;             ///< computed from the matrix
  Kind kind = Kind::Ball;
  std::size_t center = 0;            ///< ball centre (block-local), Ball only
  double ball_radius = 0.0;          ///< Ball only
};

/// Window catalogue at scale R: for each block numbered >= exclude_below,
/// every closed ball B(x, ceil(R/2)) whose diameter is <= R (otherwise the ball
/// B(x, R/2), which always is), plus the whole block when diam <= R.
/// Deduplicated by point set within a block. Empty when everything is excluded.
std::vector<Window> enumerate_windows(const BlockSpace& space, double R, std::size_t exclude_below);

/// The window as a stand-alone metric space (block-local order of `points`).
FiniteMetricSpace window_space(const BlockSpace& space, const Window& window);

/// Pairs count as "far" at scale R when d > R - kFarTol, i.e. d >= R up to
/// rounding. Certificates may only charge far pairs.
inline constexpr double kFarTol = 1e-12;
inline bool is_far(double d, double R) { return d > R - kFarTol; }

/// True when some pair of the space is far at scale R.
bool has_far_pair(const FiniteMetricSpace& space, double R);

}  // namespace coarse
