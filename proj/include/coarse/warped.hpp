#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "coarse/metric.hpp"

namespace coarse {

struct Rational {
  long num = 0;
  long den = 1;

  /// Parses "p/q" or an integer. Throws ParseError.
  static Rational parse(const std::string& text);
  std::string str() const;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// A group generator acting on the base net, snapped to net points.
struct GeneratorMap {
  std::string name;
  std::vector<std::size_t> image;  ///< base index -> base index
  double snap_error = 0.0;         ///< largest distance between true and snapped image
  bool exact = true;
};

/// Rotation of the circle net {k/N} by alpha. When alpha * N is an integer
/// this is the exact shift; otherwise each point goes to the net point
/// nearest to its true image (ties upward) and the largest displacement,
/// in circle units, is kept in `snap_error`.
GeneratorMap rotation_action(const Rational& alpha, std::size_t net_size);

/// Circle of circumference 1 sampled at k/N with the arc metric (diameter
/// 1/2 for N >= 2). Labels are "k/N".
FiniteMetricSpace circle_net(std::size_t net_size);

/// Finite net of the cone over a compact space: points (y, t) for every base
/// point y and level t, stored level by level.
struct ConeNet {
  FiniteMetricSpace base;
  double base_diam = 0.0;
  std::vector<double> levels;
  std::vector<GeneratorMap> generators;

  std::size_t size() const { return base.size() * levels.size(); }
  std::size_t base_index(std::size_t point) const { return point % base.size(); }
  std::size_t level_index(std::size_t point) const { return point / base.size(); }
  std::size_t point(std::size_t level, std::size_t base_point) const { return level * base.size() + base_point; }
  double height(std::size_t point) const { return levels.at(level_index(point)); }

  /// |t1 - t2| + min(t1, t2) d_Y(y1, y2) / diam(Y).
  double intrinsic(std::size_t a, std::size_t b) const;
};

/// Throws ZeroDiameter (several base points with non-positive diam),
/// InvalidLevels (empty, non-positive or repeated levels) and
/// InvalidArgument (generator image outside the base).
ConeNet cone_net(FiniteMetricSpace base, std::vector<double> levels, std::vector<GeneratorMap> generators = {});

/// The intrinsic cone metric on the net, validated.
FiniteMetricSpace intrinsic_metric(const ConeNet& net);

/// Edges of the warping graph beyond the intrinsic ones: (x, s x) with
/// weight 1 for each generator s, one entry per generator and point.
std::vector<std::pair<std::size_t, std::size_t>> generator_edges(const ConeNet& net);

/// Shortest-path closure of the intrinsic metric plus the generator edges,
/// validated. `skip_edge` drops one entry of `generator_edges` (used to
/// probe maximality); pass -1 to keep all of them.
FiniteMetricSpace warp_metric(const ConeNet& net, long skip_edge = -1);

/// One block per level with the warped metric restricted to it, in level
/// order, so that infinity scans can treat levels as escaping blocks.
BlockSpace levels_as_blocks(const ConeNet& net, const FiniteMetricSpace& warped);

}  // namespace coarse
