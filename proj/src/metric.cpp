#include "coarse/metric.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "coarse/error.hpp"

namespace coarse {

double FiniteMetricSpace::diameter() const {
  return dist_.size() == 0 ? 0.0 : dist_.maxCoeff();
}

FiniteMetricSpace FiniteMetricSpace::subspace(std::span<const std::size_t> points) const {
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd sub(n, n);
  std::vector<std::string> labels;
  labels.reserve(points.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    labels.push_back(labels_.at(points[i]));
    for (Eigen::Index j = 0; j < n; ++j) {
      sub(i, j) = dist_(static_cast<Eigen::Index>(points[i]), static_cast<Eigen::Index>(points[j]));
    }
  }
  return {std::move(labels), std::move(sub)};
}

FiniteMetricSpace FiniteMetricSpace::scaled(double alpha) const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(Errc::InvalidArgument, "scale factor must be positive and finite");
  }
  return {labels_, dist_ * alpha};
}

FiniteMetricSpace validate_metric(const Eigen::MatrixXd& matrix, std::vector<std::string> labels) {
  if (matrix.rows() != matrix.cols()) {
    throw Error(Errc::NotSquare, "distance matrix is " + std::to_string(matrix.rows()) + "x" +
                                     std::to_string(matrix.cols()));
  }
  const auto n = matrix.rows();
  if (labels.empty()) {
    for (Eigen::Index i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  } else if (static_cast<Eigen::Index>(labels.size()) != n) {
    throw Error(Errc::InvalidArgument, "label count does not match matrix size");
  }

  Eigen::MatrixXd d = matrix;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = d(i, j);
      const auto ij = std::vector<std::size_t>{static_cast<std::size_t>(i), static_cast<std::size_t>(j)};
      if (!std::isfinite(v)) throw Error(Errc::NonFinite, "non-finite entry", ij);
      if (v < 0.0) throw Error(Errc::NegativeEntry, "negative entry", ij);
      if (std::abs(v - d(j, i)) > kMetricTol) throw Error(Errc::Asymmetric, "d(i,j) != d(j,i)", ij);
      if (i == j && v > kMetricTol) throw Error(Errc::ZeroDistance, "non-zero diagonal", ij);
      if (i != j && !(v > 0.0)) throw Error(Errc::ZeroDistance, "distinct points at distance 0", ij);
    }
  }
  // Exact symmetry and an exact zero diagonal from here on.
  d = 0.5 * (d + d.transpose()).eval();
  d.diagonal().setZero();

  for (Eigen::Index x = 0; x < n; ++x) {
    for (Eigen::Index z = x + 1; z < n; ++z) {
      for (Eigen::Index y = 0; y < n; ++y) {
        if (d(x, z) > d(x, y) + d(y, z) + kMetricTol) {
          throw Error(Errc::TriangleViolation,
                      "d(" + std::to_string(x) + "," + std::to_string(z) + ") exceeds the path through " +
                          std::to_string(y),
                      {static_cast<std::size_t>(x), static_cast<std::size_t>(y), static_cast<std::size_t>(z)});
        }
      }
    }
  }
  return FiniteMetricSpace(std::move(labels), std::move(d));
}

std::size_t BlockSpace::point_count() const {
  std::size_t total = 0;
  for (const auto& b : blocks_) total += b.size();
  return total;
}

std::size_t BlockSpace::offset(std::size_t number) const {
  std::size_t off = 0;
  for (std::size_t k = 1; k < number; ++k) off += blocks_.at(k - 1).size();
  return off;
}

double BlockSpace::cross_distance(std::size_t n, std::size_t m) const {
  return separation_radius(n) + separation_radius(m);
}

BlockSpace coarse_disjoint_union(std::vector<FiniteMetricSpace> blocks) {
  if (blocks.empty()) throw Error(Errc::EmptyInput, "coarse disjoint union of zero blocks");
  BlockSpace space;
  double prefix = 0.0;
  for (std::size_t k = 1; k <= blocks.size(); ++k) {
    prefix += blocks[k - 1].diameter();
    space.radii_.push_back(static_cast<double>(k) + prefix);
  }
  space.blocks_ = std::move(blocks);
  return space;
}

FiniteMetricSpace materialize(const BlockSpace& space) {
  const auto total = static_cast<Eigen::Index>(space.point_count());
  Eigen::MatrixXd d(total, total);
  std::vector<std::string> labels;
  labels.reserve(space.point_count());
  Eigen::Index row_off = 0;
  for (std::size_t n = 1; n <= space.block_count(); ++n) {
    const auto& bn = space.block(n);
    for (const auto& l : bn.labels()) labels.push_back("b" + std::to_string(n) + ":" + l);
    Eigen::Index col_off = 0;
    for (std::size_t m = 1; m <= space.block_count(); ++m) {
      const auto& bm = space.block(m);
      const auto rows = static_cast<Eigen::Index>(bn.size());
      const auto cols = static_cast<Eigen::Index>(bm.size());
      if (n == m) {
        d.block(row_off, col_off, rows, cols) = bn.dist();
      } else {
        d.block(row_off, col_off, rows, cols).setConstant(space.cross_distance(n, m));
      }
      col_off += cols;
    }
    row_off += static_cast<Eigen::Index>(bn.size());
  }
  return validate_metric(d, std::move(labels));
}

namespace {

std::vector<std::size_t> closed_ball(const FiniteMetricSpace& s, std::size_t center, double radius) {
  std::vector<std::size_t> pts;
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (s(center, j) <= radius + kMetricTol) pts.push_back(j);
  }
  return pts;
}

double subset_diameter(const FiniteMetricSpace& s, const std::vector<std::size_t>& pts) {
  double diam = 0.0;
  for (auto i : pts)
    for (auto j : pts) diam = std::max(diam, s(i, j));
  return diam;
}

}  // namespace

std::vector<Window> enumerate_windows(const BlockSpace& space, double R, std::size_t exclude_below) {
  if (!(R > 0.0)) throw Error(Errc::InvalidArgument, "window scale R must be positive");
  std::vector<Window> out;
  const std::size_t first = std::max<std::size_t>(exclude_below, 1);
  for (std::size_t b = first; b <= space.block_count(); ++b) {
    const auto& blk = space.block(b);
    std::set<std::vector<std::size_t>> seen;
    const double wide = std::ceil(R / 2.0);
    for (std::size_t x = 0; x < blk.size(); ++x) {
      double radius = wide;
      auto pts = closed_ball(blk, x, radius);
      double diam = subset_diameter(blk, pts);
      if (diam > R + kMetricTol) {
        radius = R / 2.0;
        pts = closed_ball(blk, x, radius);
        diam = subset_diameter(blk, pts);
      }
      if (!seen.insert(pts).second) continue;
      Window w;
      w.block = b;
      w.points = std::move(pts);
      w.radius_bound = R;
      w.exclude_below = first;
      w.diameter = diam;
      w.kind = Window::Kind::Ball;
      w.center = x;
      w.ball_radius = radius;
      out.push_back(std::move(w));
    }
    if (blk.diameter() <= R + kMetricTol) {
      std::vector<std::size_t> all(blk.size());
      for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
      if (seen.insert(all).second) {
        Window w;
        w.block = b;
        w.points = std::move(all);
        w.radius_bound = R;
        w.exclude_below = first;
        w.diameter = blk.diameter();
        w.kind = Window::Kind::WholeBlock;
        out.push_back(std::move(w));
      }
    }
  }
  return out;
}

FiniteMetricSpace window_space(const BlockSpace& space, const Window& window) {
  return space.block(window.block).subspace(window.points);
}

bool has_far_pair(const FiniteMetricSpace& space, double R) {
  for (std::size_t i = 0; i < space.size(); ++i)
    for (std::size_t j = i + 1; j < space.size(); ++j)
      if (is_far(space(i, j), R)) return true;
  return false;
}

}  // namespace coarse
