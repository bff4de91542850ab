#pragma once

// Test-case generators shared by the unit and acceptance suites. Everything
// is driven by an explicit seed so failures reproduce.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "coarse/metric.hpp"
#include "coarse/spectral.hpp"

namespace testsupport {

inline std::string data_path(const std::string& name) { return std::string(COARSE_DATA_DIR) + "/" + name; }

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline double uniform_real(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

/// Shortest-path closure of a complete graph with integer weights in
/// [1, max_weight]: an integer metric with every distance <= max_weight.
inline Eigen::MatrixXd random_integer_metric(Rng& rng, int n, int max_weight) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d(i, j) = d(j, i) = uniform_int(rng, 1, max_weight);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d(i, j) = std::min(d(i, j), d(i, k) + d(k, j));
  return d;
}

/// Random real metric: closure of uniform weights in [lo, hi].
inline Eigen::MatrixXd random_real_metric(Rng& rng, int n, double lo, double hi) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d(i, j) = d(j, i) = uniform_real(rng, lo, hi);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d(i, j) = std::min(d(i, j), d(i, k) + d(k, j));
  return d;
}

/// A spanning tree plus each remaining edge with probability p.
inline coarse::FiniteGraph random_connected_graph(Rng& rng, int n, double p) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(uniform_int(rng, 0, v - 1), v);
  std::bernoulli_distribution coin(p);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return coarse::FiniteGraph(static_cast<std::size_t>(n), std::move(edges));
}

/// A scale R that leaves at least one far pair: one of the distances, or a
/// value just below it.
inline double random_scale(Rng& rng, const Eigen::MatrixXd& d) {
  const int n = static_cast<int>(d.rows());
  const int i = uniform_int(rng, 0, n - 2);
  const int j = uniform_int(rng, i + 1, n - 1);
  return std::bernoulli_distribution(0.5)(rng) ? d(i, j) : d(i, j) * uniform_real(rng, 0.5, 1.0);
}

inline coarse::FiniteMetricSpace from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd d(n, n);
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double v : r) d(i, j++) = v;
    ++i;
  }
  return coarse::validate_metric(d);
}

// Fixed 4- and 5-point instances: five named shapes plus seeded random ones.
inline std::vector<std::pair<coarse::FiniteMetricSpace, double>> brute_force_set() {
  std::vector<std::pair<coarse::FiniteMetricSpace, double>> set;
  set.emplace_back(from_rows({{0, 1, 2, 1}, {1, 0, 1, 2}, {2, 1, 0, 1}, {1, 2, 1, 0}}), 2.0);
  set.emplace_back(from_rows({{0, 1, 1, 1}, {1, 0, 2, 2}, {1, 2, 0, 2}, {1, 2, 2, 0}}), 2.0);
  set.emplace_back(from_rows({{0, 1, 2, 3}, {1, 0, 1, 2}, {2, 1, 0, 1}, {3, 2, 1, 0}}), 2.0);
  set.emplace_back(from_rows({{0, 1, 2, 2, 1}, {1, 0, 1, 2, 2}, {2, 1, 0, 1, 2}, {2, 2, 1, 0, 1}, {1, 2, 2, 1, 0}}), 2.0);
  set.emplace_back(from_rows({{0, 1, 1, 1, 1}, {1, 0, 2, 2, 2}, {1, 2, 0, 2, 2}, {1, 2, 2, 0, 2}, {1, 2, 2, 2, 0}}), 2.0);
  Rng rng(2024);
  while (set.size() < 20) {
    const int n = set.size() % 2 == 0 ? 4 : 5;
    const auto d = random_real_metric(rng, n, 1.0, 3.0);
    set.emplace_back(coarse::validate_metric(d), random_scale(rng, d));
  }
  return set;
}

}  // namespace testsupport
