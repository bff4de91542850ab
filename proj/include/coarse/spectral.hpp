#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "coarse/metric.hpp"

namespace coarse {

/// Simple undirected graph on vertices 0..n-1.
class FiniteGraph {
 public:
  FiniteGraph() = default;
  /// Throws Error(InvalidGraph) on self-loops or out-of-range endpoints.
  /// Duplicate edges are merged.
  FiniteGraph(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges);

  std::size_t vertex_count() const { return n_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
  const std::vector<std::vector<std::size_t>>& adjacency() const { return adj_; }
  std::size_t degree(std::size_t v) const { return adj_.at(v).size(); }
  /// k0: the maximum degree.
  std::size_t max_degree() const;

  bool connected() const;
  /// Hop distances; unreachable pairs get -1.
  std::vector<std::vector<long>> hop_distances() const;
  /// Shortest-path metric. Throws Error(Disconnected) when not connected.
  FiniteMetricSpace metric() const;
  /// Induced subgraph on `vertices`, relabelled 0..k-1 in the given order.
  FiniteGraph induced(std::span<const std::size_t> vertices) const;

  static FiniteGraph cycle(std::size_t n);
  static FiniteGraph complete(std::size_t n);
  static FiniteGraph path(std::size_t n);

 private:
  std::size_t n_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::vector<std::size_t>> adj_;
};

/// L = D - A.
Eigen::MatrixXd laplacian(const FiniteGraph& g);

/// Eigen-decomposition of a dense symmetric matrix by cyclic Jacobi rotations.
/// Eigenvalues ascending; column i of `vectors` belongs to `values[i]`.
struct SymmetricEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  int sweeps = 0;
};

SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& a, int max_sweeps = 100);

/// First non-zero Laplacian eigenvalue together with a unit eigenvector.
struct FiedlerPair {
  double lambda1 = 0.0;
  Eigen::VectorXd vector;
};

/// Throws Error(Disconnected) (lambda1 would be 0) or Error(InvalidArgument)
/// for fewer than 2 vertices or more than 512.
FiedlerPair fiedler(const FiniteGraph& g);
double lambda1(const FiniteGraph& g);

struct SpectralReport {
  double lambda1 = 0.0;
  std::size_t k0 = 0;
  std::size_t n = 0;
  double diam = 0.0;
};

SpectralReport spectral_report(const FiniteGraph& g);

/// Deterministic 3-regular graph on n vertices (n even, n >= 4): a Hamiltonian
/// cycle plus a perfect matching drawn from a fixed-seed generator, retried
/// until the matching avoids cycle edges. Same n, same graph, on every platform.
FiniteGraph cubic_graph(std::size_t n, std::uint64_t seed = 0x5eed);

/// Blocks of a coarse disjoint union that each carry a graph whose
/// shortest-path metric is the block metric.
struct GraphBlockSpace {
  BlockSpace space;
  std::vector<FiniteGraph> graphs;
};

/// Coarse disjoint union of graph metrics. Throws Error(Disconnected).
GraphBlockSpace graph_union(std::vector<FiniteGraph> graphs);

/// Recovers unit-distance graphs from block metrics. Throws
/// Error(GraphMismatch) when a block is not the path metric of its graph.
GraphBlockSpace graphs_from_metric(const BlockSpace& space);

struct ExpanderCandidate {
  std::size_t schedule_index = 0;
  std::size_t min_block = 1;  ///< N of the schedule entry
  double r = 0.0;             ///< r_m of the schedule entry
  Window window;
  SpectralReport report;
  bool hit = false;
};

/// For each schedule entry (N, r_m), examines whole blocks and balls (the
/// window catalogue at scale r_m) in blocks numbered >= N. Candidates whose
/// induced subgraph is connected are reported with lambda1; `hit` marks
/// lambda1 >= c. Candidates are independent and may be solved in parallel;
/// output order is (schedule entry, block, window).
std::vector<ExpanderCandidate> expander_window_scan(const GraphBlockSpace& space, double c,
                                                    std::span<const std::pair<std::size_t, double>> schedule);

}  // namespace coarse
