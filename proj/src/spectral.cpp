#include "coarse/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>
#include <set>

#include "coarse/error.hpp"
#include "coarse/parallel.hpp"

namespace coarse {

FiniteGraph::FiniteGraph(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges) : n_(n), adj_(n) {
  std::set<std::pair<std::size_t, std::size_t>> uniq;
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw Error(Errc::InvalidGraph, "edge endpoint out of range", {u, v});
    if (u == v) throw Error(Errc::InvalidGraph, "self-loop at vertex " + std::to_string(u), {u});
    uniq.insert({std::min(u, v), std::max(u, v)});
  }
  edges_.assign(uniq.begin(), uniq.end());
  for (auto [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

std::size_t FiniteGraph::max_degree() const {
  std::size_t k = 0;
  for (const auto& a : adj_) k = std::max(k, a.size());
  return k;
}

std::vector<std::vector<long>> FiniteGraph::hop_distances() const {
  std::vector<std::vector<long>> d(n_, std::vector<long>(n_, -1));
  for (std::size_t s = 0; s < n_; ++s) {
    std::deque<std::size_t> q{s};
    d[s][s] = 0;
    while (!q.empty()) {
      const auto u = q.front();
      q.pop_front();
      for (auto v : adj_[u]) {
        if (d[s][v] < 0) {
          d[s][v] = d[s][u] + 1;
          q.push_back(v);
        }
      }
    }
  }
  return d;
}

bool FiniteGraph::connected() const {
  if (n_ == 0) return false;
  std::vector<bool> seen(n_, false);
  std::deque<std::size_t> q{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!q.empty()) {
    const auto u = q.front();
    q.pop_front();
    for (auto v : adj_[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++count;
        q.push_back(v);
      }
    }
  }
  return count == n_;
}

FiniteMetricSpace FiniteGraph::metric() const {
  if (!connected()) throw Error(Errc::Disconnected, "graph metric needs a connected graph");
  const auto hops = hop_distances();
  Eigen::MatrixXd d(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = static_cast<double>(hops[i][j]);
  return validate_metric(d);
}

FiniteGraph FiniteGraph::induced(std::span<const std::size_t> vertices) const {
  std::vector<long> local(n_, -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) local.at(vertices[i]) = static_cast<long>(i);
  std::vector<std::pair<std::size_t, std::size_t>> es;
  for (auto [u, v] : edges_) {
    if (local[u] >= 0 && local[v] >= 0) es.emplace_back(local[u], local[v]);
  }
  return FiniteGraph(vertices.size(), std::move(es));
}

FiniteGraph FiniteGraph::cycle(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> es;
  for (std::size_t i = 0; i < n; ++i) {
    if (n == 2 && i == 1) break;
    es.emplace_back(i, (i + 1) % n);
  }
  return FiniteGraph(n, std::move(es));
}

FiniteGraph FiniteGraph::complete(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> es;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) es.emplace_back(i, j);
  return FiniteGraph(n, std::move(es));
}

FiniteGraph FiniteGraph::path(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> es;
  for (std::size_t i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
  return FiniteGraph(n, std::move(es));
}

Eigen::MatrixXd laplacian(const FiniteGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (auto [u, v] : g.edges()) {
    const auto a = static_cast<Eigen::Index>(u);
    const auto b = static_cast<Eigen::Index>(v);
    L(a, a) += 1.0;
    L(b, b) += 1.0;
    L(a, b) -= 1.0;
    L(b, a) -= 1.0;
  }
  return L;
}

SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& input, int max_sweeps) {
  const auto n = input.rows();
  Eigen::MatrixXd a = 0.5 * (input + input.transpose());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double scale = std::max(a.norm(), 1e-300);
  SymmetricEigen out;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) <= 1e-15 * scale) break;
    out.sweeps = sweep + 1;

    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = a(p, k) = akp - s * (akq + akp * tau);
          a(k, q) = a(q, k) = akq + s * (akp - akq * tau);
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = vkp - s * (vkq + vkp * tau);
          v(k, q) = vkq + s * (vkp - vkq * tau);
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return a(i, i) < a(j, j); });
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = a(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]);
    out.vectors.col(i) = v.col(order[static_cast<std::size_t>(i)]);
  }
  return out;
}

FiedlerPair fiedler(const FiniteGraph& g) {
  if (g.vertex_count() < 2) throw Error(Errc::InvalidArgument, "lambda1 needs at least two vertices");
  if (g.vertex_count() > 512) throw Error(Errc::InvalidArgument, "dense eigensolver limited to 512 vertices");
  if (!g.connected()) throw Error(Errc::Disconnected, "lambda1 of a disconnected graph is 0");
  const auto eig = jacobi_eigen(laplacian(g));
  return {eig.values(1), eig.vectors.col(1)};
}

double lambda1(const FiniteGraph& g) { return fiedler(g).lambda1; }

SpectralReport spectral_report(const FiniteGraph& g) {
  SpectralReport r;
  r.lambda1 = lambda1(g);
  r.k0 = g.max_degree();
  r.n = g.vertex_count();
  r.diam = g.metric().diameter();
  return r;
}

FiniteGraph cubic_graph(std::size_t n, std::uint64_t seed) {
  if (n < 4 || n % 2 != 0) throw Error(Errc::InvalidArgument, "cubic graphs need an even vertex count >= 4");
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> perm(n);
  auto cycle_edge = [n](std::size_t u, std::size_t v) {
    const auto diff = u > v ? u - v : v - u;
    return diff == 1 || diff == n - 1;
  };
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::iota(perm.begin(), perm.end(), 0);
    // Fisher-Yates with raw engine output: std distributions are not portable.
    for (std::size_t i = n - 1; i > 0; --i) {
      const auto j = static_cast<std::size_t>(rng() % (i + 1));
      std::swap(perm[i], perm[j]);
    }
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; i += 2) ok = !cycle_edge(perm[i], perm[i + 1]);
    if (n == 4) ok = true;  // the only cubic graph on 4 vertices is K4
    if (!ok) continue;
    std::vector<std::pair<std::size_t, std::size_t>> es;
    for (std::size_t i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
    if (n == 4) {
      es.emplace_back(0, 2);
      es.emplace_back(1, 3);
    } else {
      for (std::size_t i = 0; i < n; i += 2) es.emplace_back(perm[i], perm[i + 1]);
    }
    return FiniteGraph(n, std::move(es));
  }
  throw Error(Errc::InvalidArgument, "could not draw a cubic graph");
}

GraphBlockSpace graph_union(std::vector<FiniteGraph> graphs) {
  std::vector<FiniteMetricSpace> blocks;
  for (const auto& g : graphs) blocks.push_back(g.metric());
  return {coarse_disjoint_union(std::move(blocks)), std::move(graphs)};
}

GraphBlockSpace graphs_from_metric(const BlockSpace& space) {
  GraphBlockSpace out{space, {}};
  for (std::size_t b = 1; b <= space.block_count(); ++b) {
    const auto& blk = space.block(b);
    std::vector<std::pair<std::size_t, std::size_t>> es;
    for (std::size_t i = 0; i < blk.size(); ++i)
      for (std::size_t j = i + 1; j < blk.size(); ++j)
        if (std::abs(blk(i, j) - 1.0) <= kMetricTol) es.emplace_back(i, j);
    FiniteGraph g(blk.size(), std::move(es));
    if (!g.connected()) {
      throw Error(Errc::GraphMismatch, "block " + std::to_string(b) + " is not a connected graph metric", {b});
    }
    const auto hops = g.hop_distances();
    for (std::size_t i = 0; i < blk.size(); ++i)
      for (std::size_t j = 0; j < blk.size(); ++j)
        if (std::abs(static_cast<double>(hops[i][j]) - blk(i, j)) > kMetricTol) {
          throw Error(Errc::GraphMismatch,
                      "block " + std::to_string(b) + " differs from the path metric of its unit-distance graph", {b});
        }
    out.graphs.push_back(std::move(g));
  }
  return out;
}

std::vector<ExpanderCandidate> expander_window_scan(const GraphBlockSpace& space, double c,
                                                    std::span<const std::pair<std::size_t, double>> schedule) {
  std::vector<ExpanderCandidate> candidates;
  for (std::size_t m = 0; m < schedule.size(); ++m) {
    const auto [min_block, r] = schedule[m];
    for (auto& w : enumerate_windows(space.space, r, min_block)) {
      if (w.points.size() < 2) continue;
      ExpanderCandidate cand;
      cand.schedule_index = m;
      cand.min_block = min_block;
      cand.r = r;
      cand.window = std::move(w);
      candidates.push_back(std::move(cand));
    }
  }
  std::vector<char> keep(candidates.size(), 0);
  parallel_for(candidates.size(), [&](std::size_t i) {
    auto& cand = candidates[i];
    const auto sub = space.graphs.at(cand.window.block - 1).induced(cand.window.points);
    if (!sub.connected()) return;
    cand.report.lambda1 = lambda1(sub);
    cand.report.k0 = sub.max_degree();
    cand.report.n = sub.vertex_count();
    cand.report.diam = cand.window.diameter;
    cand.hit = cand.report.lambda1 >= c;
    keep[i] = 1;
  });
  std::vector<ExpanderCandidate> out;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (keep[i]) out.push_back(std::move(candidates[i]));
  return out;
}

}  // namespace coarse
