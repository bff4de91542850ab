#include "coarse/warped.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "coarse/error.hpp"

namespace coarse {

Rational Rational::parse(const std::string& text) {
  auto parse_long = [&](std::string_view s) {
    long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
      throw Error(Errc::ParseError, "not a rational number: '" + text + "'");
    return v;
  };
  Rational r;
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    r.num = parse_long(text);
  } else {
    r.num = parse_long(std::string_view(text).substr(0, slash));
    r.den = parse_long(std::string_view(text).substr(slash + 1));
  }
  if (r.den <= 0) throw Error(Errc::ParseError, "denominator must be positive in '" + text + "'");
  const long g = std::gcd(r.num, r.den);
  if (g > 1) {
    r.num /= g;
    r.den /= g;
  }
  return r;
}

std::string Rational::str() const { return std::to_string(num) + "/" + std::to_string(den); }

GeneratorMap rotation_action(const Rational& alpha, std::size_t net_size) {
  if (net_size == 0) throw Error(Errc::InvalidArgument, "net must have at least one point");
  const auto n = static_cast<long>(net_size);
  GeneratorMap g;
  g.name = "rot(" + alpha.str() + ")";
  g.image.resize(net_size);
  // Shift in net steps is alpha * N = num * N / den.
  const long numer = alpha.num * n;
  g.exact = numer % alpha.den == 0;
  long shift = 0;
  if (g.exact) {
    shift = numer / alpha.den;
  } else {
    shift = static_cast<long>(std::floor(static_cast<double>(numer) / static_cast<double>(alpha.den) + 0.5));
    const double exact_shift = static_cast<double>(numer) / static_cast<double>(alpha.den);
    g.snap_error = std::abs(exact_shift - static_cast<double>(shift)) / static_cast<double>(n);
  }
  for (long k = 0; k < n; ++k) g.image[static_cast<std::size_t>(k)] = static_cast<std::size_t>(((k + shift) % n + n) % n);
  return g;
}

FiniteMetricSpace circle_net(std::size_t net_size) {
  if (net_size == 0) throw Error(Errc::InvalidArgument, "net must have at least one point");
  const auto n = static_cast<Eigen::Index>(net_size);
  Eigen::MatrixXd d(n, n);
  std::vector<std::string> labels;
  for (Eigen::Index j = 0; j < n; ++j) {
    labels.push_back(std::to_string(j) + "/" + std::to_string(n));
    for (Eigen::Index k = 0; k < n; ++k) {
      const auto diff = std::abs(j - k);
      d(j, k) = static_cast<double>(std::min(diff, n - diff)) / static_cast<double>(n);
    }
  }
  return validate_metric(d, std::move(labels));
}

double ConeNet::intrinsic(std::size_t a, std::size_t b) const {
  const double t1 = height(a);
  const double t2 = height(b);
  const double dy = base(base_index(a), base_index(b));
  const double spread = base.size() > 1 ? std::min(t1, t2) * dy / base_diam : 0.0;
  return std::abs(t1 - t2) + spread;
}

ConeNet cone_net(FiniteMetricSpace base, std::vector<double> levels, std::vector<GeneratorMap> generators) {
  if (base.empty()) throw Error(Errc::EmptyInput, "cone base has no points");
  const double diam = base.diameter();
  if (base.size() > 1 && !(diam > 0.0)) throw Error(Errc::ZeroDiameter, "cone base has zero diameter");
  if (levels.empty()) throw Error(Errc::InvalidLevels, "no levels given");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(levels[i] > 0.0) || !std::isfinite(levels[i]))
      throw Error(Errc::InvalidLevels, "levels must be positive and finite", {i});
    for (std::size_t j = 0; j < i; ++j)
      if (levels[j] == levels[i]) throw Error(Errc::InvalidLevels, "repeated level", {j, i});
  }
  for (const auto& g : generators) {
    if (g.image.size() != base.size())
      throw Error(Errc::InvalidArgument, "generator " + g.name + " has the wrong number of images");
    for (auto v : g.image)
      if (v >= base.size()) throw Error(Errc::InvalidArgument, "generator " + g.name + " leaves the net");
  }
  return {std::move(base), diam, std::move(levels), std::move(generators)};
}

FiniteMetricSpace intrinsic_metric(const ConeNet& net) {
  const auto n = static_cast<Eigen::Index>(net.size());
  Eigen::MatrixXd d(n, n);
  std::vector<std::string> labels;
  for (Eigen::Index a = 0; a < n; ++a) {
    std::ostringstream os;
    os << "(" << net.base.labels()[net.base_index(static_cast<std::size_t>(a))] << ","
       << net.height(static_cast<std::size_t>(a)) << ")";
    labels.push_back(os.str());
    for (Eigen::Index b = 0; b < n; ++b) d(a, b) = net.intrinsic(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
  }
  return validate_metric(d, std::move(labels));
}

std::vector<std::pair<std::size_t, std::size_t>> generator_edges(const ConeNet& net) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& g : net.generators)
    for (std::size_t level = 0; level < net.levels.size(); ++level)
      for (std::size_t y = 0; y < net.base.size(); ++y) edges.emplace_back(net.point(level, y), net.point(level, g.image[y]));
  return edges;
}

FiniteMetricSpace warp_metric(const ConeNet& net, long skip_edge) {
  const auto intrinsic = intrinsic_metric(net);
  Eigen::MatrixXd d = intrinsic.dist();
  const auto edges = generator_edges(net);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (static_cast<long>(e) == skip_edge) continue;
    const auto [a, b] = edges[e];
    if (a == b) continue;
    const auto ia = static_cast<Eigen::Index>(a);
    const auto ib = static_cast<Eigen::Index>(b);
    d(ia, ib) = std::min(d(ia, ib), 1.0);
    d(ib, ia) = d(ia, ib);
  }
  const auto n = d.rows();
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) d(i, j) = std::min(d(i, j), d(i, k) + d(k, j));
  return validate_metric(d, intrinsic.labels());
}

BlockSpace levels_as_blocks(const ConeNet& net, const FiniteMetricSpace& warped) {
  std::vector<std::size_t> order(net.levels.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return net.levels[a] < net.levels[b]; });
  std::vector<FiniteMetricSpace> blocks;
  for (auto level : order) {
    std::vector<std::size_t> pts;
    for (std::size_t y = 0; y < net.base.size(); ++y) pts.push_back(net.point(level, y));
    blocks.push_back(warped.subspace(pts));
  }
  return coarse_disjoint_union(std::move(blocks));
}

}  // namespace coarse
