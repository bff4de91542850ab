#include <cstdint>

#include "coarse/embed.hpp"
#include "coarse/error.hpp"
#include "coarse/simplex.hpp"

namespace coarse {

namespace {

constexpr std::size_t kMaxCutPoints = 10;

// Cuts are the subsets S of {0..n-2} with S non-empty; the last point is
// always on the complement side, so each bipartition appears once.
struct CutTable {
  std::size_t n = 0;
  std::vector<std::uint64_t> masks;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // i < j
  Eigen::MatrixXd delta;                                   // pair x cut
};

CutTable cut_table(std::size_t n) {
  if (n > kMaxCutPoints) {
    throw Error(Errc::CutLimitExceeded, std::to_string(n) + " points exceed the cut enumeration limit of 10");
  }
  CutTable t;
  t.n = n;
  const std::uint64_t count = n == 0 ? 0 : (std::uint64_t{1} << (n - 1)) - 1;
  for (std::uint64_t mask = 1; mask <= count; ++mask) t.masks.push_back(mask);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) t.pairs.emplace_back(i, j);
  t.delta = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(t.pairs.size()), static_cast<Eigen::Index>(t.masks.size()));
  for (std::size_t p = 0; p < t.pairs.size(); ++p)
    for (std::size_t k = 0; k < t.masks.size(); ++k) {
      const auto [i, j] = t.pairs[p];
      const bool si = ((t.masks[k] >> i) & 1U) != 0;
      const bool sj = ((t.masks[k] >> j) & 1U) != 0;
      t.delta(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(k)) = si != sj ? 1.0 : 0.0;
    }
  return t;
}

}  // namespace

EmbedResult cut_cone_lp(const FiniteMetricSpace& space, double R) {
  const auto table = cut_table(space.size());
  if (!has_far_pair(space, R)) throw Error(Errc::NoFarPairs, "no pair at distance >= R");

  using Eigen::Index;
  const Index ncut = static_cast<Index>(table.masks.size());
  const Index npair = static_cast<Index>(table.pairs.size());
  std::vector<Index> far;
  for (Index p = 0; p < npair; ++p) {
    const auto [i, j] = table.pairs[static_cast<std::size_t>(p)];
    if (is_far(space(i, j), R)) far.push_back(p);
  }
  const Index nfar = static_cast<Index>(far.size());

  // Variables: lambda_S for every cut, then s.
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(npair + nfar, ncut + 1);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(npair + nfar);
  A.topLeftCorner(npair, ncut) = table.delta;
  for (Index p = 0; p < npair; ++p) {
    const auto [i, j] = table.pairs[static_cast<std::size_t>(p)];
    b(p) = space(i, j);
  }
  for (Index f = 0; f < nfar; ++f) {
    A.block(npair + f, 0, 1, ncut) = -table.delta.row(far[static_cast<std::size_t>(f)]);
    A(npair + f, ncut) = 1.0;
  }
  Eigen::VectorXd c = Eigen::VectorXd::Zero(ncut + 1);
  c(ncut) = 1.0;
  const auto lp = simplex_max(c, A, b);
  if (!lp.optimal) throw Error(Errc::InvalidArgument, "cut-cone LP did not reach an optimal vertex");

  EmbedResult out;
  out.s_star = lp.value;
  out.iterations = lp.pivots;
  for (Index k = 0; k < ncut; ++k)
    if (lp.x(k) > 1e-12) out.cuts.emplace_back(table.masks[static_cast<std::size_t>(k)], lp.x(k));
  std::vector<CertificateMeasure::Entry> weights;
  for (Index f = 0; f < nfar; ++f) {
    const auto [i, j] = table.pairs[static_cast<std::size_t>(far[static_cast<std::size_t>(f)])];
    weights.push_back({i, j, lp.duals(npair + f)});
  }
  out.certificate = CertificateMeasure::from_unordered(weights, out.s_star, R, 1);
  return out;
}

double cut_cone_poincare_value(const FiniteMetricSpace& space, const CertificateMeasure& mu) {
  const auto table = cut_table(space.size());
  for (const auto& e : mu.support)
    if (e.i >= space.size() || e.j >= space.size())
      throw Error(Errc::UnsupportedPair, "pair outside the space", {e.i, e.j});
  if (space.size() < 2) return 0.0;

  using Eigen::Index;
  const Index npair = static_cast<Index>(table.pairs.size());
  Eigen::VectorXd pair_weight = Eigen::VectorXd::Zero(npair);
  for (Index p = 0; p < npair; ++p) {
    const auto [i, j] = table.pairs[static_cast<std::size_t>(p)];
    pair_weight(p) = mu.weight(i, j) + mu.weight(j, i);
  }
  Eigen::VectorXd b(npair);
  for (Index p = 0; p < npair; ++p) {
    const auto [i, j] = table.pairs[static_cast<std::size_t>(p)];
    b(p) = space(i, j);
  }
  const Eigen::VectorXd c = table.delta.transpose() * pair_weight;
  const auto lp = simplex_max(c, table.delta, b);
  return lp.value;
}

}  // namespace coarse
