#include "coarse/embed.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "coarse/error.hpp"

namespace coarse {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr std::size_t kMaxSdpPoints = 64;

// Point 0 is pinned at the origin; point k >= 1 owns row/column k-1 of G.
// Q(i, j) as a sparse row over the Gram variables.
std::vector<std::pair<int, double>> pair_terms(std::size_t i, std::size_t j, int m) {
  if (i > j) std::swap(i, j);
  const int a = static_cast<int>(i) - 1;
  const int b = static_cast<int>(j) - 1;
  if (a < 0) return {{gram_var(b, b, m), 1.0}};
  return {{gram_var(a, a, m), 1.0}, {gram_var(b, b, m), 1.0}, {gram_var(a, b, m), -2.0}};
}

MatrixXd embed_gram(const MatrixXd& G) {
  const Index n = G.rows() + 1;
  MatrixXd K = MatrixXd::Zero(n, n);
  K.bottomRightCorner(n - 1, n - 1) = G;
  return K;
}

MatrixXd centred(const MatrixXd& K) {
  const Index n = K.rows();
  const MatrixXd J = MatrixXd::Identity(n, n) - MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  MatrixXd out = J * K * J;
  return 0.5 * (out + out.transpose());
}

void check_support(const FiniteMetricSpace& space, const CertificateMeasure& mu) {
  for (const auto& e : mu.support) {
    if (e.i >= space.size() || e.j >= space.size()) {
      throw Error(Errc::UnsupportedPair,
                  "pair (" + std::to_string(e.i) + ", " + std::to_string(e.j) + ") is outside the space", {e.i, e.j});
    }
  }
}

double max_distance(const FiniteMetricSpace& space) { return space.size() < 2 ? 1.0 : space.diameter(); }

double poincare_l2(const FiniteMetricSpace& space, const CertificateMeasure& mu, const SdpOptions& options) {
  const std::size_t n = space.size();
  if (n > kMaxSdpPoints) throw Error(Errc::TooManyPoints, "poincare_value handles at most 64 points");
  if (n < 2) return 0.0;
  const double scale = max_distance(space);
  const int m = static_cast<int>(n) - 1;
  SdpProblem prob;
  prob.psd_dim = m;
  prob.objective = VectorXd::Zero(prob.var_count());
  for (const auto& e : mu.support) {
    if (e.i == e.j) continue;
    for (auto [v, c] : pair_terms(e.i, e.j, m)) prob.objective(v) += e.w * c;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = space(i, j) / scale;
      prob.rows.push_back({pair_terms(i, j, m), d * d});
    }
  const auto sol = solve_sdp(prob, options);
  return sol.primal_value * scale * scale;
}

}  // namespace

double CertificateMeasure::total_mass() const {
  double s = 0.0;
  for (const auto& e : support) s += e.w;
  return s;
}

double CertificateMeasure::weight(std::size_t i, std::size_t j) const {
  double s = 0.0;
  for (const auto& e : support)
    if (e.i == i && e.j == j) s += e.w;
  return s;
}

CertificateMeasure CertificateMeasure::from_unordered(const std::vector<Entry>& pairs, double c, double R, int p,
                                                      double zero_below) {
  std::map<std::pair<std::size_t, std::size_t>, double> acc;
  for (const auto& e : pairs) {
    if (e.i == e.j) continue;
    acc[{std::min(e.i, e.j), std::max(e.i, e.j)}] += std::max(0.0, e.w);
  }
  double total = 0.0;
  for (auto& [key, w] : acc) {
    if (w < zero_below) w = 0.0;
    total += w;
  }
  CertificateMeasure out;
  out.c = c;
  out.R = R;
  out.p = p;
  if (total <= 0.0) return out;
  for (const auto& [key, w] : acc) {
    if (w == 0.0) continue;
    const double half = 0.5 * w / total;
    out.support.push_back({key.first, key.second, half});
    out.support.push_back({key.second, key.first, half});
  }
  return out;
}

std::vector<std::string> certificate_problems(const CertificateMeasure& mu, const FiniteMetricSpace& space,
                                              double mass_tol) {
  std::vector<std::string> problems;
  for (const auto& e : mu.support) {
    const std::string where = "(" + std::to_string(e.i) + ", " + std::to_string(e.j) + ")";
    if (e.i >= space.size() || e.j >= space.size()) {
      problems.push_back("pair " + where + " outside the space");
      continue;
    }
    if (e.w < 0.0) problems.push_back("negative weight at " + where);
    if (e.w > 0.0 && (e.i == e.j || !is_far(space(e.i, e.j), mu.R)))
      problems.push_back("weight on near pair " + where);
    if (std::abs(mu.weight(e.i, e.j) - mu.weight(e.j, e.i)) > mass_tol)
      problems.push_back("asymmetric weight at " + where);
  }
  if (std::abs(mu.total_mass() - 1.0) > mass_tol) problems.push_back("total mass is not 1");
  return problems;
}

const char* status_name(SolveStatus s) {
  return s == SolveStatus::Optimal ? "Optimal" : "NumericallyMarginal";
}

EmbedResult max_separation_sdp(const FiniteMetricSpace& space, double R, const SdpOptions& options) {
  const std::size_t n = space.size();
  if (n > kMaxSdpPoints) throw Error(Errc::TooManyPoints, "separation SDP handles at most 64 points");
  if (!has_far_pair(space, R)) throw Error(Errc::NoFarPairs, "no pair at distance >= R");

  // Solve in units of the diameter so the barrier sees O(1) data.
  const double scale = max_distance(space);
  const int m = static_cast<int>(n) - 1;
  SdpProblem prob;
  prob.psd_dim = m;
  prob.free_vars = 1;
  const int t = prob.gram_var_count();
  prob.objective = VectorXd::Zero(prob.var_count());
  prob.objective(t) = 1.0;

  std::vector<std::pair<std::size_t, std::size_t>> far;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = space(i, j) / scale;
      prob.rows.push_back({pair_terms(i, j, m), d * d});
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!is_far(space(i, j), R)) continue;
      auto terms = pair_terms(i, j, m);
      for (auto& [v, c] : terms) c = -c;
      terms.emplace_back(t, 1.0);
      prob.rows.push_back({std::move(terms), 0.0});
      far.emplace_back(i, j);
    }

  const auto sol = solve_sdp(prob, options);
  const std::size_t first_far = prob.rows.size() - far.size();

  // Pull the Gram matrix back inside Q <= d^2 (a no-op up to rounding on a
  // converged solve) so the returned embedding is 1-Lipschitz as stated.
  MatrixXd K = embed_gram(sol.gram);
  double shrink = 1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double q = gram_sq_dist(K, static_cast<Index>(i), static_cast<Index>(j));
      const double d = space(i, j) / scale;
      if (q > d * d) shrink = std::min(shrink, d * d / q);
    }
  K *= shrink;
  double t_feasible = std::numeric_limits<double>::infinity();
  for (auto [i, j] : far)
    t_feasible = std::min(t_feasible, gram_sq_dist(K, static_cast<Index>(i), static_cast<Index>(j)));

  EmbedResult out;
  out.status = sol.converged ? SolveStatus::Optimal : SolveStatus::NumericallyMarginal;
  out.iterations = sol.iterations;
  const double t_value = sol.converged ? sol.primal_value : t_feasible;
  out.s_star = std::sqrt(std::max(0.0, t_value)) * scale;
  out.gram = centred(K) * scale * scale;

  std::vector<CertificateMeasure::Entry> weights;
  for (std::size_t l = 0; l < far.size(); ++l)
    weights.push_back({far[l].first, far[l].second, sol.row_dual(static_cast<Index>(first_far + l))});
  out.certificate = CertificateMeasure::from_unordered(weights, out.s_star * out.s_star, R, 2);
  return out;
}

double poincare_value(const FiniteMetricSpace& space, const CertificateMeasure& mu, const SdpOptions& options) {
  check_support(space, mu);
  if (mu.p == 1) return cut_cone_poincare_value(space, mu);
  if (mu.p != 2) throw Error(Errc::InvalidArgument, "only p = 1 and p = 2 have a solver");
  return poincare_l2(space, mu, options);
}

MatrixXd gram_factor(const MatrixXd& K, double tol) {
  const Index n = K.rows();
  if (K.cols() != n) throw Error(Errc::NotSquare, "Gram matrix must be square");
  MatrixXd residual = 0.5 * (K + K.transpose());
  MatrixXd F = MatrixXd::Zero(n, n);
  Index rank = 0;
  for (; rank < n; ++rank) {
    Index piv = 0;
    const double dmax = residual.diagonal().maxCoeff(&piv);
    if (dmax <= tol) break;
    const VectorXd col = residual.col(piv) / std::sqrt(dmax);
    F.col(rank) = col;
    residual.noalias() -= col * col.transpose();
  }
  for (Index i = 0; i < n; ++i) {
    if (residual(i, i) < -tol) {
      throw Error(Errc::NotPSD, "negative pivot " + std::to_string(residual(i, i)) + " at row " + std::to_string(i),
                  {static_cast<std::size_t>(i)});
    }
  }
  return F.leftCols(rank);
}

SpectralCertificate certificate_from_spectral_gap(const FiniteGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n < 2) throw Error(Errc::InvalidArgument, "certificate needs at least two vertices");
  SpectralCertificate out;
  out.lambda1 = lambda1(g);
  out.k0 = g.max_degree();
  out.gap_too_small = n <= 2 * out.k0;
  if (!out.gap_too_small && out.k0 < 2) {
    throw Error(Errc::InvalidDegree, "log base k0 needs k0 >= 2");
  }
  const double R = out.k0 >= 2 ? std::log(static_cast<double>(n) / 2.0) / std::log(static_cast<double>(out.k0)) : 0.0;
  const auto metric = g.metric();

  std::vector<CertificateMeasure::Entry> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (is_far(metric(i, j), R)) pairs.push_back({i, j, 1.0});
  out.far_mass = 2.0 * static_cast<double>(pairs.size()) / static_cast<double>(n * n);
  out.measure = CertificateMeasure::from_unordered(pairs, 2.0 * static_cast<double>(out.k0) / out.lambda1, R, 2);
  return out;
}

double random_lipschitz_max(const FiniteMetricSpace& space, const CertificateMeasure& mu, int samples,
                            std::uint64_t seed) {
  const std::size_t n = space.size();
  if (n < 2) return 0.0;
  check_support(space, mu);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit;
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    // Pairwise "distances" of the sample, in the target's own power p.
    MatrixXd sigma = MatrixXd::Zero(static_cast<Index>(n), static_cast<Index>(n));
    const int kind = s % 3;
    if (kind == 0) {
      // Frechet map x -> d(x, a) - b d(x, c): 1-Lipschitz up to the factor 1 + b.
      const auto a = static_cast<std::size_t>(rng() % n);
      const auto c = static_cast<std::size_t>(rng() % n);
      const double b = unit(rng);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          sigma(i, j) = std::abs(space(i, a) - space(j, a) - b * (space(i, c) - space(j, c)));
    } else if (mu.p == 2) {
      const auto dim = static_cast<Index>(1 + rng() % n);
      MatrixXd f(static_cast<Index>(n), dim);
      for (Index i = 0; i < f.rows(); ++i)
        for (Index k = 0; k < dim; ++k) f(i, k) = gauss(rng);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) sigma(i, j) = (f.row(i) - f.row(j)).norm();
    } else {
      const int cuts = 1 + static_cast<int>(rng() % (2 * n));
      for (int k = 0; k < cuts; ++k) {
        const std::uint64_t mask = rng();
        const double w = unit(rng);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            if (((mask >> (i % 64)) & 1U) != ((mask >> (j % 64)) & 1U)) sigma(i, j) += w;
      }
    }
    double lip = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) lip = std::max(lip, sigma(i, j) / space(i, j));
    if (lip <= 0.0) continue;
    double value = 0.0;
    for (const auto& e : mu.support) value += std::pow(sigma(e.i, e.j) / lip, mu.p) * e.w;
    best = std::max(best, value);
  }
  return best;
}

}  // namespace coarse
