#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "coarse/metric.hpp"
#include "coarse/sdp.hpp"
#include "coarse/spectral.hpp"

namespace coarse {

/// Symmetric probability measure on far pairs of a window, with the
/// Poincare constant c it certifies at exponent p:
///   sum over (x, y) of |f(x) - f(y)|^p mu(x, y) <= c
/// for every 1-Lipschitz f into the target class (p = 2: Hilbert space,
/// p = 1: L1).
struct CertificateMeasure {
  struct Entry {
    std::size_t i = 0;
    std::size_t j = 0;
    double w = 0.0;
  };

  std::vector<Entry> support;  ///< ordered pairs, both orientations present
  double c = 0.0;
  double R = 0.0;
  int p = 2;

  double total_mass() const;
  /// mu(i, j); zero when the pair is not in the support.
  double weight(std::size_t i, std::size_t j) const;

  /// Builds a symmetric measure from unordered-pair weights {i, j, w}: each
  /// weight is split evenly between (i, j) and (j, i), weights below
  /// `zero_below` are dropped and the rest renormalised to total mass 1.
  static CertificateMeasure from_unordered(const std::vector<Entry>& pairs, double c, double R, int p,
                                           double zero_below = 1e-10);
};

/// Violations of the measure invariants on `space`; empty when it is valid.
/// Mass is checked to `mass_tol`.
std::vector<std::string> certificate_problems(const CertificateMeasure& mu, const FiniteMetricSpace& space,
                                              double mass_tol = 1e-9);

enum class SolveStatus { Optimal, NumericallyMarginal };
const char* status_name(SolveStatus s);

struct EmbedResult {
  double s_star = 0.0;
  Eigen::MatrixXd gram;  ///< centred Gram matrix (empty for the L1 variant)
  /// L1 variant only: cut decomposition as (bitmask of one side, weight).
  std::vector<std::pair<std::uint64_t, double>> cuts;
  CertificateMeasure certificate;
  SolveStatus status = SolveStatus::Optimal;
  int iterations = 0;
};

/// Q(x, y) = K_xx + K_yy - 2 K_xy.
inline double gram_sq_dist(const Eigen::MatrixXd& K, Eigen::Index x, Eigen::Index y) {
  return K(x, x) + K(y, y) - 2.0 * K(x, y);
}

/// Largest t such that some Gram matrix K has Q <= d^2 on every pair and
/// Q >= t on every far pair (d >= R); s_star = sqrt(t). The certificate is
/// the normalised far-pair multiplier with c = s_star^2.
///
/// Throws NoFarPairs or TooManyPoints (more than 64 points). A solve that
/// hits the iteration cap returns the best feasible point found with status
/// NumericallyMarginal.
EmbedResult max_separation_sdp(const FiniteMetricSpace& space, double R, const SdpOptions& options = {});

/// Tight Poincare constant of mu: the supremum over 1-Lipschitz maps into
/// Hilbert space (p = 2, an SDP) or into L1 (p = 1, an LP over the cut
/// cone) of sum |f(x) - f(y)|^p mu(x, y). Throws UnsupportedPair for pairs
/// outside the space and InvalidArgument for any other p.
double poincare_value(const FiniteMetricSpace& space, const CertificateMeasure& mu,
                      const SdpOptions& options = {});

/// Pivoted Cholesky factor F with F F^T = K, one row per point and one
/// column per retained pivot. Throws NotPSD when a pivot is below -tol.
Eigen::MatrixXd gram_factor(const Eigen::MatrixXd& K, double tol = 1e-8);

struct SpectralCertificate {
  CertificateMeasure measure;  ///< c holds the bound 2 k0 / lambda1
  double lambda1 = 0.0;
  std::size_t k0 = 0;
  /// Mass of the uniform measure on C x C carried by pairs with d >= R.
  double far_mass = 0.0;
  /// |C| <= 2 k0: R is below 1 and every distinct pair is used.
  bool gap_too_small = false;
};

/// Uniform measure on pairs at distance >= log_{k0}(|C|/2), renormalised,
/// with bound 2 k0 / lambda1. Throws InvalidDegree when k0 < 2 outside the
/// small-graph case, and propagates Disconnected.
SpectralCertificate certificate_from_spectral_gap(const FiniteGraph& g);

/// Random check of a certificate: draws `samples` random point
/// configurations, rescales each to be 1-Lipschitz and returns the largest
/// sum |f(x) - f(y)|^p mu(x, y) seen. For p = 1 the configurations are
/// cut-cone combinations; for p = 2 Euclidean point sets.
double random_lipschitz_max(const FiniteMetricSpace& space, const CertificateMeasure& mu, int samples,
                            std::uint64_t seed);

/// Cut-cone (L1) variant of the separation problem, p = 1:
/// max s with sigma = sum lambda_S delta_S, sigma <= d, sigma >= s on far
/// pairs. Solved exactly by simplex. Throws NoFarPairs or CutLimitExceeded
/// (more than 10 points).
EmbedResult cut_cone_lp(const FiniteMetricSpace& space, double R);

/// The p = 1 Poincare value: max over sigma in the cut cone with sigma <= d
/// of sum sigma(x, y) mu(x, y). Throws CutLimitExceeded or UnsupportedPair.
double cut_cone_poincare_value(const FiniteMetricSpace& space, const CertificateMeasure& mu);

}  // namespace coarse
