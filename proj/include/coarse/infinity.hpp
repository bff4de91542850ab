#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "coarse/control.hpp"
#include "coarse/embed.hpp"
#include "coarse/group.hpp"
#include "coarse/metric.hpp"

namespace coarse {

/// Policy choosing the excluded bounded set K_R at each scale, expressed as
/// the first block number that is kept (blocks numbered below it form K_R).
struct ExclusionRule {
  std::string name;
  std::function<std::size_t(double R)> exclude_below;

  /// Nothing is excluded.
  static ExclusionRule none();
  /// Blocks 1..k are excluded at every scale.
  static ExclusionRule prefix(std::size_t k);
  /// Blocks 1..k are excluded, with k read from the entry with the largest
  /// key <= R; scales below every key exclude nothing.
  static ExclusionRule table(std::map<double, std::size_t> excluded_up_to);
  /// Blocks are kept from the first one whose injectivity radius exceeds 2R
  /// (radii are non-decreasing along a filtration). When none does, every
  /// block is excluded.
  static ExclusionRule injectivity(std::vector<InjectivityRadius> radii);
};

/// Per-scale outcome of a profile run. `s_star[k]` is empty for windows
/// without a far pair at this scale.
struct ScaleResult {
  double R = 0.0;
  std::size_t exclude_below = 1;
  std::vector<Window> windows;
  std::vector<std::optional<double>> s_star;
  std::vector<SolveStatus> status;
  std::optional<double> rho_minus;  ///< min of s_star; absent without far pairs
};

/// Compression profile over the window catalogue. Every figure is exact on
/// the catalogue only ("catalogue-certified"): windows other than balls and
/// whole blocks are never examined.
struct ScanProfile {
  std::string rule;
  std::vector<ScaleResult> per_scale;

  std::optional<double> rho_minus_at(double R) const;
};

/// Throws InvalidArgument unless `scales` is non-empty and strictly
/// increasing. Windows are solved in parallel; output order is
/// (scale, block, window).
ScanProfile ce_at_infinity_profile(const BlockSpace& space, const std::vector<double>& scales,
                                   const ExclusionRule& rule);

struct ScheduleEntry {
  double r = 0.0;  ///< window diameter bound r_m
  double R = 0.0;  ///< separation scale R_m
};

enum class SlotStatus { Found, NotFound, Vacuous };
const char* slot_status_name(SlotStatus s);

/// One (m, K) cell of the search: schedule entry m with blocks numbered
/// below `exclude_below` removed.
struct SearchSlot {
  std::size_t m = 0;
  std::size_t exclude_below = 1;
  SlotStatus status = SlotStatus::Vacuous;
  std::optional<Window> window;
  CertificateMeasure certificate;  ///< c = s_star^2 of the chosen window
  double poincare_check = 0.0;     ///< poincare_value re-computed on the certificate
};

struct ExpanderSearch {
  std::vector<ScheduleEntry> schedule;
  std::vector<SearchSlot> slots;
  double c_max = 0.0;
  double c_star = 0.0;  ///< max certificate constant over found slots
  bool uniform = false;  ///< every slot found with c <= c_max
};

/// For every schedule entry m and every exclusion depth (block numbers in
/// `exclude_below`; default 1..B), picks the window of diameter <= r_m with
/// a far pair at R_m whose certificate constant is smallest, and accepts it
/// when that constant is <= c_max. Slots without candidate windows are
/// Vacuous. Throws InvalidArgument unless r_m and R_m are non-decreasing.
ExpanderSearch generalized_expander_search(const BlockSpace& space, const std::vector<ScheduleEntry>& schedule,
                                           double c_max, std::vector<std::size_t> exclude_below = {});

/// Outcome of checking a claimed lower control against a certificate family:
/// a 1-Lipschitz map satisfying rho_minus on a window with certificate
/// constant c forces rho_minus(R_m)^2 <= c.
struct ObstructionCheck {
  bool fires = false;
  std::vector<std::size_t> violating_entries;  ///< schedule indices m
};

/// Fires when, for some schedule entry m whose slots were all found, the
/// claimed rho_minus(R_m)^2 exceeds the largest certificate constant of
/// that entry. Since every such constant is <= c_star, any claim above c_star
/// at a fully found entry fires.
ObstructionCheck check_obstruction(const ExpanderSearch& search, const ControlPair& claim);
/// Same check against a stored profile: the profile's rho_minus at R_m is
/// used where the profile has that scale.
ObstructionCheck check_obstruction(const ExpanderSearch& search, const ScanProfile& claim);

/// One per-scale map f_n of a window (rows are points) with its scale R_n.
/// The index n is the 1-based position in the list passed to combine_scales.
struct ScaleMap {
  double R = 0.0;
  Eigen::MatrixXd coords;
};

struct CombinedEmbedding {
  Eigen::MatrixXd coords;             ///< columns of (1/n) f_n for R_n <= r
  std::vector<std::size_t> included;  ///< the indices n used
  std::vector<double> scales;         ///< R_n of the included maps
  double rho_plus_factor = 0.0;       ///< sqrt(sum 1/n^2)

  /// sqrt(#{included n : R_n <= t}).
  double rho_minus(double t) const;
};

/// Direct sum of the maps with R_n <= r, block n weighted 1/n.
/// Throws InvalidArgument when the maps disagree on the number of points.
CombinedEmbedding combine_scales(const std::vector<ScaleMap>& maps, double r);

struct CombinedCheck {
  std::size_t pairs = 0;
  std::size_t lower_violations = 0;
  std::size_t upper_violations = 0;
};

/// Checks rho_minus(d) <= |F(x) - F(y)| <= rho_plus_factor * rho(d) on
/// every pair of `space`, to `tol`.
CombinedCheck verify_combined(const FiniteMetricSpace& space, const CombinedEmbedding& combined,
                              const std::function<double(double)>& rho, double tol = 1e-9);

}  // namespace coarse
