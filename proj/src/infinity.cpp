#include "coarse/infinity.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <sstream>

#include "coarse/error.hpp"
#include "coarse/parallel.hpp"

namespace coarse {

ExclusionRule ExclusionRule::none() {
  return {"none", [](double) { return std::size_t{1}; }};
}

ExclusionRule ExclusionRule::prefix(std::size_t k) {
  return {"prefix:" + std::to_string(k), [k](double) { return k + 1; }};
}

ExclusionRule ExclusionRule::table(std::map<double, std::size_t> excluded_up_to) {
  std::string name = "table:";
  bool first = true;
  for (const auto& [R, k] : excluded_up_to) {
    if (!first) name += ",";
    first = false;
    std::ostringstream os;
    os << R << "=" << k;
    name += os.str();
  }
  return {name, [t = std::move(excluded_up_to)](double R) {
            auto it = t.upper_bound(R);
            if (it == t.begin()) return std::size_t{1};
            return std::prev(it)->second + 1;
          }};
}

ExclusionRule ExclusionRule::injectivity(std::vector<InjectivityRadius> radii) {
  return {"injectivity", [radii = std::move(radii)](double R) {
            for (std::size_t k = 0; k < radii.size(); ++k)
              if (static_cast<double>(radii[k].radius) > 2.0 * R) return k + 1;
            return radii.size() + 1;
          }};
}

std::optional<double> ScanProfile::rho_minus_at(double R) const {
  for (const auto& s : per_scale)
    if (std::abs(s.R - R) <= 1e-9) return s.rho_minus;
  return std::nullopt;
}

ScanProfile ce_at_infinity_profile(const BlockSpace& space, const std::vector<double>& scales,
                                   const ExclusionRule& rule) {
  if (scales.empty()) throw Error(Errc::InvalidArgument, "profile needs at least one scale");
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (!(scales[i] > 0.0)) throw Error(Errc::InvalidArgument, "scales must be positive");
    if (i > 0 && !(scales[i] > scales[i - 1])) throw Error(Errc::InvalidArgument, "scales must be increasing");
  }

  ScanProfile profile;
  profile.rule = rule.name;
  for (double R : scales) {
    ScaleResult res;
    res.R = R;
    res.exclude_below = rule.exclude_below(R);
    res.windows = enumerate_windows(space, R, res.exclude_below);
    res.s_star.assign(res.windows.size(), std::nullopt);
    res.status.assign(res.windows.size(), SolveStatus::Optimal);
    parallel_for(res.windows.size(), [&](std::size_t k) {
      const auto C = window_space(space, res.windows[k]);
      if (!has_far_pair(C, R)) return;
      const auto er = max_separation_sdp(C, R);
      res.s_star[k] = er.s_star;
      res.status[k] = er.status;
    });
    for (const auto& s : res.s_star)
      if (s && (!res.rho_minus || *s < *res.rho_minus)) res.rho_minus = *s;
    profile.per_scale.push_back(std::move(res));
  }
  return profile;
}

const char* slot_status_name(SlotStatus s) {
  switch (s) {
    case SlotStatus::Found:
      return "Found";
    case SlotStatus::NotFound:
      return "NotFound";
    case SlotStatus::Vacuous:
      return "Vacuous";
  }
  return "?";
}

ExpanderSearch generalized_expander_search(const BlockSpace& space, const std::vector<ScheduleEntry>& schedule,
                                           double c_max, std::vector<std::size_t> exclude_below) {
  for (std::size_t m = 1; m < schedule.size(); ++m) {
    if (schedule[m].r < schedule[m - 1].r || schedule[m].R < schedule[m - 1].R)
      throw Error(Errc::InvalidArgument, "schedule must be non-decreasing in r_m and R_m");
  }
  if (exclude_below.empty())
    for (std::size_t k = 1; k <= space.block_count(); ++k) exclude_below.push_back(k);

  ExpanderSearch out;
  out.schedule = schedule;
  out.c_max = c_max;
  out.uniform = !schedule.empty();

  for (std::size_t m = 0; m < schedule.size(); ++m) {
    const auto [r, R] = schedule[m];
    // Every window is solved once per entry and reused across depths.
    std::vector<Window> windows;
    for (auto& w : enumerate_windows(space, r, 1))
      if (has_far_pair(window_space(space, w), R)) windows.push_back(std::move(w));
    std::vector<EmbedResult> results(windows.size());
    parallel_for(windows.size(),
                 [&](std::size_t k) { results[k] = max_separation_sdp(window_space(space, windows[k]), R); });

    for (auto depth : exclude_below) {
      SearchSlot slot;
      slot.m = m;
      slot.exclude_below = depth;
      std::optional<std::size_t> best;
      for (std::size_t k = 0; k < windows.size(); ++k) {
        if (windows[k].block < depth) continue;
        if (!best || results[k].certificate.c < results[*best].certificate.c) best = k;
      }
      if (!best) {
        slot.status = SlotStatus::Vacuous;
      } else {
        slot.window = windows[*best];
        slot.certificate = results[*best].certificate;
        slot.poincare_check = poincare_value(window_space(space, windows[*best]), slot.certificate);
        slot.status = slot.certificate.c <= c_max ? SlotStatus::Found : SlotStatus::NotFound;
      }
      if (slot.status == SlotStatus::Found) {
        out.c_star = std::max(out.c_star, slot.certificate.c);
      } else {
        out.uniform = false;
      }
      out.slots.push_back(std::move(slot));
    }
  }
  return out;
}

namespace {

template <typename Claim>
ObstructionCheck obstruction(const ExpanderSearch& search, Claim&& claimed_rho_minus) {
  ObstructionCheck out;
  for (std::size_t m = 0; m < search.schedule.size(); ++m) {
    bool all_found = false;
    double c = 0.0;
    for (const auto& s : search.slots) {
      if (s.m != m) continue;
      if (s.status != SlotStatus::Found) {
        all_found = false;
        break;
      }
      all_found = true;
      c = std::max(c, s.certificate.c);
    }
    if (!all_found) continue;
    const std::optional<double> rho = claimed_rho_minus(search.schedule[m].R);
    if (rho && (*rho) * (*rho) > c + 1e-9) out.violating_entries.push_back(m);
  }
  out.fires = !out.violating_entries.empty();
  return out;
}

}  // namespace

ObstructionCheck check_obstruction(const ExpanderSearch& search, const ControlPair& claim) {
  return obstruction(search, [&](double R) { return std::optional<double>(claim.rho_minus(R)); });
}

ObstructionCheck check_obstruction(const ExpanderSearch& search, const ScanProfile& claim) {
  return obstruction(search, [&](double R) { return claim.rho_minus_at(R); });
}

double CombinedEmbedding::rho_minus(double t) const {
  std::size_t count = 0;
  for (double R : scales)
    if (R <= t) ++count;
  return std::sqrt(static_cast<double>(count));
}

CombinedEmbedding combine_scales(const std::vector<ScaleMap>& maps, double r) {
  CombinedEmbedding out;
  Eigen::Index rows = -1;
  Eigen::Index cols = 0;
  double inv_sq = 0.0;
  for (std::size_t k = 0; k < maps.size(); ++k) {
    if (rows >= 0 && maps[k].coords.rows() != rows)
      throw Error(Errc::InvalidArgument, "per-scale maps must share the point set");
    rows = maps[k].coords.rows();
    if (maps[k].R > r) continue;
    const double n = static_cast<double>(k + 1);
    out.included.push_back(k + 1);
    out.scales.push_back(maps[k].R);
    cols += maps[k].coords.cols();
    inv_sq += 1.0 / (n * n);
  }
  out.rho_plus_factor = std::sqrt(inv_sq);
  out.coords = Eigen::MatrixXd::Zero(std::max<Eigen::Index>(rows, 0), cols);
  Eigen::Index at = 0;
  for (auto n : out.included) {
    const auto& f = maps[n - 1].coords;
    out.coords.middleCols(at, f.cols()) = f / static_cast<double>(n);
    at += f.cols();
  }
  return out;
}

CombinedCheck verify_combined(const FiniteMetricSpace& space, const CombinedEmbedding& combined,
                              const std::function<double(double)>& rho, double tol) {
  if (static_cast<std::size_t>(combined.coords.rows()) != space.size())
    throw Error(Errc::InvalidArgument, "combined map and space differ in size");
  CombinedCheck check;
  for (std::size_t i = 0; i < space.size(); ++i)
    for (std::size_t j = i + 1; j < space.size(); ++j) {
      ++check.pairs;
      const double d = space(i, j);
      const double dist = (combined.coords.row(static_cast<Eigen::Index>(i)) -
                           combined.coords.row(static_cast<Eigen::Index>(j)))
                              .norm();
      if (dist < combined.rho_minus(d) - tol) ++check.lower_violations;
      if (dist > combined.rho_plus_factor * rho(d) + tol) ++check.upper_violations;
    }
  return check;
}

}  // namespace coarse
