#include <gtest/gtest.h>

#include <cmath>

#include "coarse/error.hpp"
#include "coarse/infinity.hpp"
#include "support.hpp"

using namespace coarse;

namespace {

QuotientGroupSpec cyclic(int n) {
  Permutation g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = (i + 1) % n;
  return {n, {g}, true};
}

}  // namespace

TEST(Exclusion, RulesPickTheFirstKeptBlock) {
  EXPECT_EQ(ExclusionRule::none().exclude_below(5.0), 1u);
  EXPECT_EQ(ExclusionRule::prefix(2).exclude_below(0.1), 3u);
  const auto table = ExclusionRule::table({{2.0, 1}, {8.0, 3}});
  EXPECT_EQ(table.exclude_below(1.0), 1u);
  EXPECT_EQ(table.exclude_below(2.0), 2u);
  EXPECT_EQ(table.exclude_below(7.9), 2u);
  EXPECT_EQ(table.exclude_below(100.0), 4u);
  const auto inj = ExclusionRule::injectivity({{4, true}, {16, true}, {64, true}});
  EXPECT_EQ(inj.exclude_below(1.0), 1u);   // 4 > 2
  EXPECT_EQ(inj.exclude_below(2.0), 2u);   // 4 is not > 4
  EXPECT_EQ(inj.exclude_below(8.0), 3u);
  EXPECT_EQ(inj.exclude_below(32.0), 4u);  // every block excluded
}

TEST(Profile, CyclicBoxSpaceEmbedsIsometricallyFarOut) {
  const auto box = box_space_build({ParentGroup::integers(), {cyclic(4), cyclic(16), cyclic(64)}}, 1000);
  // Odd scales have no catalogue window with a far pair on a cycle: balls of
  // radius ceil(R/2) are too wide and balls of radius R/2 too narrow.
  const auto profile = ce_at_infinity_profile(box.space, {2, 3, 4, 6}, ExclusionRule::injectivity(box.radii));
  ASSERT_EQ(profile.per_scale.size(), 4u);
  EXPECT_FALSE(profile.per_scale[1].rho_minus.has_value());
  for (const auto& s : profile.per_scale) {
    if (s.R == 3) continue;
    ASSERT_TRUE(s.rho_minus.has_value()) << s.R;
    EXPECT_NEAR(*s.rho_minus, s.R, 1e-6 * s.R);
    for (const auto& w : s.windows) EXPECT_GE(w.block, s.exclude_below);
  }
  EXPECT_FALSE(profile.rho_minus_at(5.0).has_value());
  EXPECT_TRUE(profile.rho_minus_at(6.0).has_value());
}

TEST(Profile, NoFarPairsGivesNoValueAndScalesMustIncrease) {
  const auto u = coarse_disjoint_union({FiniteGraph::complete(3).metric()});
  const auto p = ce_at_infinity_profile(u, {1.0, 2.0}, ExclusionRule::none());
  EXPECT_TRUE(p.per_scale[0].rho_minus.has_value());
  // At R = 2 windows have diameter 1 and nothing is far.
  EXPECT_FALSE(p.per_scale[1].rho_minus.has_value());
  EXPECT_THROW(ce_at_infinity_profile(u, {2.0, 1.0}, ExclusionRule::none()), Error);
  EXPECT_THROW(ce_at_infinity_profile(u, {}, ExclusionRule::none()), Error);
}

// s_star of every profile window is bounded by its closest far pair.
TEST(ProfileProperty, WindowValuesRespectFarDistances) {
  testsupport::Rng rng(21);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<FiniteMetricSpace> blocks;
    const int B = testsupport::uniform_int(rng, 1, 3);
    for (int b = 0; b < B; ++b)
      blocks.push_back(validate_metric(testsupport::random_integer_metric(rng, testsupport::uniform_int(rng, 2, 7), 4)));
    const auto u = coarse_disjoint_union(blocks);
    const auto p = ce_at_infinity_profile(u, {1.0, 2.5, 4.0}, ExclusionRule::none());
    for (const auto& s : p.per_scale)
      for (std::size_t k = 0; k < s.windows.size(); ++k) {
        if (!s.s_star[k]) continue;
        const auto C = window_space(u, s.windows[k]);
        double closest = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < C.size(); ++i)
          for (std::size_t j = i + 1; j < C.size(); ++j)
            if (is_far(C(i, j), s.R)) closest = std::min(closest, C(i, j));
        EXPECT_LE(*s.s_star[k], closest + 1e-7);
        if (s.rho_minus) EXPECT_LE(*s.rho_minus, *s.s_star[k]);
      }
  }
}

TEST(Search, SlotStatusesAndObstruction) {
  const auto gu = graph_union({FiniteGraph::cycle(4), FiniteGraph::complete(5), FiniteGraph::cycle(6)});
  const std::vector<ScheduleEntry> schedule{{2.0, 1.0}, {3.0, 2.0}};
  const auto s = generalized_expander_search(gu.space, schedule, 10.0);
  ASSERT_EQ(s.slots.size(), 6u);
  for (const auto& slot : s.slots) {
    ASSERT_EQ(slot.status, SlotStatus::Found);
    ASSERT_TRUE(slot.window.has_value());
    EXPECT_GE(slot.window->block, slot.exclude_below);
    EXPECT_LE(slot.window->diameter, schedule[slot.m].r + 1e-12);
    EXPECT_NEAR(slot.poincare_check, slot.certificate.c, 1e-6 * std::max(1.0, slot.certificate.c));
  }
  EXPECT_TRUE(s.uniform);
  // K5 has no pair at distance 2, so slot (m = 1, K = 2) must come from C6.
  EXPECT_EQ(s.slots[4].m, 1u);
  EXPECT_EQ(s.slots[4].exclude_below, 2u);
  EXPECT_EQ(s.slots[4].window->block, 3u);

  // Excluding every block leaves nothing to search.
  const auto none = generalized_expander_search(gu.space, schedule, 10.0, {4});
  for (const auto& slot : none.slots) {
    EXPECT_EQ(slot.status, SlotStatus::Vacuous);
    EXPECT_FALSE(slot.window.has_value());
  }
  EXPECT_FALSE(none.uniform);

  const auto strict = generalized_expander_search(gu.space, schedule, 1e-3);
  EXPECT_FALSE(strict.uniform);
  for (const auto& slot : strict.slots) EXPECT_NE(slot.status, SlotStatus::Found);
  EXPECT_THROW(generalized_expander_search(gu.space, {{2.0, 2.0}, {1.0, 1.0}}, 1.0), Error);
}

TEST(Search, ObstructionFiresOnlyAboveTheCertificate) {
  const auto gu = graph_union({FiniteGraph::complete(4), FiniteGraph::complete(6)});
  const auto s = generalized_expander_search(gu.space, {{1.0, 1.0}}, 10.0);
  ASSERT_TRUE(s.uniform);
  const double c = s.c_star;
  // K_n at R = 1: the regular simplex is optimal, so c is 1.
  EXPECT_NEAR(c, 1.0, 1e-6);
  const auto weak = ControlPair::make(PiecewiseLinear({{0, 0.5}}), PiecewiseLinear({{0, 10}}));
  const auto strong = ControlPair::make(PiecewiseLinear({{0, 1.5}}), PiecewiseLinear({{0, 10}}));
  EXPECT_FALSE(check_obstruction(s, weak).fires);
  const auto hit = check_obstruction(s, strong);
  EXPECT_TRUE(hit.fires);
  EXPECT_EQ(hit.violating_entries, std::vector<std::size_t>{0});
}

TEST(Combine, WeightsAndControls) {
  Eigen::MatrixXd f(3, 1);
  f << 0, 1, 3;
  const std::vector<ScaleMap> maps{{1.0, f}, {2.0, 2 * f}, {5.0, 3 * f}};
  const auto c = combine_scales(maps, 2.0);
  EXPECT_EQ(c.included, (std::vector<std::size_t>{1, 2}));
  EXPECT_NEAR(c.rho_plus_factor, std::sqrt(1.0 + 0.25), 1e-15);
  EXPECT_EQ(c.coords.cols(), 2);
  // Block n is f_n / n.
  EXPECT_DOUBLE_EQ(c.coords(2, 1), 3.0);
  EXPECT_DOUBLE_EQ(c.rho_minus(0.5), 0.0);
  EXPECT_DOUBLE_EQ(c.rho_minus(1.5), 1.0);
  EXPECT_DOUBLE_EQ(c.rho_minus(2.0), std::sqrt(2.0));

  EXPECT_THROW(combine_scales({{1.0, f}, {2.0, Eigen::MatrixXd::Zero(2, 1)}}, 3.0), Error);
}
