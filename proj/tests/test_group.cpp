#include <gtest/gtest.h>

#include "coarse/error.hpp"
#include "coarse/group.hpp"
#include "support.hpp"

using namespace coarse;

namespace {

QuotientGroupSpec cyclic(int n) {
  Permutation g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = (i + 1) % n;
  return {n, {g}, true};
}

// Z/n x Z/n acting on n*n cells, for a free abelian parent of rank 2.
QuotientGroupSpec torus(int n) {
  Permutation a(static_cast<std::size_t>(n * n));
  Permutation b(static_cast<std::size_t>(n * n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      a[static_cast<std::size_t>(x * n + y)] = ((x + 1) % n) * n + y;
      b[static_cast<std::size_t>(x * n + y)] = x * n + (y + 1) % n;
    }
  return {n * n, {a, b}, true};
}

QuotientGroupSpec random_spec(testsupport::Rng& rng) {
  const int degree = testsupport::uniform_int(rng, 2, 6);
  const int gens = testsupport::uniform_int(rng, 1, 3);
  QuotientGroupSpec s{degree, {}, true};
  for (int g = 0; g < gens; ++g) {
    Permutation p(static_cast<std::size_t>(degree));
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    s.generators.push_back(p);
  }
  return s;
}

}  // namespace

TEST(Group, PermutationAlgebra) {
  testsupport::Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    Permutation p(7);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    EXPECT_TRUE(is_identity(compose(p, invert(p))));
    EXPECT_TRUE(is_identity(compose(invert(p), p)));
    EXPECT_EQ(compose(p, identity_permutation(7)), p);
  }
  EXPECT_THROW((QuotientGroupSpec{3, {{0, 0, 1}}, true}.validate()), Error);
  EXPECT_THROW((QuotientGroupSpec{3, {{0, 1}}, true}.validate()), Error);
}

TEST(Group, CyclicWordMetric) {
  for (int n : {1, 2, 5, 12}) {
    const auto G = enumerate_group(cyclic(n), 1000);
    ASSERT_EQ(G.order(), static_cast<std::size_t>(n));
    const auto D = G.distance_matrix();
    for (std::size_t i = 0; i < G.order(); ++i) {
      // Element i is a^k or a^-k with k its word length.
      EXPECT_EQ(G.length(i), static_cast<std::size_t>(D(0, static_cast<Eigen::Index>(i))));
      EXPECT_LE(G.length(i), static_cast<std::size_t>(n / 2));
    }
  }
  // Without symmetric closure Z/5 needs words up to length 4.
  auto one_sided = cyclic(5);
  one_sided.symmetric_closure = false;
  EXPECT_EQ(enumerate_group(one_sided, 100).distance_matrix().maxCoeff(), 4.0);
}

TEST(Group, KnownOrders) {
  QuotientGroupSpec s3{3, {{1, 0, 2}, {1, 2, 0}}, true};
  EXPECT_EQ(enumerate_group(s3, 100).order(), 6u);
  QuotientGroupSpec d8{4, {{1, 2, 3, 0}, {3, 2, 1, 0}}, true};
  EXPECT_EQ(enumerate_group(d8, 100).order(), 8u);
  EXPECT_EQ(enumerate_group(torus(4), 100).order(), 16u);
  try {
    enumerate_group(cyclic(50), 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::OrderExceeded);
  }
}

// Left multiplication is an isometry of the word metric, and the canonical
// words multiply out to their elements.
TEST(GroupProperty, WordMetricIsLeftInvariant) {
  testsupport::Rng rng(6);
  for (int trial = 0; trial < 25; ++trial) {
    const auto G = enumerate_group(random_spec(rng), 1000);
    const auto D = G.distance_matrix();
    EXPECT_NO_THROW(validate_metric(D));
    for (std::size_t i = 0; i < G.order(); ++i) {
      std::size_t at = 0;
      for (auto s : G.word(i)) at = G.step(at, s);
      EXPECT_EQ(at, i);
      EXPECT_EQ(G.multiply(i, G.inverse(i)), 0u);
    }
    const auto g = static_cast<std::size_t>(testsupport::uniform_int(rng, 0, static_cast<int>(G.order()) - 1));
    for (std::size_t x = 0; x < G.order(); ++x)
      for (std::size_t y = 0; y < G.order(); ++y)
        EXPECT_EQ(D(static_cast<Eigen::Index>(G.multiply(g, x)), static_cast<Eigen::Index>(G.multiply(g, y))),
                  D(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)));
  }
}

TEST(Group, InjectivityRadii) {
  for (int n : {2, 4, 16, 64}) {
    const auto r = injectivity_radius(ParentGroup::integers(), cyclic(n));
    EXPECT_EQ(r.radius, static_cast<std::size_t>(n));
    EXPECT_TRUE(r.exact);
  }
  EXPECT_EQ(injectivity_radius(ParentGroup::free_abelian(2), torus(3)).radius, 3u);
  // F2 onto Z/2 x Z/2: a^2 is the shortest relation.
  QuotientGroupSpec klein{4, {{1, 0, 3, 2}, {2, 3, 0, 1}}, true};
  EXPECT_EQ(injectivity_radius(ParentGroup::free(2), klein).radius, 2u);
  // A depth cap below the true radius reports a lower bound.
  const auto capped = injectivity_radius(ParentGroup::integers(), cyclic(64), 10);
  EXPECT_FALSE(capped.exact);
  EXPECT_EQ(capped.radius, 11u);
}

TEST(Group, BoxSpaceAndFiltrationChecks) {
  const FiltrationSpec f{ParentGroup::integers(), {cyclic(4), cyclic(16), cyclic(64)}};
  const auto box = box_space_build(f, 1000);
  ASSERT_EQ(box.space.block_count(), 3u);
  EXPECT_EQ(box.radii[2].radius, 64u);
  EXPECT_EQ(box.space.block(2).size(), 16u);
  EXPECT_DOUBLE_EQ(box.space.block(3).diameter(), 32.0);

  try {
    box_space_build({ParentGroup::integers(), {cyclic(16), cyclic(4)}}, 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonMonotoneFiltration);
  }
  EXPECT_THROW(box_space_build({ParentGroup::free_abelian(2), {cyclic(4)}}, 1000), Error);
}

TEST(Group, LiftingWindowsToTheParent) {
  const auto G = enumerate_group(cyclic(16), 100);
  // A ball of radius 3 has diameter 6 < 16/2 and lifts isometrically.
  std::vector<std::size_t> ball;
  for (std::size_t i = 0; i < G.order(); ++i)
    if (G.length(i) <= 3) ball.push_back(i);
  const auto lift = lift_window(ParentGroup::integers(), G, ball);
  EXPECT_TRUE(lift.isometric);
  EXPECT_EQ(lift.mismatches, 0u);

  std::vector<std::size_t> all(G.order());
  std::iota(all.begin(), all.end(), 0);
  EXPECT_FALSE(lift_window(ParentGroup::integers(), G, all).isometric);
}

TEST(Group, ParentWords) {
  const auto F2 = ParentGroup::free(2);
  // a b b^-1 a^-1 reduces to the identity.
  EXPECT_EQ(parent_length(F2, {0, 1, 3, 2}), 0u);
  EXPECT_EQ(parent_length(F2, {0, 1, 2, 3}), 4u);
  const auto Z2 = ParentGroup::free_abelian(2);
  EXPECT_EQ(parent_length(Z2, {0, 1, 2, 3}), 0u);
  EXPECT_EQ(parent_distance(Z2, {0, 0}, {1}), 3u);
  EXPECT_THROW(parent_length(F2, {4}), Error);
}
