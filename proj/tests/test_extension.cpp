#include <gtest/gtest.h>

#include "coarse/error.hpp"
#include "coarse/extension.hpp"
#include "d8_fixture.hpp"

using namespace coarse;

using namespace d8fixture;

TEST(Extension, DihedralTableAgreesWithEnumeration) {
  const auto ext = make_extension(d8(), z2(), 100);
  ASSERT_EQ(ext.G.order(), 8u);
  ASSERT_EQ(ext.Q.order(), 2u);
  EXPECT_EQ(ext.kernel.size(), 4u);
  for (const auto& a : all_d8())
    for (const auto& b : all_d8())
      EXPECT_EQ(ext.G.multiply(ext.G.index_of(a.perm()), ext.G.index_of(b.perm())), ext.G.index_of((a * b).perm()));
  // The section is the shortest lift: e over e and s over the reflection class.
  EXPECT_EQ(ext.section[0], 0u);
  EXPECT_EQ(ext.section[static_cast<std::size_t>(Fixture(1).ext_q_index(1))], ext.G.index_of(Dihedral{0, 1}.perm()));
}

TEST(Extension, EtaLandsInTheKernelAndMatchesTheTable) {
  Fixture fx(1);
  const Dihedral sigma[2] = {{0, 0}, {0, 1}};
  for (const auto& g : all_d8())
    for (int p = 0; p < 2; ++p) {
      const auto eta = eta_map(fx.ext, fx.ext.G.index_of(g.perm()), static_cast<std::size_t>(fx.ext_q_index(p)));
      EXPECT_TRUE(fx.ext.in_kernel(eta));
      const Dihedral expect = sigma[p].inverse() * g * sigma[(g.f + p) % 2];
      EXPECT_EQ(eta, fx.ext.G.index_of(expect.perm()));
    }
}

TEST(Extension, ComposedVectorsMatchBruteForce) {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    Fixture fx(seed);
    const auto xi = extension_compose(fx.ext, fx.zeta, fx.lambda);
    ASSERT_EQ(xi.elements.size(), 8u);
    EXPECT_EQ(xi.dimension(), 16);
    for (const auto& g : all_d8()) {
      const auto& v = xi.at(fx.ext.G.index_of(g.perm()));
      EXPECT_NEAR(v.norm(), 1.0, 1e-12);
      EXPECT_LE((v - fx.oracle_xi(g)).norm(), 1e-12);
      for (const auto& h : all_d8())
        EXPECT_NEAR(v.dot(xi.at(fx.ext.G.index_of(h.perm()))), fx.oracle_xi(g).dot(fx.oracle_xi(h)), 1e-12);
    }
    EXPECT_NEAR(inner_product_defect(fx.ext, xi, 0.0), 0.0, 1e-12);
  }
}

TEST(Extension, InvalidKernelsAndRadii) {
  Fixture fx(5);
  auto code_of = [&](const KernelFamily& z, const KernelFamily& l) {
    try {
      extension_compose(fx.ext, z, l);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::EmptyInput;
  };
  auto short_zeta = fx.zeta;
  short_zeta.elements.pop_back();
  short_zeta.vectors.pop_back();
  EXPECT_EQ(code_of(short_zeta, fx.lambda), Errc::SupportRadiusExceeded);

  auto scaled = fx.zeta;
  scaled.vectors[0] *= 1.001;
  EXPECT_EQ(code_of(scaled, fx.lambda), Errc::InvalidKernel);

  auto tight = fx.lambda;
  tight.support_radius = 0;
  EXPECT_EQ(code_of(fx.zeta, tight), Errc::SupportRadiusExceeded);

  auto off_kernel = fx.zeta;
  off_kernel.elements[1] = fx.ext.G.index_of(kS);
  EXPECT_EQ(code_of(off_kernel, fx.lambda), Errc::InvalidKernel);
}

TEST(Extension, NonHomomorphismIsRejected) {
  // A generator of order 4 cannot map to one of order 3.
  QuotientGroupSpec z4{4, {{1, 2, 3, 0}}, true};
  QuotientGroupSpec z3{3, {{1, 2, 0}}, true};
  try {
    make_extension(z4, z3, 100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotAHomomorphism);
  }
  EXPECT_THROW(make_extension(d8(), z4, 100), Error);
}
