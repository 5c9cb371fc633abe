#include <gtest/gtest.h>

#include "stab/cobar.hpp"
#include "stab/resolution.hpp"

using namespace stab;

namespace {

const HopfAlgebraTable& a1() {
  static const HopfAlgebraTable a = a1_algebra();
  return a;
}

const MinimalResolution& res_f2() {
  static const MinimalResolution r(a1(), GradedModule::trivial(), 16, 48);
  return r;
}

const MinimalResolution& res_cone() {
  static const MinimalResolution r(a1(), cofibre_h10_module(a1()), 16, 48);
  return r;
}

ExtClass only(const MinimalResolution& r, int g, int d) {
  EXPECT_EQ(r.ext_dim(g - d, g), 1u) << "(" << g << "," << d << ")";
  return ext_basis_class(r, g - d, g, 0);
}

ExtClass mul(const ExtClass& a, const ExtClass& b) { return yoneda_product(res_f2(), a, res_f2(), b); }

} // namespace

TEST(Resolution, AlgebraAndModule) {
  EXPECT_EQ(a1().size(), 8);
  EXPECT_TRUE(cofibre_h10_module(a1()).axiom_failures(a1()).empty());
  GradedModule bad;
  bad.degree = {0, 2};
  bad.action[{a1().index("xi1^v"), 0}] = {1};
  EXPECT_FALSE(bad.axiom_failures(a1()).empty());
}

TEST(Resolution, IsExactAndMinimal) {
  const auto& r = res_f2();
  for (int s = 1; s <= 8; ++s)
    for (int t = 0; t <= 20; ++t) {
      auto d1 = r.d_matrix(s, t), d0 = r.d_matrix(s - 1, t);
      ASSERT_TRUE((d0 * d1).is_zero());
      ASSERT_EQ(rank(d1), kernel_basis(d0).dim()) << s << "," << t;
    }
  // minimality: every boundary lands in the augmentation ideal
  for (int s = 1; s <= 8; ++s)
    for (std::size_t k = 0; k < r.num_gens(s); ++k) {
      int t = r.gen_degree(s, static_cast<int>(k));
      const auto& b = r.basis(s - 1, t);
      for (auto i : r.boundary(s, static_cast<int>(k)).support()) ASSERT_NE(b[i].first, 0);
    }
}

TEST(Resolution, RingRelations) {
  auto h10 = only(res_f2(), 1, 0), h11 = only(res_f2(), 2, 1);
  auto y74 = only(res_f2(), 7, 4), y128 = only(res_f2(), 12, 8);
  EXPECT_TRUE(mul(h10, h11).is_zero());
  EXPECT_FALSE(mul(h11, h11).is_zero());
  EXPECT_TRUE(mul(h11, mul(h11, h11)).is_zero());
  EXPECT_TRUE(mul(h11, y74).is_zero());
  auto sq = mul(y74, y74);
  EXPECT_FALSE(sq.is_zero());
  EXPECT_EQ(sq.coeffs, mul(h10, mul(h10, y128)).coeffs);
}

TEST(Resolution, ProductsAgreeWithCobar) {
  HopfAlgebraTable h = build_a1_star();
  CobarComplex c(h, 16, 16);
  auto cls = [&](int g, int d) { return c.cotor_basis(g, d).at(0); };
  for (auto [g1, d1] : {std::pair{1, 0}, {2, 1}, {7, 4}})
    for (auto [g2, d2] : {std::pair{1, 0}, {2, 1}, {4, 2}, {7, 4}, {8, 4}}) {
      bool cobar_zero = c.coordinates(c.product(cls(g1, d1), cls(g2, d2))).is_zero();
      bool ext_zero = mul(only(res_f2(), g1, d1), only(res_f2(), g2, d2)).is_zero();
      EXPECT_EQ(cobar_zero, ext_zero) << "(" << g1 << "," << d1 << ")*(" << g2 << "," << d2 << ")";
    }
}

TEST(Resolution, FlashIsY128Periodic) {
  auto y = only(res_f2(), 12, 8);
  const std::vector<std::pair<int, int>> flash{{0, 0}, {2, 1}, {4, 2}, {3, 2}, {5, 3}, {7, 4}};
  for (int i = 0; i < 3; ++i)
    for (auto [g, d] : flash) {
      auto e = only(res_cone(), g + 12 * i, d + 8 * i);
      auto ye = yoneda_product(res_f2(), y, res_cone(), e);
      EXPECT_FALSE(ye.is_zero());
      EXPECT_EQ(res_cone().ext_dim(ye.s, ye.t), 1u);
    }
  EXPECT_THROW(yoneda_product(res_f2(), y, res_cone(), only(res_cone(), 40, 26)), std::out_of_range);
}

TEST(Resolution, CofibreSequenceMaps) {
  // quotient M -> F2 (m1 ↦ 0) induces 1 ↦ z00; inclusion ΣF2 -> M sends z32 ↦ h11
  MinimalResolution top(a1(), GradedModule::trivial(1), 8, 20);
  auto one = ext_basis_class(res_f2(), 0, 0, 0);
  auto q = induced_on_ext(res_cone(), res_f2(), {{0}, {}}, one);
  EXPECT_FALSE(q.is_zero());
  auto z32 = only(res_cone(), 3, 2);
  auto p = induced_on_ext(top, res_cone(), {{1}}, z32);
  EXPECT_EQ(p.s, 1);
  EXPECT_EQ(p.t, 3);
  EXPECT_FALSE(p.is_zero());
  auto h10 = only(res_f2(), 1, 0);
  auto p_of_h10z32 = induced_on_ext(top, res_cone(), {{1}},
                                    yoneda_product(res_f2(), h10, res_cone(), z32));
  EXPECT_TRUE(p_of_h10z32.is_zero()); // h10·z32 lies in the image of q
}
