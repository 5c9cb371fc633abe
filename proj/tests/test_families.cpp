#include <gtest/gtest.h>

#include <set>

#include "stab/families.hpp"

using namespace stab;

namespace {

const std::vector<FamilyRow>& table3() {
  static const std::vector<FamilyRow> t = family_table({3, 12});
  return t;
}

const FamilyRow& row(const std::string& name) {
  for (const auto& r : table3())
    if (r.name() == name) return r;
  throw std::out_of_range(name);
}

} // namespace

TEST(Families, AbsoluteBidegrees) {
  // the four classes per period, shifted by (12, 8)
  const std::vector<std::pair<int, int>> base{{2, 1}, {4, 2}, {6, 3}, {11, 7}};
  for (int i = 0; i <= 3; ++i) {
    auto rows = absolute_rows(table3(), i);
    ASSERT_EQ(rows.size(), 4u);
    for (std::size_t k = 0; k < 4; ++k) {
      EXPECT_EQ(rows[k].g, base[k].first + 12 * i) << rows[k].name();
      EXPECT_EQ(rows[k].d, base[k].second + 8 * i) << rows[k].name();
    }
    EXPECT_EQ(rows[3].name(), "s_" + std::to_string(i + 1));
  }
}

TEST(Families, EveryDetectingClassIsNonzero) {
  EXPECT_EQ(table3().size(), 4u * 10u);
  for (const auto& r : table3()) {
    EXPECT_TRUE(r.nonzero) << r.name();
    EXPECT_NE(r.cobar, "zero") << r.name();
    EXPECT_EQ(r.dg - r.dd, 4 * r.i + r.j + (r.detecting.find("z32") != std::string::npos ? 1 : 0))
        << r.name();
  }
}

TEST(Families, DetectingBidegrees) {
  EXPECT_EQ(row("u_00").detecting, "z32");
  EXPECT_EQ(row("u_21").detecting, "y^2*h11*z32");
  EXPECT_EQ(row("u_21").dg, 24 + 2 + 3);
  EXPECT_EQ(row("s_1").detecting, "y*z00");
  EXPECT_EQ(row("s_1").dg, 12);
  EXPECT_EQ(row("s_4").detecting, "y^4*z00");
  EXPECT_EQ(row("s_4").dd, 32);
  // a detecting class sits one step above its boundary class in both gradings
  for (const auto& r : table3())
    if (r.family == "u" || r.family == "s") {
      EXPECT_EQ(r.dg, r.g + 1) << r.name();
      EXPECT_EQ(r.dd, r.d + 1) << r.name();
    } else {
      EXPECT_EQ(r.dg, r.g);
      EXPECT_EQ(r.dd, r.d);
    }
}

TEST(Families, CobarWindowCrossCheck) {
  std::set<std::string> checked;
  for (const auto& r : table3())
    if (r.cobar == "nonzero") checked.insert(r.name());
  for (const char* n : {"alpha_00", "alpha_01", "alpha_02", "gamma_00", "u_02", "s_1", "alpha_10"})
    EXPECT_TRUE(checked.count(n)) << n;
  EXPECT_EQ(row("alpha_11").cobar, "-");
}

TEST(Families, ConnectingMapDetectsU) {
  for (const auto& r : table3()) {
    if (r.family == "u" && r.j <= 1)
      EXPECT_EQ(r.boundary, "nonzero") << r.name();
    else
      EXPECT_EQ(r.boundary, "-") << r.name();
  }
}

TEST(Families, SwapMatrix) {
  EXPECT_EQ(swap_matrix_rank(), 1u);
  EXPECT_EQ(row("u_00").note, "represented by the matrix (0 1;1 0)");
  EXPECT_EQ(row("u_11").note, "u_00*u_10");
}

TEST(Families, Window) {
  EXPECT_THROW(family_table({4, 12}), std::length_error);
  EXPECT_THROW(family_table({-1, 12}), std::invalid_argument);
  auto t = family_table({0, -1});
  EXPECT_EQ(t.size(), 10u);
  for (const auto& r : t) EXPECT_EQ(r.cobar, "-");
}
