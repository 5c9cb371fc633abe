#include <gtest/gtest.h>

#include <bit>
#include <random>

#include "stab/f2.hpp"

using namespace stab;

namespace {

F2Matrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c) {
  F2Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (rng() & 1) m.set(i, j);
  return m;
}

// rank as the size of the largest independent row subset; independence of a
// subset means no nonempty sub-subset sums to zero
std::size_t brute_rank(const F2Matrix& m) {
  const std::size_t r = m.rows();
  std::size_t best = 0;
  for (uint32_t s = 0; s < (1u << r); ++s) {
    std::size_t k = std::popcount(s);
    if (k <= best) continue;
    bool indep = true;
    for (uint32_t t = s; t && indep; t = (t - 1) & s) {
      BitVec acc(m.cols());
      for (std::size_t i = 0; i < r; ++i)
        if (t >> i & 1) acc ^= m.row(i);
      if (acc.is_zero()) indep = false;
    }
    if (indep) best = k;
  }
  return best;
}

std::vector<BitVec> all_vectors(std::size_t n) {
  std::vector<BitVec> out;
  for (uint32_t x = 0; x < (1u << n); ++x) {
    BitVec v(n);
    for (std::size_t i = 0; i < n; ++i)
      if (x >> i & 1) v.set(i);
    out.push_back(v);
  }
  return out;
}

} // namespace

TEST(F2Rank, Examples) {
  EXPECT_EQ(rank(F2Matrix::identity(2)), 2u);
  EXPECT_EQ(rank(F2Matrix(3, 5)), 0u);
  auto m = F2Matrix::from_rows({"110", "011", "101"});
  EXPECT_EQ(rank(m), 2u);
  EXPECT_EQ(brute_rank(m), 2u);
}

TEST(F2Rank, AgreesWithSubsetSearch) {
  std::mt19937 rng(7);
  for (int t = 0; t < 300; ++t) {
    std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    auto m = random_matrix(rng, r, c);
    ASSERT_EQ(rank(m), brute_rank(m)) << m.to_string();
    ASSERT_LE(rank(m), std::min(r, c));
  }
}

TEST(F2Kernel, Examples) {
  EXPECT_EQ(kernel_basis(F2Matrix::identity(4)).dim(), 0u);
  EXPECT_EQ(kernel_basis(F2Matrix(2, 3)).dim(), 3u);
  auto k = kernel_basis(F2Matrix::from_rows({"11"}));
  ASSERT_EQ(k.dim(), 1u);
  EXPECT_EQ(k.basis().row(0), BitVec::from_string("11"));
}

TEST(F2Kernel, RankNullityAndEnumeration) {
  std::mt19937 rng(11);
  for (int t = 0; t < 200; ++t) {
    std::size_t r = 1 + rng() % 6, c = 1 + rng() % 7;
    auto m = random_matrix(rng, r, c);
    auto k = kernel_basis(m);
    ASSERT_EQ(rank(m) + k.dim(), c);
    std::size_t count = 0;
    for (const auto& v : all_vectors(c)) {
      bool in_ker = m.apply(v).is_zero();
      count += in_ker;
      ASSERT_EQ(in_ker, k.contains(v));
    }
    ASSERT_EQ(count, std::size_t{1} << k.dim());
    for (std::size_t i = 1; i < k.pivots().size(); ++i) ASSERT_LT(k.pivots()[i - 1], k.pivots()[i]);
  }
}

TEST(F2Solve, Examples) {
  auto b = BitVec::from_string("101");
  EXPECT_EQ(*solve(F2Matrix::identity(3), b), b);
  EXPECT_FALSE(solve(F2Matrix(2, 2), BitVec::from_string("01")).has_value());
  auto x = solve(F2Matrix::from_rows({"11"}), BitVec::from_string("1"));
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, BitVec::from_string("10"));
}

TEST(F2Solve, SolutionsAreExactAndComplete) {
  std::mt19937 rng(13);
  for (int t = 0; t < 200; ++t) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    auto m = random_matrix(rng, r, c);
    for (const auto& b : all_vectors(r)) {
      bool solvable = false;
      for (const auto& v : all_vectors(c)) solvable |= (m.apply(v) == b);
      auto x = solve(m, b);
      ASSERT_EQ(solvable, x.has_value());
      if (x) ASSERT_EQ(m.apply(*x), b);
    }
  }
}

TEST(F2Matrix, TailBitsAndProducts) {
  std::mt19937 rng(17);
  for (int t = 0; t < 50; ++t) {
    auto a = random_matrix(rng, 1 + rng() % 70, 1 + rng() % 70);
    auto b = random_matrix(rng, a.cols(), 1 + rng() % 70);
    ASSERT_TRUE(a.tail_bits_clear());
    ASSERT_EQ(a.transpose().transpose(), a);
    auto ab = a * b;
    ASSERT_TRUE(ab.tail_bits_clear());
    ASSERT_EQ((a * b).transpose(), b.transpose() * a.transpose());
    ASSERT_TRUE(rref(a).reduced.tail_bits_clear());
  }
}

TEST(F2Subspace, InsertKeepsEchelonForm) {
  std::mt19937 rng(19);
  for (int t = 0; t < 50; ++t) {
    std::size_t n = 1 + rng() % 80;
    Subspace s(n);
    F2Matrix all(0, n);
    for (int k = 0; k < 20; ++k) {
      BitVec v(n);
      for (std::size_t i = 0; i < n; ++i)
        if (rng() % 5 == 0) v.set(i);
      s.insert(v);
      all.append_row(v);
      ASSERT_EQ(s.dim(), rank(all));
      ASSERT_EQ(s.basis(), Subspace::span(all).basis());
    }
  }
}

TEST(F2Sparse, RankMatchesDense) {
  std::mt19937 rng(23);
  for (int t = 0; t < 100; ++t) {
    std::size_t r = 1 + rng() % 40, c = 1 + rng() % 40;
    auto m = random_matrix(rng, r, c);
    SparseReducer red(r);
    auto mt = m.transpose();
    for (std::size_t j = 0; j < c; ++j) {
      std::vector<uint32_t> col;
      for (auto i : mt.row(j).support()) col.push_back(static_cast<uint32_t>(i));
      red.add_column(col);
    }
    ASSERT_EQ(red.rank(), rank(m));
  }
}
