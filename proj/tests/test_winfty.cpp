#include <gtest/gtest.h>

#include <random>
#include <set>

#include "stab/winfty.hpp"

using namespace stab::w;

namespace {

const std::vector<Generator>& gens() {
  static const std::vector<Generator> g{sigma(), nu1(), nu2(), beta()};
  return g;
}

Poly P(const std::string& s) { return parse(s, gens()); }

bool all_factors_normal(const Poly& p) {
  for (const auto& m : p)
    for (const auto& f : m)
      if (!is_normal(f.seq, f.x)) return false;
  return true;
}

// generate-then-filter: every upper sequence with entries up to d_max whose
// bidegree on x fits the box, kept when is_normal accepts it
std::set<std::vector<int>> brute_normal_sequences(const Generator& x, int g_max, int d_max) {
  std::set<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self) -> void {
    int r = static_cast<int>(cur.size());
    if ((x.g << r) > g_max) return;
    int d = x.d;
    for (int s : cur) d += s;
    if (d > d_max) return;
    if (is_normal(cur, x)) out.insert(cur);
    for (int s = 1; s <= d_max; ++s) {
      cur.insert(cur.begin(), s);
      self(self);
      cur.erase(cur.begin());
    }
  };
  rec(rec);
  return out;
}

// monomials of bidegree (g,d) built as products factor·(smaller monomial), deduplicated
std::set<Monomial> brute_basis(const std::vector<Factor>& fs, int g, int d,
                               std::map<std::pair<int, int>, std::set<Monomial>>& memo) {
  if (g == 0) return d == 0 ? std::set<Monomial>{Monomial{}} : std::set<Monomial>{};
  auto key = std::make_pair(g, d);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  std::set<Monomial> out;
  for (const auto& f : fs)
    if (f.g() <= g && f.d() <= d)
      for (const auto& m : brute_basis(fs, g - f.g(), d - f.d(), memo))
        out.insert(mono_mul(Monomial{f}, m));
  return memo[key] = out;
}

} // namespace

TEST(Normal, Examples) {
  EXPECT_TRUE(is_normal({2, 1}, sigma()));
  EXPECT_FALSE(is_normal({3, 1}, sigma()));
  EXPECT_TRUE(is_normal({}, sigma()));
  EXPECT_TRUE(is_normal({}, beta()));
  EXPECT_FALSE(is_normal({2}, beta()));
  EXPECT_TRUE(is_normal({3}, beta()));
  Factor f{sigma(), {2, 1}};
  EXPECT_EQ(f.lower(), (std::vector<int>{1, 1}));
}

// normality is equivalent to 0 < s1' <= ... <= sr'
TEST(Normal, LowerIndexCriterion) {
  for (const auto& x : gens())
    for (const auto& seq : brute_normal_sequences(x, 16, 14)) {
      Factor f{x, seq};
      auto low = f.lower();
      if (low.empty()) continue;
      EXPECT_GT(low[0], 0);
      EXPECT_TRUE(std::is_sorted(low.begin(), low.end()));
    }
  std::mt19937 rng(5);
  for (int t = 0; t < 2000; ++t) {
    std::vector<int> seq(1 + rng() % 3);
    for (int& s : seq) s = 1 + rng() % 9;
    Factor f{sigma(), seq};
    auto low = f.lower();
    bool crit = low[0] > 0 && std::is_sorted(low.begin(), low.end());
    ASSERT_EQ(crit, is_normal(seq, sigma()));
  }
}

TEST(ApplyQ, ReferenceComputations) {
  EXPECT_EQ(to_string(P("Q[2](s*Q[1](s))")), "Q[1](s)^3 + s^2*Q[2,1](s)");
  EXPECT_TRUE(P("Q[3,1](s)").empty());
  EXPECT_TRUE(apply_q(3, P("1")).empty());
  EXPECT_TRUE(apply_q(1, P("1")).empty());
  // axioms (b) and (d)
  EXPECT_TRUE(apply_q(2, P("n1")).empty());
  EXPECT_EQ(apply_q(3, P("n1")), P("n1^2"));
  EXPECT_EQ(apply_q(0, P("s")), P("s^2"));
  // Q^3 applied to σQ^1(σ) = 0 gives the relation behind σ²Q^{3,1}(σ) = 0
  EXPECT_EQ(apply_q(3, P("s*Q[1](s)")), P("Q[1](s)*Q[2,1](s) + Q[2](s)*Q[1](s)^2"));
}

TEST(ApplyQ, AdemTable) {
  EXPECT_TRUE(adem_relation(3, 1).empty());
  EXPECT_EQ(adem_relation(4, 1), (std::vector<std::pair<int, int>>{{3, 2}}));
  EXPECT_TRUE(adem_relation(5, 2).empty());
  EXPECT_THROW(adem_relation(2, 1), std::invalid_argument);
  // every rewrite term is either admissible or rewritten again; results are normal
  for (int r = 1; r <= 9; ++r)
    for (int s = 1; s <= 4; ++s) {
      Poly p = apply_q_seq({r, s}, P("s"));
      ASSERT_TRUE(all_factors_normal(p)) << r << "," << s;
      for (const auto& m : p) ASSERT_EQ(bidegree(m), std::make_pair(4, r + s));
    }
}

TEST(ApplyQ, NormalFormIsStable) {
  std::mt19937 rng(3);
  std::vector<std::string> atoms{"s", "Q[1](s)", "Q[2](s)", "Q[2,1](s)", "b", "n1", "Q[3](b)"};
  for (int t = 0; t < 200; ++t) {
    std::string e = atoms[rng() % atoms.size()];
    for (int k = rng() % 3; k > 0; --k) e += "*" + atoms[rng() % atoms.size()];
    int s = rng() % 8;
    Poly p = apply_q(s, P(e));
    ASSERT_TRUE(all_factors_normal(p));
    ASSERT_EQ(parse(to_string(p), gens()), p) << e;
    ASSERT_EQ(parse(to_string(p, true), gens()), p) << e;
  }
}

TEST(ApplyQ, CartanOnArbitrarySplits) {
  std::mt19937 rng(9);
  std::vector<std::string> atoms{"s", "Q[1](s)", "Q[2](s)", "Q[3](s)", "Q[2,1](s)", "b", "Q[3](b)"};
  for (int t = 0; t < 150; ++t) {
    Poly a = P(atoms[rng() % atoms.size()] + "*" + atoms[rng() % atoms.size()]);
    Poly b = P(atoms[rng() % atoms.size()]);
    int s = rng() % 9;
    Poly rhs;
    for (int i = 0; i <= s; ++i) rhs = poly_add(rhs, poly_mul(apply_q(i, a), apply_q(s - i, b)));
    ASSERT_EQ(apply_q(s, poly_mul(a, b)), rhs) << to_string(a) << " * " << to_string(b) << " s=" << s;
  }
}

TEST(Nishida, ReferenceInstances) {
  EXPECT_EQ(dual_steenrod(1, P("Q[2,1](s)")), P("Q[1](s)^2"));
  EXPECT_EQ(dual_steenrod(1, P("Q[1](s)*Q[2](s)")), P("Q[1](s)^2"));
  EXPECT_EQ(dual_steenrod(2, P("Q[2](s)^2")), P("Q[1](s)^2"));
  EXPECT_EQ(dual_steenrod(2, P("s^2*Q[4](s)")), P("s^2*Q[2](s)"));
  EXPECT_TRUE(dual_steenrod(2, P("Q[1](s)*Q[3](s)")).empty());
  EXPECT_TRUE(dual_steenrod(1, P("s")).empty());
  EXPECT_TRUE(dual_steenrod(1, P("Q[1](s)")).empty());
  EXPECT_EQ(dual_steenrod(1, P("Q[2](s)")), P("Q[1](s)"));
  EXPECT_EQ(dual_steenrod(2, P("Q[4](s)")), P("Q[2](s)"));
  EXPECT_EQ(dual_steenrod(1, P("Q[1](s)*Q[2,1](s)")), P("Q[1](s)^3"));
  EXPECT_EQ(dual_steenrod(0, P("Q[2,1](s)")), P("Q[2,1](s)"));
}

TEST(Nishida, Binomials) {
  EXPECT_TRUE(binom2(5, 1));
  EXPECT_FALSE(binom2(4, 1));
  EXPECT_TRUE(binom2(-1, 0));
  EXPECT_TRUE(binom2(-1, 3)); // (-1)^3
  EXPECT_FALSE(binom2(-2, 1));
  EXPECT_FALSE(binom2(3, -1));
}

// Sq^i_* applied to an inadmissible composite through the Nishida formula must
// match Sq^i_* of its Adem normal form
TEST(Nishida, CompatibleWithAdem) {
  Generator t{"t", 1, 1};
  SqRegistry reg{{{"t", 1}, gen(sigma())}};
  for (const auto& x : {sigma(), t, beta()})
    for (int r = 1; r <= 9; ++r)
      for (int s = 1; s <= 4; ++s) {
        if (r <= 2 * s) continue;
        Poly inner = apply_q(s, gen(x));
        for (int i = 1; i <= 4; ++i) {
          Poly lhs = dual_steenrod(i, apply_q(r, inner), reg);
          Poly rhs;
          for (int k = 0; 2 * k <= i; ++k)
            if (binom2(r - i, i - 2 * k))
              rhs = poly_add(rhs, apply_q(r - i + k, dual_steenrod(k, inner, reg)));
          ASSERT_EQ(lhs, rhs) << x.name << " r=" << r << " s=" << s << " i=" << i;
        }
      }
}

TEST(Nishida, SquaresHalveOperations) {
  Generator t{"t", 1, 1};
  SqRegistry reg{{{"t", 1}, gen(sigma())}};
  std::vector<Generator> g{sigma(), t};
  for (const std::string& e : {"t", "Q[2](t)", "Q[3](t)", "t*Q[2](s)", "Q[3,2](t)"}) {
    Poly x = parse(e, g);
    Poly sq = poly_mul(x, x);
    for (int i = 0; i <= 6; ++i) {
      Poly expect = (i % 2) ? Poly{} : [&] {
        Poly h = dual_steenrod(i / 2, x, reg);
        return poly_mul(h, h);
      }();
      ASSERT_EQ(dual_steenrod(i, sq, reg), expect) << e << " i=" << i;
    }
  }
}

TEST(FreeBasis, Examples) {
  // the free algebra has s²Q³(s) here as well; the quotient by σQ³(σ) leaves the two
  // classes of the additive basis
  auto b = free_basis({sigma()}, 4, 3);
  std::set<std::string> names;
  for (const auto& m : b) names.insert(to_string(m));
  EXPECT_EQ(names, (std::set<std::string>{"Q[2,1](s)", "Q[1](s)*Q[2](s)", "s^2*Q[3](s)"}));
  EXPECT_EQ(free_basis({sigma()}, 1, 0).size(), 1u);
  for (int d = 1; d <= 5; ++d) EXPECT_TRUE(free_basis({sigma()}, 1, d).empty());
  EXPECT_THROW(free_basis({{"z", 0, 0}}, 2, 2), std::invalid_argument);
}

TEST(FreeBasis, AgreesWithGenerateThenFilter) {
  const int G = 8, D = 8;
  auto seqs = brute_normal_sequences(sigma(), G, D);
  std::vector<Factor> fs;
  for (const auto& s : seqs) fs.push_back({sigma(), s});
  auto nf = normal_factors(sigma(), G, D);
  ASSERT_EQ(nf.size(), fs.size());
  std::map<std::pair<int, int>, std::set<Monomial>> memo;
  for (int g = 0; g <= G; ++g)
    for (int d = 0; d <= D; ++d) {
      auto fast = free_basis({sigma()}, g, d);
      auto slow = brute_basis(fs, g, d, memo);
      ASSERT_EQ(std::set<Monomial>(fast.begin(), fast.end()), slow) << "(" << g << "," << d << ")";
      ASSERT_TRUE(std::is_sorted(fast.begin(), fast.end()));
    }
}

TEST(Quotient, DimensionFigure) {
  std::vector<Generator> B{sigma(), nu1(), nu2()};
  std::vector<Poly> rels;
  for (const char* e : {"s*Q[1](s)", "s*Q[3](s)", "s^2*Q[2](s)", "s*n1", "s*n2"})
    rels.push_back(parse(e, B));
  auto q = ideal_quotient_dims(B, rels, 6, 3);
  // dim H_d(GL_g(F2)) for g = 1..6, d = 0..3
  const int fig[6][4] = {{1, 0, 0, 0}, {1, 1, 1, 1}, {1, 0, 1, 2},
                         {1, 0, 1, 2}, {1, 0, 0, 1}, {1, 0, 0, 1}};
  for (int g = 1; g <= 6; ++g)
    for (int d = 0; d <= 3; ++d)
      EXPECT_EQ(q.quotient[std::make_pair(g, d)], static_cast<std::size_t>(fig[g - 1][d])) << "(" << g << "," << d << ")";
  EXPECT_EQ((ideal_quotient_dims(B, {}, 2, 2).quotient[{2, 2}]), 1u);
}

TEST(Quotient, IdealIsClosed) {
  std::vector<Generator> B{sigma()};
  auto q = ideal_quotient_dims(B, {parse("s*Q[1](s)", B)}, 6, 4);
  // Q²(σQ¹(σ)) = Q¹(σ)³ + σ²Q^{2,1}(σ) lies in the ideal at (6,3)
  auto q2 = ideal_quotient_dims(B, {parse("s*Q[1](s)", B), parse("Q[1](s)^3 + s^2*Q[2,1](s)", B)}, 6, 4);
  EXPECT_EQ(q.ideal, q2.ideal);
  EXPECT_THROW(ideal_quotient_dims(B, {parse("s + Q[1](s)", B)}, 4, 4), std::invalid_argument);
}

TEST(Bar, Examples) {
  EXPECT_TRUE(bar_class(P("s*Q[1](s)")).empty());
  Generator sb = barred(sigma());
  std::vector<Generator> g{sb};
  EXPECT_EQ(bar_class(P("Q[1](s)")), parse("s_bar^2", g));
  EXPECT_EQ(bar_class(P("q[1,1](s)")), parse("s_bar^4", g));
  EXPECT_EQ(bar_class(P("s")), parse("s_bar", g));
  EXPECT_EQ(bar_class(P("q[2](s)")), parse("q[1](s_bar)", g));
  EXPECT_TRUE(bar_class(P("1")).empty());
}

TEST(Slope, Examples) {
  EXPECT_EQ(slope(P("q[1,1](s)")[0]), make_rational(3, 4));
  EXPECT_EQ(slope(P("b")[0]), make_rational(2, 3));
  std::vector<int> ones;
  for (int r = 1; r <= 5; ++r) {
    ones.push_back(1);
    auto p = apply_q_lower(ones, P("s"));
    ASSERT_EQ(p.size(), 1u);
    EXPECT_EQ(slope(p[0]), make_rational((1 << r) - 1, 1 << r));
    for (const auto& f : normal_factors(sigma(), 1 << r, 40))
      if (f.seq.size() == static_cast<std::size_t>(r)) EXPECT_FALSE(slope({f}) < slope(p[0]));
  }
  EXPECT_THROW(slope({}), std::invalid_argument);
}

TEST(Parse, Errors) {
  EXPECT_THROW(P("Q[2](x)"), std::invalid_argument);
  EXPECT_THROW(P("Q[2(s)"), std::invalid_argument);
  EXPECT_THROW(P("s +"), std::invalid_argument);
  EXPECT_THROW(P("q[1](s + Q[1](s))"), std::invalid_argument);
  EXPECT_EQ(P("s + s"), Poly{});
  EXPECT_EQ(to_string(P("0")), "0");
  EXPECT_EQ(to_string(P("1")), "1");
}
