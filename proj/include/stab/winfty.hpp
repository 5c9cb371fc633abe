#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace stab::w {

struct Generator {
  std::string name;
  int g = 0, d = 0;
  auto operator<=>(const Generator&) const = default;
};

// Q^I(x) with I in upper-index form, I = (s1, ..., sr) applied right to left.
struct Factor {
  Generator x;
  std::vector<int> seq;
  int g() const { return x.g << seq.size(); }
  int d() const;
  // lower-index form s_i' = s_i - sum_{j>i} s_j - |x|
  std::vector<int> lower() const;
  bool operator==(const Factor&) const = default;
};
// canonical order: generator name, sequence length, entries
bool operator<(const Factor& a, const Factor& b);

// commutative monomial: sorted factors, repeated for powers; empty = 1
using Monomial = std::vector<Factor>;
// F2-combination of distinct monomials, sorted; empty = 0
using Poly = std::vector<Monomial>;

std::pair<int, int> bidegree(const Monomial& m);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Monomial mono_mul(const Monomial& a, const Monomial& b);
Poly gen(const Generator& x);
Poly one();

bool is_admissible(const std::vector<int>& seq);
bool is_normal(const std::vector<int>& seq, const Generator& x);
// the Adem rewrite Q^r Q^s = sum C(i-s-1, 2i-r) Q^{r+s-i} Q^i for r > 2s
std::vector<std::pair<int, int>> adem_relation(int r, int s);

Poly apply_q(int s, const Poly& p);
// Q^{s1} ... Q^{sr} applied innermost first
Poly apply_q_seq(const std::vector<int>& seq, const Poly& p);
// lower-index operations Q_{s'}(y) = Q^{s'+|y|}(y) on homogeneous p
Poly apply_q_lower(const std::vector<int>& seq, const Poly& p);

// values of Sq^i_* on generators; missing entries are zero
using SqRegistry = std::map<std::pair<std::string, int>, Poly>;
Poly dual_steenrod(int i, const Poly& p, const SqRegistry& reg = {});
// generalised binomial coefficient mod 2 (top may be negative)
bool binom2(long n, long k);

// all monomials of bidegree exactly (g, d), canonical order
std::vector<Monomial> free_basis(const std::vector<Generator>& gens, int g, int d);
// all normal factors on x with bidegree inside the box, ordered canonically
std::vector<Factor> normal_factors(const Generator& x, int g_max, int d_max);

struct QuotientDims {
  // per (g,d): dimension of the free part, of the ideal, and of the quotient
  std::map<std::pair<int, int>, std::size_t> free, ideal, quotient;
};
QuotientDims ideal_quotient_dims(const std::vector<Generator>& gens, const std::vector<Poly>& rels,
                                 int g_max, int d_max);

// barred generator x̄ has bidegree (g, d+1)
Generator barred(const Generator& x);
Poly bar_class(const Poly& p);

struct Rational {
  long num = 0, den = 1;
  bool operator==(const Rational&) const = default;
  std::string str() const;
};
Rational make_rational(long n, long d);
bool operator<(const Rational& a, const Rational& b);
Rational slope(const Monomial& m);

std::string to_string(const Poly& p, bool lower_index = false);
std::string to_string(const Monomial& m, bool lower_index = false);
// grammar: sums of products of powers of atoms; atoms are generator names,
// Q[s1,...](expr), q[s1',...](expr), (expr), 1, 0
Poly parse(const std::string& text, const std::vector<Generator>& gens);

// the generators used throughout: s = σ (1,0), n1, n2 = ν1, ν2 (3,3), b = β (3,2)
Generator sigma();
Generator nu1();
Generator nu2();
Generator beta();

} // namespace stab::w
