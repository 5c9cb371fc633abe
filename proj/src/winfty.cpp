#include "stab/winfty.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <stdexcept>

#include "stab/f2.hpp"

namespace stab::w {

int Factor::d() const {
  int d = x.d;
  for (int s : seq) d += s;
  return d;
}

std::vector<int> Factor::lower() const {
  std::vector<int> out(seq.size());
  int tail = 0;
  for (int i = static_cast<int>(seq.size()) - 1; i >= 0; --i) {
    out[i] = seq[i] - tail - x.d;
    tail += seq[i];
  }
  return out;
}

bool operator<(const Factor& a, const Factor& b) {
  if (a.x.name != b.x.name) return a.x.name < b.x.name;
  if (a.seq.size() != b.seq.size()) return a.seq.size() < b.seq.size();
  return a.seq < b.seq;
}

std::pair<int, int> bidegree(const Monomial& m) {
  int g = 0, d = 0;
  for (const auto& f : m) {
    g += f.g();
    d += f.d();
  }
  return {g, d};
}

namespace {

Poly normalize(std::vector<Monomial> v) {
  std::sort(v.begin(), v.end());
  Poly out;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    if ((j - i) & 1) out.push_back(v[i]);
    i = j;
  }
  return out;
}

} // namespace

Poly poly_add(const Poly& a, const Poly& b) {
  std::vector<Monomial> v(a);
  v.insert(v.end(), b.begin(), b.end());
  return normalize(std::move(v));
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial m;
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(m));
  return m;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  std::vector<Monomial> v;
  for (const auto& x : a)
    for (const auto& y : b) v.push_back(mono_mul(x, y));
  return normalize(std::move(v));
}

Poly gen(const Generator& x) { return {Monomial{Factor{x, {}}}}; }
Poly one() { return {Monomial{}}; }

bool is_admissible(const std::vector<int>& seq) {
  for (std::size_t i = 1; i < seq.size(); ++i)
    if (seq[i - 1] > 2 * seq[i]) return false;
  return true;
}

bool is_normal(const std::vector<int>& seq, const Generator& x) {
  if (seq.empty()) return true;
  if (seq.size() == 1) return seq[0] > x.d;
  if (!is_admissible(seq)) return false;
  int e = seq[0];
  for (std::size_t i = 1; i < seq.size(); ++i) e -= seq[i];
  return e > x.d;
}

bool binom2(long n, long k) {
  if (k < 0) return false;
  if (n < 0) n = k - n - 1; // C(n,k) = ±C(k-n-1,k)
  if (k > n) return false;
  return (n & k) == k;
}

std::vector<std::pair<int, int>> adem_relation(int r, int s) {
  if (r <= 2 * s) throw std::invalid_argument("Q^r Q^s is already admissible");
  std::vector<std::pair<int, int>> out;
  for (int i = (r + 1) / 2; i <= r; ++i)
    if (binom2(i - s - 1, 2 * i - r)) out.emplace_back(r + s - i, i);
  return out;
}

namespace {

std::map<std::pair<int, Monomial>, Poly>& q_cache() {
  static std::map<std::pair<int, Monomial>, Poly> c;
  return c;
}

Poly q_monomial(int s, const Monomial& m);

Poly q_factor(int s, const Factor& f) {
  const int du = f.d();
  if (s < du) return {};
  if (s == du) return {Monomial{f, f}};
  if (f.seq.empty() || s <= 2 * f.seq[0]) {
    Factor n{f.x, {s}};
    n.seq.insert(n.seq.end(), f.seq.begin(), f.seq.end());
    return {Monomial{n}};
  }
  Factor rest{f.x, std::vector<int>(f.seq.begin() + 1, f.seq.end())};
  Poly out;
  for (auto [a, b] : adem_relation(s, f.seq[0])) {
    Poly inner = q_monomial(b, Monomial{rest});
    out = poly_add(out, apply_q(a, inner));
  }
  return out;
}

Poly q_monomial(int s, const Monomial& m) {
  if (m.empty()) return s == 0 ? one() : Poly{};
  auto key = std::make_pair(s, m);
  auto& cache = q_cache();
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Poly out;
  if (m.size() == 1) {
    out = q_factor(s, m[0]);
  } else {
    // Cartan: Q^s(f·rest) = Σ Q^i(f) Q^{s-i}(rest)
    Monomial rest(m.begin() + 1, m.end());
    const int df = m[0].d(), dr = bidegree(rest).second;
    for (int i = df; i <= s - dr; ++i) {
      Poly a = q_factor(i, m[0]);
      if (a.empty()) continue;
      out = poly_add(out, poly_mul(a, q_monomial(s - i, rest)));
    }
  }
  cache.emplace(key, out);
  return out;
}

} // namespace

Poly apply_q(int s, const Poly& p) {
  if (s < 0) return {};
  Poly out;
  for (const auto& m : p) out = poly_add(out, q_monomial(s, m));
  return out;
}

Poly apply_q_seq(const std::vector<int>& seq, const Poly& p) {
  Poly out = p;
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) out = apply_q(*it, out);
  return out;
}

Poly apply_q_lower(const std::vector<int>& seq, const Poly& p) {
  Poly out = p;
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) {
    if (out.empty()) return {};
    if (*it < 0) return {};
    const int d = bidegree(out[0]).second;
    for (const auto& m : out)
      if (bidegree(m).second != d)
        throw std::invalid_argument("lower-index operation on an inhomogeneous class");
    out = apply_q(*it + d, out);
  }
  return out;
}

namespace {

Poly sq_monomial(int i, const Monomial& m, const SqRegistry& reg);

Poly sq_factor(int i, const Factor& f, const SqRegistry& reg) {
  if (i == 0) return {Monomial{f}};
  if (i > f.d()) return {};
  if (f.seq.empty()) {
    auto it = reg.find({f.x.name, i});
    return it == reg.end() ? Poly{} : it->second;
  }
  // Nishida: Sq^i_* Q^s = Σ_k C(s-i, i-2k) Q^{s-i+k} Sq^k_*
  const int s = f.seq[0];
  Factor rest{f.x, std::vector<int>(f.seq.begin() + 1, f.seq.end())};
  Poly out;
  for (int k = 0; 2 * k <= i; ++k) {
    if (!binom2(s - i, i - 2 * k)) continue;
    if (s - i + k < 0) continue;
    out = poly_add(out, apply_q(s - i + k, sq_factor(k, rest, reg)));
  }
  return out;
}

Poly sq_monomial(int i, const Monomial& m, const SqRegistry& reg) {
  if (m.empty()) return i == 0 ? one() : Poly{};
  if (m.size() == 1) return sq_factor(i, m[0], reg);
  Monomial rest(m.begin() + 1, m.end());
  Poly out;
  for (int j = 0; j <= i; ++j) {
    Poly a = sq_factor(j, m[0], reg);
    if (a.empty()) continue;
    out = poly_add(out, poly_mul(a, sq_monomial(i - j, rest, reg)));
  }
  return out;
}

} // namespace

Poly dual_steenrod(int i, const Poly& p, const SqRegistry& reg) {
  if (i < 0) return {};
  Poly out;
  for (const auto& m : p) out = poly_add(out, sq_monomial(i, m, reg));
  return out;
}

std::vector<Factor> normal_factors(const Generator& x, int g_max, int d_max) {
  if (x.g <= 0) throw std::invalid_argument("free_basis needs positive gradings");
  std::vector<Factor> out;
  if (x.g <= g_max && x.d <= d_max) out.push_back({x, {}});
  for (int r = 1; (x.g << r) <= g_max; ++r) {
    // d = 2^r |x| + Σ 2^{i-1} s_i' with 0 < s_1' ≤ ... ≤ s_r'; the all-ones
    // sequence gives the least degree (slope (2^r - 1 + 2^r|x|) / 2^r|x|)
    const int base = (1 << r) * x.d;
    if (base + (1 << r) - 1 > d_max) break;
    std::vector<int> low(r);
    auto rec = [&](auto&& self, int i, int lo, int acc) -> void {
      if (i == r) {
        std::vector<int> up(r);
        int tail = 0;
        for (int k = r - 1; k >= 0; --k) {
          up[k] = low[k] + tail + x.d;
          tail += up[k];
        }
        out.push_back({x, up});
        return;
      }
      // remaining entries are each at least v, with weights 2^i .. 2^{r-1}
      for (int v = lo;; ++v) {
        int least = acc + v * ((1 << r) - (1 << i));
        if (least > d_max) break;
        low[i] = v;
        self(self, i + 1, v, acc + (1 << i) * v);
      }
    };
    rec(rec, 0, 1, base);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Monomial> free_basis(const std::vector<Generator>& gens, int g, int d) {
  std::vector<Factor> fs;
  for (const auto& x : gens) {
    auto v = normal_factors(x, g, d);
    fs.insert(fs.end(), v.begin(), v.end());
  }
  std::sort(fs.begin(), fs.end());
  std::vector<Monomial> out;
  if (g == 0 && d == 0) out.push_back({});
  Monomial cur;
  auto rec = [&](auto&& self, std::size_t start, int gr, int dr) -> void {
    if (gr == 0) {
      if (dr == 0 && !cur.empty()) out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < fs.size(); ++i) {
      if (fs[i].g() > gr || fs[i].d() > dr) continue;
      cur.push_back(fs[i]);
      self(self, i, gr - fs[i].g(), dr - fs[i].d());
      cur.pop_back();
    }
  };
  rec(rec, 0, g, d);
  std::sort(out.begin(), out.end());
  return out;
}

QuotientDims ideal_quotient_dims(const std::vector<Generator>& gens, const std::vector<Poly>& rels,
                                 int g_max, int d_max) {
  std::map<std::pair<int, int>, std::vector<Monomial>> basis;
  std::map<std::pair<int, int>, std::map<Monomial, std::size_t>> index;
  std::map<std::pair<int, int>, Subspace> ideal;
  for (int g = 0; g <= g_max; ++g)
    for (int d = 0; d <= d_max; ++d) {
      auto b = free_basis(gens, g, d);
      for (std::size_t i = 0; i < b.size(); ++i) index[{g, d}][b[i]] = i;
      ideal[{g, d}] = Subspace(b.size());
      basis[{g, d}] = std::move(b);
    }
  std::vector<Factor> factors;
  for (const auto& x : gens) {
    auto v = normal_factors(x, g_max, d_max);
    factors.insert(factors.end(), v.begin(), v.end());
  }

  std::deque<std::pair<std::pair<int, int>, Poly>> queue;
  auto add = [&](const Poly& p) {
    if (p.empty()) return;
    auto bd = bidegree(p[0]);
    if (bd.first > g_max || bd.second > d_max) return;
    BitVec v(basis[bd].size());
    for (const auto& m : p) {
      if (bidegree(m) != bd) throw std::invalid_argument("relation is not homogeneous");
      v.flip(index[bd].at(m));
    }
    if (ideal[bd].contains(v)) return;
    ideal[bd].insert(v);
    queue.emplace_back(bd, p);
  };
  for (const auto& r : rels) add(r);
  while (!queue.empty()) {
    auto [bd, p] = queue.front();
    queue.pop_front();
    for (const auto& f : factors)
      if (bd.first + f.g() <= g_max && bd.second + f.d() <= d_max) add(poly_mul(p, {Monomial{f}}));
    if (2 * bd.first <= g_max)
      for (int s = std::max(bd.second, 1); bd.second + s <= d_max; ++s) add(apply_q(s, p));
  }
  QuotientDims out;
  for (auto& [bd, b] : basis) {
    out.free[bd] = b.size();
    out.ideal[bd] = ideal[bd].dim();
    out.quotient[bd] = b.size() - ideal[bd].dim();
  }
  return out;
}

Generator barred(const Generator& x) { return {x.name + "_bar", x.g, x.d + 1}; }

Poly bar_class(const Poly& p) {
  Poly out;
  for (const auto& m : p) {
    if (m.size() != 1) continue; // decomposables and the unit
    const Factor& f = m[0];
    auto low = f.lower();
    for (int& s : low) --s;
    out = poly_add(out, apply_q_lower(low, gen(barred(f.x))));
  }
  return out;
}

Rational make_rational(long n, long d) {
  if (d == 0) throw std::invalid_argument("zero denominator");
  if (d < 0) n = -n, d = -d;
  long g = std::gcd(n, d);
  if (g == 0) g = 1;
  return {n / g, d / g};
}

bool operator<(const Rational& a, const Rational& b) { return a.num * b.den < b.num * a.den; }

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Rational slope(const Monomial& m) {
  auto [g, d] = bidegree(m);
  if (g <= 0) throw std::invalid_argument("slope of a grading-0 class");
  return make_rational(d, g);
}

namespace {

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string factor_string(const Factor& f, bool lower) {
  if (f.seq.empty()) return f.x.name;
  return (lower ? "q[" + join(f.lower()) : "Q[" + join(f.seq)) + "](" + f.x.name + ")";
}

} // namespace

std::string to_string(const Monomial& m, bool lower_index) {
  if (m.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < m.size();) {
    std::size_t j = i;
    while (j < m.size() && m[j] == m[i]) ++j;
    if (!s.empty()) s += "*";
    s += factor_string(m[i], lower_index);
    if (j - i > 1) s += "^" + std::to_string(j - i);
    i = j;
  }
  return s;
}

std::string to_string(const Poly& p, bool lower_index) {
  if (p.empty()) return "0";
  std::string s;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    if (!s.empty()) s += " + ";
    s += to_string(*it, lower_index);
  }
  return s;
}

namespace {

struct Parser {
  const std::string& t;
  const std::vector<Generator>& gens;
  std::size_t i = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("parse error at position " + std::to_string(i) + ": " + what +
                                " in \"" + t + "\"");
  }
  void skip() {
    while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < t.size() && t[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  int number() {
    skip();
    std::size_t j = i;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
    if (j == i) fail("expected a number");
    return std::stoi(t.substr(j, i - j));
  }
  std::vector<int> list() {
    std::vector<int> v{number()};
    while (eat(',')) v.push_back(number());
    expect(']');
    return v;
  }
  Poly expr() {
    Poly p = term();
    while (eat('+')) p = poly_add(p, term());
    return p;
  }
  Poly term() {
    Poly p = power();
    while (eat('*')) p = poly_mul(p, power());
    return p;
  }
  Poly power() {
    Poly p = atom();
    if (eat('^')) {
      int k = number();
      Poly r = one();
      for (int j = 0; j < k; ++j) r = poly_mul(r, p);
      p = r;
    }
    return p;
  }
  Poly atom() {
    skip();
    if (i >= t.size()) fail("unexpected end");
    if (eat('(')) {
      Poly p = expr();
      expect(')');
      return p;
    }
    if ((t[i] == 'Q' || t[i] == 'q') && i + 1 < t.size() && t[i + 1] == '[') {
      bool lower = t[i] == 'q';
      i += 2;
      auto seq = list();
      expect('(');
      Poly p = expr();
      expect(')');
      return lower ? apply_q_lower(seq, p) : apply_q_seq(seq, p);
    }
    if (std::isdigit(static_cast<unsigned char>(t[i]))) {
      int n = number();
      if (n == 0) return {};
      if (n == 1) return one();
      return (n & 1) ? one() : Poly{};
    }
    std::size_t j = i;
    while (i < t.size() && (std::isalnum(static_cast<unsigned char>(t[i])) || t[i] == '_')) ++i;
    std::string name = t.substr(j, i - j);
    if (name.empty()) fail("unexpected character");
    for (const auto& g : gens)
      if (g.name == name) return gen(g);
    i = j;
    fail("unknown generator '" + name + "'");
  }
};

} // namespace

Poly parse(const std::string& text, const std::vector<Generator>& gens) {
  Parser p{text, gens};
  Poly out = p.expr();
  p.skip();
  if (p.i != text.size()) p.fail("trailing input");
  return out;
}

Generator sigma() { return {"s", 1, 0}; }
Generator nu1() { return {"n1", 3, 3}; }
Generator nu2() { return {"n2", 3, 3}; }
Generator beta() { return {"b", 3, 2}; }

} // namespace stab::w
