#include "stab/hopf.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace stab {

Elt elt_normalize(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  Elt out;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    if ((j - i) & 1) out.push_back(v[i]);
    i = j;
  }
  return out;
}

Tensor tensor_normalize(std::vector<std::pair<int, int>> v) {
  std::sort(v.begin(), v.end());
  Tensor out;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    if ((j - i) & 1) out.push_back(v[i]);
    i = j;
  }
  return out;
}

Elt elt_add(const Elt& a, const Elt& b) {
  Elt out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Tensor tensor_add(const Tensor& a, const Tensor& b) {
  Tensor out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void HopfAlgebraTable::index_basis() {
  grading_.clear();
  label_.clear();
  by_label_.clear();
  if (basis_.labels.empty() || basis_.labels[0] != std::vector<std::string>{"1"})
    throw std::invalid_argument("grading 0 must consist of the unit \"1\" alone");
  for (int g = 0; g <= basis_.max_grading; ++g) {
    auto& ls = basis_.labels[g];
    if (!std::is_sorted(ls.begin(), ls.end()))
      throw std::invalid_argument("labels in grading " + std::to_string(g) + " not sorted");
    for (const auto& l : ls) {
      if (by_label_.count(l)) throw std::invalid_argument("duplicate label " + l);
      by_label_[l] = static_cast<int>(grading_.size());
      grading_.push_back(g);
      label_.push_back(l);
    }
  }
}

int HopfAlgebraTable::index(const std::string& l) const {
  auto it = by_label_.find(l);
  if (it == by_label_.end()) throw std::invalid_argument("unknown basis element " + l);
  return it->second;
}

std::optional<int> HopfAlgebraTable::find(const std::string& l) const {
  auto it = by_label_.find(l);
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

std::vector<int> HopfAlgebraTable::in_grading(int g) const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (grading_[i] == g) out.push_back(i);
  return out;
}

void HopfAlgebraTable::require_grading(int g) const {
  if (g > truncation_)
    throw std::out_of_range("grading " + std::to_string(g) + " beyond truncation " +
                            std::to_string(truncation_));
}

Elt HopfAlgebraTable::mult(int i, int j) const {
  if (finite_ && grading_[i] + grading_[j] > truncation_) return {};
  require_grading(grading_[i] + grading_[j]);
  return mult_[i][j];
}

Elt HopfAlgebraTable::mult(const Elt& a, const Elt& b) const {
  std::vector<int> acc;
  for (int i : a)
    for (int j : b) {
      const Elt& p = mult(i, j);
      acc.insert(acc.end(), p.begin(), p.end());
    }
  return elt_normalize(std::move(acc));
}

Tensor HopfAlgebraTable::comult(const Elt& a) const {
  std::vector<std::pair<int, int>> acc;
  for (int i : a) acc.insert(acc.end(), comult_[i].begin(), comult_[i].end());
  return tensor_normalize(std::move(acc));
}

Tensor HopfAlgebraTable::reduced_comult(int i) const {
  Tensor out;
  for (auto [a, b] : comult_[i])
    if (a != 0 && b != 0) out.emplace_back(a, b);
  return out;
}

Elt HopfAlgebraTable::antipode(int i) const {
  if (i == 0) return {0};
  std::vector<int> acc{i};
  for (auto [a, b] : reduced_comult(i)) {
    Elt p = mult(antipode(a), Elt{b});
    acc.insert(acc.end(), p.begin(), p.end());
  }
  return elt_normalize(std::move(acc));
}

std::string HopfAlgebraTable::elt_string(const Elt& e) const {
  if (e.empty()) return "0";
  std::string s;
  for (std::size_t k = 0; k < e.size(); ++k) s += (k ? " + " : "") + label_[e[k]];
  return s;
}

std::string HopfAlgebraTable::tensor_string(const Tensor& t) const {
  if (t.empty()) return "0";
  std::string s;
  for (std::size_t k = 0; k < t.size(); ++k)
    s += (k ? " + " : "") + label_[t[k].first] + "⊗" + label_[t[k].second];
  return s;
}

Elt HopfAlgebraTable::parse_elt(const std::string& text) const {
  std::vector<int> acc;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, '+')) {
    auto b = tok.find_first_not_of(" \t");
    auto e = tok.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty term in " + text);
    tok = tok.substr(b, e - b + 1);
    if (tok == "0") continue;
    acc.push_back(index(tok));
  }
  return elt_normalize(std::move(acc));
}

namespace {

std::string monomial_label(const std::vector<PolyVar>& vars, const std::vector<int>& e) {
  std::string s;
  for (std::size_t k = 0; k < vars.size(); ++k) {
    if (!e[k]) continue;
    if (!s.empty()) s += "*";
    s += vars[k].name;
    if (e[k] > 1) s += "^" + std::to_string(e[k]);
  }
  return s.empty() ? "1" : s;
}

} // namespace

HopfAlgebraTable HopfAlgebraTable::from_polynomial(
    const std::vector<PolyVar>& vars, int max_grading,
    const std::vector<std::vector<std::pair<Monomial, Monomial>>>& gen_coproducts) {
  const std::size_t n = vars.size();
  // enumerate monomials of grading ≤ max_grading
  std::vector<Monomial> mons;
  Monomial cur(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int g) {
    if (k == n) {
      mons.push_back(cur);
      return;
    }
    for (int e = 0;; ++e) {
      if (vars[k].height && e >= vars[k].height) break;
      if (g + e * vars[k].grading > max_grading) break;
      cur[k] = e;
      rec(k + 1, g + e * vars[k].grading);
    }
    cur[k] = 0;
  };
  rec(0, 0);
  auto grading_of = [&](const Monomial& m) {
    int g = 0;
    for (std::size_t k = 0; k < n; ++k) g += m[k] * vars[k].grading;
    return g;
  };
  GradedBasis basis;
  basis.max_grading = max_grading;
  basis.labels.resize(max_grading + 1);
  std::map<std::string, Monomial> mon_of;
  for (const auto& m : mons) {
    std::string l = monomial_label(vars, m);
    basis.labels[grading_of(m)].push_back(l);
    mon_of[l] = m;
  }
  for (auto& ls : basis.labels) std::sort(ls.begin(), ls.end());

  HopfAlgebraTable h;
  h.basis_ = basis;
  h.truncation_ = max_grading;
  h.vars_ = vars;
  h.index_basis();
  int top = 0;
  h.finite_ = true;
  for (const auto& v : vars) {
    if (!v.height) h.finite_ = false;
    else top += (v.height - 1) * v.grading;
  }
  if (top > max_grading) h.finite_ = false;
  const int N = h.size();
  h.exponents_.resize(N);
  std::map<Monomial, int> idx;
  for (int i = 0; i < N; ++i) {
    h.exponents_[i] = mon_of[h.label_[i]];
    idx[h.exponents_[i]] = i;
  }
  // product of monomials, or -1 when it vanishes or leaves the range
  auto mono_mult = [&](const Monomial& a, const Monomial& b) -> int {
    Monomial c(n);
    for (std::size_t k = 0; k < n; ++k) {
      c[k] = a[k] + b[k];
      if (vars[k].height && c[k] >= vars[k].height) return -1;
    }
    auto it = idx.find(c);
    return it == idx.end() ? -1 : it->second;
  };
  h.mult_.assign(N, std::vector<Elt>(N));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      if (h.grading_[i] + h.grading_[j] > max_grading) continue;
      int k = mono_mult(h.exponents_[i], h.exponents_[j]);
      if (k >= 0) h.mult_[i][j] = {k};
    }
  // coproduct of a monomial = product of generator coproducts
  std::vector<Tensor> gen_tensor(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::pair<int, int>> t;
    for (const auto& [a, b] : gen_coproducts[k]) {
      auto ia = idx.find(a), ib = idx.find(b);
      if (ia == idx.end() || ib == idx.end()) {
        if (grading_of(a) + grading_of(b) <= max_grading)
          throw std::invalid_argument("coproduct term outside basis");
        continue;
      }
      t.emplace_back(ia->second, ib->second);
    }
    gen_tensor[k] = tensor_normalize(t);
  }
  auto tensor_mult = [&](const Tensor& x, const Tensor& y) {
    std::vector<std::pair<int, int>> acc;
    for (auto [a, b] : x)
      for (auto [c, d] : y) {
        int l = mono_mult(h.exponents_[a], h.exponents_[c]);
        int r = mono_mult(h.exponents_[b], h.exponents_[d]);
        if (l >= 0 && r >= 0) acc.emplace_back(l, r);
      }
    return tensor_normalize(std::move(acc));
  };
  h.comult_.resize(N);
  for (int i = 0; i < N; ++i) {
    Tensor t{{0, 0}};
    for (std::size_t k = 0; k < n; ++k)
      for (int e = 0; e < h.exponents_[i][k]; ++e) t = tensor_mult(t, gen_tensor[k]);
    h.comult_[i] = t;
  }
  return h;
}

HopfAlgebraTable HopfAlgebraTable::from_tables(GradedBasis basis, int truncation,
                                               const std::map<std::pair<int, int>, Elt>& mult,
                                               const std::map<int, Tensor>& comult) {
  HopfAlgebraTable h;
  h.basis_ = std::move(basis);
  h.truncation_ = std::min(truncation, h.basis_.max_grading);
  h.index_basis();
  const int N = h.size();
  h.mult_.assign(N, std::vector<Elt>(N));
  for (const auto& [ij, e] : mult) {
    auto [i, j] = ij;
    if (i < 0 || j < 0 || i >= N || j >= N) throw std::invalid_argument("mult index out of range");
    for (int k : e)
      if (h.grading_[k] != h.grading_[i] + h.grading_[j])
        throw std::invalid_argument("mult entry not grading-preserving");
    h.mult_[i][j] = elt_normalize(e);
  }
  h.comult_.assign(N, {});
  for (const auto& [i, t] : comult) {
    for (auto [a, b] : t)
      if (h.grading_[a] + h.grading_[b] != h.grading_[i])
        throw std::invalid_argument("comult entry not grading-preserving");
    h.comult_[i] = tensor_normalize(t);
  }
  return h;
}

std::vector<std::string> HopfAlgebraTable::axiom_failures() const {
  std::vector<std::string> out;
  const int N = size(), T = truncation_;
  auto g = [&](int i) { return grading_[i]; };
  for (int i = 0; i < N && out.empty(); ++i) {
    if (g(i) > T) continue;
    if (mult_[0][i] != Elt{i} || mult_[i][0] != Elt{i}) out.push_back("unit at " + label_[i]);
  }
  for (int i = 0; i < N && out.empty(); ++i)
    for (int j = 0; j < N && out.empty(); ++j)
      for (int k = 0; k < N && out.empty(); ++k) {
        if (g(i) + g(j) + g(k) > T) continue;
        if (mult(mult(Elt{i}, Elt{j}), Elt{k}) != mult(Elt{i}, mult(Elt{j}, Elt{k})))
          out.push_back("associativity at (" + label_[i] + "," + label_[j] + "," + label_[k] + ")");
      }
  for (int i = 0; i < N && out.empty(); ++i) {
    if (g(i) > T) continue;
    // counit: exactly one 1⊗x-type term of the form (0,i) and one (i,0)
    Elt left, right;
    for (auto [a, b] : comult_[i]) {
      if (a == 0) left.push_back(b);
      if (b == 0) right.push_back(a);
    }
    if (elt_normalize(left) != Elt{i} || elt_normalize(right) != Elt{i})
      out.push_back("counit at " + label_[i]);
    // coassociativity, compared on triples
    std::vector<std::tuple<int, int, int>> l3, r3;
    for (auto [a, b] : comult_[i]) {
      for (auto [c, d] : comult_[a]) l3.emplace_back(c, d, b);
      for (auto [c, d] : comult_[b]) r3.emplace_back(a, c, d);
    }
    auto norm3 = [](std::vector<std::tuple<int, int, int>> v) {
      std::sort(v.begin(), v.end());
      std::vector<std::tuple<int, int, int>> o;
      for (std::size_t p = 0; p < v.size();) {
        std::size_t q = p;
        while (q < v.size() && v[q] == v[p]) ++q;
        if ((q - p) & 1) o.push_back(v[p]);
        p = q;
      }
      return o;
    };
    if (out.empty() && norm3(l3) != norm3(r3)) out.push_back("coassociativity at " + label_[i]);
  }
  for (int i = 0; i < N && out.empty(); ++i)
    for (int j = 0; j < N && out.empty(); ++j) {
      if (g(i) + g(j) > T) continue;
      std::vector<std::pair<int, int>> acc;
      for (auto [a, b] : comult_[i])
        for (auto [c, d] : comult_[j])
          for (int x : mult_[a][c])
            for (int y : mult_[b][d]) acc.emplace_back(x, y);
      if (tensor_normalize(acc) != comult(mult_[i][j]))
        out.push_back("bialgebra compatibility at (" + label_[i] + "," + label_[j] + ")");
    }
  return out;
}

std::string HopfAlgebraTable::to_json() const {
  nlohmann::ordered_json j;
  j["max_grading"] = basis_.max_grading;
  j["truncation"] = truncation_;
  j["finite"] = finite_;
  j["basis"] = basis_.labels;
  auto m = nlohmann::json::array();
  for (int a = 0; a < size(); ++a)
    for (int b = 0; b < size(); ++b) {
      if (grading_[a] + grading_[b] > truncation_) continue;
      for (int c : mult_[a][b]) m.push_back({a, b, c});
    }
  j["mult"] = m;
  auto c = nlohmann::json::array();
  for (int a = 0; a < size(); ++a)
    for (auto [x, y] : comult_[a]) c.push_back({a, x, y});
  j["comult"] = c;
  return j.dump();
}

HopfAlgebraTable HopfAlgebraTable::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  GradedBasis b;
  b.max_grading = j.at("max_grading").get<int>();
  b.labels = j.at("basis").get<std::vector<std::vector<std::string>>>();
  if (static_cast<int>(b.labels.size()) != b.max_grading + 1)
    throw std::invalid_argument("basis must list every grading 0..max_grading");
  int trunc = j.contains("truncation") ? j["truncation"].get<int>() : b.max_grading;
  std::map<std::pair<int, int>, Elt> mult;
  for (const auto& t : j.at("mult")) mult[{t.at(0).get<int>(), t.at(1).get<int>()}].push_back(t.at(2).get<int>());
  std::map<int, Tensor> comult;
  for (const auto& t : j.at("comult"))
    comult[t.at(0).get<int>()].emplace_back(t.at(1).get<int>(), t.at(2).get<int>());
  auto h = from_tables(std::move(b), trunc, mult, comult);
  h.finite_ = j.value("finite", false);
  return h;
}

HopfAlgebraTable build_a1_star() {
  std::vector<PolyVar> vars{{"xi1", 1, 4}, {"xi2", 3, 2}};
  using M = HopfAlgebraTable::Monomial;
  std::vector<std::vector<std::pair<M, M>>> cop{
      {{M{1, 0}, M{0, 0}}, {M{0, 0}, M{1, 0}}},
      {{M{0, 1}, M{0, 0}}, {M{2, 0}, M{1, 0}}, {M{0, 0}, M{0, 1}}}};
  return HopfAlgebraTable::from_polynomial(vars, 6, cop);
}

HopfAlgebraTable build_delta_cgl() {
  std::vector<PolyVar> vars{{"sigma", 1, 0}, {"delta", 3, 0}, {"rho", 4, 0}};
  using M = HopfAlgebraTable::Monomial;
  std::vector<std::vector<std::pair<M, M>>> cop{
      {{M{1, 0, 0}, M{0, 0, 0}}, {M{0, 0, 0}, M{1, 0, 0}}},
      {{M{0, 1, 0}, M{0, 0, 0}}, {M{1, 0, 0}, M{2, 0, 0}}, {M{0, 0, 0}, M{0, 1, 0}}},
      {{M{0, 0, 1}, M{0, 0, 0}}, {M{0, 0, 0}, M{0, 0, 1}}}};
  return HopfAlgebraTable::from_polynomial(vars, 5, cop);
}

namespace {

std::string dual_label(const std::string& l) {
  if (l == "1") return l;
  if (l.size() > 2 && l.substr(l.size() - 2) == "^v") return l.substr(0, l.size() - 2);
  return l + "^v";
}

} // namespace

HopfAlgebraTable dualize(const HopfAlgebraTable& h) {
  const int T = h.truncation();
  GradedBasis b;
  b.max_grading = T;
  b.labels.resize(T + 1);
  for (int i = 0; i < h.size(); ++i)
    if (h.grading(i) <= T) b.labels[h.grading(i)].push_back(dual_label(h.label(i)));
  for (auto& ls : b.labels) std::sort(ls.begin(), ls.end());
  // map old index -> new index through labels
  std::map<std::string, int> pos;
  {
    int k = 0;
    for (const auto& ls : b.labels)
      for (const auto& l : ls) pos[l] = k++;
  }
  auto nid = [&](int i) { return pos.at(dual_label(h.label(i))); };
  std::map<std::pair<int, int>, Elt> mult;
  std::map<int, Tensor> comult;
  for (int x = 0; x < h.size(); ++x) {
    if (h.grading(x) > T) continue;
    for (auto [a, c] : h.comult(x)) mult[{nid(a), nid(c)}].push_back(nid(x));
  }
  for (int a = 0; a < h.size(); ++a)
    for (int c = 0; c < h.size(); ++c) {
      if (h.grading(a) + h.grading(c) > T) continue;
      for (int x : h.mult(a, c)) comult[nid(x)].emplace_back(nid(a), nid(c));
    }
  auto d = HopfAlgebraTable::from_tables(std::move(b), T, mult, comult);
  d.set_finite(h.finite() && T == h.basis().max_grading);
  return d;
}

CoalgebraMap CoalgebraMap::from_generators(const HopfAlgebraTable& src,
                                           const HopfAlgebraTable& tgt,
                                           const std::map<std::string, Elt>& gen_images) {
  if (src.exponents().empty())
    throw std::invalid_argument("source has no polynomial presentation");
  const auto& vars = src.variables();
  std::vector<Elt> gens(vars.size());
  for (std::size_t k = 0; k < vars.size(); ++k) {
    auto it = gen_images.find(vars[k].name);
    if (it == gen_images.end()) throw std::invalid_argument("no image for " + vars[k].name);
    gens[k] = it->second;
  }
  CoalgebraMap f;
  f.source = &src;
  f.target = &tgt;
  for (int i = 0; i < src.size(); ++i) {
    Elt acc{tgt.unit()};
    int g = src.grading(i);
    for (std::size_t k = 0; k < vars.size(); ++k)
      for (int e = 0; e < src.exponents()[i][k]; ++e) {
        if (g > tgt.truncation()) throw std::out_of_range("map image beyond target truncation");
        acc = tgt.mult(acc, gens[k]);
      }
    f.images.push_back(acc);
  }
  return f;
}

CoalgebraMap CoalgebraMap::identity(const HopfAlgebraTable& h) {
  CoalgebraMap f;
  f.source = f.target = &h;
  for (int i = 0; i < h.size(); ++i) f.images.push_back({i});
  return f;
}

Elt CoalgebraMap::apply(const Elt& x) const {
  std::vector<int> acc;
  for (int i : x) acc.insert(acc.end(), images[i].begin(), images[i].end());
  return elt_normalize(std::move(acc));
}

MapCheck check_hopf_map(const CoalgebraMap& f) {
  const auto& S = *f.source;
  const auto& T = *f.target;
  const int top = std::min(S.truncation(), T.truncation());
  MapCheck r;
  for (int i = 0; i < S.size(); ++i)
    for (int k : f.images[i])
      if (T.grading(k) != S.grading(i))
        throw std::invalid_argument("image of " + S.label(i) + " is not in grading " +
                                    std::to_string(S.grading(i)));
  if (f.images[S.unit()] != Elt{T.unit()}) {
    r.unit = false;
    r.first_violation = "unit";
  }
  for (int i = 0; i < S.size() && r.ok(); ++i)
    for (int j = 0; j < S.size() && r.ok(); ++j) {
      if (S.grading(i) + S.grading(j) > top) continue;
      if (f.apply(S.mult(i, j)) != T.mult(f.images[i], f.images[j])) {
        r.multiplicative = false;
        r.first_violation = "multiplicativity at (" + S.label(i) + "," + S.label(j) + ")";
      }
    }
  for (int i = 0; i < S.size() && r.ok(); ++i) {
    if (S.grading(i) > top) continue;
    std::vector<std::pair<int, int>> acc;
    for (auto [a, b] : S.comult(i))
      for (int x : f.images[a])
        for (int y : f.images[b]) acc.emplace_back(x, y);
    if (tensor_normalize(acc) != T.comult(f.images[i])) {
      r.comultiplicative = false;
      r.first_violation = "comultiplicativity at " + S.label(i);
    }
  }
  return r;
}

} // namespace stab
