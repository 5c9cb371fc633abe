#include "stab/stabhopf.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace stab {

namespace {

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// split at top-level occurrences of c
std::vector<std::string> split_top(const std::string& s, char c) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (ch == c && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

// homogeneous bidegree, or nullopt for 0 and mixed polynomials
std::optional<std::pair<int, int>> homogeneous(const w::Poly& p) {
  if (p.empty()) return std::nullopt;
  auto b = w::bidegree(p[0]);
  for (const auto& m : p)
    if (w::bidegree(m) != b) return std::nullopt;
  return b;
}

bool pair_ok(const w::Poly& p) {
  auto b = homogeneous(p);
  return b && b->first > 0 && b->second + 1 == b->first;
}

std::string bideg_str(int g, int d) { return "(" + std::to_string(g) + "," + std::to_string(d) + ")"; }

void trim_mono(DMono& m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
}

DMono dmul(const DMono& a, const DMono& b) {
  DMono c(std::max(a.size(), b.size()), 0);
  for (std::size_t k = 0; k < a.size(); ++k) c[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) c[k] += b[k];
  trim_mono(c);
  return c;
}

DPoly dnormalize(std::vector<DMono> v) {
  std::sort(v.begin(), v.end());
  DPoly out;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    if ((j - i) % 2) out.push_back(v[i]);
    i = j;
  }
  return out;
}

int dgrading(const std::vector<DeltaGenerator>& gens, const DMono& m) {
  int g = 0;
  for (std::size_t k = 0; k < m.size(); ++k) g += m[k] * gens.at(k).grading;
  return g;
}

std::string mono_label(const std::vector<DeltaGenerator>& gens, const DMono& m) {
  std::string s;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (!m[k]) continue;
    if (!s.empty()) s += "*";
    s += gens[k].name;
    if (m[k] > 1) s += "^" + std::to_string(m[k]);
  }
  return s.empty() ? "1" : s;
}

using DTensor = std::vector<std::pair<DMono, DMono>>;

DTensor dtensor_normalize(std::vector<std::pair<DMono, DMono>> v) {
  std::sort(v.begin(), v.end());
  DTensor out;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    if ((j - i) % 2) out.push_back(v[i]);
    i = j;
  }
  return out;
}

DTensor full_coproduct(const DeltaGenerator& x, std::size_t k) {
  DMono e(k + 1, 0);
  e[k] = 1;
  std::vector<std::pair<DMono, DMono>> v{{e, {}}, {{}, e}};
  for (const auto& [a, b] : x.reduced_coproduct)
    for (const auto& ma : a)
      for (const auto& mb : b) v.emplace_back(ma, mb);
  return dtensor_normalize(std::move(v));
}

DTensor tensor_mul(const DTensor& a, const DTensor& b) {
  std::vector<std::pair<DMono, DMono>> v;
  for (const auto& [a1, a2] : a)
    for (const auto& [b1, b2] : b) v.emplace_back(dmul(a1, b1), dmul(a2, b2));
  return dtensor_normalize(std::move(v));
}

// monomials of exactly the given grading in gens[0..n)
std::vector<DMono> monomials_of(const std::vector<DeltaGenerator>& gens, int grading) {
  std::vector<DMono> out;
  DMono cur(gens.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int left) {
    if (k == gens.size()) {
      if (left == 0) {
        DMono m = cur;
        trim_mono(m);
        out.push_back(m);
      }
      return;
    }
    for (int e = 0; e * gens[k].grading <= left; ++e) {
      cur[k] = e;
      rec(k + 1, left - e * gens[k].grading);
      if (gens[k].grading <= 0) break;
    }
    cur[k] = 0;
  };
  rec(0, grading);
  std::sort(out.begin(), out.end());
  return out;
}

// tries to move monomial factors across a single-monomial side so that both sides
// satisfy the grading hypothesis, keeping the product
std::optional<std::pair<w::Poly, w::Poly>> reassociate(const w::Poly& a, const w::Poly& b) {
  auto attempt = [](const w::Poly& from, const w::Poly& to, bool from_is_left)
      -> std::optional<std::pair<w::Poly, w::Poly>> {
    if (from.size() != 1 || from[0].size() < 2) return std::nullopt;
    const w::Monomial& m = from[0];
    const std::size_t n = m.size();
    for (std::size_t size = 1; size < n; ++size)
      for (unsigned mask = 1; mask < (1u << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != size) continue;
        w::Monomial keep, move;
        for (std::size_t i = 0; i < n; ++i) ((mask >> i) & 1u ? move : keep).push_back(m[i]);
        w::Poly k{keep}, t = w::poly_mul(to, w::Poly{move});
        if (pair_ok(k) && pair_ok(t)) return from_is_left ? std::pair{k, t} : std::pair{t, k};
      }
    return std::nullopt;
  };
  if (auto r = attempt(a, b, true)) return r;
  return attempt(b, a, false);
}

std::string decomposition_string(const Decomposition& q) {
  std::string s;
  for (const auto& [a, b] : q) {
    if (!s.empty()) s += " + ";
    s += w::to_string(a) + "⊗" + w::to_string(b);
  }
  return s;
}

} // namespace

CellSpec CellSpec::parse(const std::string& text) {
  static const std::regex gen_re(R"(^gen\s+(\S+)\s+\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)$)");
  static const std::regex rel_re(
      R"(^rel\s+(\S+)\s+\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s+attach=(.*?)(?:\s+q=(.*))?$)");
  CellSpec spec;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto hash = raw.find('#');
    std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    std::smatch m;
    try {
      if (std::regex_match(s, m, gen_re)) {
        spec.add_generator(m[1], std::stoi(m[2]), std::stoi(m[3]));
      } else if (std::regex_match(s, m, rel_re)) {
        spec.add_relation(m[1], std::stoi(m[2]), std::stoi(m[3]), m[4], m[5].matched ? m[5].str() : "");
      } else {
        throw std::invalid_argument("expected 'gen <name> (g,d)' or 'rel <name> (g,d) attach=...'");
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("cell spec line " + std::to_string(line) + ": " + e.what());
    }
    spec.cells_.back().line = line;
  }
  return spec;
}

std::vector<w::Generator> CellSpec::generators() const {
  std::vector<w::Generator> out;
  for (const auto& c : cells_)
    if (c.kind == Cell::Kind::generator) out.push_back({c.name, c.g, c.d});
  return out;
}

void CellSpec::add_generator(const std::string& name, int g, int d) {
  for (const auto& c : cells_)
    if (c.name == name) throw std::invalid_argument("duplicate cell name " + name);
  Cell c;
  c.kind = Cell::Kind::generator;
  c.name = name;
  c.g = g;
  c.d = d;
  cells_.push_back(std::move(c));
}

void CellSpec::add_relation(const std::string& name, int g, int d, const std::string& attach,
                            const std::string& q) {
  for (const auto& c : cells_)
    if (c.name == name) throw std::invalid_argument("duplicate cell name " + name);
  const auto gens = generators();
  Cell c;
  c.kind = Cell::Kind::relation;
  c.name = name;
  c.g = g;
  c.d = d;
  c.attach = w::parse(trim(attach), gens);
  auto b = homogeneous(c.attach);
  if (!b) throw std::invalid_argument("attaching class of " + name + " is zero or not homogeneous");
  if (*b != std::pair{g, d - 1})
    throw std::invalid_argument("attaching class of " + name + " sits at " + bideg_str(b->first, b->second) +
                                ", expected " + bideg_str(g, d - 1));
  if (!trim(q).empty())
    for (const auto& term : split_top(trim(q), '+')) {
      auto parts = split_top(term, ':');
      if (parts.size() != 2) throw std::invalid_argument("decomposition term '" + term + "' is not a:b");
      c.q.emplace_back(w::parse(parts[0], gens), w::parse(parts[1], gens));
    }
  cells_.push_back(std::move(c));
}

DPoly to_delta(const w::Poly& barred, const std::map<std::string, std::size_t>& names) {
  std::vector<DMono> out;
  for (const auto& m : barred) {
    auto [g, d] = w::bidegree(m);
    if (g != d) continue; // off the diagonal: killed by the truncation
    DMono e;
    for (const auto& f : m) {
      for (int s : f.lower())
        if (s != 0) throw std::logic_error("diagonal monomial " + w::to_string(w::Poly{m}) + " has a non-square operation");
      auto it = names.find(f.x.name);
      if (it == names.end())
        throw std::logic_error("barred class " + f.x.name + " on the diagonal has no Δ generator");
      if (e.size() <= it->second) e.resize(it->second + 1, 0);
      e[it->second] += 1 << f.seq.size();
    }
    trim_mono(e);
    out.push_back(e);
  }
  return dnormalize(std::move(out));
}

Decomposition bracket_coproduct(const Decomposition& q) {
  if (q.empty()) throw std::invalid_argument("empty decomposition");
  Decomposition out;
  for (const auto& [a, b] : q) {
    for (const auto* p : {&a, &b})
      if (!pair_ok(*p)) {
        auto bd = homogeneous(*p);
        throw std::invalid_argument("decomposition factor " + w::to_string(*p) +
                                    (bd ? " at " + bideg_str(bd->first, bd->second) : std::string(" (not homogeneous)")) +
                                    " violates d+1 = g > 0");
      }
    w::Poly ab = w::bar_class(a), bb = w::bar_class(b);
    if (!ab.empty() && !bb.empty()) out.emplace_back(ab, bb);
  }
  return out;
}

std::string bracket_coproduct_string(const Decomposition& q, const std::string& name) {
  std::string s = "1⊗" + name;
  for (const auto& [a, b] : bracket_coproduct(q)) {
    auto wrap = [](const w::Poly& p) {
      std::string t = w::to_string(p);
      return p.size() > 1 ? "(" + t + ")" : t;
    };
    s += " + " + wrap(a) + "⊗" + wrap(b);
  }
  return s + " + " + name + "⊗1";
}

DeltaPresentation delta_of_cells(const CellSpec& spec, int bound) {
  if (bound < 0) throw std::invalid_argument("negative grading bound");
  DeltaPresentation P;
  P.bound = bound;
  std::map<std::string, std::size_t> names; // barred generator name -> Δ generator
  auto to_d = [&](const w::Poly& p) { return to_delta(p, names); };

  for (const auto& c : spec.cells()) {
    const std::string where = c.name + " " + bideg_str(c.g, c.d);
    if (c.kind == Cell::Kind::generator) {
      if (c.g <= 0) throw std::invalid_argument(where + ": generator cells need g > 0 (connectivity)");
      if (c.d < c.g - 1)
        throw std::invalid_argument(where + ": generator below the line d = g-1 breaks the connectivity estimate");
      if (c.d == c.g - 1) {
        names[w::barred({c.name, c.g, c.d}).name] = P.gens.size();
        P.gens.push_back({c.name, c.g, DeltaGenerator::Origin::barred, {}});
        P.log.push_back(where + ": barred generator " + c.name + " in grading " + std::to_string(c.g) + ", primitive");
      } else {
        P.log.push_back(where + ": generator off the diagonal after barring, no change");
      }
      continue;
    }
    const int g = c.g, e = c.d - 1; // attaching class at (g, e)
    if (!(g - 2 > 0)) throw std::invalid_argument(where + ": hypothesis g-2 > 0 fails");
    if (e < g - 2) throw std::invalid_argument(where + ": hypothesis d >= g-2 fails for the attaching class");
    if (e >= g) {
      P.log.push_back(where + ": rule (i), no change" + std::string(e == g ? " (attaching class on d = g)" : ""));
      continue;
    }
    if (e == g - 1) {
      DPoly r = to_d(w::bar_class(c.attach));
      if (r.empty()) {
        P.log.push_back(where + ": rule (ii), bar of the attaching class is 0, no change");
      } else {
        P.relations.push_back(r);
        P.log.push_back(where + ": rule (ii), quotient by " + P.poly_string(r));
      }
      continue;
    }
    // rule (iii)
    if (!w::bar_class(c.attach).empty())
      throw std::invalid_argument(where + ": rule (iii) needs the bar of the attaching class to vanish");
    if (c.q.empty()) throw std::invalid_argument(where + ": rule (iii) needs a decomposition q=");
    w::Poly prod;
    for (const auto& [a, b] : c.q) prod = w::poly_add(prod, w::poly_mul(a, b));
    if (prod != c.attach)
      throw std::invalid_argument(where + ": decomposition multiplies to " + w::to_string(prod) + ", not " +
                                  w::to_string(c.attach));
    Decomposition q = c.q;
    for (auto& [a, b] : q) {
      if (pair_ok(a) && pair_ok(b)) continue;
      auto r = reassociate(a, b);
      if (!r)
        throw std::invalid_argument(where + ": decomposition " + decomposition_string({{a, b}}) +
                                    " violates d+1 = g > 0 and cannot be regrouped");
      P.flags.push_back(where + ": decomposition " + decomposition_string({{a, b}}) +
                        " violates d+1 = g > 0; regrouped as " + decomposition_string({*r}));
      a = r->first;
      b = r->second;
    }
    DeltaGenerator x{c.name, g, DeltaGenerator::Origin::bracket, {}};
    for (const auto& [ab, bb] : bracket_coproduct(q)) {
      DPoly da = to_d(ab), db = to_d(bb);
      if (!da.empty() && !db.empty()) x.reduced_coproduct.emplace_back(da, db);
    }
    P.gens.push_back(std::move(x));
    P.log.push_back(where + ": rule (iii), adjoin " + c.name + " in grading " + std::to_string(g) +
                    " with ψ = " + P.coproduct_string(P.gens.size() - 1));
  }
  return P;
}

std::string DeltaPresentation::poly_string(const DPoly& p) const {
  if (p.empty()) return "0";
  std::string s;
  for (const auto& m : p) {
    if (!s.empty()) s += " + ";
    s += mono_label(gens, m);
  }
  return s;
}

std::string DeltaPresentation::coproduct_string(std::size_t i) const {
  const auto& x = gens.at(i);
  std::string s = "1⊗" + x.name;
  for (const auto& [a, b] : x.reduced_coproduct) {
    auto wrap = [&](const DPoly& p) { return p.size() > 1 ? "(" + poly_string(p) + ")" : poly_string(p); };
    s += " + " + wrap(a) + "⊗" + wrap(b);
  }
  return s + " + " + x.name + "⊗1";
}

std::string DeltaPresentation::summary() const {
  std::ostringstream o;
  o << "generators:";
  for (const auto& x : gens) o << " " << x.name << "(" << x.grading << ")";
  o << "\nrelations:";
  if (relations.empty()) o << " none";
  for (const auto& r : relations) o << " " << poly_string(r) << " = 0;";
  o << "\n";
  for (std::size_t i = 0; i < gens.size(); ++i) o << "psi(" << gens[i].name << ") = " << coproduct_string(i) << "\n";
  for (const auto& f : flags) o << "FLAG " << f << "\n";
  return o.str();
}

HopfAlgebraTable DeltaPresentation::table() const {
  const std::size_t n = gens.size();
  auto pad = [&](DMono m) {
    m.resize(n, 0);
    return m;
  };
  std::vector<DTensor> cop(n);
  for (std::size_t k = 0; k < n; ++k) cop[k] = full_coproduct(gens[k], k);

  if (relations.empty()) {
    std::vector<PolyVar> vars;
    std::vector<std::vector<std::pair<HopfAlgebraTable::Monomial, HopfAlgebraTable::Monomial>>> gc;
    for (std::size_t k = 0; k < n; ++k) {
      vars.push_back({gens[k].name, gens[k].grading, 0});
      std::vector<std::pair<HopfAlgebraTable::Monomial, HopfAlgebraTable::Monomial>> v;
      for (const auto& [a, b] : cop[k]) v.emplace_back(pad(a), pad(b));
      gc.push_back(std::move(v));
    }
    auto h = HopfAlgebraTable::from_polynomial(vars, bound, gc);
    if (auto f = h.axiom_failures(); !f.empty()) throw std::logic_error("presentation is not a Hopf algebra: " + f[0]);
    return h;
  }

  // quotient of the polynomial algebra by the ideal generated by the relations
  std::vector<std::vector<DMono>> mons(bound + 1);
  std::vector<std::map<DMono, std::size_t>> pos(bound + 1);
  for (int g = 0; g <= bound; ++g) {
    mons[g] = monomials_of(gens, g);
    for (std::size_t i = 0; i < mons[g].size(); ++i) pos[g][mons[g][i]] = i;
  }
  std::vector<int> rel_grading;
  for (const auto& r : relations) {
    int g = dgrading(gens, r.at(0));
    for (const auto& m : r)
      if (dgrading(gens, m) != g) throw std::logic_error("inhomogeneous relation " + poly_string(r));
    rel_grading.push_back(g);
  }
  // reduced echelon rows of the ideal in each grading
  std::vector<std::vector<BitVec>> ech(bound + 1);
  std::vector<std::vector<std::size_t>> piv(bound + 1);
  for (int g = 0; g <= bound; ++g) {
    std::vector<BitVec> rows;
    for (std::size_t r = 0; r < relations.size(); ++r) {
      if (rel_grading[r] > g) continue;
      for (const auto& m : mons[g - rel_grading[r]]) {
        BitVec v(mons[g].size());
        for (const auto& t : relations[r]) v.flip(pos[g].at(dmul(m, t)));
        rows.push_back(v);
      }
    }
    std::vector<BitVec>& E = ech[g];
    std::vector<std::size_t>& P = piv[g];
    for (auto v : rows) {
      for (std::size_t i = 0; i < E.size(); ++i)
        if (v.get(P[i])) v ^= E[i];
      if (v.is_zero()) continue;
      std::size_t p = v.first();
      for (auto& e : E)
        if (e.get(p)) e ^= v;
      E.push_back(v);
      P.push_back(p);
    }
  }
  GradedBasis basis;
  basis.max_grading = bound;
  basis.labels.resize(bound + 1);
  std::vector<std::vector<std::size_t>> standard(bound + 1);
  for (int g = 0; g <= bound; ++g) {
    std::set<std::size_t> pivots(piv[g].begin(), piv[g].end());
    for (std::size_t i = 0; i < mons[g].size(); ++i)
      if (!pivots.count(i)) {
        standard[g].push_back(i);
        basis.labels[g].push_back(mono_label(gens, mons[g][i]));
      }
    std::sort(basis.labels[g].begin(), basis.labels[g].end());
  }
  std::map<std::string, int> index;
  {
    int k = 0;
    for (const auto& ls : basis.labels)
      for (const auto& l : ls) index[l] = k++;
  }
  auto nf = [&](const DMono& m) -> Elt {
    int g = dgrading(gens, m);
    if (g > bound) return {};
    BitVec v(mons[g].size());
    v.set(pos[g].at(m));
    for (std::size_t i = 0; i < ech[g].size(); ++i)
      if (v.get(piv[g][i])) v ^= ech[g][i];
    std::vector<int> out;
    for (auto j : v.support()) out.push_back(index.at(mono_label(gens, mons[g][j])));
    return elt_normalize(out);
  };
  std::vector<DMono> of_index(index.size());
  for (int g = 0; g <= bound; ++g)
    for (auto i : standard[g]) of_index[index.at(mono_label(gens, mons[g][i]))] = mons[g][i];
  std::map<std::pair<int, int>, Elt> mult;
  std::map<int, Tensor> comult;
  const int N = static_cast<int>(of_index.size());
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j)
      if (dgrading(gens, of_index[i]) + dgrading(gens, of_index[j]) <= bound)
        mult[{i, j}] = nf(dmul(of_index[i], of_index[j]));
    DTensor t{{DMono{}, DMono{}}};
    const DMono& m = of_index[i];
    for (std::size_t k = 0; k < m.size(); ++k)
      for (int e = 0; e < m[k]; ++e) t = tensor_mul(t, cop[k]);
    std::vector<std::pair<int, int>> v;
    for (const auto& [a, b] : t)
      for (int x : nf(a))
        for (int y : nf(b)) v.emplace_back(x, y);
    comult[i] = tensor_normalize(v);
  }
  auto h = HopfAlgebraTable::from_tables(std::move(basis), bound, mult, comult);
  if (auto f = h.axiom_failures(); !f.empty()) throw std::logic_error("presentation is not a Hopf algebra: " + f[0]);
  return h;
}

w::Rational slope_transfer(TransferKind kind, int N) {
  if (kind == TransferKind::surjective) {
    if (N < 2) throw std::invalid_argument("surjective transfer needs N >= 2");
    return w::make_rational(N - 1, N);
  }
  if (N < 3) throw std::invalid_argument("injective transfer needs N >= 3");
  return w::make_rational(N - 2, N);
}

std::vector<std::string> table_differences(const HopfAlgebraTable& a, const HopfAlgebraTable& b) {
  std::vector<std::string> out;
  const int T = std::min(a.truncation(), b.truncation());
  for (int g = 0; g <= T; ++g) {
    auto la = g <= a.basis().max_grading ? a.basis().labels[g] : std::vector<std::string>{};
    auto lb = g <= b.basis().max_grading ? b.basis().labels[g] : std::vector<std::string>{};
    if (la != lb) out.push_back("basis differs in grading " + std::to_string(g));
  }
  if (!out.empty()) return out;
  auto relabel = [](const HopfAlgebraTable& from, const HopfAlgebraTable& to, const Elt& e) {
    Elt r;
    for (int x : e) r.push_back(to.index(from.label(x)));
    return elt_normalize(r);
  };
  for (int i = 0; i < a.size(); ++i) {
    if (a.grading(i) > T) continue;
    const int bi = b.index(a.label(i));
    for (int j = 0; j < a.size(); ++j) {
      if (a.grading(i) + a.grading(j) > T) continue;
      const int bj = b.index(a.label(j));
      if (relabel(a, b, a.mult(i, j)) != b.mult(bi, bj))
        out.push_back("product " + a.label(i) + "·" + a.label(j) + ": " + a.elt_string(a.mult(i, j)) + " vs " +
                      b.elt_string(b.mult(bi, bj)));
    }
    std::vector<std::pair<int, int>> t;
    for (auto [x, y] : a.comult(i)) t.emplace_back(b.index(a.label(x)), b.index(a.label(y)));
    if (tensor_normalize(t) != b.comult(bi))
      out.push_back("coproduct of " + a.label(i) + ": " + a.tensor_string(a.comult(i)) + " vs " +
                    b.tensor_string(b.comult(bi)));
  }
  return out;
}

} // namespace stab
