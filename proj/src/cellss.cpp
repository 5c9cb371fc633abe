#include "stab/cellss.hpp"

#include <algorithm>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace stab::cellss {

std::vector<w::Generator> generators() { return {w::sigma(), w::beta()}; }

int filtration(const w::Monomial& m, const FiltrationOverrides& ov) {
  if (auto it = ov.find(m); it != ov.end()) return it->second;
  int f = 0;
  for (const auto& x : m) f -= 1 << x.seq.size();
  return f;
}

std::string TriMonomial::str() const { return w::to_string(m, true); }

TriMonomial make_tri(const w::Monomial& m, const FiltrationOverrides& ov) {
  auto [g, d] = w::bidegree(m);
  return {m, g, d, filtration(m, ov)};
}

namespace {

bool bare_sigma(const w::Factor& f) { return f.seq.empty() && f.x == w::sigma(); }
bool is_q1_sigma(const w::Factor& f) { return f.x == w::sigma() && f.seq == std::vector<int>{1}; }

w::Monomial single(const w::Poly& p, const std::string& text) {
  if (p.size() != 1) throw std::invalid_argument("expected a single monomial: " + text);
  return p[0];
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t"), e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

} // namespace

std::vector<TriMonomial> e1_basis_mod_sigma(int g, int d, const FiltrationOverrides& ov) {
  std::vector<TriMonomial> out;
  for (const auto& m : w::free_basis(generators(), g, d))
    if (std::none_of(m.begin(), m.end(), bare_sigma)) out.push_back(make_tri(m, ov));
  return out;
}

bool SlopeInterval::contains(const w::Rational& x) const {
  bool above = lo_open ? lo < x : !(x < lo);
  bool below = hi_open ? x < hi : !(hi < x);
  return above && below;
}

SlopeInterval SlopeInterval::parse(const std::string& text) {
  static const std::regex re(R"(\s*([\[\(])\s*(\d+)(?:/(\d+))?\s*,\s*(\d+)(?:/(\d+))?\s*([\]\)])\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw std::invalid_argument("bad slope interval: " + text);
  auto num = [&](int i, int j) {
    long den = m[j].matched ? std::stol(m[j]) : 1;
    if (den == 0) throw std::invalid_argument("zero denominator in " + text);
    return w::make_rational(std::stol(m[i]), den);
  };
  return {num(2, 3), num(4, 5), m[1] == "(", m[6] == ")"};
}

std::vector<w::Factor> slope_generators(int g_max, const SlopeInterval& iv) {
  std::vector<w::Factor> out;
  const int d_max = static_cast<int>(iv.hi.num * g_max / iv.hi.den);
  for (const auto& x : generators())
    for (const auto& f : w::normal_factors(x, g_max, d_max)) {
      if (bare_sigma(f) || is_q1_sigma(f)) continue;
      if (iv.contains(w::slope({f}))) out.push_back(f);
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TriMonomial> slope_filter(int g, int d, const SlopeInterval& iv) {
  auto fs = slope_generators(g, iv);
  std::vector<TriMonomial> out;
  if (g == 0 && d == 0) out.push_back(make_tri({}));
  w::Monomial cur;
  auto rec = [&](auto&& self, std::size_t start, int gr, int dr) -> void {
    if (gr == 0) {
      if (dr == 0 && !cur.empty()) out.push_back(make_tri(cur));
      return;
    }
    for (std::size_t i = start; i < fs.size(); ++i) {
      if (fs[i].g() > gr || fs[i].d() > dr) continue;
      cur.push_back(fs[i]);
      self(self, i, gr - fs[i].g(), dr - fs[i].d());
      cur.pop_back();
    }
  };
  if (g > 0) rec(rec, 0, g, d);
  return out;
}

std::map<int, std::vector<TriMonomial>> divisibility_classes(int g, int d) {
  std::map<int, std::vector<TriMonomial>> out;
  for (auto& t : e1_basis_mod_sigma(g, d))
    out[static_cast<int>(std::count_if(t.m.begin(), t.m.end(), is_q1_sigma))].push_back(t);
  return out;
}

std::string TauClass::str() const {
  std::string s = w::to_string(m, true);
  return k ? "tau^" + std::to_string(k) + " " + s : s;
}

TauClass make_tau(const w::Monomial& m, int k, const FiltrationOverrides& ov) {
  if (k < 0) throw std::invalid_argument("negative tau power");
  auto t = make_tri(m, ov);
  return {m, k, t.g, t.d, t.f + k, -k};
}

TauClass parse_tau(const std::string& text, const FiltrationOverrides& ov) {
  static const std::regex re(R"(\s*(?:tau\^(\d+)\s+)?(.*\S)\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw std::invalid_argument("bad class: " + text);
  int k = m[1].matched ? std::stoi(m[1]) : 0;
  return make_tau(single(w::parse(m[2], generators()), text), k, ov);
}

bool Declaration::flagged() const { return note.find("FLAG") != std::string::npos; }

std::vector<Declaration> parse_declarations(const std::string& text, const FiltrationOverrides& ov) {
  static const std::regex re(R"(\s*d(\d+)\s+(.*?)\s*->\s*(.*?)\s*)");
  std::vector<Declaration> out;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string note;
    if (auto h = raw.find('#'); h != std::string::npos) {
      note = trim(raw.substr(h + 1));
      raw = raw.substr(0, h);
    }
    if (trim(raw).empty()) continue;
    std::smatch m;
    if (!std::regex_match(raw, m, re))
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected d<r> <source> -> <target>");
    Declaration dcl;
    dcl.r = std::stoi(m[1]);
    if (dcl.r < 1) throw std::invalid_argument("line " + std::to_string(lineno) + ": page must be positive");
    try {
      dcl.src = parse_tau(m[2], ov);
      dcl.tgt = parse_tau(m[3], ov);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
    }
    dcl.note = note;
    dcl.line = lineno;
    out.push_back(std::move(dcl));
  }
  return out;
}

std::string check_declaration(const Declaration& dcl) {
  const auto &s = dcl.src, &t = dcl.tgt;
  std::ostringstream why;
  if (t.g != s.g) why << "grading " << t.g << " != " << s.g << "; ";
  if (t.d != s.d - 1) why << "degree " << t.d << " != " << s.d - 1 << "; ";
  if (t.f != s.f) why << "filtration " << t.f << " != " << s.f << "; ";
  if (t.p != s.p - dcl.r) why << "tau power " << -t.p << " != " << dcl.r - s.p << "; ";
  std::string out = why.str();
  if (!out.empty()) out.resize(out.size() - 2);
  return out;
}

BocksteinChart::BocksteinChart(const std::vector<Spot>& spots, const FiltrationOverrides& ov) {
  for (const auto& s : spots)
    for (const auto& t : e1_basis_mod_sigma(s.g, s.d, ov))
      if (t.f <= s.f) entries_.push_back({make_tau(t.m, s.f - t.f, ov), ChartEntry::Status::alive, 0, {}});
}

std::vector<BocksteinChart::Spot> BocksteinChart::neighbourhood(int g, int d, int f) {
  std::vector<Spot> out;
  if (d > 0) out.push_back({g, d - 1, f});
  out.push_back({g, d, f});
  out.push_back({g, d + 1, f});
  return out;
}

std::vector<ChartEntry> BocksteinChart::at(int g, int d, int f) const {
  std::vector<ChartEntry> out;
  for (const auto& e : entries_)
    if (e.c.g == g && e.c.d == d && e.c.f == f) out.push_back(e);
  return out;
}

std::vector<TauClass> BocksteinChart::survivors(int g, int d, int f) const {
  std::vector<TauClass> out;
  for (const auto& e : at(g, d, f))
    if (e.status == ChartEntry::Status::alive) out.push_back(e.c);
  return out;
}

ChartEntry* BocksteinChart::find(const TauClass& c) {
  for (auto& e : entries_)
    if (e.c == c) return &e;
  return nullptr;
}

BocksteinChart BocksteinChart::propagate(const std::vector<Declaration>& decls, bool lenient) const {
  BocksteinChart out = *this;
  std::vector<const Declaration*> order;
  for (const auto& d : decls) order.push_back(&d);
  std::stable_sort(order.begin(), order.end(), [](auto a, auto b) { return a->r < b->r; });
  for (const auto* dcl : order) {
    const std::string at_line = "declaration on line " + std::to_string(dcl->line);
    if (auto why = check_declaration(*dcl); !why.empty()) {
      if (!lenient) throw std::invalid_argument(at_line + " is inconsistent: " + why);
      out.warnings_.push_back(at_line + " applied despite: " + why);
    }
    ChartEntry* src = out.find(dcl->src);
    ChartEntry* tgt = out.find(dcl->tgt);
    if (!src) throw std::invalid_argument(at_line + ": source " + dcl->src.str() + " is not in the chart");
    if (!tgt && !lenient)
      throw std::invalid_argument(at_line + ": target " + dcl->tgt.str() + " is not in the chart");
    if (src->status != ChartEntry::Status::alive)
      throw std::invalid_argument(at_line + ": source " + dcl->src.str() + " already died on page " +
                                  std::to_string(src->page));
    if (tgt && tgt->status != ChartEntry::Status::alive)
      throw std::invalid_argument(at_line + ": target " + dcl->tgt.str() + " already died on page " +
                                  std::to_string(tgt->page));
    src->status = ChartEntry::Status::source;
    src->page = dcl->r;
    if (dcl->flagged()) out.warnings_.push_back(at_line + " is flagged: " + dcl->note);
    if (!tgt) {
      out.warnings_.push_back(at_line + ": target " + dcl->tgt.str() + " is not in the chart");
      continue;
    }
    tgt->status = ChartEntry::Status::target;
    tgt->page = dcl->r;
    tgt->killed_by = "d" + std::to_string(dcl->r) + "(" + dcl->src.str() + ")";
  }
  return out;
}

std::vector<std::string> BocksteinChart::tsv() const {
  std::vector<std::string> out;
  for (const auto& e : entries_) {
    std::ostringstream line;
    const char* st = e.status == ChartEntry::Status::alive    ? "survivor"
                     : e.status == ChartEntry::Status::source ? "source"
                                                              : "target";
    line << e.c.g << '\t' << e.c.d << '\t' << e.c.f << '\t' << e.c.p << '\t' << e.c.str() << '\t' << st;
    if (e.status != ChartEntry::Status::alive) line << "(d" << e.page << ")";
    line << '\t' << (e.killed_by.empty() ? "-" : e.killed_by);
    out.push_back(line.str());
  }
  return out;
}

std::vector<TableRow> parse_table(const std::string& text) {
  std::vector<TableRow> out;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto h = raw.find('#'); h != std::string::npos) raw = raw.substr(0, h);
    if (trim(raw).empty()) continue;
    std::vector<std::string> cols;
    std::istringstream ls(raw);
    for (std::string c; std::getline(ls, c, '\t');) cols.push_back(trim(c));
    if (cols.size() != 3) throw std::invalid_argument("table line " + std::to_string(lineno) + ": need 3 columns");
    out.push_back({cols[0], single(w::parse(cols[1], generators()), cols[1]), std::stoi(cols[2])});
  }
  return out;
}

std::vector<std::string> table_discrepancies(const std::vector<TriMonomial>& basis,
                                             const std::vector<TableRow>& rows) {
  std::vector<std::string> out;
  for (const auto& row : rows) {
    auto it = std::find_if(basis.begin(), basis.end(), [&](const auto& t) { return t.m == row.m; });
    if (it == basis.end()) {
      out.push_back("row " + row.name + " (" + w::to_string(row.m, true) + ") is not a basis element");
      continue;
    }
    if (it->f != row.f)
      out.push_back("row " + row.name + " (" + it->str() + "): table filtration " + std::to_string(row.f) +
                    ", rule gives " + std::to_string(it->f));
  }
  for (const auto& t : basis)
    if (std::none_of(rows.begin(), rows.end(), [&](const auto& r) { return r.m == t.m; }))
      out.push_back("basis element " + t.str() + " (filtration " + std::to_string(t.f) + ") is missing from the table");
  return out;
}

} // namespace stab::cellss
