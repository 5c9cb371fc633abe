#include "stab/cli.hpp"

#include <CLI11.hpp>

#include <array>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "stab/cellss.hpp"
#include "stab/cobar.hpp"
#include "stab/families.hpp"
#include "stab/grouphom.hpp"
#include "stab/hopf.hpp"
#include "stab/io.hpp"
#include "stab/ivanovsky.hpp"
#include "stab/stabhopf.hpp"
#include "stab/winfty.hpp"

namespace stab::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kChartGMax = 40;
constexpr int kMayGMax = 20;

struct Chart {
  int g_max = 0, d_max = 0;
  std::map<std::pair<int, int>, std::size_t> dims;
};

struct Table {
  Table() = default;
  Table(std::string cmd, std::vector<std::string> cols) : command(std::move(cmd)), columns(std::move(cols)) {}

  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  std::vector<std::string> notes;
  bool header = true;
  std::optional<Chart> chart;
};

struct Common {
  std::string format = "auto";
  std::string output, svg;
};

std::string cell_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::string render_tsv(const Table& t) {
  std::ostringstream os;
  if (t.header) {
    os << "#";
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "\t" : " ") << t.columns[i];
    os << '\n';
  }
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "\t" : "") << cell_text(r[i]);
    os << '\n';
  }
  for (const auto& n : t.notes) os << "# " << n << '\n';
  return os.str();
}

std::string render_json(const Table& t) {
  json j;
  j["schema"] = "stabcalc/" + t.command + "/v1";
  j["columns"] = t.columns;
  json rows = json::array();
  for (const auto& r : t.rows) {
    json o = json::object();
    for (std::size_t i = 0; i < r.size(); ++i) o[t.columns.at(i)] = r[i];
    rows.push_back(std::move(o));
  }
  j["rows"] = std::move(rows);
  j["notes"] = t.notes;
  return j.dump(2) + "\n";
}

// rows d = d_max .. 0, one column per g; '.' marks a zero group, blank where d > g
std::string render_ascii(const Table& t) {
  const Chart& c = *t.chart;
  std::ostringstream os;
  for (int d = c.d_max; d >= 0; --d) {
    os << std::setw(3) << d << " |";
    for (int g = 0; g <= c.g_max; ++g) {
      std::string s = " ";
      if (d <= g) {
        auto it = c.dims.find({g, d});
        s = it == c.dims.end() || it->second == 0 ? "." : std::to_string(it->second);
      }
      os << std::setw(3) << s;
    }
    os << '\n';
  }
  os << "    +" << std::string(3 * (c.g_max + 1), '-') << '\n' << "     ";
  for (int g = 0; g <= c.g_max; ++g) os << std::setw(3) << g;
  os << '\n';
  for (const auto& n : t.notes) os << "# " << n << '\n';
  return os.str();
}

std::string render_svg(const Chart& c) {
  const int u = 24, w = (c.g_max + 2) * u, h = (c.d_max + 2) * u;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
  for (int g = 0; g <= c.g_max; ++g)
    os << "<text x=\"" << (g + 1) * u << "\" y=\"" << h - 4 << "\" font-size=\"9\" text-anchor=\"middle\">" << g << "</text>\n";
  for (int d = 0; d <= c.d_max; ++d)
    os << "<text x=\"8\" y=\"" << h - (d + 1) * u + 3 << "\" font-size=\"9\">" << d << "</text>\n";
  for (const auto& [gd, n] : c.dims) {
    if (n == 0) continue;
    for (std::size_t k = 0; k < n; ++k)
      os << "<circle cx=\"" << (gd.first + 1) * u + 5 * static_cast<int>(k) << "\" cy=\"" << h - (gd.second + 1) * u
         << "\" r=\"3\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

void emit(const Table& t, const Common& c, std::ostream& out) {
  std::string fmt = c.format;
  if (fmt == "auto") fmt = t.chart ? "ascii" : "tsv";
  std::string text;
  if (fmt == "json")
    text = render_json(t);
  else if (fmt == "ascii" && t.chart)
    text = render_ascii(t);
  else
    text = render_tsv(t);
  if (!c.svg.empty()) {
    if (!t.chart) throw std::invalid_argument("--svg needs a chart subcommand");
    write_text(c.svg, render_svg(*t.chart));
  }
  if (c.output.empty())
    out << text;
  else
    write_text(c.output, text);
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "ascii, tsv or json (default: ascii for charts, tsv otherwise)")
      ->check(CLI::IsMember({"auto", "ascii", "tsv", "json"}));
  sub->add_option("--output,-o", c.output, "write to a file instead of stdout");
  sub->add_option("--svg", c.svg, "also write a static chart (chart subcommands only)");
}

std::string resolve(const std::string& path) {
  std::ifstream f(path);
  if (f) return path;
  std::string alt = data_dir() + "/" + path;
  std::ifstream g(alt);
  if (g) return alt;
  return path;
}

std::string load(const std::string& path) {
  try {
    return read_file(resolve(path));
  } catch (const std::runtime_error& e) {
    throw std::invalid_argument(e.what());
  }
}

std::vector<w::Generator> named_generators(const std::string& list) {
  const std::map<std::string, w::Generator> known{
      {"s", w::sigma()}, {"n1", w::nu1()}, {"n2", w::nu2()}, {"b", w::beta()}};
  std::vector<w::Generator> out;
  std::stringstream ss(list);
  std::string name;
  while (std::getline(ss, name, ',')) {
    auto it = known.find(name);
    if (it == known.end()) throw std::invalid_argument("unknown generator '" + name + "' (known: s, n1, n2, b)");
    out.push_back(it->second);
  }
  return out;
}

std::vector<std::string> content_lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto b = line.find_first_not_of(" \t\r"), e = line.find_last_not_of(" \t\r");
    if (b != std::string::npos) out.push_back(line.substr(b, e - b + 1));
  }
  return out;
}

HopfAlgebraTable named_algebra(const std::string& name, const std::string& file) {
  if (!file.empty()) return HopfAlgebraTable::from_json(load(file));
  if (name == "a1") return build_a1_star();
  if (name == "cgl") return build_delta_cgl();
  throw std::invalid_argument("unknown algebra '" + name + "' (a1, cgl, or --load FILE)");
}

void check_box(int g_max, int d_max, int cap) {
  if (g_max < 0 || d_max < 0) throw std::invalid_argument("window bounds must be non-negative");
  if (g_max > cap) throw std::length_error("g_max above " + std::to_string(cap));
}

// ---- subcommands ----

struct CotorArgs {
  std::string algebra = "a1", file;
  int g_max = 17, d_max = 10;
};

Table cotor(const CotorArgs& a) {
  check_box(a.g_max, a.d_max, kChartGMax);
  auto h = named_algebra(a.algebra, a.file);
  CobarComplex c(h, a.g_max, a.g_max);
  Table t{"cotor", {"g", "d", "s", "dim"}};
  Chart ch{a.g_max, a.d_max, {}};
  for (int g = 0; g <= a.g_max; ++g)
    for (int d = 0; d <= std::min(g, a.d_max); ++d) {
      auto n = c.cotor_dim_sparse(g, d);
      ch.dims[{g, d}] = n;
      if (n) t.rows.push_back({g, d, g - d, n});
    }
  t.chart = std::move(ch);
  return t;
}

struct ConeArgs {
  int g_max = 7, d_max = 4;
  bool actions = false;
};

Table cone(const ConeArgs& a) {
  check_box(a.g_max, a.d_max, kChartGMax);
  auto h = build_a1_star();
  CobarComplex base(h, a.g_max, a.g_max);
  auto z = base.cotor_basis(1, 0).at(0);
  ConeComplex cone(base, z);
  Chart ch{a.g_max, a.d_max, {}};
  for (int g = 0; g <= a.g_max; ++g)
    for (int d = 0; d <= std::min(g, a.d_max); ++d) ch.dims[{g, d}] = cone.dim_sparse(g, d);
  if (!a.actions) {
    Table t{"cone", {"g", "d", "s", "dim"}};
    for (const auto& [gd, n] : ch.dims)
      if (n) t.rows.push_back({gd.first, gd.second, gd.first - gd.second, n});
    t.chart = std::move(ch);
    return t;
  }
  Table t{"cone", {"op", "g", "d", "k", "target_g", "target_d", "image"}};
  const std::vector<std::tuple<std::string, int, int>> ops{{"h10", 1, 0}, {"h11", 2, 1}, {"y", 12, 8}};
  for (const auto& [gd, n] : ch.dims) {
    if (!n) continue;
    auto basis = cone.basis(gd.first, gd.second);
    for (const auto& [name, og, od] : ops) {
      int tg = gd.first + og, td = gd.second + od;
      if (tg > a.g_max || td > a.d_max) continue;
      auto r = base.cotor_basis(og, od).at(0);
      for (std::size_t k = 0; k < basis.size(); ++k) {
        auto img = cone.coordinates(cone.act(r, basis[k]));
        t.rows.push_back({name, gd.first, gd.second, k, tg, td, img.size() ? img.to_string() : "-"});
      }
    }
  }
  if (a.g_max >= 5 && a.d_max >= 3) {
    auto h10 = base.cotor_basis(1, 0).at(0), h11 = base.cotor_basis(2, 1).at(0);
    auto z00 = cone.basis(0, 0).at(0), z32 = cone.basis(3, 2).at(0);
    auto lhs = cone.coordinates(cone.act(h10, z32));
    auto rhs = cone.coordinates(cone.act(h11, cone.act(h11, z00)));
    t.notes.push_back(std::string("h10*z32 = h11^2*z00: ") + (lhs == rhs && !lhs.is_zero() ? "yes, nonzero" : "no"));
  }
  return t;
}

struct MayArgs {
  int g_max = 14, d_max = 10;
  std::string page = "1";
  bool use_cone = false, reps = false, report = false;
};

Table may(const MayArgs& a) {
  check_box(a.g_max, a.d_max, kMayGMax);
  int r = 0;
  if (a.page == "inf")
    r = IvanovskySS::kInfinity;
  else {
    try {
      r = std::stoi(a.page);
    } catch (const std::exception&) {
      throw std::invalid_argument("--page must be a positive integer or 'inf'");
    }
    if (r < 1) throw std::invalid_argument("--page must be at least 1");
  }
  auto h = build_a1_star();
  CobarComplex base(h, a.g_max, a.g_max + 1);
  std::unique_ptr<ConeComplex> cone;
  std::unique_ptr<FilteredCobar> fc;
  if (a.use_cone) {
    cone = std::make_unique<ConeComplex>(base, base.cotor_basis(1, 0).at(0));
    fc = std::make_unique<FilteredCobar>(*cone);
  } else {
    fc = std::make_unique<FilteredCobar>(base);
  }
  IvanovskySS ss(*fc, a.g_max, a.d_max, a.reps);
  if (a.report) {
    Table t{"may", {"g", "d", "einfty", "stable_page", "total", "cotor"}};
    for (const auto& row : ss.einfty_report()) {
      if (row.total == 0 && row.cotor == 0) continue;
      std::string e, st;
      for (const auto& [f, n] : row.einfty) e += (e.empty() ? "" : ",") + std::to_string(f) + ":" + std::to_string(n);
      for (const auto& [f, p] : row.stable) st += (st.empty() ? "" : ",") + std::to_string(f) + ":" + std::to_string(p);
      t.rows.push_back({row.g, row.d, e.empty() ? "-" : e, st.empty() ? "-" : st, row.total, row.cotor});
    }
    t.notes.push_back("last nonzero differential: d" + std::to_string(ss.last_differential()));
    return t;
  }
  Table t{"may", {"r", "g", "d", "f", "dim", "representatives"}};
  for (const auto& line : ss.page_tsv(r)) {
    std::vector<json> row;
    std::stringstream ls(line);
    std::string field;
    int col = 0;
    while (std::getline(ls, field, '\t')) {
      if (col < 5)
        row.push_back(std::stol(field));
      else
        row.push_back(field);
      ++col;
    }
    while (row.size() < 6) row.push_back(a.reps ? "" : "-");
    if (r == IvanovskySS::kInfinity) row[0] = "inf";
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table adem(const std::string& expr, const std::string& gens, bool lower) {
  auto p = w::parse(expr, named_generators(gens));
  Table t{"adem", {"result"}};
  t.header = false;
  t.rows.push_back({w::to_string(p, lower)});
  return t;
}

Table nishida(int i, const std::string& expr, const std::string& gens, bool lower) {
  if (i < 0) throw std::invalid_argument("--i must be non-negative");
  auto p = w::parse(expr, named_generators(gens));
  Table t{"nishida", {"result"}};
  t.header = false;
  t.rows.push_back({w::to_string(w::dual_steenrod(i, p), lower)});
  return t;
}

struct WbasisArgs {
  std::string gens = "s";
  std::vector<std::string> rels;
  std::string rel_file;
  int g_max = 6, d_max = 3;
};

Table wbasis(const WbasisArgs& a) {
  check_box(a.g_max, a.d_max, kChartGMax);
  auto gens = named_generators(a.gens);
  std::vector<std::string> texts = a.rels;
  if (!a.rel_file.empty())
    for (const auto& l : content_lines(load(a.rel_file))) texts.push_back(l);
  std::vector<w::Poly> rels;
  for (const auto& r : texts) rels.push_back(w::parse(r, gens));
  auto q = w::ideal_quotient_dims(gens, rels, a.g_max, a.d_max);
  Table t{"wbasis", {"g", "d", "free", "ideal", "quotient"}};
  for (int g = 0; g <= a.g_max; ++g)
    for (int d = 0; d <= a.d_max; ++d) {
      auto get = [&](const auto& m) -> std::size_t {
        auto it = m.find({g, d});
        return it == m.end() ? 0 : it->second;
      };
      if (get(q.free) == 0) continue;
      t.rows.push_back({g, d, get(q.free), get(q.ideal), get(q.quotient)});
    }
  for (const auto& r : texts) t.notes.push_back("relation: " + r);
  return t;
}

struct CellssArgs {
  int g = 12, d = 8;
  std::optional<int> f;
  std::string declarations, table;
  std::vector<std::string> overrides, spots;
  bool lenient = false, chart = false;
};

Table cellss_cmd(const CellssArgs& a) {
  cellss::FiltrationOverrides ov;
  for (const auto& path : a.overrides)
    for (const auto& r : cellss::parse_table(load(path))) ov[r.m] = r.f;
  Table t{"cellss", std::vector<std::string>{}};
  if (!a.table.empty()) {
    auto basis = cellss::e1_basis_mod_sigma(a.g, a.d, ov);
    for (const auto& msg : cellss::table_discrepancies(basis, cellss::parse_table(load(a.table))))
      t.notes.push_back("discrepancy: " + msg);
  }
  if (a.declarations.empty()) {
    t.columns = {"g", "d", "f", "class"};
    for (const auto& m : cellss::e1_basis_mod_sigma(a.g, a.d, ov))
      if (!a.f || m.f == *a.f) t.rows.push_back({m.g, m.d, m.f, m.str()});
    return t;
  }
  std::vector<std::array<int, 3>> spots;
  for (const auto& text : a.spots) {
    std::array<int, 3> v{};
    char c1 = 0, c2 = 0;
    std::istringstream is(text);
    if (!(is >> v[0] >> c1 >> v[1] >> c2 >> v[2]) || c1 != ',' || c2 != ',' || !(is >> std::ws).eof())
      throw std::invalid_argument("--spot expects g,d,f but got '" + text + "'");
    spots.push_back(v);
  }
  if (spots.empty()) {
    if (!a.f) throw std::invalid_argument("--declarations needs --f or --spot");
    spots.push_back({a.g, a.d, *a.f});
  }
  auto decls = cellss::parse_declarations(load(a.declarations), ov);
  std::vector<cellss::BocksteinChart::Spot> cells;
  for (const auto& v : spots) {
    auto nb = cellss::BocksteinChart::neighbourhood(v[0], v[1], v[2]);
    cells.insert(cells.end(), nb.begin(), nb.end());
  }
  cellss::BocksteinChart base(cells, ov);
  auto done = base.propagate(decls, a.lenient);
  for (const auto& w : done.warnings()) t.notes.push_back("warning: " + w);
  if (a.chart) {
    t.columns = {"g", "d", "f", "p", "class", "status", "killed_by"};
    for (const auto& line : done.tsv()) {
      std::vector<json> row;
      std::stringstream ls(line);
      std::string field;
      while (std::getline(ls, field, '\t')) row.push_back(row.size() < 4 ? json(std::stol(field)) : json(field));
      t.rows.push_back(std::move(row));
    }
    return t;
  }
  t.columns = {"g", "d", "f", "p", "survivor"};
  for (const auto& v : spots) {
    auto surv = done.survivors(v[0], v[1], v[2]);
    for (const auto& c : surv) t.rows.push_back({c.g, c.d, c.f, c.p, c.str()});
    if (surv.empty())
      t.notes.push_back("no survivors at (" + std::to_string(v[0]) + "," + std::to_string(v[1]) + "," +
                        std::to_string(v[2]) + ")");
  }
  return t;
}

struct DeltaArgs {
  std::string cells;
  int bound = 5;
  bool compare = false;
  std::string save;
};

Table delta(const DeltaArgs& a) {
  if (a.bound < 0) throw std::invalid_argument("--bound must be non-negative");
  auto spec = CellSpec::parse(load(a.cells));
  auto pres = delta_of_cells(spec, a.bound);
  Table t{"delta", {"generator", "grading", "origin", "coproduct"}};
  for (std::size_t i = 0; i < pres.gens.size(); ++i) {
    const auto& g = pres.gens[i];
    t.rows.push_back({g.name, g.grading, g.origin == DeltaGenerator::Origin::barred ? "barred" : "bracket",
                      pres.coproduct_string(i)});
  }
  for (const auto& r : pres.relations) t.notes.push_back("relation: " + pres.poly_string(r) + " = 0");
  for (const auto& l : pres.log) t.notes.push_back("log: " + l);
  for (const auto& f : pres.flags) t.notes.push_back("flag: " + f);
  if (a.compare || !a.save.empty()) {
    auto table = pres.table();
    if (a.compare) {
      auto diff = table_differences(table, build_delta_cgl());
      if (diff.empty()) t.notes.push_back("equal to the built-in CGL table through grading " + std::to_string(a.bound));
      for (const auto& d : diff) t.notes.push_back("difference: " + d);
    }
    if (!a.save.empty()) write_text(a.save, table.to_json() + "\n");
  }
  return t;
}

struct GroupArgs {
  std::string group = "GL(3,2)", file, map;
  int d_max = 4, n = 2;
};

Table grouphom(const GroupArgs& a) {
  if (a.d_max < 0) throw std::invalid_argument("--dmax must be non-negative");
  if (a.d_max > 6) throw std::length_error("--dmax above 6");
  if (!a.map.empty()) {
    std::unique_ptr<grp::PermGroup> src, tgt;
    grp::Homomorphism f;
    if (a.map == "stabilization") {
      src = std::make_unique<grp::PermGroup>(grp::builtin("GL(" + std::to_string(a.n) + ",2)"));
      tgt = std::make_unique<grp::PermGroup>(grp::builtin("GL(" + std::to_string(a.n + 1) + ",2)"));
      f = grp::stabilization(*src, *tgt, a.n);
    } else if (a.map == "permutation") {
      src = std::make_unique<grp::PermGroup>(grp::builtin("S" + std::to_string(a.n)));
      tgt = std::make_unique<grp::PermGroup>(grp::builtin("GL(" + std::to_string(a.n) + ",2)"));
      f = grp::permutation_matrices(*src, *tgt, a.n);
    } else {
      throw std::invalid_argument("unknown map '" + a.map + "' (stabilization, permutation)");
    }
    grp::Resolution rs(*src, a.d_max + 1), rt(*tgt, a.d_max + 1);
    Table t{"grouphom", {"d", "source_dim", "target_dim", "rank"}};
    for (int d = 0; d <= a.d_max; ++d) {
      auto m = grp::induced_map(f, rs, rt, d);
      t.rows.push_back({d, m.cols(), m.rows(), rank(m)});
    }
    t.notes.push_back(src->name() + " -> " + tgt->name());
    return t;
  }
  auto g = a.file.empty() ? grp::builtin(a.group) : grp::PermGroup::parse(a.file, load(a.file));
  grp::Resolution r(g, a.d_max + 1);
  auto dims = r.homology_dims();
  Table t{"grouphom", {"d", "dim"}};
  for (int d = 0; d <= a.d_max; ++d) t.rows.push_back({d, dims.at(d)});
  t.notes.push_back("group " + g.name() + " of order " + std::to_string(g.order()));
  if (a.d_max >= 1) {
    auto ab = grp::abelianization_rank(g);
    t.notes.push_back("abelianization rank " + std::to_string(ab) + (ab == dims[1] ? " (matches H_1)" : " (differs from H_1)"));
  }
  return t;
}

Table families(int max_i, int cobar_g_max) {
  auto rows = family_table({max_i, cobar_g_max});
  Table t{"families", {"class", "g", "d", "detecting", "det_g", "det_d", "resolution", "cobar", "boundary", "note"}};
  for (const auto& r : rows)
    t.rows.push_back({r.name(), r.g, r.d, r.detecting, r.dg, r.dd, r.nonzero ? "nonzero" : "zero", r.cobar, r.boundary,
                      r.note.empty() ? "-" : r.note});
  return t;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"stabcalc: homological computations for GL_n(F2) stability"};
  app.require_subcommand(1);
  Common common;

  CotorArgs cotor_a;
  auto* c_cotor = app.add_subcommand("cotor", "chart of Cotor of a Hopf algebra");
  c_cotor->add_option("--algebra", cotor_a.algebra, "a1 or cgl");
  c_cotor->add_option("--load", cotor_a.file, "Hopf algebra table as JSON");
  c_cotor->add_option("--gmax", cotor_a.g_max);
  c_cotor->add_option("--dmax", cotor_a.d_max);

  ConeArgs cone_a;
  auto* c_cone = app.add_subcommand("cone", "chart and module actions for the cofibre of h10 over A(1)");
  c_cone->add_option("--gmax", cone_a.g_max);
  c_cone->add_option("--dmax", cone_a.d_max);
  c_cone->add_flag("--actions", cone_a.actions, "list h10, h11 and y actions on the basis");

  MayArgs may_a;
  auto* c_may = app.add_subcommand("may", "pages of the augmentation-filtration spectral sequence for A(1)");
  c_may->add_option("--gmax", may_a.g_max);
  c_may->add_option("--dmax", may_a.d_max);
  c_may->add_option("--page", may_a.page, "page number or 'inf'");
  c_may->add_flag("--cone", may_a.use_cone, "use the cofibre of h10");
  c_may->add_flag("--reps", may_a.reps, "print chain representatives");
  c_may->add_flag("--report", may_a.report, "E-infinity report against Cotor");

  std::string expr, gens = "s,n1,n2,b";
  bool lower = false;
  auto* c_adem = app.add_subcommand("adem", "normal form of a class expression");
  c_adem->add_option("expr", expr)->required();
  c_adem->add_option("--gens", gens, "comma separated: s, n1, n2, b");
  c_adem->add_flag("--lower", lower, "print lower-index form");

  int sq = 1;
  auto* c_nish = app.add_subcommand("nishida", "apply the dual Steenrod operation Sq^i_*");
  c_nish->add_option("--i", sq)->required();
  c_nish->add_option("expr", expr)->required();
  c_nish->add_option("--gens", gens);
  c_nish->add_flag("--lower", lower);

  WbasisArgs wb_a;
  auto* c_wb = app.add_subcommand("wbasis", "free and quotient basis dimensions");
  c_wb->add_option("--gens", wb_a.gens);
  c_wb->add_option("--rel", wb_a.rels, "relation (repeatable)");
  c_wb->add_option("--relations", wb_a.rel_file, "file with one relation per line");
  c_wb->add_option("--gmax", wb_a.g_max);
  c_wb->add_option("--dmax", wb_a.d_max);

  CellssArgs cs_a;
  auto* c_cs = app.add_subcommand("cellss", "E1 basis and survivors for the quotient by sigma");
  c_cs->add_option("--g", cs_a.g);
  c_cs->add_option("--d", cs_a.d);
  c_cs->add_option("--f", cs_a.f);
  c_cs->add_option("--declarations", cs_a.declarations);
  c_cs->add_option("--table", cs_a.table, "compare the basis against a table file");
  c_cs->add_option("--spot", cs_a.spots, "g,d,f; repeatable, the chart covers every spot");
  c_cs->add_option("--overrides", cs_a.overrides, "take filtrations from table files");
  c_cs->add_flag("--lenient", cs_a.lenient);
  c_cs->add_flag("--chart", cs_a.chart, "print the whole chart");

  DeltaArgs delta_a;
  auto* c_delta = app.add_subcommand("delta", "stability Hopf algebra of a cell spec");
  c_delta->add_option("--cells", delta_a.cells)->required();
  c_delta->add_option("--bound", delta_a.bound);
  c_delta->add_flag("--compare-cgl", delta_a.compare);
  c_delta->add_option("--save", delta_a.save, "write the table as JSON");

  GroupArgs grp_a;
  auto* c_grp = app.add_subcommand("grouphom", "mod 2 group homology and induced maps");
  c_grp->add_option("--group", grp_a.group);
  c_grp->add_option("--group-file", grp_a.file);
  c_grp->add_option("--dmax", grp_a.d_max);
  c_grp->add_option("--map", grp_a.map, "stabilization or permutation");
  c_grp->add_option("--n", grp_a.n);

  int max_i = 1, cobar_g_max = 12;
  auto* c_fam = app.add_subcommand("families", "periodic families and their detecting classes");
  c_fam->add_option("--max-i", max_i);
  c_fam->add_option("--cobar-gmax", cobar_g_max, "cross-check detecting classes in the cobar cone up to this grading");

  for (auto* s : app.get_subcommands({})) add_common(s, common);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return ok;
    }
    err << "stabcalc: " << e.what() << '\n';
    return invalid_input;
  }

  try {
    Table t;
    if (*c_cotor) t = cotor(cotor_a);
    else if (*c_cone) t = cone(cone_a);
    else if (*c_may) t = may(may_a);
    else if (*c_adem) t = adem(expr, gens, lower);
    else if (*c_nish) t = nishida(sq, expr, gens, lower);
    else if (*c_wb) t = wbasis(wb_a);
    else if (*c_cs) t = cellss_cmd(cs_a);
    else if (*c_delta) t = delta(delta_a);
    else if (*c_grp) t = grouphom(grp_a);
    else if (*c_fam) t = families(max_i, cobar_g_max);
    emit(t, common, out);
    return ok;
  } catch (const std::length_error& e) {
    err << "stabcalc: budget exceeded: " << e.what() << '\n';
    return budget_exceeded;
  } catch (const std::out_of_range& e) {
    err << "stabcalc: budget exceeded: " << e.what() << '\n';
    return budget_exceeded;
  } catch (const std::invalid_argument& e) {
    err << "stabcalc: invalid input: " << e.what() << '\n';
    return invalid_input;
  } catch (const std::runtime_error& e) {
    err << "stabcalc: invalid input: " << e.what() << '\n';
    return invalid_input;
  } catch (const std::exception& e) {
    err << "stabcalc: internal error: " << e.what() << '\n';
    return internal_error;
  }
}

} // namespace stab::cli
