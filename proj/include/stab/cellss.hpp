#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stab/winfty.hpp"

namespace stab::cellss {

// generators of the 2-cell algebra: σ (1,0) and β (3,2), both in filtration -1
std::vector<w::Generator> generators();

// per-monomial filtration replacements, used to replay alternative table readings
using FiltrationOverrides = std::map<w::Monomial, int>;

// f(Q_I x) = 2^{|I|} f(x), additive on products
int filtration(const w::Monomial& m, const FiltrationOverrides& ov = {});

struct TriMonomial {
  w::Monomial m;
  int g = 0, d = 0, f = 0;
  std::string str() const; // lower-index notation
};
TriMonomial make_tri(const w::Monomial& m, const FiltrationOverrides& ov = {});

// normal monomials over {σ, β} at (g,d) with no bare σ factor
std::vector<TriMonomial> e1_basis_mod_sigma(int g, int d, const FiltrationOverrides& ov = {});

struct SlopeInterval {
  w::Rational lo, hi;
  bool lo_open = false, hi_open = false;
  bool contains(const w::Rational& x) const;
  // "[0,2/3)", "(2/3,3/4]"
  static SlopeInterval parse(const std::string& text);
};
// normal factors other than σ and Q_1(σ) with g <= g_max and slope in the interval
std::vector<w::Factor> slope_generators(int g_max, const SlopeInterval& iv);
// monomials of bidegree (g,d) over those factors
std::vector<TriMonomial> slope_filter(int g, int d, const SlopeInterval& iv);
// e1 basis at (g,d) grouped by the exact power of Q_1(σ) dividing each monomial
std::map<int, std::vector<TriMonomial>> divisibility_classes(int g, int d);

// τ^k x, sitting at (g, d, f(x)+k, -k)
struct TauClass {
  w::Monomial m;
  int k = 0;
  int g = 0, d = 0, f = 0, p = 0;
  std::string str() const;
  bool operator==(const TauClass& o) const { return m == o.m && k == o.k; }
};
TauClass make_tau(const w::Monomial& m, int k, const FiltrationOverrides& ov = {});
// "tau^4 q[1](s)*b^2" or a bare monomial
TauClass parse_tau(const std::string& text, const FiltrationOverrides& ov = {});

struct Declaration {
  int r = 0;
  TauClass src, tgt;
  std::string note;
  int line = 0;
  bool flagged() const;
};
// d<r> <source> -> tau^<k> <target>  # note
std::vector<Declaration> parse_declarations(const std::string& text, const FiltrationOverrides& ov = {});
// empty when the target sits at (g, d-1, f, p-r); otherwise the reason
std::string check_declaration(const Declaration& dcl);

struct ChartEntry {
  TauClass c;
  enum class Status { alive, source, target } status = Status::alive;
  int page = 0;
  std::string killed_by;
};

class BocksteinChart {
public:
  struct Spot {
    int g = 0, d = 0, f = 0;
  };
  // every τ^k x with x in the e1 basis at (g,d) and f(x)+k = f, for each spot
  explicit BocksteinChart(const std::vector<Spot>& spots, const FiltrationOverrides& ov = {});
  // a spot together with the spots its differentials can reach: (g, d±1, f)
  static std::vector<Spot> neighbourhood(int g, int d, int f);
  const std::vector<ChartEntry>& entries() const { return entries_; }
  std::vector<ChartEntry> at(int g, int d, int f) const;
  std::vector<TauClass> survivors(int g, int d, int f) const;

  // applies the declarations page by page; inconsistent declarations (or targets
  // outside the chart) throw unless lenient, in which case they are applied as far as
  // possible and listed in warnings
  BocksteinChart propagate(const std::vector<Declaration>& decls, bool lenient = false) const;
  const std::vector<std::string>& warnings() const { return warnings_; }

  // columns g d f p class status killed_by
  std::vector<std::string> tsv() const;

private:
  std::vector<ChartEntry> entries_;
  std::vector<std::string> warnings_;
  ChartEntry* find(const TauClass& c);
};

struct TableRow {
  std::string name;
  w::Monomial m;
  int f = 0;
};
// lines: name <tab> expression <tab> filtration
std::vector<TableRow> parse_table(const std::string& text);
// filtration mismatches, rows that are not basis elements, basis elements missing from the table
std::vector<std::string> table_discrepancies(const std::vector<TriMonomial>& basis,
                                             const std::vector<TableRow>& rows);

} // namespace stab::cellss
