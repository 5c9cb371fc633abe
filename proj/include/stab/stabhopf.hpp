#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "stab/hopf.hpp"
#include "stab/winfty.hpp"

namespace stab {

// a decomposition q(x) = Σ aᵢ⊗bᵢ
using Decomposition = std::vector<std::pair<w::Poly, w::Poly>>;

struct Cell {
  enum class Kind { generator, relation };
  Kind kind = Kind::generator;
  std::string name;
  // cell bidegree; a relation cell is attached along a class at (g, d-1)
  int g = 0, d = 0;
  w::Poly attach;
  Decomposition q;
  int line = 0;
};

class CellSpec {
public:
  // gen <name> (g,d)
  // rel <name> (g,d) attach=<expr> [q=<a>:<b>[+<a>:<b>...]]
  static CellSpec parse(const std::string& text);

  void add_generator(const std::string& name, int g, int d);
  // expressions are parsed against the generator cells added so far
  void add_relation(const std::string& name, int g, int d, const std::string& attach,
                    const std::string& q = "");
  const std::vector<Cell>& cells() const { return cells_; }
  std::vector<w::Generator> generators() const;

private:
  std::vector<Cell> cells_;
};

// monomials in the Δ generators: exponent vectors, trailing zeros trimmed
using DMono = std::vector<int>;
using DPoly = std::vector<DMono>; // sorted, duplicate-free

struct DeltaGenerator {
  std::string name;
  int grading = 0;
  enum class Origin { barred, bracket } origin = Origin::barred;
  std::vector<std::pair<DPoly, DPoly>> reduced_coproduct;
};

struct DeltaPresentation {
  int bound = 0;
  std::vector<DeltaGenerator> gens;
  std::vector<DPoly> relations; // ideal generators from rule (ii)
  std::vector<std::string> log; // one line per cell
  std::vector<std::string> flags;

  std::string poly_string(const DPoly& p) const;
  // "1⊗x + ... + x⊗1"
  std::string coproduct_string(std::size_t i) const;
  // polynomial presentation when no relation survives, general quotient otherwise
  HopfAlgebraTable table() const;
  std::string summary() const;
};

// w::Poly on barred generators -> its diagonal part as a polynomial in the Δ generators
// names maps barred generator names to Δ generator positions
DPoly to_delta(const w::Poly& barred, const std::map<std::string, std::size_t>& names);

DeltaPresentation delta_of_cells(const CellSpec& spec, int bound);

// Σ āᵢ⊗b̄ᵢ, as barred classes; throws when a pair fails dᵢ+1 = gᵢ > 0
Decomposition bracket_coproduct(const Decomposition& q);
std::string bracket_coproduct_string(const Decomposition& q, const std::string& name = "[q]");

enum class TransferKind { surjective, injective };
w::Rational slope_transfer(TransferKind kind, int N);

// mismatches between two tables compared through labels; empty when equal
std::vector<std::string> table_differences(const HopfAlgebraTable& a, const HopfAlgebraTable& b);

} // namespace stab
