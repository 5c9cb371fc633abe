#pragma once

#include <string>
#include <vector>

namespace stab {

// One row of the periodic-family table. Bidegrees are (g, d); detection happens in
// Ext over A(1) of the cofibre module F2{m0, m1}, at (dg, dd) with s = dg - dd.
struct FamilyRow {
  std::string family; // "alpha", "gamma", "u", "s"
  int i = 0, j = 0;   // for s rows, i is the subscript (i >= 1) and j = 0
  int g = 0, d = 0;
  std::string detecting; // e.g. "y^2*h11*z32"
  int dg = 0, dd = 0;
  bool nonzero = false;   // detecting class nonzero (resolution engine)
  std::string cobar;      // "nonzero", "zero", or "-" when outside the cobar window
  std::string boundary;   // u rows with j <= 1: image under the connecting map, else "-"
  std::string note;

  std::string name() const;
};

struct FamilyOptions {
  int max_i = 1;
  int cobar_g_max = 12; // cross-check rows whose detecting grading is at most this
};

// the largest max_i the built-in resolution window supports
constexpr int kFamiliesMaxI = 3;

// α_ij, γ_ij, u_ij (j <= 2) for i <= max_i and s_{i+1} for i <= max_i, in that order
// per i; throws std::length_error when max_i exceeds kFamiliesMaxI
std::vector<FamilyRow> family_table(const FamilyOptions& opt);

// the four rows of the absolute-class figure for one i: u_i0, u_i1, u_i2, s_{i+1}
std::vector<FamilyRow> absolute_rows(const std::vector<FamilyRow>& table, int i);

// rank of H_1(S2) -> H_1(GL(2,2)) under the permutation-matrix embedding
std::size_t swap_matrix_rank();

} // namespace stab
