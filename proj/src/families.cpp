#include "stab/families.hpp"

#include <memory>
#include <stdexcept>

#include "stab/cobar.hpp"
#include "stab/grouphom.hpp"
#include "stab/resolution.hpp"

namespace stab {

std::string FamilyRow::name() const {
  if (family == "s") return "s_" + std::to_string(i);
  return family + "_" + std::to_string(i) + std::to_string(j);
}

namespace {

std::string power(const std::string& x, int k) {
  if (k == 0) return "";
  return k == 1 ? x + "*" : x + "^" + std::to_string(k) + "*";
}

std::string detecting_name(int i, int j, bool top) { return power("y", i) + power("h11", j) + (top ? "z32" : "z00"); }

struct ExtSide {
  HopfAlgebraTable alg = a1_algebra();
  std::unique_ptr<MinimalResolution> f2, cone, shifted;
  ExtClass y, h11, z00, z32;

  explicit ExtSide(int max_i) {
    const int s_max = 4 * (max_i + 1), t_max = 12 * (max_i + 1);
    f2 = std::make_unique<MinimalResolution>(alg, GradedModule::trivial(), s_max, t_max);
    cone = std::make_unique<MinimalResolution>(alg, cofibre_h10_module(alg), s_max, t_max);
    shifted = std::make_unique<MinimalResolution>(alg, GradedModule::trivial(1), s_max, t_max);
    y = only(*f2, 12, 8);
    h11 = only(*f2, 2, 1);
    z00 = only(*cone, 0, 0);
    z32 = only(*cone, 3, 2);
  }

  static ExtClass only(const MinimalResolution& r, int g, int d) {
    if (r.ext_dim(g - d, g) != 1) throw std::logic_error("expected a single Ext class at (" + std::to_string(g) + "," + std::to_string(d) + ")");
    return ext_basis_class(r, g - d, g, 0);
  }

  ExtClass detecting(int i, int j, bool top) const {
    ExtClass e = top ? z32 : z00;
    for (int k = 0; k < j; ++k) e = yoneda_product(*f2, h11, *cone, e);
    for (int k = 0; k < i; ++k) e = yoneda_product(*f2, y, *cone, e);
    return e;
  }

  // restriction along ΣF2 -> M, m1; the connecting map of the cofibre sequence
  bool boundary_nonzero(const ExtClass& e) const { return !induced_on_ext(*shifted, *cone, {{1}}, e).is_zero(); }
};

struct CobarSide {
  HopfAlgebraTable h = build_a1_star();
  std::unique_ptr<CobarComplex> base;
  std::unique_ptr<ConeComplex> cone;
  int g_max;

  explicit CobarSide(int g) : g_max(g) {
    base = std::make_unique<CobarComplex>(h, g, g);
    cone = std::make_unique<ConeComplex>(*base, gen(1, 0));
  }

  CotorClass gen(int g, int d) const {
    auto b = base->cotor_basis(g, d);
    if (b.size() != 1) throw std::logic_error("expected a single Cotor class");
    return b[0];
  }

  bool nonzero(int i, int j, bool top) const {
    auto m = cone->basis(top ? 3 : 0, top ? 2 : 0).at(0);
    if (j > 0) {
      auto h11 = gen(2, 1);
      for (int k = 0; k < j; ++k) m = cone->act(h11, m);
    }
    if (i > 0) {
      auto y = gen(12, 8);
      for (int k = 0; k < i; ++k) m = cone->act(y, m);
    }
    return !cone->is_zero(m);
  }
};

} // namespace

std::vector<FamilyRow> family_table(const FamilyOptions& opt) {
  if (opt.max_i < 0) throw std::invalid_argument("max-i must be non-negative");
  if (opt.max_i > kFamiliesMaxI)
    throw std::length_error("max-i above " + std::to_string(kFamiliesMaxI) + " exceeds the resolution window");
  ExtSide ext(opt.max_i);
  std::unique_ptr<CobarSide> cob;
  if (opt.cobar_g_max >= 0) cob = std::make_unique<CobarSide>(opt.cobar_g_max);
  const std::size_t swap_rank = swap_matrix_rank();

  std::vector<FamilyRow> out;
  auto fill = [&](FamilyRow r, int di, int dj, bool top) {
    r.detecting = detecting_name(di, dj, top);
    r.dg = 12 * di + 2 * dj + (top ? 3 : 0);
    r.dd = 8 * di + dj + (top ? 2 : 0);
    auto e = ext.detecting(di, dj, top);
    r.nonzero = !e.is_zero();
    r.cobar = "-";
    if (cob && r.dg <= cob->g_max) r.cobar = cob->nonzero(di, dj, top) ? "nonzero" : "zero";
    if (r.boundary.empty()) r.boundary = "-";
    if (r.family == "u" && r.j <= 1) r.boundary = ext.boundary_nonzero(e) ? "nonzero" : "zero";
    out.push_back(std::move(r));
  };

  for (int i = 0; i <= opt.max_i; ++i) {
    for (int j = 0; j <= 2; ++j) {
      FamilyRow r;
      r.family = "alpha", r.i = i, r.j = j, r.g = 12 * i + 2 * j, r.d = 8 * i + j;
      fill(r, i, j, false);
    }
    for (int j = 0; j <= 2; ++j) {
      FamilyRow r;
      r.family = "gamma", r.i = i, r.j = j, r.g = 12 * i + 2 * j + 3, r.d = 8 * i + j + 2;
      fill(r, i, j, true);
    }
    for (int j = 0; j <= 2; ++j) {
      FamilyRow r;
      r.family = "u", r.i = i, r.j = j, r.g = 12 * i + 2 * j + 2, r.d = 8 * i + j + 1;
      if (i == 0 && j == 0)
        r.note = std::string("represented by the matrix (0 1;1 0)") + (swap_rank == 1 ? "" : " [check failed]");
      else if (j == 1)
        r.note = "u_00*u_" + std::to_string(i) + "0";
      else if (j == 2)
        r.note = "u_00^2*u_" + std::to_string(i) + "0";
      if (j == 2) r.note += "; nonzero by the lifting argument";
      fill(r, i, j, true);
    }
    FamilyRow s;
    s.family = "s", s.i = i + 1, s.j = 0, s.g = 12 * i + 11, s.d = 8 * i + 7;
    s.note = "boundary of alpha_" + std::to_string(i + 1) + "0; nonzero by the lifting argument";
    fill(s, i + 1, 0, false);
  }
  return out;
}

std::vector<FamilyRow> absolute_rows(const std::vector<FamilyRow>& table, int i) {
  std::vector<FamilyRow> out;
  for (const auto& r : table)
    if ((r.family == "u" && r.i == i) || (r.family == "s" && r.i == i + 1)) out.push_back(r);
  return out;
}

std::size_t swap_matrix_rank() {
  auto s2 = grp::builtin("S2");
  auto gl2 = grp::builtin("GL(2,2)");
  auto f = grp::permutation_matrices(s2, gl2, 2);
  grp::Resolution rs(s2, 2), rg(gl2, 2);
  return rank(grp::induced_map(f, rs, rg, 1));
}

} // namespace stab
