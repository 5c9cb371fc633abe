#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "stab/f2.hpp"
#include "stab/hopf.hpp"

namespace stab {

// Finite graded left module over the algebra of a HopfAlgebraTable (its product).
struct GradedModule {
  std::vector<int> degree; // per basis element
  // action[{a, m}] = a·m as a list of basis elements; missing entries are zero
  std::map<std::pair<int, int>, std::vector<int>> action;

  std::vector<int> in_degree(int t) const;
  std::vector<int> act(int a, int m) const;
  // associativity and unit failures against the algebra product
  std::vector<std::string> axiom_failures(const HopfAlgebraTable& algebra) const;

  static GradedModule trivial(int shift = 0);
};

// Minimal free resolution F_s -> ... -> F_0 -> M over a finite graded algebra,
// computed through internal degree t_max. Ext^{s,t}(M, F2) is dual to the
// generators of F_s in degree t.
class MinimalResolution {
public:
  MinimalResolution(const HopfAlgebraTable& algebra, GradedModule m, int s_max, int t_max);

  const HopfAlgebraTable& algebra() const { return alg_; }
  const GradedModule& module() const { return mod_; }
  int s_max() const { return s_max_; }
  int t_max() const { return t_max_; }

  std::size_t num_gens(int s) const { return gen_deg_.at(s).size(); }
  int gen_degree(int s, int k) const { return gen_deg_.at(s).at(k); }
  std::vector<int> gens_in_degree(int s, int t) const;
  std::size_t ext_dim(int s, int t) const { return gens_in_degree(s, t).size(); }

  // basis of F_s in degree t: pairs (algebra basis element, generator)
  const std::vector<std::pair<int, int>>& basis(int s, int t) const;
  std::size_t basis_index(int s, int t, int a, int k) const;
  // d of generator k of F_s: element of F_{s-1} (or of M) in its degree
  const BitVec& boundary(int s, int k) const { return dgen_.at(s).at(k); }
  // a·x for x in F_s of degree t
  BitVec act(int s, int t, int a, const BitVec& x) const;
  // d : F_s(t) -> F_{s-1}(t), or the augmentation onto M(t) for s = 0
  F2Matrix d_matrix(int s, int t) const;
  std::size_t target_dim(int s, int t) const;

private:
  void extend(int s, int t);

  HopfAlgebraTable alg_;
  GradedModule mod_;
  int s_max_, t_max_;
  std::vector<std::vector<int>> gen_deg_;
  std::vector<std::vector<BitVec>> dgen_;
  std::vector<std::vector<std::vector<std::pair<int, int>>>> basis_; // [s][t]
  std::vector<std::vector<std::map<std::pair<int, int>, std::size_t>>> index_;
};

// An Ext class: a functional on the generators of F_s in degree t.
struct ExtClass {
  int s = 0, t = 0;
  BitVec coeffs; // over gens_in_degree(s, t)
  bool is_zero() const { return coeffs.is_zero(); }
};

// Chain map F_{s0+k} -> P_k lowering internal degree by shift, built by lifting.
class ChainLift {
public:
  // f0[k] = image in P_0 of generator k of F_{s0}; generators outside
  // [shift, t_max] or missing from f0 map to zero
  ChainLift(const MinimalResolution& src, int s0, const MinimalResolution& tgt, int shift,
            std::vector<BitVec> f0, int k_max);
  // image of generator k of F_{s0+j} in P_j
  const BitVec& image(int j, int k) const { return f_.at(j).at(k); }
  // precomposition Ext^j(tgt) -> Ext^{s0+j}(src)
  ExtClass pull_back(const ExtClass& x) const;

private:
  const MinimalResolution& src_;
  const MinimalResolution& tgt_;
  int s0_, shift_;
  std::vector<std::vector<BitVec>> f_;
};

// Yoneda product r·e with r in Ext(F2) (resolution p) and e in Ext(M) (resolution f).
ExtClass yoneda_product(const MinimalResolution& p, const ExtClass& r, const MinimalResolution& f,
                        const ExtClass& e);
// Map on Ext induced by a degree-preserving module map phi: M_src -> M_tgt, given on
// basis elements; returns the pull-back Ext^s(tgt) -> Ext^s(src) applied to x.
ExtClass induced_on_ext(const MinimalResolution& src, const MinimalResolution& tgt,
                        const std::vector<std::vector<int>>& phi, const ExtClass& x);

ExtClass ext_basis_class(const MinimalResolution& r, int s, int t, std::size_t i);

// A(1) as the dual of A(1)_*, and the module F2{m0, m1} with Sq^1 m0 = m1.
HopfAlgebraTable a1_algebra();
GradedModule cofibre_h10_module(const HopfAlgebraTable& a1);

} // namespace stab
