#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stab/f2.hpp"

namespace stab::grp {

// images of the points 0..n-1
using Perm = std::vector<uint16_t>;

class PermGroup {
public:
  static constexpr std::size_t kMaxOrder = 1000;

  // enumerates the closure; throws std::length_error past kMaxOrder
  PermGroup(std::string name, int degree, std::vector<Perm> gens);
  // one generator per line in cycle notation "(1 2 3)(4 5)", points 1-based;
  // an optional "degree N" line fixes the degree
  static PermGroup parse(const std::string& name, const std::string& text);

  const std::string& name() const { return name_; }
  int degree() const { return degree_; }
  std::size_t order() const { return elems_.size(); }
  // elements in lexicographic order; the identity is element 0
  const Perm& element(std::size_t i) const { return elems_.at(i); }
  std::optional<std::size_t> find(const Perm& p) const;
  std::size_t index(const Perm& p) const; // throws if p is not in the group
  // (a·b)(x) = a(b(x))
  std::size_t mul(std::size_t a, std::size_t b) const { return mul_[a * elems_.size() + b]; }
  std::size_t inverse(std::size_t a) const { return inv_.at(a); }
  const std::vector<Perm>& generators() const { return gens_; }

private:
  std::string name_;
  int degree_ = 0;
  std::vector<Perm> gens_, elems_;
  std::vector<uint32_t> mul_;
  std::vector<std::size_t> inv_;
};

std::string cycle_string(const Perm& p);

// columns of a matrix over F2: cols[i] is the image of e_i as a bitmask
using Matrix = std::vector<uint32_t>;
// action on the 2^n - 1 nonzero vectors, vector v at point v-1
Perm matrix_perm(const Matrix& m);
// transvections e_j -> e_j + e_i, all i != j (GL) or i < j (UT)
std::vector<Matrix> transvections(int n, bool upper_only);

// "trivial", "C2", "C2xC2", "D8", "S<n>", "GL(n,2)", "UT(n,2)"
PermGroup builtin(const std::string& name);
std::vector<std::string> builtin_examples();

struct Homomorphism {
  const PermGroup* src = nullptr;
  const PermGroup* tgt = nullptr;
  std::vector<std::size_t> image; // per source element

  // extends images of src.generators(); throws std::invalid_argument if not a homomorphism
  static Homomorphism from_generators(const PermGroup& src, const PermGroup& tgt, const std::vector<Perm>& images);
  static Homomorphism identity(const PermGroup& g);
};
// A ↦ diag(A, 1) between the built-in GL(n,2) and GL(n+1,2)
Homomorphism stabilization(const PermGroup& gl_n, const PermGroup& gl_n1, int n);
// S_n as permutation matrices in GL(n,2)
Homomorphism permutation_matrices(const PermGroup& s_n, const PermGroup& gl_n, int n);

// free resolution of F2 over F2[G]; F_d has basis (h, k), index k·|G| + h
class Resolution {
public:
  // builds F_0 ... F_length; throws std::length_error past the size budget
  Resolution(const PermGroup& g, int length, bool reversed = false);

  const PermGroup& group() const { return *g_; }
  int length() const { return static_cast<int>(ranks_.size()) - 1; }
  std::size_t rank(int d) const { return ranks_.at(d); }
  const std::vector<std::size_t>& ranks() const { return ranks_; }
  // ∂(e_k) for the generators of F_d, d >= 1
  const std::vector<BitVec>& generator_images(int d) const { return images_.at(d); }

  BitVec act(std::size_t g, const BitVec& v) const;
  BitVec boundary(int d, const BitVec& v) const;
  F2Matrix boundary_matrix(int d) const;
  // some x with ∂_d x = y, or nullopt
  std::optional<BitVec> lift(int d, const BitVec& y) const;
  // F2 ⊗ ∂_d : r_d columns, r_{d-1} rows
  F2Matrix tensored(int d) const;

  // H_0 ... H_{length-1}
  std::vector<std::size_t> homology_dims() const;
  // first failing check among ∂² = 0, exactness and equivariance, or ""
  std::string verify() const;

private:
  struct Reducer {
    std::vector<BitVec> cols, combos;
    std::vector<int64_t> by_pivot;
  };
  const PermGroup* g_;
  std::vector<std::size_t> ranks_;
  std::vector<std::vector<BitVec>> images_;
  std::vector<Reducer> red_; // red_[d] reduces the columns of ∂_d
  std::vector<std::size_t> image_rank_;
};

// matrix of H_d(f) in the homology bases of the two tensored-down complexes
F2Matrix induced_map(const Homomorphism& f, const Resolution& src, const Resolution& tgt, int d);

// dim (G^ab ⊗ F2), from the index of the subgroup generated by commutators and squares
std::size_t abelianization_rank(const PermGroup& g);

} // namespace stab::grp
