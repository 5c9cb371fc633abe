#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stab/f2.hpp"
#include "stab/hopf.hpp"

namespace stab {

using Word = std::vector<int>; // letters are global basis indices of positive grading

// Echelon basis that remembers, for each row, which tagged generators it came from.
class TaggedReducer {
public:
  TaggedReducer(std::size_t ambient, std::size_t tags) : ambient_(ambient), tags_(tags) {}
  // returns false when v reduces to zero
  bool insert(const BitVec& v, const BitVec& tag);
  // reduces v; returns the accumulated tag, or nullopt if v is outside the span
  std::optional<BitVec> express(const BitVec& v) const;
  std::size_t dim() const { return rows_.size(); }

private:
  std::size_t ambient_, tags_;
  std::vector<BitVec> rows_, row_tags_;
  std::vector<std::size_t> pivots_;
};

// Homology of a finite cochain complex C^{s-1} -> C^s -> C^{s+1} at one spot.
struct HomologyBasis {
  std::size_t chain_dim = 0;
  std::vector<BitVec> reps; // cycle representatives, one per class
  // boundaries are tagged 0, representative i is tagged as bit i
  std::shared_ptr<TaggedReducer> reducer;
  std::size_t boundary_rank = 0;

  std::size_t dim() const { return reps.size(); }
  // coordinates of a cycle; throws if v is not in Z
  BitVec classify(const BitVec& cycle) const;
  bool is_boundary(const BitVec& cycle) const { return classify(cycle).is_zero(); }
};

// outgoing differential matrix has rows = target chains, cols = source chains
HomologyBasis compute_homology(const F2Matrix& d_in, const F2Matrix& d_out, std::size_t n);

struct CotorClass {
  int g = 0, d = 0; // s = g - d
  BitVec rep;       // over the word basis of (g, g-d)
  int id = -1;
};

class CobarComplex {
public:
  CobarComplex(const HopfAlgebraTable& h, int g_max, int s_max);

  const HopfAlgebraTable& coalgebra() const { return h_; }
  int g_max() const { return g_max_; }
  int s_max() const { return s_max_; }

  // number of words of total grading g and length s
  std::size_t word_count(int g, int s) const;
  const std::vector<Word>& words(int g, int s) const;
  std::size_t word_index(const Word& w) const; // rank in lexicographic order
  std::string word_string(const Word& w) const;
  std::string chain_string(int g, int s, const BitVec& v) const;

  // d : C^s(g) -> C^{s+1}(g), rows = words(g,s+1), cols = words(g,s)
  const F2Matrix& differential(int g, int s) const;
  // d applied to one word, as target indices
  std::vector<uint32_t> differential_column(const Word& w) const;

  const HomologyBasis& homology(int g, int s) const;
  // (g,d) indexing with s = g - d
  std::vector<CotorClass> cotor_basis(int g, int d) const;
  std::size_t cotor_dim(int g, int d) const;
  // same as cotor_dim but with sparse elimination; usable far beyond the dense range
  std::size_t cotor_dim_sparse(int g, int d) const;

  // dimension of the span of the given cycles in homology at (g, s), by sparse
  // elimination against the boundaries
  std::size_t rank_mod_boundaries(int g, int s, const std::vector<BitVec>& cycles) const;

  // concatenation of words, as a chain in (g1+g2, s1+s2)
  BitVec concat(int g1, int s1, const BitVec& x, int g2, int s2, const BitVec& y) const;
  CotorClass product(const CotorClass& x, const CotorClass& y) const;
  // coordinates of a class in the chosen homology basis
  BitVec coordinates(const CotorClass& x) const;

  void check_window(int g, int s) const;
  // verifies d∘d = 0 on C^s(g)
  bool d_squared_zero(int g, int s) const;

private:
  HopfAlgebraTable h_;
  int g_max_, s_max_;
  std::vector<int> letters_;              // positive-grading basis elements
  std::vector<std::vector<int>> by_grading_; // letters per grading
  std::vector<Tensor> reduced_;           // reduced coproduct per basis element
  std::vector<std::vector<uint64_t>> count_; // count_[g][s]
  mutable std::map<std::pair<int, int>, std::vector<Word>> words_;
  mutable std::map<std::pair<int, int>, F2Matrix> diff_;
  mutable std::map<std::pair<int, int>, HomologyBasis> homology_;
  mutable std::map<std::pair<int, int>, std::vector<uint32_t>> sparse_pivots_;
  mutable std::map<std::pair<int, int>, std::size_t> sparse_rank_;
  std::size_t sparse_rank(int g, int s) const;
};

// Mapping cone of right multiplication by a (1,0) cycle z:
// Cone(g,d) = C(g,d) ⊕ C(g-1,d-1), both of cohomological degree s = g-d,
// with d(x,y) = (dx + y·z, dy).
class ConeComplex {
public:
  ConeComplex(const CobarComplex& base, const CotorClass& z);

  const CobarComplex& base() const { return base_; }
  const CotorClass& z() const { return z_; }
  std::size_t chain_dim(int g, int s) const;
  const F2Matrix& differential(int g, int s) const;
  const HomologyBasis& homology(int g, int s) const;
  std::size_t dim(int g, int d) const { return homology(g, g - d).dim(); }
  // rank-only version for bidegrees too large for dense elimination
  std::size_t dim_sparse(int g, int d) const;
  // d applied to one basis chain of Cone(g,s)
  std::vector<uint32_t> differential_column(int g, int s, std::size_t j) const;
  bool d_squared_zero(int g, int s) const;

  struct Class {
    int g = 0, d = 0;
    BitVec rep;
  };
  std::vector<Class> basis(int g, int d) const;
  // left action of a Cotor class: r·(x,y) = (r x, r y)
  Class act(const CotorClass& r, const Class& m) const;
  BitVec coordinates(const Class& m) const;
  bool is_zero(const Class& m) const { return coordinates(m).is_zero(); }
  // inclusion of the base: x ↦ (x, 0)
  Class include(const CotorClass& x) const;

private:
  const CobarComplex& base_;
  CotorClass z_;
  mutable std::map<std::pair<int, int>, F2Matrix> diff_;
  mutable std::map<std::pair<int, int>, HomologyBasis> homology_;
  mutable std::map<std::pair<int, int>, std::vector<uint32_t>> sparse_pivots_;
  mutable std::map<std::pair<int, int>, std::size_t> sparse_rank_;
  std::size_t sparse_rank(int g, int s) const;
};

// Chain map induced by a coalgebra map on Cotor bases at (g,d): column j is the
// image of source class j in target coordinates.
F2Matrix induced_map(const CoalgebraMap& f, const CobarComplex& src, const CobarComplex& tgt,
                     int g, int d);

} // namespace stab
