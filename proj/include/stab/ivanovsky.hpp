#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "stab/cobar.hpp"

namespace stab {

// depth(a) = max k with a in (Ā)^k, for every basis element up to g_max (the unit
// gets 0). Throws if the basis is not adapted to the powers of Ā.
std::vector<int> augmentation_depths(const HopfAlgebraTable& h, int g_max);

// Cobar complex (or the cone on right multiplication by a (1,0) cycle) filtered by
// augmentation depth: a word sits in filtration -(sum of letter depths).
class FilteredCobar {
public:
  explicit FilteredCobar(const CobarComplex& base);
  explicit FilteredCobar(const ConeComplex& cone);

  const CobarComplex& base() const { return base_; }
  bool is_cone() const { return cone_ != nullptr; }
  int depth(int letter) const { return depth_.at(letter); }
  int filtration(const Word& w) const;

  // chains of (g,d), in the basis of the underlying complex
  std::size_t dim(int g, int d) const;
  int filtration(int g, int d, std::size_t j) const;
  std::vector<uint32_t> column(int g, int d, std::size_t j) const; // into (g, d-1)
  std::string chain_string(int g, int d, const BitVec& v) const;
  // every boundary of (g,d) stays in the filtration of its source
  bool preserves_filtration(int g, int d) const;
  // dimension of the homology of the underlying complex
  std::size_t homology_dim(int g, int d) const;

private:
  const CobarComplex& base_;
  const ConeComplex* cone_ = nullptr;
  std::vector<int> depth_;
  int z_filt_ = 0;
};

// Spectral sequence of a filtered cobar complex, d^r : E^r_{g,d,f} -> E^r_{g,d-1,f-r}.
// Computed from a filtration-ordered column reduction: every chain basis element ends
// up either permanent or paired with a partner in an adjacent degree, and lives on
// exactly the pages r <= (filtration gap of its pair).
class IvanovskySS {
public:
  // all g <= g_max, d <= d_max; representatives are tracked only on request
  IvanovskySS(const FilteredCobar& fc, int g_max, int d_max, bool with_reps = false);

  int g_max() const { return g_max_; }
  int d_max() const { return d_max_; }
  static constexpr int kInfinity = 1 << 20;

  std::size_t dim(int r, int g, int d, int f) const;
  // nonzero dims per filtration
  std::map<int, std::size_t> dims(int r, int g, int d) const;
  std::size_t total_dim(int r, int g, int d) const;

  struct Spot {
    int g = 0, d = 0, f = 0;
    auto operator<=>(const Spot&) const = default;
  };
  struct Page {
    int r = 0;
    // basis per spot, as chain representatives (empty when reps are off)
    std::map<Spot, std::vector<BitVec>> reps;
    std::map<Spot, std::size_t> dims;
    // d^r from a spot, rows = target basis, cols = source basis
    std::map<Spot, F2Matrix> differentials;
  };
  Page page(int r) const;
  // TSV lines: r g d f dim representatives
  std::vector<std::string> page_tsv(int r) const;

  // smallest r >= 1 with E^r = E^∞ at the spot
  int stable_page(int g, int d, int f) const;
  // largest filtration gap of any pair inside the window, i.e. the last nonzero d^r
  int last_differential() const;
  // gaps r >= 1 of all pairs with a source inside the window
  std::map<int, std::size_t> differential_histogram() const;

  struct ReportRow {
    int g = 0, d = 0;
    std::map<int, std::size_t> einfty; // per filtration
    std::map<int, int> stable;         // per filtration
    std::size_t total = 0, cotor = 0;
  };
  // cross-checks the permanent classes against the Cotor dimensions of the complex
  std::vector<ReportRow> einfty_report() const;

private:
  enum class Kind { permanent, birth, death };
  struct Elem {
    Kind kind = Kind::permanent;
    int f = 0;
    int gap = kInfinity;
    std::size_t partner = 0; // chain index in the adjacent degree
    BitVec rep;
  };
  const FilteredCobar& fc_;
  int g_max_, d_max_;
  bool reps_;
  // elems_[{g,d}][j], indexed like the chain basis
  std::map<std::pair<int, int>, std::vector<Elem>> elems_;
  void reduce_g(int g);
};

} // namespace stab
