#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stab/f2.hpp"

namespace stab {

// F2-combination of basis elements: sorted, duplicate-free global indices.
using Elt = std::vector<int>;
// F2-combination of pairs a⊗b, sorted and duplicate-free.
using Tensor = std::vector<std::pair<int, int>>;

Elt elt_add(const Elt& a, const Elt& b);
Tensor tensor_add(const Tensor& a, const Tensor& b);
// normalize an unsorted list with repetitions (pairs cancel)
Elt elt_normalize(std::vector<int> v);
Tensor tensor_normalize(std::vector<std::pair<int, int>> v);

struct GradedBasis {
  int max_grading = 0;
  std::vector<std::vector<std::string>> labels; // labels[g], lexicographic
};

// Polynomial presentation used by the built-in constructors.
struct PolyVar {
  std::string name;
  int grading;
  int height; // x^height = 0; 0 means no truncation
};

class HopfAlgebraTable {
public:
  HopfAlgebraTable() = default;

  // Builds a commutative Hopf algebra F2[vars]/(x^height) through max_grading,
  // with coproducts of the generators given as lists of exponent-vector pairs.
  using Monomial = std::vector<int>;
  static HopfAlgebraTable from_polynomial(
      const std::vector<PolyVar>& vars, int max_grading,
      const std::vector<std::vector<std::pair<Monomial, Monomial>>>& gen_coproducts);

  // Explicit tables. mult/comult entries outside the truncation are ignored.
  static HopfAlgebraTable from_tables(GradedBasis basis, int truncation,
                                      const std::map<std::pair<int, int>, Elt>& mult,
                                      const std::map<int, Tensor>& comult);

  const GradedBasis& basis() const { return basis_; }
  int truncation() const { return truncation_; }
  // true when every grading above the table is known to be zero
  bool finite() const { return finite_; }
  void set_finite(bool f) { finite_ = f; }
  int size() const { return static_cast<int>(grading_.size()); }
  int grading(int i) const { return grading_.at(i); }
  const std::string& label(int i) const { return label_.at(i); }
  int index(const std::string& label) const; // throws if unknown
  std::optional<int> find(const std::string& label) const;
  // global indices of the basis in grading g
  std::vector<int> in_grading(int g) const;
  int unit() const { return 0; }

  Elt mult(int i, int j) const;
  Elt mult(const Elt& a, const Elt& b) const;
  const Tensor& comult(int i) const { return comult_.at(i); }
  Tensor comult(const Elt& a) const;
  // ψ minus the 1⊗x and x⊗1 terms
  Tensor reduced_comult(int i) const;
  Elt antipode(int i) const;

  // exponent vector when built from a polynomial presentation
  const std::vector<Monomial>& exponents() const { return exponents_; }
  const std::vector<PolyVar>& variables() const { return vars_; }

  std::string elt_string(const Elt& e) const;
  std::string tensor_string(const Tensor& t) const;
  Elt parse_elt(const std::string& s) const; // "a + b", "0"

  // first failing axiom, or empty when all hold through the truncation grading
  std::vector<std::string> axiom_failures() const;

  std::string to_json() const;
  static HopfAlgebraTable from_json(const std::string& text);

private:
  void index_basis();
  void require_grading(int g) const;

  GradedBasis basis_;
  int truncation_ = 0;
  bool finite_ = false;
  std::vector<int> grading_;
  std::vector<std::string> label_;
  std::map<std::string, int> by_label_;
  std::vector<std::vector<Elt>> mult_; // mult_[i][j], valid when g_i+g_j ≤ truncation
  std::vector<Tensor> comult_;
  std::vector<Monomial> exponents_;
  std::vector<PolyVar> vars_;
};

HopfAlgebraTable build_a1_star();
HopfAlgebraTable build_delta_cgl();
// Graded dual; basis element x is relabeled "x^v".
HopfAlgebraTable dualize(const HopfAlgebraTable& h);

struct CoalgebraMap {
  const HopfAlgebraTable* source = nullptr;
  const HopfAlgebraTable* target = nullptr;
  std::vector<Elt> images; // per source basis element

  // multiplicative extension of images of polynomial generators (by name)
  static CoalgebraMap from_generators(const HopfAlgebraTable& src, const HopfAlgebraTable& tgt,
                                      const std::map<std::string, Elt>& gen_images);
  static CoalgebraMap identity(const HopfAlgebraTable& h);
  Elt apply(const Elt& x) const;
};

struct MapCheck {
  bool grading = true, unit = true, multiplicative = true, comultiplicative = true,
       counit = true;
  std::string first_violation;
  bool ok() const { return grading && unit && multiplicative && comultiplicative && counit; }
};

// Throws std::invalid_argument when an image is not homogeneous of the right grading.
MapCheck check_hopf_map(const CoalgebraMap& f);

} // namespace stab
