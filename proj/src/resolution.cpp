#include "stab/resolution.hpp"

#include <algorithm>
#include <stdexcept>

namespace stab {

std::vector<int> GradedModule::in_degree(int t) const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(degree.size()); ++i)
    if (degree[i] == t) out.push_back(i);
  return out;
}

std::vector<int> GradedModule::act(int a, int m) const {
  if (a == 0) return {m};
  auto it = action.find({a, m});
  return it == action.end() ? std::vector<int>{} : it->second;
}

std::vector<std::string> GradedModule::axiom_failures(const HopfAlgebraTable& alg) const {
  std::vector<std::string> out;
  auto act_elt = [&](int a, const std::vector<int>& v) {
    std::vector<int> acc;
    for (int m : v) {
      auto w = act(a, m);
      acc.insert(acc.end(), w.begin(), w.end());
    }
    return elt_normalize(acc);
  };
  for (auto& [key, img] : action)
    for (int m : img)
      if (degree[m] != degree[key.second] + alg.grading(key.first))
        out.push_back("action of " + alg.label(key.first) + " is not homogeneous");
  for (int a = 1; a < alg.size(); ++a)
    for (int b = 1; b < alg.size(); ++b)
      for (int m = 0; m < static_cast<int>(degree.size()); ++m) {
        std::vector<int> lhs;
        for (int c : alg.mult(a, b)) {
          auto w = act(c, m);
          lhs.insert(lhs.end(), w.begin(), w.end());
        }
        if (elt_normalize(lhs) != act_elt(a, act(b, m)))
          out.push_back("associativity at (" + alg.label(a) + ", " + alg.label(b) + ")");
      }
  return out;
}

GradedModule GradedModule::trivial(int shift) {
  GradedModule m;
  m.degree = {shift};
  return m;
}

MinimalResolution::MinimalResolution(const HopfAlgebraTable& algebra, GradedModule m, int s_max,
                                     int t_max)
    : alg_(algebra), mod_(std::move(m)), s_max_(s_max), t_max_(t_max) {
  gen_deg_.resize(s_max + 1);
  dgen_.resize(s_max + 1);
  basis_.assign(s_max + 1, std::vector<std::vector<std::pair<int, int>>>(t_max + 1));
  index_.assign(s_max + 1, std::vector<std::map<std::pair<int, int>, std::size_t>>(t_max + 1));
  for (int s = 0; s <= s_max; ++s)
    for (int t = 0; t <= t_max; ++t) extend(s, t);
}

std::vector<int> MinimalResolution::gens_in_degree(int s, int t) const {
  std::vector<int> out;
  const auto& g = gen_deg_.at(s);
  for (int k = 0; k < static_cast<int>(g.size()); ++k)
    if (g[k] == t) out.push_back(k);
  return out;
}

const std::vector<std::pair<int, int>>& MinimalResolution::basis(int s, int t) const {
  if (s < 0 || s > s_max_ || t < 0 || t > t_max_)
    throw std::out_of_range("resolution window exceeded at (s=" + std::to_string(s) +
                            ", t=" + std::to_string(t) + ")");
  return basis_[s][t];
}

std::size_t MinimalResolution::basis_index(int s, int t, int a, int k) const {
  basis(s, t);
  return index_[s][t].at({a, k});
}

std::size_t MinimalResolution::target_dim(int s, int t) const {
  return s == 0 ? mod_.in_degree(t).size() : basis(s - 1, t).size();
}

BitVec MinimalResolution::act(int s, int t, int a, const BitVec& x) const {
  const int t2 = t + alg_.grading(a);
  const auto& src = basis(s, t);
  BitVec out(basis(s, t2).size());
  for (auto i : x.support()) {
    auto [b, k] = src[i];
    for (int c : alg_.mult(a, b)) out.flip(index_[s][t2].at({c, k}));
  }
  return out;
}

F2Matrix MinimalResolution::d_matrix(int s, int t) const {
  const auto& src = basis(s, t);
  F2Matrix m(target_dim(s, t), src.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    auto [a, k] = src[j];
    const int tk = gen_deg_[s][k];
    BitVec col;
    if (s == 0) {
      auto from = mod_.in_degree(tk), to = mod_.in_degree(t);
      col = BitVec(to.size());
      for (auto i : dgen_[0][k].support())
        for (int w : mod_.act(a, from[i]))
          col.flip(std::find(to.begin(), to.end(), w) - to.begin());
    } else {
      col = act(s - 1, tk, a, dgen_[s][k]);
    }
    for (auto i : col.support()) m.set(i, j);
  }
  return m;
}

void MinimalResolution::extend(int s, int t) {
  auto& b = basis_[s][t];
  auto& idx = index_[s][t];
  for (int k = 0; k < static_cast<int>(gen_deg_[s].size()); ++k)
    for (int a : alg_.in_grading(t - gen_deg_[s][k])) {
      idx[{a, k}] = b.size();
      b.emplace_back(a, k);
    }
  // what d_s must hit in degree t: M(t) for s = 0, otherwise ker d_{s-1}
  std::vector<BitVec> wanted;
  if (s == 0) {
    std::size_t n = mod_.in_degree(t).size();
    for (std::size_t i = 0; i < n; ++i) {
      BitVec e(n);
      e.set(i);
      wanted.push_back(e);
    }
  } else {
    auto ker = kernel_basis(d_matrix(s - 1, t));
    for (std::size_t i = 0; i < ker.dim(); ++i) wanted.push_back(ker.basis().row(i));
  }
  Subspace image = Subspace::span(d_matrix(s, t).transpose());
  if (image.ambient_dim() == 0) image = Subspace(target_dim(s, t));
  for (const auto& v : wanted) {
    BitVec r = image.reduce(v);
    if (r.is_zero()) continue;
    image.insert(r);
    const int k = static_cast<int>(gen_deg_[s].size());
    gen_deg_[s].push_back(t);
    dgen_[s].push_back(r);
    idx[{0, k}] = b.size();
    b.emplace_back(0, k);
  }
}

ChainLift::ChainLift(const MinimalResolution& src, int s0, const MinimalResolution& tgt, int shift,
                     std::vector<BitVec> f0, int k_max)
    : src_(src), tgt_(tgt), s0_(s0), shift_(shift) {
  f_.resize(k_max + 1);
  auto zero_for = [&](int j, int k) {
    int t = src.gen_degree(s0 + j, k) - shift;
    return (t < 0 || t > tgt.t_max()) ? BitVec(0) : BitVec(tgt.basis(j, t).size());
  };
  const std::size_t n0 = src.num_gens(s0);
  f0.resize(n0);
  for (std::size_t k = 0; k < n0; ++k)
    f_[0].push_back(f0[k].size() ? f0[k] : zero_for(0, static_cast<int>(k)));
  for (int j = 1; j <= k_max; ++j) {
    const int s = s0 + j;
    std::map<int, F2Matrix> dcache;
    for (std::size_t k = 0; k < src.num_gens(s); ++k) {
      const int tk = src.gen_degree(s, static_cast<int>(k));
      const int t = tk - shift;
      if (t < 0 || t > tgt.t_max()) {
        f_[j].push_back(BitVec(0));
        continue;
      }
      // f_{j-1}(d gen), an element of P_{j-1}(t)
      BitVec v(tgt.basis(j - 1, t).size());
      const auto& db = src.basis(s - 1, tk);
      for (auto i : src.boundary(s, static_cast<int>(k)).support()) {
        auto [a, k2] = db[i];
        const BitVec& img = f_[j - 1][k2];
        if (img.size() == 0) continue;
        int t2 = src.gen_degree(s - 1, k2) - shift;
        v ^= tgt.act(j - 1, t2, a, img);
      }
      auto it = dcache.find(t);
      if (it == dcache.end()) it = dcache.emplace(t, tgt.d_matrix(j, t)).first;
      auto x = solve(it->second, v);
      if (!x) throw std::logic_error("chain lift: target is not exact");
      f_[j].push_back(*x);
    }
  }
}

ExtClass ChainLift::pull_back(const ExtClass& x) const {
  const int j = x.s;
  if (j >= static_cast<int>(f_.size()) || x.t + shift_ > src_.t_max() || s0_ + j > src_.s_max())
    throw std::out_of_range("product leaves the resolution window");
  ExtClass out{s0_ + j, x.t + shift_, BitVec(src_.ext_dim(s0_ + j, x.t + shift_))};
  auto tg = tgt_.gens_in_degree(j, x.t);
  auto sg = src_.gens_in_degree(s0_ + j, x.t + shift_);
  for (std::size_t i = 0; i < sg.size(); ++i) {
    const BitVec& img = f_.at(j).at(sg[i]);
    bool bit = false;
    for (auto r : x.coeffs.support())
      if (img.get(tgt_.basis_index(j, x.t, 0, tg[r]))) bit = !bit;
    if (bit) out.coeffs.set(i);
  }
  return out;
}

ExtClass yoneda_product(const MinimalResolution& p, const ExtClass& r, const MinimalResolution& f,
                        const ExtClass& e) {
  if (p.module().degree != std::vector<int>{0})
    throw std::invalid_argument("left factor must come from a resolution of F2");
  std::vector<BitVec> f0(f.num_gens(e.s));
  auto eg = f.gens_in_degree(e.s, e.t);
  for (auto i : e.coeffs.support()) {
    BitVec v(p.basis(0, 0).size());
    v.set(p.basis_index(0, 0, 0, 0));
    f0[eg[i]] = v;
  }
  ChainLift lift(f, e.s, p, e.t, std::move(f0), r.s);
  return lift.pull_back(r);
}

ExtClass induced_on_ext(const MinimalResolution& src, const MinimalResolution& tgt,
                        const std::vector<std::vector<int>>& phi, const ExtClass& x) {
  const auto& ms = src.module();
  std::vector<BitVec> f0(src.num_gens(0));
  for (std::size_t k = 0; k < src.num_gens(0); ++k) {
    const int t = src.gen_degree(0, static_cast<int>(k));
    if (t > tgt.t_max()) continue;
    // image of the augmentation of generator k under phi, in M_tgt(t)
    auto from = ms.in_degree(t), to = tgt.module().in_degree(t);
    BitVec v(to.size());
    for (auto i : src.boundary(0, static_cast<int>(k)).support())
      for (int w : phi.at(from[i])) v.flip(std::find(to.begin(), to.end(), w) - to.begin());
    auto lifted = solve(tgt.d_matrix(0, t), v);
    if (!lifted) throw std::logic_error("augmentation is not surjective");
    f0[k] = *lifted;
  }
  ChainLift lift(src, 0, tgt, 0, std::move(f0), x.s);
  return lift.pull_back(x);
}

ExtClass ext_basis_class(const MinimalResolution& r, int s, int t, std::size_t i) {
  ExtClass c{s, t, BitVec(r.ext_dim(s, t))};
  c.coeffs.set(i);
  return c;
}

HopfAlgebraTable a1_algebra() { return dualize(build_a1_star()); }

GradedModule cofibre_h10_module(const HopfAlgebraTable& a1) {
  GradedModule m;
  m.degree = {0, 1};
  m.action[{a1.index("xi1^v"), 0}] = {1};
  return m;
}

} // namespace stab
