#include "stab/grouphom.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace stab::grp {

namespace {

Perm compose(const Perm& a, const Perm& b) {
  Perm c(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) c[x] = a[b[x]];
  return c;
}

Perm identity_perm(int n) {
  Perm p(n);
  for (int i = 0; i < n; ++i) p[i] = static_cast<uint16_t>(i);
  return p;
}

// reduces v against the stored columns; v and c end reduced
void reduce(const std::vector<BitVec>& cols, const std::vector<BitVec>& combos, const std::vector<int64_t>& by_pivot,
            BitVec& v, BitVec* c) {
  for (std::size_t p = v.first(); p < v.size(); p = v.first()) {
    int64_t k = by_pivot[p];
    if (k < 0) return;
    v ^= cols[k];
    if (c) *c ^= combos[k];
  }
}

struct HomologyBasis {
  std::vector<BitVec> reps;
  F2Matrix solver; // columns: reps, then a basis of the boundaries
  std::size_t ambient = 0;
};

HomologyBasis homology_basis(const Resolution& r, int d) {
  HomologyBasis hb;
  hb.ambient = r.rank(d);
  Subspace z = d == 0 ? Subspace::span(F2Matrix::identity(r.rank(0))) : kernel_basis(r.tensored(d));
  Subspace b(r.rank(d));
  F2Matrix next = r.tensored(d + 1).transpose();
  for (std::size_t i = 0; i < next.rows(); ++i) b.insert(next.row(i));
  std::vector<BitVec> bbasis;
  for (std::size_t i = 0; i < b.dim(); ++i) bbasis.push_back(b.basis().row(i));
  Subspace s = b;
  for (std::size_t i = 0; i < z.dim(); ++i)
    if (s.insert(z.basis().row(i))) hb.reps.push_back(z.basis().row(i));
  std::vector<BitVec> cols = hb.reps;
  cols.insert(cols.end(), bbasis.begin(), bbasis.end());
  hb.solver = F2Matrix::from_bitvecs(cols, hb.ambient).transpose();
  if (cols.empty()) hb.solver = F2Matrix(hb.ambient, 0);
  return hb;
}

} // namespace

PermGroup::PermGroup(std::string name, int degree, std::vector<Perm> gens)
    : name_(std::move(name)), degree_(degree), gens_(std::move(gens)) {
  for (const auto& g : gens_) {
    if (static_cast<int>(g.size()) != degree_) throw std::invalid_argument("generator of the wrong degree");
    std::vector<bool> seen(degree_);
    for (auto x : g) {
      if (x >= degree_ || seen[x]) throw std::invalid_argument("generator is not a permutation");
      seen[x] = true;
    }
  }
  std::vector<Perm> found{identity_perm(degree_)};
  std::map<Perm, std::size_t> at{{found[0], 0}};
  for (std::size_t i = 0; i < found.size(); ++i)
    for (const auto& s : gens_) {
      Perm p = compose(found[i], s);
      if (at.count(p)) continue;
      if (found.size() >= kMaxOrder) throw std::length_error("group order exceeds " + std::to_string(kMaxOrder));
      at[p] = found.size();
      found.push_back(std::move(p));
    }
  elems_ = std::move(found);
  std::sort(elems_.begin(), elems_.end()); // identity is lexicographically least
  const std::size_t n = elems_.size();
  std::map<Perm, std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i) idx[elems_[i]] = i;
  mul_.resize(n * n);
  inv_.resize(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t c = idx.at(compose(elems_[a], elems_[b]));
      mul_[a * n + b] = static_cast<uint32_t>(c);
      if (c == 0) inv_[a] = b;
    }
}

PermGroup PermGroup::parse(const std::string& name, const std::string& text) {
  static const std::regex degree_re(R"(^\s*degree\s+(\d+)\s*$)");
  static const std::regex cycle_re(R"(\(([^()]*)\))");
  std::vector<std::vector<std::vector<int>>> lines;
  int degree = 0, max_point = 0;
  std::istringstream in(text);
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::smatch m;
    if (std::regex_match(line, m, degree_re)) {
      degree = std::stoi(m[1]);
      continue;
    }
    std::vector<std::vector<int>> cycles;
    std::string rest = std::regex_replace(line, cycle_re, "");
    if (rest.find_first_not_of(" \t\r") != std::string::npos)
      throw std::invalid_argument("line " + std::to_string(no) + ": expected cycles like (1 2 3)");
    for (auto it = std::sregex_iterator(line.begin(), line.end(), cycle_re); it != std::sregex_iterator(); ++it) {
      std::istringstream cs((*it)[1].str());
      std::vector<int> c;
      std::string tok;
      while (cs >> tok) {
        for (char& ch : tok)
          if (ch == ',') ch = ' ';
        std::istringstream ts(tok);
        int x;
        while (ts >> x) {
          if (x < 1) throw std::invalid_argument("line " + std::to_string(no) + ": points are 1-based");
          c.push_back(x);
          max_point = std::max(max_point, x);
        }
      }
      cycles.push_back(c);
    }
    lines.push_back(cycles);
  }
  if (!degree) degree = max_point;
  if (max_point > degree) throw std::invalid_argument("point beyond the stated degree");
  std::vector<Perm> gens;
  for (const auto& cycles : lines) {
    Perm p = identity_perm(degree);
    std::vector<bool> used(degree);
    for (const auto& c : cycles)
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (used[c[i] - 1]) throw std::invalid_argument("cycles are not disjoint");
        used[c[i] - 1] = true;
        p[c[i] - 1] = static_cast<uint16_t>(c[(i + 1) % c.size()] - 1);
      }
    gens.push_back(p);
  }
  return PermGroup(name, degree, gens);
}

std::optional<std::size_t> PermGroup::find(const Perm& p) const {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), p);
  if (it == elems_.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - elems_.begin());
}

std::size_t PermGroup::index(const Perm& p) const {
  auto i = find(p);
  if (!i) throw std::invalid_argument("permutation " + cycle_string(p) + " is not in " + name_);
  return *i;
}

std::string cycle_string(const Perm& p) {
  std::string s;
  std::vector<bool> seen(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i) continue;
    s += "(";
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      if (s.back() != '(') s += " ";
      s += std::to_string(j + 1);
    }
    s += ")";
  }
  return s.empty() ? "()" : s;
}

Perm matrix_perm(const Matrix& m) {
  const int n = static_cast<int>(m.size());
  Perm p((1u << n) - 1);
  for (uint32_t v = 1; v < (1u << n); ++v) {
    uint32_t w = 0;
    for (int i = 0; i < n; ++i)
      if ((v >> i) & 1u) w ^= m[i];
    if (!w) throw std::invalid_argument("singular matrix");
    p[v - 1] = static_cast<uint16_t>(w - 1);
  }
  return p;
}

std::vector<Matrix> transvections(int n, bool upper_only) {
  std::vector<Matrix> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || (upper_only && i > j)) continue;
      Matrix m(n);
      for (int k = 0; k < n; ++k) m[k] = 1u << k;
      m[j] ^= 1u << i;
      out.push_back(m);
    }
  return out;
}

PermGroup builtin(const std::string& name) {
  static const std::regex sn(R"(S(\d+))"), gl(R"(GL\((\d+),2\))"), ut(R"(UT\((\d+),2\))");
  std::smatch m;
  auto from_matrices = [&](int n, bool upper) {
    if (n < 1 || n > 4) throw std::invalid_argument("matrix groups need 1 <= n <= 4");
    std::vector<Perm> gens;
    for (const auto& t : transvections(n, upper)) gens.push_back(matrix_perm(t));
    return PermGroup(name, (1 << n) - 1, gens);
  };
  if (name == "trivial") return PermGroup(name, 1, {});
  if (name == "C2") return PermGroup::parse(name, "(1 2)");
  if (name == "C2xC2") return PermGroup::parse(name, "(1 2)\n(3 4)");
  if (name == "D8") return PermGroup::parse(name, "(1 2 3 4)\n(1 3)");
  if (std::regex_match(name, m, sn)) {
    int n = std::stoi(m[1]);
    if (n < 1 || n > 6) throw std::invalid_argument("S<n> needs 1 <= n <= 6");
    if (n == 1) return PermGroup(name, 1, {});
    Perm t = identity_perm(n), c(n);
    std::swap(t[0], t[1]);
    for (int i = 0; i < n; ++i) c[i] = static_cast<uint16_t>((i + 1) % n);
    return PermGroup(name, n, n == 2 ? std::vector<Perm>{t} : std::vector<Perm>{t, c});
  }
  if (std::regex_match(name, m, gl)) return from_matrices(std::stoi(m[1]), false);
  if (std::regex_match(name, m, ut)) return from_matrices(std::stoi(m[1]), true);
  throw std::invalid_argument("unknown group " + name);
}

std::vector<std::string> builtin_examples() {
  return {"trivial", "C2", "C2xC2", "D8", "S2", "S3", "S4", "GL(2,2)", "GL(3,2)", "UT(3,2)", "UT(4,2)"};
}

Homomorphism Homomorphism::from_generators(const PermGroup& src, const PermGroup& tgt,
                                           const std::vector<Perm>& images) {
  if (images.size() != src.generators().size())
    throw std::invalid_argument("one image per generator is needed");
  std::vector<std::size_t> gen_idx, img_idx;
  for (std::size_t k = 0; k < images.size(); ++k) {
    gen_idx.push_back(src.index(src.generators()[k]));
    img_idx.push_back(tgt.index(images[k]));
  }
  Homomorphism f{&src, &tgt, std::vector<std::size_t>(src.order(), SIZE_MAX)};
  f.image[0] = 0;
  std::vector<std::size_t> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (std::size_t k = 0; k < gen_idx.size(); ++k) {
      std::size_t x = src.mul(queue[i], gen_idx[k]);
      if (f.image[x] != SIZE_MAX) continue;
      f.image[x] = tgt.mul(f.image[queue[i]], img_idx[k]);
      queue.push_back(x);
    }
  for (std::size_t a = 0; a < src.order(); ++a)
    for (std::size_t b = 0; b < src.order(); ++b)
      if (f.image[src.mul(a, b)] != tgt.mul(f.image[a], f.image[b]))
        throw std::invalid_argument("generator images do not define a homomorphism");
  return f;
}

Homomorphism Homomorphism::identity(const PermGroup& g) {
  Homomorphism f{&g, &g, {}};
  for (std::size_t i = 0; i < g.order(); ++i) f.image.push_back(i);
  return f;
}

Homomorphism stabilization(const PermGroup& gl_n, const PermGroup& gl_n1, int n) {
  std::vector<Perm> images;
  for (const auto& t : transvections(n, false)) {
    Matrix m = t;
    m.push_back(1u << n);
    images.push_back(matrix_perm(m));
  }
  return Homomorphism::from_generators(gl_n, gl_n1, images);
}

Homomorphism permutation_matrices(const PermGroup& s_n, const PermGroup& gl_n, int n) {
  std::vector<Perm> images;
  for (const auto& p : s_n.generators()) {
    Matrix m(n);
    for (int i = 0; i < n; ++i) m[i] = 1u << p[i];
    images.push_back(matrix_perm(m));
  }
  return Homomorphism::from_generators(s_n, gl_n, images);
}

Resolution::Resolution(const PermGroup& g, int length, bool reversed) : g_(&g) {
  if (length < 0 || length > 7) throw std::length_error("resolution length must be in 0..7");
  const std::size_t G = g.order();
  ranks_ = {1};
  images_.resize(1);
  for (int d = 0; d <= length; ++d) {
    // reduce the columns of ∂_d (ε for d = 0), collecting the kernel
    const std::size_t n = G * ranks_[d];
    const std::size_t m = d == 0 ? 1 : G * ranks_[d - 1];
    Reducer r;
    r.by_pivot.assign(m, -1);
    std::vector<BitVec> kernel;
    for (std::size_t k = 0; k < ranks_[d]; ++k)
      for (std::size_t h = 0; h < G; ++h) {
        BitVec v = d == 0 ? BitVec(1) : act(h, images_[d][k]);
        if (d == 0) v.set(0);
        BitVec c(n);
        c.set(k * G + h);
        reduce(r.cols, r.combos, r.by_pivot, v, &c);
        if (v.is_zero()) {
          kernel.push_back(std::move(c));
        } else {
          r.by_pivot[v.first()] = static_cast<int64_t>(r.cols.size());
          r.cols.push_back(std::move(v));
          r.combos.push_back(std::move(c));
        }
      }
    image_rank_.push_back(r.cols.size());
    red_.push_back(std::move(r));
    if (d == length) break;
    // greedy module generators for the kernel
    Subspace ker(n);
    for (const auto& v : kernel) ker.insert(v);
    std::vector<BitVec> rows;
    for (std::size_t i = 0; i < ker.dim(); ++i) rows.push_back(ker.basis().row(i));
    if (reversed) std::reverse(rows.begin(), rows.end());
    Subspace span(n);
    std::vector<BitVec> gens;
    for (const auto& v : rows) {
      if (span.dim() == ker.dim()) break;
      if (span.contains(v)) continue;
      gens.push_back(v);
      for (std::size_t h = 0; h < G; ++h) span.insert(act(h, v));
    }
    ranks_.push_back(gens.size());
    images_.push_back(std::move(gens));
  }
}

BitVec Resolution::act(std::size_t h, const BitVec& v) const {
  const std::size_t G = g_->order();
  BitVec w(v.size());
  for (auto i : v.support()) w.set((i / G) * G + g_->mul(h, i % G));
  return w;
}

BitVec Resolution::boundary(int d, const BitVec& v) const {
  const std::size_t G = g_->order();
  if (d == 0) {
    BitVec out(1);
    if (v.popcount() % 2) out.set(0);
    return out;
  }
  BitVec out(G * ranks_.at(d - 1));
  for (auto i : v.support()) out ^= act(i % G, images_.at(d)[i / G]);
  return out;
}

F2Matrix Resolution::boundary_matrix(int d) const {
  const std::size_t G = g_->order();
  const std::size_t m = d == 0 ? 1 : G * ranks_.at(d - 1);
  F2Matrix out(m, G * ranks_.at(d));
  for (std::size_t j = 0; j < G * ranks_[d]; ++j) {
    BitVec e(G * ranks_[d]);
    e.set(j);
    for (auto i : boundary(d, e).support()) out.set(i, j);
  }
  return out;
}

std::optional<BitVec> Resolution::lift(int d, const BitVec& y) const {
  const Reducer& r = red_.at(d);
  BitVec v = y;
  BitVec c(g_->order() * ranks_.at(d));
  reduce(r.cols, r.combos, r.by_pivot, v, &c);
  if (!v.is_zero()) return std::nullopt;
  return c;
}

F2Matrix Resolution::tensored(int d) const {
  const std::size_t G = g_->order();
  if (d == 0) return F2Matrix(0, ranks_.at(0));
  if (d > length()) throw std::out_of_range("degree beyond the resolution");
  F2Matrix out(ranks_.at(d - 1), ranks_.at(d));
  for (std::size_t k = 0; k < ranks_[d]; ++k)
    for (auto i : images_[d][k].support()) out.flip(i / G, k);
  return out;
}

std::vector<std::size_t> Resolution::homology_dims() const {
  std::vector<std::size_t> ranks(length() + 1, 0);
  for (int d = 1; d <= length(); ++d) ranks[d] = stab::rank(tensored(d));
  std::vector<std::size_t> out;
  for (int d = 0; d < length(); ++d) out.push_back(ranks_[d] - ranks[d] - ranks[d + 1]);
  return out;
}

std::string Resolution::verify() const {
  const std::size_t G = g_->order();
  for (int d = 1; d <= length(); ++d) {
    for (std::size_t k = 0; k < ranks_[d]; ++k)
      if (!boundary(d - 1, images_[d][k]).is_zero()) return "d^2 != 0 at degree " + std::to_string(d);
    // exactness at F_{d-1}: rank ∂_d = dim F_{d-1} - rank ∂_{d-1}
    if (image_rank_[d] != G * ranks_[d - 1] - image_rank_[d - 1]) return "not exact at degree " + std::to_string(d - 1);
    // equivariance on basis vectors under the generators
    for (const auto& s : g_->generators()) {
      std::size_t h = g_->index(s);
      for (std::size_t j = 0; j < G * ranks_[d]; ++j) {
        BitVec e(G * ranks_[d]);
        e.set(j);
        if (!(boundary(d, act(h, e)) == act(h, boundary(d, e)))) return "not equivariant at degree " + std::to_string(d);
      }
    }
  }
  if (image_rank_[0] != 1) return "augmentation is not onto";
  return "";
}

F2Matrix induced_map(const Homomorphism& f, const Resolution& src, const Resolution& tgt, int d) {
  if (&src.group() != f.src || &tgt.group() != f.tgt) throw std::invalid_argument("resolutions do not match the map");
  if (d + 1 > src.length() || d + 1 > tgt.length()) throw std::out_of_range("resolutions must reach degree d+1");
  const std::size_t GS = f.src->order(), GT = f.tgt->order();
  // φ_k(e_j) in F_k(H)
  std::vector<BitVec> phi{BitVec(GT)};
  phi[0].set(0);
  auto apply = [&](const std::vector<BitVec>& ph, int k, const BitVec& v) {
    BitVec out(GT * tgt.rank(k));
    for (auto i : v.support()) out ^= tgt.act(f.image[i % GS], ph[i / GS]);
    return out;
  };
  for (int k = 1; k <= d; ++k) {
    std::vector<BitVec> next;
    for (std::size_t j = 0; j < src.rank(k); ++j) {
      BitVec y = apply(phi, k - 1, src.generator_images(k)[j]);
      auto x = tgt.lift(k, y);
      if (!x) throw std::logic_error("chain lift failed at degree " + std::to_string(k));
      next.push_back(*x);
    }
    phi = std::move(next);
  }
  // tensor down
  F2Matrix bar(tgt.rank(d), src.rank(d));
  for (std::size_t j = 0; j < src.rank(d); ++j)
    for (auto i : phi[j].support()) bar.flip(i / GT, j);
  HomologyBasis hs = homology_basis(src, d), ht = homology_basis(tgt, d);
  F2Matrix out(ht.reps.size(), hs.reps.size());
  for (std::size_t c = 0; c < hs.reps.size(); ++c) {
    BitVec z = bar.apply(hs.reps[c]);
    auto x = solve(ht.solver, z);
    if (!x) throw std::logic_error("image is not a cycle");
    for (std::size_t r = 0; r < ht.reps.size(); ++r)
      if (x->get(r)) out.set(r, c);
  }
  return out;
}

std::size_t abelianization_rank(const PermGroup& g) {
  const std::size_t n = g.order();
  std::vector<bool> in(n, false);
  std::vector<std::size_t> gens;
  for (std::size_t a = 0; a < n; ++a) {
    gens.push_back(g.mul(a, a));
    for (std::size_t b = 0; b < n; ++b) gens.push_back(g.mul(g.mul(a, b), g.mul(g.inverse(a), g.inverse(b))));
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<std::size_t> sub{0};
  in[0] = true;
  for (std::size_t i = 0; i < sub.size(); ++i)
    for (auto s : gens) {
      std::size_t x = g.mul(sub[i], s);
      if (!in[x]) {
        in[x] = true;
        sub.push_back(x);
      }
    }
  std::size_t q = n / sub.size(), r = 0;
  while ((std::size_t{1} << r) < q) ++r;
  if ((std::size_t{1} << r) != q) throw std::logic_error("quotient by commutators and squares is not a 2-group");
  return r;
}

} // namespace stab::grp
