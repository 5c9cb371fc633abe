#include "stab/cobar.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace stab {

bool TaggedReducer::insert(const BitVec& v, const BitVec& tag) {
  BitVec x = v, t = tag;
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (x.get(pivots_[i])) {
      x ^= rows_[i];
      t ^= row_tags_[i];
    }
  if (x.is_zero()) return false;
  std::size_t p = x.first();
  // keep rows fully reduced so that express() is a single pass
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (rows_[i].get(p)) {
      rows_[i] ^= x;
      row_tags_[i] ^= t;
    }
  rows_.push_back(std::move(x));
  row_tags_.push_back(std::move(t));
  pivots_.push_back(p);
  return true;
}

std::optional<BitVec> TaggedReducer::express(const BitVec& v) const {
  BitVec x = v, t(tags_);
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (x.get(pivots_[i])) {
      x ^= rows_[i];
      t ^= row_tags_[i];
    }
  if (!x.is_zero()) return std::nullopt;
  return t;
}

BitVec HomologyBasis::classify(const BitVec& cycle) const {
  auto t = reducer->express(cycle);
  if (!t) throw std::invalid_argument("chain is not a cycle");
  return *t;
}

HomologyBasis compute_homology(const F2Matrix& d_in, const F2Matrix& d_out, std::size_t n) {
  HomologyBasis hb;
  hb.chain_dim = n;
  Subspace z = kernel_basis(d_out);
  Subspace b = Subspace::span(d_in.transpose());
  hb.boundary_rank = b.dim();
  std::size_t hdim = z.dim() - b.dim();
  auto red = std::make_shared<TaggedReducer>(n, hdim);
  for (std::size_t i = 0; i < b.dim(); ++i) red->insert(b.basis().row(i), BitVec(hdim));
  std::size_t k = 0;
  for (std::size_t i = 0; i < z.dim() && k < hdim; ++i) {
    BitVec v = b.reduce(z.basis().row(i));
    BitVec tag(hdim);
    tag.set(k);
    if (red->insert(v, tag)) {
      hb.reps.push_back(v);
      ++k;
    }
  }
  if (k != hdim) throw std::logic_error("homology basis construction failed");
  hb.reducer = red;
  return hb;
}

CobarComplex::CobarComplex(const HopfAlgebraTable& h, int g_max, int s_max)
    : h_(h), g_max_(g_max), s_max_(s_max) {
  if (g_max > h.truncation() && !h.finite())
    throw std::out_of_range("cobar window g_max=" + std::to_string(g_max) +
                            " exceeds the truncation grading " + std::to_string(h.truncation()));
  by_grading_.assign(g_max + 1, {});
  for (int i = 1; i < h.size(); ++i)
    if (h.grading(i) <= g_max) {
      letters_.push_back(i);
      by_grading_[h.grading(i)].push_back(i);
    }
  reduced_.resize(h.size());
  for (int i = 1; i < h.size(); ++i) reduced_[i] = h.reduced_comult(i);
  count_.assign(g_max + 1, std::vector<uint64_t>(s_max + 2, 0));
  count_[0][0] = 1;
  for (int g = 1; g <= g_max; ++g)
    for (int s = 1; s <= s_max + 1; ++s)
      for (int l : letters_) {
        int a = h.grading(l);
        if (a <= g) count_[g][s] += count_[g - a][s - 1];
      }
}

void CobarComplex::check_window(int g, int s) const {
  if (g < 0 || s < 0 || g > g_max_ || s > s_max_ + 1)
    throw std::out_of_range("bidegree (g=" + std::to_string(g) + ", s=" + std::to_string(s) +
                            ") outside the cobar window");
}

std::size_t CobarComplex::word_count(int g, int s) const {
  if (g < 0 || s < 0) return 0;
  check_window(g, s);
  return count_[g][s];
}

const std::vector<Word>& CobarComplex::words(int g, int s) const {
  check_window(g, s);
  auto key = std::make_pair(g, s);
  auto it = words_.find(key);
  if (it != words_.end()) return it->second;
  std::vector<Word> out;
  out.reserve(count_[g][s]);
  Word cur;
  std::function<void(int, int)> rec = [&](int grem, int srem) {
    if (srem == 0) {
      if (grem == 0) out.push_back(cur);
      return;
    }
    for (int l : letters_) {
      int a = h_.grading(l);
      if (a > grem || count_[grem - a][srem - 1] == 0) continue;
      cur.push_back(l);
      rec(grem - a, srem - 1);
      cur.pop_back();
    }
  };
  rec(g, s);
  return words_.emplace(key, std::move(out)).first->second;
}

std::size_t CobarComplex::word_index(const Word& w) const {
  int grem = 0;
  for (int l : w) grem += h_.grading(l);
  const int s = static_cast<int>(w.size());
  std::size_t r = 0;
  for (int i = 0; i < s; ++i) {
    for (int l : letters_) {
      if (l == w[i]) break;
      int a = h_.grading(l);
      if (a <= grem) r += count_[grem - a][s - i - 1];
    }
    grem -= h_.grading(w[i]);
  }
  return r;
}

std::string CobarComplex::word_string(const Word& w) const {
  std::string s = "[";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "|" : "") + h_.label(w[i]);
  return s + "]";
}

std::string CobarComplex::chain_string(int g, int s, const BitVec& v) const {
  if (v.is_zero()) return "0";
  const auto& ws = words(g, s);
  std::string out;
  for (auto i : v.support()) out += (out.empty() ? "" : " + ") + word_string(ws[i]);
  return out;
}

std::vector<uint32_t> CobarComplex::differential_column(const Word& w) const {
  std::vector<uint32_t> out;
  Word t(w.size() + 1);
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t k = 0; k < i; ++k) t[k] = w[k];
    for (std::size_t k = i + 1; k < w.size(); ++k) t[k + 1] = w[k];
    for (auto [a, b] : reduced_[w[i]]) {
      t[i] = a;
      t[i + 1] = b;
      out.push_back(static_cast<uint32_t>(word_index(t)));
    }
  }
  std::sort(out.begin(), out.end());
  std::vector<uint32_t> red;
  for (std::size_t i = 0; i < out.size();) {
    std::size_t j = i;
    while (j < out.size() && out[j] == out[i]) ++j;
    if ((j - i) & 1) red.push_back(out[i]);
    i = j;
  }
  return red;
}

const F2Matrix& CobarComplex::differential(int g, int s) const {
  auto key = std::make_pair(g, s);
  auto it = diff_.find(key);
  if (it != diff_.end()) return it->second;
  const auto& src = words(g, s);
  F2Matrix m(word_count(g, s + 1), src.size());
  for (std::size_t j = 0; j < src.size(); ++j)
    for (auto i : differential_column(src[j])) m.set(i, j);
  return diff_.emplace(key, std::move(m)).first->second;
}

bool CobarComplex::d_squared_zero(int g, int s) const {
  return (differential(g, s + 1) * differential(g, s)).is_zero();
}

const HomologyBasis& CobarComplex::homology(int g, int s) const {
  auto key = std::make_pair(g, s);
  auto it = homology_.find(key);
  if (it != homology_.end()) return it->second;
  check_window(g, s);
  std::size_t n = word_count(g, s);
  F2Matrix d_in = s > 0 ? differential(g, s - 1) : F2Matrix(n, 0);
  const F2Matrix& d_out = differential(g, s);
  return homology_.emplace(key, compute_homology(d_in, d_out, n)).first->second;
}

std::vector<CotorClass> CobarComplex::cotor_basis(int g, int d) const {
  const auto& hb = homology(g, g - d);
  std::vector<CotorClass> out;
  for (std::size_t i = 0; i < hb.dim(); ++i) out.push_back({g, d, hb.reps[i], static_cast<int>(i)});
  return out;
}

std::size_t CobarComplex::cotor_dim(int g, int d) const {
  const int s = g - d;
  if (s < 0) return 0;
  constexpr std::size_t dense_limit = 3000;
  if (word_count(g, s) <= dense_limit && word_count(g, s + 1) <= dense_limit &&
      (s == 0 || word_count(g, s - 1) <= dense_limit))
    return homology(g, s).dim();
  return cotor_dim_sparse(g, d);
}

std::size_t CobarComplex::sparse_rank(int g, int s) const {
  // rank of d : C^s(g) -> C^{s+1}(g) by column reduction; columns whose word is a
  // pivot of the previous differential are cleared without reduction
  auto key = std::make_pair(g, s);
  auto it = sparse_rank_.find(key);
  if (it != sparse_rank_.end()) return it->second;
  check_window(g, s + 1);
  std::vector<uint32_t> cleared;
  if (s > 0) {
    sparse_rank(g, s - 1);
    cleared = sparse_pivots_[{g, s - 1}];
  }
  const auto& src = words(g, s);
  SparseReducer red(word_count(g, s + 1));
  std::size_t ci = 0;
  for (std::size_t j = 0; j < src.size(); ++j) {
    while (ci < cleared.size() && cleared[ci] < j) ++ci;
    if (ci < cleared.size() && cleared[ci] == j) continue;
    red.add_column(differential_column(src[j]));
  }
  sparse_pivots_[key] = red.pivot_rows();
  // words of length s+1 are only needed again for the next differential
  return sparse_rank_[key] = red.rank();
}

std::size_t CobarComplex::cotor_dim_sparse(int g, int d) const {
  const int s = g - d;
  if (s < 0) return 0;
  std::size_t n = word_count(g, s);
  std::size_t out_rank = sparse_rank(g, s);
  std::size_t in_rank = s > 0 ? sparse_rank(g, s - 1) : 0;
  return n - out_rank - in_rank;
}

std::size_t CobarComplex::rank_mod_boundaries(int g, int s,
                                              const std::vector<BitVec>& cycles) const {
  SparseReducer red(word_count(g, s));
  if (s > 0) {
    std::vector<uint32_t> cleared;
    if (s > 1) {
      sparse_rank(g, s - 2);
      cleared = sparse_pivots_[{g, s - 2}];
    }
    const auto& src = words(g, s - 1);
    std::size_t ci = 0;
    for (std::size_t j = 0; j < src.size(); ++j) {
      while (ci < cleared.size() && cleared[ci] < j) ++ci;
      if (ci < cleared.size() && cleared[ci] == j) continue;
      red.add_column(differential_column(src[j]));
    }
  }
  const std::size_t boundaries = red.rank();
  for (const auto& v : cycles) {
    std::vector<uint32_t> col;
    for (auto i : v.support()) col.push_back(static_cast<uint32_t>(i));
    red.add_column(col);
  }
  return red.rank() - boundaries;
}

BitVec CobarComplex::concat(int g1, int s1, const BitVec& x, int g2, int s2,
                            const BitVec& y) const {
  const auto& wx = words(g1, s1);
  const auto& wy = words(g2, s2);
  BitVec out(word_count(g1 + g2, s1 + s2));
  Word t;
  for (auto i : x.support())
    for (auto j : y.support()) {
      t = wx[i];
      t.insert(t.end(), wy[j].begin(), wy[j].end());
      out.flip(word_index(t));
    }
  return out;
}

CotorClass CobarComplex::product(const CotorClass& x, const CotorClass& y) const {
  CotorClass z;
  z.g = x.g + y.g;
  z.d = x.d + y.d;
  z.rep = concat(x.g, x.g - x.d, x.rep, y.g, y.g - y.d, y.rep);
  return z;
}

BitVec CobarComplex::coordinates(const CotorClass& x) const {
  return homology(x.g, x.g - x.d).classify(x.rep);
}

ConeComplex::ConeComplex(const CobarComplex& base, const CotorClass& z) : base_(base), z_(z) {
  if (z.g != 1 || z.d != 0) throw std::invalid_argument("cone cycle must sit in bidegree (1,0)");
  if (!base.differential(1, 1).apply(z.rep).is_zero())
    throw std::invalid_argument("cone element is not a cycle");
}

std::size_t ConeComplex::chain_dim(int g, int s) const {
  return base_.word_count(g, s) + (g >= 1 ? base_.word_count(g - 1, s) : 0);
}

const F2Matrix& ConeComplex::differential(int g, int s) const {
  auto key = std::make_pair(g, s);
  auto it = diff_.find(key);
  if (it != diff_.end()) return it->second;
  const std::size_t nx = base_.word_count(g, s), nx1 = base_.word_count(g, s + 1);
  const std::size_t ny = g >= 1 ? base_.word_count(g - 1, s) : 0;
  const std::size_t ny1 = g >= 1 ? base_.word_count(g - 1, s + 1) : 0;
  F2Matrix m(nx1 + ny1, nx + ny);
  const auto& dx = base_.differential(g, s);
  for (std::size_t r = 0; r < nx1; ++r)
    for (std::size_t c = 0; c < nx; ++c)
      if (dx.get(r, c)) m.set(r, c);
  if (g >= 1) {
    const auto& dy = base_.differential(g - 1, s);
    for (std::size_t r = 0; r < ny1; ++r)
      for (std::size_t c = 0; c < ny; ++c)
        if (dy.get(r, c)) m.set(nx1 + r, nx + c);
    const auto& wy = base_.words(g - 1, s);
    const auto& wz = base_.words(1, 1);
    for (std::size_t c = 0; c < ny; ++c)
      for (auto k : z_.rep.support()) {
        Word t = wy[c];
        t.insert(t.end(), wz[k].begin(), wz[k].end());
        m.flip(base_.word_index(t), nx + c);
      }
  }
  return diff_.emplace(key, std::move(m)).first->second;
}

std::vector<uint32_t> ConeComplex::differential_column(int g, int s, std::size_t j) const {
  const std::size_t nx = base_.word_count(g, s);
  if (j < nx) return base_.differential_column(base_.words(g, s)[j]);
  const std::size_t nx1 = base_.word_count(g, s + 1);
  const Word& y = base_.words(g - 1, s)[j - nx];
  std::vector<uint32_t> out;
  for (auto i : base_.differential_column(y)) out.push_back(static_cast<uint32_t>(nx1 + i));
  const auto& wz = base_.words(1, 1);
  std::vector<uint32_t> yz;
  for (auto k : z_.rep.support()) {
    Word t = y;
    t.insert(t.end(), wz[k].begin(), wz[k].end());
    yz.push_back(static_cast<uint32_t>(base_.word_index(t)));
  }
  std::sort(yz.begin(), yz.end());
  yz.insert(yz.end(), out.begin(), out.end());
  return yz;
}

std::size_t ConeComplex::sparse_rank(int g, int s) const {
  auto key = std::make_pair(g, s);
  auto it = sparse_rank_.find(key);
  if (it != sparse_rank_.end()) return it->second;
  std::vector<uint32_t> cleared;
  if (s > 0) {
    sparse_rank(g, s - 1);
    cleared = sparse_pivots_[{g, s - 1}];
  }
  const std::size_t n = chain_dim(g, s);
  SparseReducer red(chain_dim(g, s + 1));
  std::size_t ci = 0;
  for (std::size_t j = 0; j < n; ++j) {
    while (ci < cleared.size() && cleared[ci] < j) ++ci;
    if (ci < cleared.size() && cleared[ci] == j) continue;
    red.add_column(differential_column(g, s, j));
  }
  sparse_pivots_[key] = red.pivot_rows();
  return sparse_rank_[key] = red.rank();
}

std::size_t ConeComplex::dim_sparse(int g, int d) const {
  const int s = g - d;
  if (s < 0) return 0;
  return chain_dim(g, s) - sparse_rank(g, s) - (s > 0 ? sparse_rank(g, s - 1) : 0);
}

bool ConeComplex::d_squared_zero(int g, int s) const {
  return (differential(g, s + 1) * differential(g, s)).is_zero();
}

const HomologyBasis& ConeComplex::homology(int g, int s) const {
  auto key = std::make_pair(g, s);
  auto it = homology_.find(key);
  if (it != homology_.end()) return it->second;
  std::size_t n = chain_dim(g, s);
  F2Matrix d_in = s > 0 ? differential(g, s - 1) : F2Matrix(n, 0);
  return homology_.emplace(key, compute_homology(d_in, differential(g, s), n)).first->second;
}

std::vector<ConeComplex::Class> ConeComplex::basis(int g, int d) const {
  std::vector<Class> out;
  for (const auto& r : homology(g, g - d).reps) out.push_back({g, d, r});
  return out;
}

ConeComplex::Class ConeComplex::act(const CotorClass& r, const Class& m) const {
  const int s = m.g - m.d, rs = r.g - r.d;
  const std::size_t nx = base_.word_count(m.g, s);
  BitVec x(nx), y(m.g >= 1 ? base_.word_count(m.g - 1, s) : 0);
  for (auto i : m.rep.support()) {
    if (i < nx) x.set(i);
    else y.set(i - nx);
  }
  Class out;
  out.g = m.g + r.g;
  out.d = m.d + r.d;
  BitVec px = base_.concat(r.g, rs, r.rep, m.g, s, x);
  BitVec py = m.g >= 1 ? base_.concat(r.g, rs, r.rep, m.g - 1, s, y)
                       : BitVec(base_.word_count(out.g - 1, rs + s));
  out.rep = BitVec(chain_dim(out.g, rs + s));
  for (auto i : px.support()) out.rep.set(i);
  for (auto i : py.support()) out.rep.set(px.size() + i);
  return out;
}

BitVec ConeComplex::coordinates(const Class& m) const {
  return homology(m.g, m.g - m.d).classify(m.rep);
}

ConeComplex::Class ConeComplex::include(const CotorClass& x) const {
  Class out{x.g, x.d, BitVec(chain_dim(x.g, x.g - x.d))};
  for (auto i : x.rep.support()) out.rep.set(i);
  return out;
}

F2Matrix induced_map(const CoalgebraMap& f, const CobarComplex& src, const CobarComplex& tgt,
                     int g, int d) {
  const int s = g - d;
  auto sb = src.cotor_basis(g, d);
  const auto& thb = tgt.homology(g, s);
  F2Matrix out(thb.dim(), sb.size());
  const auto& sw = src.words(g, s);
  for (std::size_t j = 0; j < sb.size(); ++j) {
    BitVec img(tgt.word_count(g, s));
    for (auto wi : sb[j].rep.support()) {
      // expand [f a1 | ... | f as] letter by letter
      std::vector<Word> partial{{}};
      for (int a : sw[wi]) {
        std::vector<Word> next;
        for (const auto& p : partial)
          for (int b : f.images[a]) {
            Word q = p;
            q.push_back(b);
            next.push_back(std::move(q));
          }
        partial.swap(next);
      }
      for (const auto& w : partial) img.flip(tgt.word_index(w));
    }
    auto c = thb.classify(img);
    for (auto i : c.support()) out.set(i, j);
  }
  return out;
}

} // namespace stab
