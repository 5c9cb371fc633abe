#include "stab/ivanovsky.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace stab {

std::vector<int> augmentation_depths(const HopfAlgebraTable& h, int g_max) {
  std::vector<int> depth(h.size(), 0);
  // pow[k][n] = (Ā)^k in grading n, coordinates over in_grading(n)
  std::vector<std::vector<Subspace>> pow;
  std::vector<std::vector<int>> grading(g_max + 1);
  for (int n = 0; n <= g_max; ++n) grading[n] = h.in_grading(n);
  auto coords = [&](int n, const Elt& e) {
    BitVec v(grading[n].size());
    for (int i : e) v.flip(std::find(grading[n].begin(), grading[n].end(), i) - grading[n].begin());
    return v;
  };
  std::vector<Subspace> first(g_max + 1);
  for (int n = 0; n <= g_max; ++n) {
    first[n] = Subspace(grading[n].size());
    if (n > 0)
      for (int i : grading[n]) first[n].insert(coords(n, {i}));
  }
  pow.push_back(first);
  for (int k = 2; k <= g_max; ++k) {
    std::vector<Subspace> next(g_max + 1);
    for (int n = 0; n <= g_max; ++n) {
      next[n] = Subspace(grading[n].size());
      for (int m = 1; m < n; ++m) {
        const auto& lower = pow.back()[m];
        for (std::size_t r = 0; r < lower.dim(); ++r) {
          Elt a;
          for (auto i : lower.basis().row(r).support()) a.push_back(grading[m][i]);
          for (int b : grading[n - m]) next[n].insert(coords(n, h.mult(a, Elt{b})));
        }
      }
    }
    pow.push_back(std::move(next));
  }
  for (int n = 1; n <= g_max; ++n)
    for (std::size_t i = 0; i < grading[n].size(); ++i) {
      BitVec e(grading[n].size());
      e.set(i);
      int k = 0;
      while (k < static_cast<int>(pow.size()) && pow[k][n].contains(e)) ++k;
      depth[grading[n][i]] = k;
    }
  for (int n = 1; n <= g_max; ++n)
    for (int k = 1; k <= static_cast<int>(pow.size()); ++k) {
      std::size_t deep = 0;
      for (int i : grading[n]) deep += depth[i] >= k;
      if (deep != pow[k - 1][n].dim())
        throw std::invalid_argument("basis in grading " + std::to_string(n) +
                                    " is not adapted to the augmentation filtration");
    }
  return depth;
}

FilteredCobar::FilteredCobar(const CobarComplex& base)
    : base_(base), depth_(augmentation_depths(base.coalgebra(), base.g_max())) {}

FilteredCobar::FilteredCobar(const ConeComplex& cone) : FilteredCobar(cone.base()) {
  cone_ = &cone;
  const auto& wz = base_.words(1, 1);
  z_filt_ = std::numeric_limits<int>::min();
  for (auto k : cone.z().rep.support()) z_filt_ = std::max(z_filt_, filtration(wz[k]));
}

int FilteredCobar::filtration(const Word& w) const {
  int f = 0;
  for (int a : w) f -= depth_.at(a);
  return f;
}

std::size_t FilteredCobar::dim(int g, int d) const {
  const int s = g - d;
  if (g < 0 || s < 0) return 0;
  return cone_ ? cone_->chain_dim(g, s) : base_.word_count(g, s);
}

int FilteredCobar::filtration(int g, int d, std::size_t j) const {
  const int s = g - d;
  const std::size_t nx = base_.word_count(g, s);
  if (j < nx) return filtration(base_.words(g, s)[j]);
  return filtration(base_.words(g - 1, s)[j - nx]) + z_filt_;
}

std::vector<uint32_t> FilteredCobar::column(int g, int d, std::size_t j) const {
  const int s = g - d;
  if (cone_) return cone_->differential_column(g, s, j);
  return base_.differential_column(base_.words(g, s)[j]);
}

std::size_t FilteredCobar::homology_dim(int g, int d) const {
  return cone_ ? cone_->dim_sparse(g, d) : base_.cotor_dim_sparse(g, d);
}

std::string FilteredCobar::chain_string(int g, int d, const BitVec& v) const {
  const int s = g - d;
  if (!cone_) return base_.chain_string(g, s, v);
  const std::size_t nx = base_.word_count(g, s);
  BitVec x(nx), y(dim(g, d) - nx);
  for (auto i : v.support()) (i < nx ? x : y).set(i < nx ? i : i - nx);
  return "(" + base_.chain_string(g, s, x) + ", " + base_.chain_string(g - 1, s, y) + ")";
}

bool FilteredCobar::preserves_filtration(int g, int d) const {
  for (std::size_t j = 0; j < dim(g, d); ++j) {
    const int f = filtration(g, d, j);
    for (auto i : column(g, d, j))
      if (filtration(g, d - 1, i) > f) return false;
  }
  return true;
}

IvanovskySS::IvanovskySS(const FilteredCobar& fc, int g_max, int d_max, bool with_reps)
    : fc_(fc), g_max_(g_max), d_max_(d_max), reps_(with_reps) {
  if (g_max > fc.base().g_max() || g_max + 1 > fc.base().s_max())
    throw std::out_of_range("spectral sequence window exceeds the cobar window");
  for (int g = 0; g <= g_max; ++g) reduce_g(g);
}

namespace {

using Col = std::vector<uint32_t>;

void xor_into(Col& a, const Col& b, Col& tmp) {
  tmp.clear();
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(tmp));
  a.swap(tmp);
}

} // namespace

void IvanovskySS::reduce_g(int g) {
  const int top = std::min(g, d_max_ + 1);
  // filtration order of each degree: position -> chain index and back
  std::vector<std::vector<uint32_t>> order(top + 1), pos(top + 1);
  for (int d = 0; d <= top; ++d) {
    const std::size_t n = fc_.dim(g, d);
    auto& el = elems_[{g, d}];
    el.resize(n);
    for (std::size_t j = 0; j < n; ++j) el[j].f = fc_.filtration(g, d, j);
    order[d].resize(n);
    std::iota(order[d].begin(), order[d].end(), 0u);
    std::stable_sort(order[d].begin(), order[d].end(),
                     [&](uint32_t a, uint32_t b) { return el[a].f < el[b].f; });
    pos[d].resize(n);
    for (std::size_t p = 0; p < n; ++p) pos[d][order[d][p]] = static_cast<uint32_t>(p);
  }
  auto to_bitvec = [&](int d, const Col& c) {
    BitVec v(fc_.dim(g, d));
    for (auto p : c) v.set(order[d][p]);
    return v;
  };
  std::vector<char> cleared(fc_.dim(g, top), 0);
  Col tmp;
  for (int d = top; d >= 0; --d) {
    auto& el = elems_[{g, d}];
    const std::size_t n = el.size();
    std::vector<char> next_cleared(d > 0 ? fc_.dim(g, d - 1) : 0, 0);
    std::vector<int64_t> pivot(next_cleared.size(), -1);
    std::vector<Col> red, vs;
    for (std::size_t p = 0; p < n; ++p) {
      const uint32_t j = order[d][p];
      if (cleared[j]) continue;
      Col v{static_cast<uint32_t>(p)};
      Col c;
      if (d > 0) {
        for (auto i : fc_.column(g, d, j)) c.push_back(pos[d - 1][i]);
        std::sort(c.begin(), c.end());
      }
      while (!c.empty() && pivot[c.back()] >= 0) {
        const auto k = pivot[c.back()];
        xor_into(c, red[k], tmp);
        if (reps_) xor_into(v, vs[k], tmp);
      }
      if (c.empty()) {
        el[j].kind = Kind::permanent;
        el[j].gap = kInfinity;
        if (reps_) el[j].rep = to_bitvec(d, v);
        continue;
      }
      const uint32_t low = c.back();
      const uint32_t i = order[d - 1][low];
      auto& born = elems_[{g, d - 1}][i];
      const int gap = el[j].f - born.f;
      el[j].kind = Kind::death;
      el[j].gap = gap;
      born.kind = Kind::birth;
      born.gap = gap;
      el[j].partner = i;
      born.partner = j;
      if (reps_) {
        el[j].rep = to_bitvec(d, v);
        born.rep = to_bitvec(d - 1, c);
      }
      next_cleared[i] = 1;
      pivot[low] = static_cast<int64_t>(red.size());
      red.push_back(std::move(c));
      if (reps_) vs.push_back(std::move(v));
    }
    cleared.swap(next_cleared);
  }
}

std::map<int, std::size_t> IvanovskySS::dims(int r, int g, int d) const {
  if (g < 0 || g > g_max_ || d < 0 || d > d_max_)
    throw std::out_of_range("spot outside the spectral sequence window");
  std::map<int, std::size_t> out;
  auto it = elems_.find({g, d});
  if (it == elems_.end()) return out;
  for (const auto& e : it->second)
    if (e.kind == Kind::permanent || e.gap >= r) ++out[e.f];
  return out;
}

std::size_t IvanovskySS::dim(int r, int g, int d, int f) const {
  auto m = dims(r, g, d);
  auto it = m.find(f);
  return it == m.end() ? 0 : it->second;
}

std::size_t IvanovskySS::total_dim(int r, int g, int d) const {
  std::size_t n = 0;
  for (auto& [f, k] : dims(r, g, d)) n += k;
  return n;
}

IvanovskySS::Page IvanovskySS::page(int r) const {
  Page pg;
  pg.r = r;
  // alive chain indices per spot, in chain order
  std::map<Spot, std::vector<std::size_t>> alive;
  for (const auto& [key, el] : elems_) {
    auto [g, d] = key;
    if (d > d_max_) continue;
    for (std::size_t j = 0; j < el.size(); ++j)
      if (el[j].kind == Kind::permanent || el[j].gap >= r) alive[{g, d, el[j].f}].push_back(j);
  }
  for (const auto& [spot, js] : alive) {
    pg.dims[spot] = js.size();
    if (reps_)
      for (auto j : js) pg.reps[spot].push_back(elems_.at({spot.g, spot.d})[j].rep);
  }
  // in this basis d^r is a partial identity: a death of gap r hits its partner
  for (const auto& [spot, js] : alive) {
    if (spot.d == 0) continue;
    Spot tgt{spot.g, spot.d - 1, spot.f - r};
    auto ti = alive.find(tgt);
    if (ti == alive.end()) continue;
    F2Matrix m(ti->second.size(), js.size());
    bool any = false;
    const auto& src_el = elems_.at({spot.g, spot.d});
    for (std::size_t c = 0; c < js.size(); ++c) {
      const auto& e = src_el[js[c]];
      if (e.kind != Kind::death || e.gap != r) continue;
      auto row = std::find(ti->second.begin(), ti->second.end(), e.partner) - ti->second.begin();
      m.set(row, c);
      any = true;
    }
    if (any) pg.differentials[spot] = m;
  }
  return pg;
}

std::vector<std::string> IvanovskySS::page_tsv(int r) const {
  std::vector<std::string> out;
  Page pg = page(r);
  for (const auto& [spot, n] : pg.dims) {
    std::ostringstream line;
    line << r << '\t' << spot.g << '\t' << spot.d << '\t' << spot.f << '\t' << n << '\t';
    if (reps_) {
      const auto& reps = pg.reps.at(spot);
      for (std::size_t i = 0; i < reps.size(); ++i)
        line << (i ? "; " : "") << fc_.chain_string(spot.g, spot.d, reps[i]);
    }
    out.push_back(line.str());
  }
  return out;
}

int IvanovskySS::stable_page(int g, int d, int f) const {
  dims(1, g, d);
  int r = 1;
  for (const auto& e : elems_.at({g, d}))
    if (e.f == f && e.kind != Kind::permanent) r = std::max(r, e.gap + 1);
  return r;
}

std::map<int, std::size_t> IvanovskySS::differential_histogram() const {
  std::map<int, std::size_t> out;
  for (const auto& [key, el] : elems_)
    if (key.second <= d_max_)
      for (const auto& e : el)
        if (e.kind == Kind::birth && e.gap >= 1) ++out[e.gap];
  return out;
}

int IvanovskySS::last_differential() const {
  auto h = differential_histogram();
  return h.empty() ? 0 : h.rbegin()->first;
}

std::vector<IvanovskySS::ReportRow> IvanovskySS::einfty_report() const {
  std::vector<ReportRow> out;
  for (int g = 0; g <= g_max_; ++g)
    for (int d = 0; d <= std::min(g, d_max_); ++d) {
      ReportRow row{g, d, {}, {}, 0, 0};
      for (const auto& e : elems_.at({g, d})) {
        if (e.kind == Kind::permanent) {
          ++row.einfty[e.f];
          ++row.total;
        }
        row.stable.try_emplace(e.f, 1);
      }
      for (auto& [f, r] : row.stable) r = stable_page(g, d, f);
      row.cotor = fc_.homology_dim(g, d);
      if (row.total || row.cotor) out.push_back(row);
    }
  return out;
}

} // namespace stab
