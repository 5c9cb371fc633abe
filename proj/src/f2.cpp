#include "stab/f2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace stab {

BitVec BitVec::from_string(const std::string& s) {
  BitVec v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') v.set(i);
    else if (s[i] != '0') throw std::invalid_argument("bit string: " + s);
  }
  return v;
}

BitVec& BitVec::operator^=(const BitVec& o) {
  if (o.n_ != n_) throw std::invalid_argument("BitVec size mismatch");
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
  return *this;
}

bool BitVec::operator<(const BitVec& o) const {
  if (n_ != o.n_) return n_ < o.n_;
  for (std::size_t i = 0; i < n_; ++i)
    if (get(i) != o.get(i)) return o.get(i);
  return false;
}

bool BitVec::is_zero() const {
  return std::all_of(w_.begin(), w_.end(), [](uint64_t x) { return x == 0; });
}

std::size_t BitVec::popcount() const {
  std::size_t c = 0;
  for (uint64_t x : w_) c += std::popcount(x);
  return c;
}

std::size_t BitVec::first() const {
  for (std::size_t i = 0; i < w_.size(); ++i)
    if (w_[i]) return i * 64 + std::countr_zero(w_[i]);
  return n_;
}

std::vector<std::size_t> BitVec::support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    uint64_t x = w_[i];
    while (x) {
      out.push_back(i * 64 + std::countr_zero(x));
      x &= x - 1;
    }
  }
  return out;
}

std::string BitVec::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

F2Matrix::F2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_((cols + 63) / 64), data_(rows * ((cols + 63) / 64), 0) {}

F2Matrix F2Matrix::identity(std::size_t n) {
  F2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

F2Matrix F2Matrix::from_rows(const std::vector<std::string>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  F2Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix rows");
    m.set_row(r, BitVec::from_string(rows[r]));
  }
  return m;
}

F2Matrix F2Matrix::from_bitvecs(const std::vector<BitVec>& rows, std::size_t cols) {
  F2Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
  return m;
}

BitVec F2Matrix::row(std::size_t r) const {
  BitVec v(cols_);
  std::copy(row_ptr(r), row_ptr(r) + stride_, v.words().begin());
  return v;
}

void F2Matrix::set_row(std::size_t r, const BitVec& v) {
  if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
  std::copy(v.words().begin(), v.words().end(), row_ptr(r));
}

void F2Matrix::add_row(std::size_t dst, std::size_t src, std::size_t from_word) {
  uint64_t* d = row_ptr(dst);
  const uint64_t* s = row_ptr(src);
  for (std::size_t i = from_word; i < stride_; ++i) d[i] ^= s[i];
}

void F2Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(row_ptr(a), row_ptr(a) + stride_, row_ptr(b));
}

void F2Matrix::append_row(const BitVec& v) {
  if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
  data_.insert(data_.end(), v.words().begin(), v.words().end());
  ++rows_;
}

F2Matrix F2Matrix::transpose() const {
  F2Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    const uint64_t* p = row_ptr(r);
    for (std::size_t w = 0; w < stride_; ++w) {
      uint64_t x = p[w];
      while (x) {
        std::size_t c = w * 64 + std::countr_zero(x);
        t.set(c, r);
        x &= x - 1;
      }
    }
  }
  return t;
}

F2Matrix F2Matrix::operator*(const F2Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
  F2Matrix out(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    const uint64_t* p = row_ptr(r);
    uint64_t* q = out.row_ptr(r);
    for (std::size_t w = 0; w < stride_; ++w) {
      uint64_t x = p[w];
      while (x) {
        std::size_t k = w * 64 + std::countr_zero(x);
        const uint64_t* s = o.row_ptr(k);
        for (std::size_t j = 0; j < out.stride_; ++j) q[j] ^= s[j];
        x &= x - 1;
      }
    }
  }
  return out;
}

BitVec F2Matrix::apply(const BitVec& v) const {
  if (v.size() != cols_) throw std::invalid_argument("vector length mismatch");
  BitVec out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    const uint64_t* p = row_ptr(r);
    uint64_t acc = 0;
    for (std::size_t w = 0; w < stride_; ++w) acc ^= p[w] & v.words()[w];
    if (std::popcount(acc) & 1) out.set(r);
  }
  return out;
}

bool F2Matrix::operator==(const F2Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool F2Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](uint64_t x) { return x == 0; });
}

bool F2Matrix::tail_bits_clear() const {
  if (cols_ % 64 == 0) return true;
  uint64_t mask = ~((uint64_t{1} << (cols_ % 64)) - 1);
  for (std::size_t r = 0; r < rows_; ++r)
    if (row_ptr(r)[stride_ - 1] & mask) return false;
  return true;
}

std::string F2Matrix::to_string() const {
  std::string s;
  for (std::size_t r = 0; r < rows_; ++r) s += row(r).to_string() + "\n";
  return s;
}

namespace {

// Full reduction using pivots only in columns < pivot_cols.
Echelon eliminate(F2Matrix m, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < m.rows(); ++c) {
    std::size_t w = c >> 6;
    uint64_t bit = uint64_t{1} << (c & 63);
    std::size_t p = r;
    while (p < m.rows() && !(m.row_ptr(p)[w] & bit)) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != r && (m.row_ptr(i)[w] & bit)) m.add_row(i, r, w);
    pivots.push_back(c);
    ++r;
  }
  F2Matrix red(r, m.cols());
  for (std::size_t i = 0; i < r; ++i)
    std::copy(m.row_ptr(i), m.row_ptr(i) + m.stride(), red.row_ptr(i));
  return {std::move(red), std::move(pivots)};
}

} // namespace

Echelon rref(const F2Matrix& m) { return eliminate(m, m.cols()); }

std::size_t rank(const F2Matrix& m) {
  // forward elimination only
  F2Matrix a = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t w = c >> 6;
    uint64_t bit = uint64_t{1} << (c & 63);
    std::size_t p = r;
    while (p < a.rows() && !(a.row_ptr(p)[w] & bit)) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    for (std::size_t i = r + 1; i < a.rows(); ++i)
      if (a.row_ptr(i)[w] & bit) a.add_row(i, r, w);
    ++r;
  }
  return r;
}

Subspace Subspace::span(const F2Matrix& rows) {
  Subspace s(rows.cols());
  Echelon e = rref(rows);
  s.basis_ = std::move(e.reduced);
  s.pivots_ = std::move(e.pivots);
  return s;
}

BitVec Subspace::reduce(const BitVec& v) const {
  if (v.size() != ambient_) throw std::invalid_argument("Subspace: ambient mismatch");
  BitVec out = v;
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    if (out.get(pivots_[i])) {
      const uint64_t* p = basis_.row_ptr(i);
      auto& w = out.words();
      for (std::size_t j = pivots_[i] >> 6; j < w.size(); ++j) w[j] ^= p[j];
    }
  }
  return out;
}

bool Subspace::insert(const BitVec& v) {
  BitVec red = reduce(v);
  if (red.is_zero()) return false;
  std::size_t piv = red.first();
  // clear the new pivot from existing rows, then insert in pivot order
  for (std::size_t i = 0; i < pivots_.size(); ++i)
    if (basis_.get(i, piv)) {
      uint64_t* p = basis_.row_ptr(i);
      for (std::size_t j = 0; j < basis_.stride(); ++j) p[j] ^= red.words()[j];
    }
  std::size_t pos = std::lower_bound(pivots_.begin(), pivots_.end(), piv) - pivots_.begin();
  F2Matrix nb(basis_.rows() + 1, ambient_);
  for (std::size_t i = 0, k = 0; i < nb.rows(); ++i) {
    if (i == pos) nb.set_row(i, red);
    else {
      std::copy(basis_.row_ptr(k), basis_.row_ptr(k) + basis_.stride(), nb.row_ptr(i));
      ++k;
    }
  }
  basis_ = std::move(nb);
  pivots_.insert(pivots_.begin() + pos, piv);
  return true;
}

Subspace kernel_basis(const F2Matrix& m) {
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<BitVec> vecs;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    BitVec v(m.cols());
    v.set(f);
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
      if (e.reduced.get(i, f)) v.set(e.pivots[i]);
    vecs.push_back(std::move(v));
  }
  return Subspace::span(F2Matrix::from_bitvecs(vecs, m.cols()));
}

std::optional<BitVec> solve(const F2Matrix& m, const BitVec& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: rhs length mismatch");
  F2Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t w = 0; w < m.stride(); ++w) aug.row_ptr(r)[w] = m.row_ptr(r)[w];
    if (b.get(r)) aug.set(r, m.cols());
  }
  Echelon e = eliminate(std::move(aug), m.cols());
  // consistent iff the pivot-variable assignment satisfies every row
  BitVec x(m.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i)
    if (e.reduced.get(i, m.cols())) x.set(e.pivots[i]);
  if (!(m.apply(x) == b)) return std::nullopt;
  return x;
}

bool SparseReducer::add_column(std::vector<uint32_t> col) {
  std::vector<uint32_t> tmp;
  while (!col.empty()) {
    int64_t j = pivot_of_row_[col.back()];
    if (j < 0) {
      pivot_of_row_[col.back()] = static_cast<int64_t>(cols_.size());
      cols_.push_back(std::move(col));
      return true;
    }
    const auto& other = cols_[j];
    tmp.clear();
    std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(),
                                  std::back_inserter(tmp));
    col.swap(tmp);
  }
  return false;
}

std::vector<uint32_t> SparseReducer::pivot_rows() const {
  std::vector<uint32_t> out;
  for (const auto& c : cols_) out.push_back(c.back());
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace stab
