#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace stab {

// Packed bit vector over F2.
class BitVec {
public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  static BitVec from_string(const std::string& s); // "0110"

  std::size_t size() const { return n_; }
  bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v = true) {
    if (v) w_[i >> 6] |= (uint64_t{1} << (i & 63));
    else w_[i >> 6] &= ~(uint64_t{1} << (i & 63));
  }
  void flip(std::size_t i) { w_[i >> 6] ^= (uint64_t{1} << (i & 63)); }

  BitVec& operator^=(const BitVec& o);
  bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator<(const BitVec& o) const;

  bool is_zero() const;
  std::size_t popcount() const;
  // index of the first set bit, or size() if none
  std::size_t first() const;
  std::vector<std::size_t> support() const;
  std::string to_string() const;

  const std::vector<uint64_t>& words() const { return w_; }
  std::vector<uint64_t>& words() { return w_; }

private:
  std::size_t n_ = 0;
  std::vector<uint64_t> w_;
};

// Dense row-major bit-packed matrix. Bits past cols() in each row stay zero.
class F2Matrix {
public:
  F2Matrix() = default;
  F2Matrix(std::size_t rows, std::size_t cols);

  static F2Matrix identity(std::size_t n);
  static F2Matrix from_rows(const std::vector<std::string>& rows);
  static F2Matrix from_bitvecs(const std::vector<BitVec>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t stride() const { return stride_; }

  bool get(std::size_t r, std::size_t c) const {
    return (data_[r * stride_ + (c >> 6)] >> (c & 63)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool v = true) {
    uint64_t& w = data_[r * stride_ + (c >> 6)];
    if (v) w |= (uint64_t{1} << (c & 63));
    else w &= ~(uint64_t{1} << (c & 63));
  }
  void flip(std::size_t r, std::size_t c) {
    data_[r * stride_ + (c >> 6)] ^= (uint64_t{1} << (c & 63));
  }

  uint64_t* row_ptr(std::size_t r) { return data_.data() + r * stride_; }
  const uint64_t* row_ptr(std::size_t r) const { return data_.data() + r * stride_; }
  BitVec row(std::size_t r) const;
  void set_row(std::size_t r, const BitVec& v);
  void add_row(std::size_t dst, std::size_t src, std::size_t from_word = 0);
  void swap_rows(std::size_t a, std::size_t b);
  void append_row(const BitVec& v);

  F2Matrix transpose() const;
  F2Matrix operator*(const F2Matrix& o) const;
  BitVec apply(const BitVec& v) const; // M v, v has cols() bits
  bool operator==(const F2Matrix& o) const;
  bool is_zero() const;
  bool tail_bits_clear() const;
  std::string to_string() const;

private:
  std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
  std::vector<uint64_t> data_;
};

struct Echelon {
  F2Matrix reduced;            // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots; // pivot column of each row, strictly increasing
};

// Gaussian elimination; the pivot row for each column is the lowest-indexed
// remaining row with a one there.
Echelon rref(const F2Matrix& m);
std::size_t rank(const F2Matrix& m);

// Row space of a set of vectors, kept in reduced echelon form.
class Subspace {
public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}
  static Subspace span(const F2Matrix& rows);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const F2Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  // v minus its projection along pivots; zero iff v lies in the subspace
  BitVec reduce(const BitVec& v) const;
  bool contains(const BitVec& v) const { return reduce(v).is_zero(); }
  // returns false if v was already in the span
  bool insert(const BitVec& v);

private:
  std::size_t ambient_ = 0;
  F2Matrix basis_;
  std::vector<std::size_t> pivots_;
};

Subspace kernel_basis(const F2Matrix& m);
std::optional<BitVec> solve(const F2Matrix& m, const BitVec& b);

// Column reduction for large sparse matrices where only ranks are needed.
// Columns are sorted row-index lists; pivot = largest row index.
class SparseReducer {
public:
  explicit SparseReducer(std::size_t rows) : pivot_of_row_(rows, -1) {}
  // reduces the column against earlier ones; returns true if it stays nonzero
  bool add_column(std::vector<uint32_t> col);
  std::size_t rank() const { return cols_.size(); }
  const std::vector<std::vector<uint32_t>>& reduced() const { return cols_; }
  // rows that ended up as pivots
  std::vector<uint32_t> pivot_rows() const;

private:
  std::vector<int64_t> pivot_of_row_;
  std::vector<std::vector<uint32_t>> cols_;
};

} // namespace stab
