#pragma once

// Dense bit-packed matrices over GF(2). Rows are stored as runs of 64-bit
// words; bits past `cols` in the last word of a row are always zero.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "khrank/error.hpp"

namespace khrank::gf2 {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_((cols + kWordBits - 1) / kWordBits), data_(rows * stride_, 0) {}

  static BitMatrix identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return stride_; }

  bool get(std::size_t r, std::size_t c) const { return (data_[r * stride_ + c / kWordBits] >> (c % kWordBits)) & 1U; }

  void set(std::size_t r, std::size_t c, bool v) {
    Word& w = data_[r * stride_ + c / kWordBits];
    const Word bit = Word{1} << (c % kWordBits);
    w = v ? (w | bit) : (w & ~bit);
  }

  void flip(std::size_t r, std::size_t c) { data_[r * stride_ + c / kWordBits] ^= Word{1} << (c % kWordBits); }

  std::span<Word> row(std::size_t r) { return {data_.data() + r * stride_, stride_}; }
  std::span<const Word> row(std::size_t r) const { return {data_.data() + r * stride_, stride_}; }

  /// row(dst) ^= row(src)
  void add_row(std::size_t dst, std::size_t src) {
    Word* d = data_.data() + dst * stride_;
    const Word* s = data_.data() + src * stride_;
    for (std::size_t k = 0; k < stride_; ++k) d[k] ^= s[k];
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(data_.begin() + static_cast<std::ptrdiff_t>(a * stride_),
                     data_.begin() + static_cast<std::ptrdiff_t>((a + 1) * stride_),
                     data_.begin() + static_cast<std::ptrdiff_t>(b * stride_));
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Word w) { return w == 0; });
  }

  std::size_t popcount() const {
    std::size_t n = 0;
    for (Word w : data_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> data_;
};

inline BitMatrix transpose(const BitMatrix& m) {
  BitMatrix t(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    for (std::size_t w = 0; w < row.size(); ++w) {
      Word bits = row[w];
      while (bits) {
        const std::size_t c = w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
        t.set(c, r, true);
        bits &= bits - 1;
      }
    }
  }
  return t;
}

/// Rank by row reduction on a private copy. Columns are scanned word by word;
/// within a word the lowest set bit of the pivot row picks the pivot column.
inline std::size_t rank(const BitMatrix& input) {
  if (input.rows() == 0 || input.cols() == 0) return 0;
  // Reduce the orientation with fewer columns per row to keep rows short.
  BitMatrix m = input.cols() > input.rows() ? transpose(input) : input;
  const std::size_t rows = m.rows();
  const std::size_t stride = m.words_per_row();
  std::size_t pivot_row = 0;
  for (std::size_t w = 0; w < stride && pivot_row < rows; ++w) {
    for (std::size_t bit = 0; bit < kWordBits && pivot_row < rows; ++bit) {
      const Word mask = Word{1} << bit;
      std::size_t found = pivot_row;
      while (found < rows && !(m.row(found)[w] & mask)) ++found;
      if (found == rows) continue;
      m.swap_rows(pivot_row, found);
      const Word* p = m.row(pivot_row).data();
      for (std::size_t r = pivot_row + 1; r < rows; ++r) {
        Word* q = m.row(r).data();
        if (q[w] & mask)
          for (std::size_t k = w; k < stride; ++k) q[k] ^= p[k];
      }
      ++pivot_row;
    }
  }
  return pivot_row;
}

inline BitMatrix mul(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.rows())
    throw Error("GF(2) product dimension mismatch: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  BitMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto dst = out.row(r);
    auto arow = a.row(r);
    for (std::size_t w = 0; w < arow.size(); ++w) {
      Word bits = arow[w];
      while (bits) {
        const std::size_t k = w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
        auto src = b.row(k);
        for (std::size_t j = 0; j < dst.size(); ++j) dst[j] ^= src[j];
        bits &= bits - 1;
      }
    }
  }
  return out;
}

}  // namespace khrank::gf2
