// Copyright 2026 The hiqpsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HIQP_BITS_HPP
#define HIQP_BITS_HPP

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hiqp {

using Word = std::uint64_t;

constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

/// Packed bit vector over F2.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), w_(words_for(n), 0) {}

  std::size_t size() const { return n_; }
  std::size_t num_words() const { return w_.size(); }

  bool get(std::size_t i) const {
    assert(i < n_);
    return (w_[i / kWordBits] >> (i % kWordBits)) & 1u;
  }
  void set(std::size_t i, bool v) {
    assert(i < n_);
    Word m = Word(1) << (i % kWordBits);
    if (v)
      w_[i / kWordBits] |= m;
    else
      w_[i / kWordBits] &= ~m;
  }
  void flip(std::size_t i) {
    assert(i < n_);
    w_[i / kWordBits] ^= Word(1) << (i % kWordBits);
  }

  void clear() { std::fill(w_.begin(), w_.end(), Word(0)); }

  Word word(std::size_t k) const { return w_[k]; }
  Word& word(std::size_t k) { return w_[k]; }
  const Word* data() const { return w_.data(); }
  Word* data() { return w_.data(); }

  void xor_with(const BitVec& o) {
    assert(o.n_ == n_);
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
  }
  void and_with(const BitVec& o) {
    assert(o.n_ == n_);
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
  }

  std::size_t popcount() const {
    std::size_t c = 0;
    for (Word w : w_) c += std::popcount(w);
    return c;
  }
  bool parity() const { return popcount() & 1u; }

  /// Parity of the AND with another vector, i.e. <this, o> over F2.
  bool dot(const BitVec& o) const {
    assert(o.n_ == n_);
    Word acc = 0;
    for (std::size_t k = 0; k < w_.size(); ++k) acc ^= w_[k] & o.w_[k];
    return std::popcount(acc) & 1u;
  }

  bool is_zero() const {
    for (Word w : w_)
      if (w) return false;
    return true;
  }
  bool any() const { return !is_zero(); }

  /// Index of the lowest set bit, or npos if zero.
  static constexpr std::size_t npos = std::size_t(-1);
  std::size_t first_set() const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k]) return k * kWordBits + std::countr_zero(w_[k]);
    return npos;
  }

  bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator!=(const BitVec& o) const { return !(*this == o); }

  std::string to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
      if (get(i)) s[i] = '1';
    return s;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Word> w_;
};

/// Dense binary matrix over F2 with word-packed rows.
class BitMat {
 public:
  BitMat() = default;
  BitMat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_(words_for(cols)), w_(rows * stride_, 0) {}

  static BitMat identity(std::size_t n) {
    BitMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return (w_[r * stride_ + c / kWordBits] >> (c % kWordBits)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool v) {
    assert(r < rows_ && c < cols_);
    Word m = Word(1) << (c % kWordBits);
    if (v)
      w_[r * stride_ + c / kWordBits] |= m;
    else
      w_[r * stride_ + c / kWordBits] &= ~m;
  }

  Word* row_data(std::size_t r) { return w_.data() + r * stride_; }
  const Word* row_data(std::size_t r) const { return w_.data() + r * stride_; }
  std::size_t row_words() const { return stride_; }

  void row_xor(std::size_t dst, std::size_t src) {
    Word* d = row_data(dst);
    const Word* s = row_data(src);
    for (std::size_t k = 0; k < stride_; ++k) d[k] ^= s[k];
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    Word* pa = row_data(a);
    Word* pb = row_data(b);
    for (std::size_t k = 0; k < stride_; ++k) std::swap(pa[k], pb[k]);
  }

  BitVec row(std::size_t r) const {
    BitVec v(cols_);
    const Word* s = row_data(r);
    for (std::size_t k = 0; k < stride_; ++k) v.word(k) = s[k];
    return v;
  }
  void set_row(std::size_t r, const BitVec& v) {
    assert(v.size() == cols_);
    Word* d = row_data(r);
    for (std::size_t k = 0; k < stride_; ++k) d[k] = v.word(k);
  }

  /// y = M x over F2.
  BitVec mul(const BitVec& x) const;
  BitMat mul(const BitMat& o) const;
  BitMat transpose() const;

  std::size_t rank() const;
  /// Inverse of a square invertible matrix. Empty optional if singular.
  std::optional<BitMat> inverse() const;
  /// Basis of the nullspace {x : Mx = 0}.
  std::vector<BitVec> nullspace() const;
  /// One solution of Mx = b, or empty optional if inconsistent.
  std::optional<BitVec> solve(const BitVec& b) const;

  bool operator==(const BitMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && w_ == o.w_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
  std::vector<Word> w_;
};

}  // namespace hiqp

#endif  // HIQP_BITS_HPP
