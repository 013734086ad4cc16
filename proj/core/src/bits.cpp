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

#include "hiqp/bits.hpp"

namespace hiqp {

BitVec BitMat::mul(const BitVec& x) const {
  assert(x.size() == cols_);
  BitVec y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    const Word* row = row_data(r);
    Word acc = 0;
    for (std::size_t k = 0; k < stride_; ++k) acc ^= row[k] & x.word(k);
    if (std::popcount(acc) & 1u) y.set(r, true);
  }
  return y;
}

BitMat BitMat::mul(const BitMat& o) const {
  assert(cols_ == o.rows_);
  BitMat out(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (get(r, c)) {
        Word* d = out.row_data(r);
        const Word* s = o.row_data(c);
        for (std::size_t k = 0; k < o.stride_; ++k) d[k] ^= s[k];
      }
    }
  }
  return out;
}

BitMat BitMat::transpose() const {
  BitMat t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (get(r, c)) t.set(c, r, true);
  return t;
}

namespace {

// Row-echelon reduction in place; returns pivot columns.
std::vector<std::size_t> echelon(BitMat& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && !m.get(p, c)) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != r && m.get(i, c)) m.row_xor(i, r);
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t BitMat::rank() const {
  BitMat m = *this;
  return echelon(m).size();
}

std::optional<BitMat> BitMat::inverse() const {
  assert(rows_ == cols_);
  BitMat aug(rows_, 2 * cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c)
      if (get(r, c)) aug.set(r, c, true);
    aug.set(r, cols_ + r, true);
  }
  auto pivots = echelon(aug);
  if (pivots.size() < rows_ || pivots[rows_ - 1] >= cols_) return std::nullopt;
  BitMat inv(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (aug.get(r, cols_ + c)) inv.set(r, c, true);
  return inv;
}

std::vector<BitVec> BitMat::nullspace() const {
  BitMat m = *this;
  auto pivots = echelon(m);
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<BitVec> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    BitVec v(cols_);
    v.set(free, true);
    for (std::size_t pr = 0; pr < pivots.size(); ++pr)
      if (m.get(pr, free)) v.set(pivots[pr], true);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<BitVec> BitMat::solve(const BitVec& b) const {
  assert(b.size() == rows_);
  BitMat aug(rows_, cols_ + 1);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c)
      if (get(r, c)) aug.set(r, c, true);
    if (b.get(r)) aug.set(r, cols_, true);
  }
  auto pivots = echelon(aug);
  BitVec x(cols_);
  for (std::size_t pr = 0; pr < pivots.size(); ++pr) {
    if (pivots[pr] == cols_) return std::nullopt;  // 0 = 1 row
    if (aug.get(pr, cols_)) x.set(pivots[pr], true);
  }
  return x;
}

}  // namespace hiqp
