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

#include <set>

#include "doctest.h"
#include "hiqp/bits.hpp"
#include "hiqp/rng.hpp"

using namespace hiqp;

TEST_CASE("BitVec basics") {
  BitVec v(130);
  CHECK(v.size() == 130);
  CHECK(v.is_zero());
  v.set(0, true);
  v.set(64, true);
  v.set(129, true);
  CHECK(v.popcount() == 3);
  CHECK(v.parity());
  CHECK(v.first_set() == 0);
  v.flip(0);
  CHECK(v.first_set() == 64);
  BitVec w(130);
  w.set(64, true);
  CHECK(v.dot(w));
  v.xor_with(w);
  CHECK(v.popcount() == 1);
}

TEST_CASE("BitMat rank, inverse, solve, nullspace") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 1 + rng.below(12);
    BitMat m(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m.set(r, c, rng.bit());
    auto inv = m.inverse();
    if (inv) {
      CHECK(m.rank() == n);
      CHECK(m.mul(*inv) == BitMat::identity(n));
      CHECK(inv->mul(m) == BitMat::identity(n));
    } else {
      CHECK(m.rank() < n);
    }
    // nullspace vectors satisfy Mx = 0 and count matches rank deficiency
    auto ns = m.nullspace();
    CHECK(ns.size() == n - m.rank());
    for (const auto& x : ns) CHECK(m.mul(x).is_zero());
    // solve consistency: Mx = M y for random y must be solvable
    BitVec y(n);
    for (std::size_t i = 0; i < n; ++i) y.set(i, rng.bit());
    BitVec b = m.mul(y);
    auto x = m.solve(b);
    REQUIRE(x.has_value());
    CHECK(m.mul(*x) == b);
  }
}

TEST_CASE("Rng determinism and stream independence") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  CHECK(Rng(1).next() != Rng(2).next());
  CHECK(Rng(5).child(0).next() != Rng(5).child(1).next());
  // counter access matches sequential draws
  Rng c(9), d(9);
  for (std::uint64_t i = 0; i < 10; ++i) CHECK(c.next() == d.at(i));
}

TEST_CASE("Rng below is in range and roughly uniform") {
  Rng r(3);
  std::vector<int> counts(10, 0);
  for (int i = 0; i < 10000; ++i) ++counts[r.below(10)];
  for (int c : counts) CHECK(std::abs(c - 1000) < 200);
  CHECK(r.below(1) == 0);
}
