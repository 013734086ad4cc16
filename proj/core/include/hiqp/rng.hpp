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

#ifndef HIQP_RNG_HPP
#define HIQP_RNG_HPP

#include <bit>
#include <cstdint>

namespace hiqp {

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
  // splitmix64 finalizer
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}
}  // namespace detail

/// Counter-based keyed generator. Streams derive hierarchically from a master
/// seed (master -> per-layer -> per-gate, or seed -> shot -> location), so the
/// value at any (key, counter) is independent of evaluation order and of how
/// work is scheduled across threads.
class Rng {
 public:
  Rng() : s_(detail::mix64(0)) {}
  explicit Rng(std::uint64_t seed) : s_(detail::mix64(seed ^ 0x6a09e667f3bcc909ull)) {}

  /// Derived child stream; children with distinct ids are independent.
  Rng child(std::uint64_t id) const {
    Rng r;
    r.s_ = detail::mix64(s_ ^ detail::mix64(id + 0x9e3779b97f4a7c15ull));
    return r;
  }
  Rng child(std::uint64_t a, std::uint64_t b) const { return child(a).child(b); }

  /// Stateless access: the counter-th word of this stream.
  std::uint64_t at(std::uint64_t counter) const {
    return detail::mix64(s_ + counter * 0xd1342543de82ef95ull);
  }

  // Stateful convenience drawing counter 0,1,2,...
  std::uint64_t next() { return at(ctr_++); }
  bool bit() { return next() >> 63; }
  /// Uniform double in [0, 1).
  double unit() { return double(next() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [0, bound); bound >= 1.
  std::uint64_t below(std::uint64_t bound) {
    // rejection sampling on the top bits, unbiased
    std::uint64_t mask = ~std::uint64_t(0);
    if (bound > 1) {
      int bits = 64 - std::countl_zero(bound - 1);
      mask = (bits >= 64) ? ~std::uint64_t(0) : ((std::uint64_t(1) << bits) - 1);
    } else {
      return 0;
    }
    for (;;) {
      std::uint64_t v = next() & mask;
      if (v < bound) return v;
    }
  }
  bool bernoulli(double p) { return unit() < p; }

  std::uint64_t state() const { return s_; }

 private:
  std::uint64_t s_;
  std::uint64_t ctr_ = 0;
};

}  // namespace hiqp

#endif  // HIQP_RNG_HPP
