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

#ifndef HIQP_TEST_HELPERS_HPP
#define HIQP_TEST_HELPERS_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "hiqp/bits.hpp"
#include "hiqp/circuit.hpp"
#include "hiqp/rng.hpp"

namespace hiqp::testing {

/// Random circuit from the diagonal + linear family.
inline Circuit random_diag_linear_circuit(std::uint32_t n, std::size_t len, Rng& rng,
                                          std::uint32_t max_degree = 3) {
  Circuit c(n);
  for (std::size_t i = 0; i < len; ++i) {
    switch (rng.below(5)) {
      case 0: {
        std::uint32_t k = 1 + std::uint32_t(rng.below(std::min(max_degree, n)));
        std::vector<std::uint32_t> qs;
        while (qs.size() < k) {
          std::uint32_t q = std::uint32_t(rng.below(n));
          bool dup = false;
          for (auto x : qs) dup |= (x == q);
          if (!dup) qs.push_back(q);
        }
        c.append(Gate::ckz(qs));
        break;
      }
      case 1:
      case 2: {
        if (n < 2) break;
        std::uint32_t a = std::uint32_t(rng.below(n));
        std::uint32_t b = std::uint32_t(rng.below(n - 1));
        if (b >= a) ++b;
        c.append(Gate::cnot(a, b));
        break;
      }
      case 3: {
        if (n < 2) break;
        std::uint32_t a = std::uint32_t(rng.below(n));
        std::uint32_t b = std::uint32_t(rng.below(n - 1));
        if (b >= a) ++b;
        c.append(Gate::swap(a, b));
        break;
      }
      case 4: {
        // 3-cycle permutation when possible
        if (n < 3) break;
        std::uint32_t a = std::uint32_t(rng.below(n));
        std::uint32_t b = (a + 1 + std::uint32_t(rng.below(n - 1))) % n;
        std::uint32_t d = (b + 1) % n;
        if (d == a) d = (d + 1) % n;
        if (a == b || b == d || a == d) break;
        c.append(Gate::perm({a, b, b, d, d, a}));
        break;
      }
    }
  }
  return c;
}

/// Chi-square critical value at significance 0.01 (Wilson-Hilferty).
inline double chi2_crit_p01(double dof) {
  double z = 2.3263478740408408;  // Phi^{-1}(0.99)
  double t = 1.0 - 2.0 / (9.0 * dof) + z * std::sqrt(2.0 / (9.0 * dof));
  return dof * t * t * t;
}

inline BitVec to_bitvec(std::uint64_t x, std::uint32_t n) {
  BitVec v(n);
  for (std::uint32_t i = 0; i < n; ++i)
    if ((x >> i) & 1u) v.set(i, true);
  return v;
}

inline std::uint64_t from_bitvec(const BitVec& v) {
  std::uint64_t x = 0;
  for (std::uint32_t i = 0; i < v.size(); ++i)
    if (v.get(i)) x |= std::uint64_t(1) << i;
  return x;
}

}  // namespace hiqp::testing

#endif  // HIQP_TEST_HELPERS_HPP
