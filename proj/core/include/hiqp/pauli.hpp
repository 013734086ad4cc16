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

#ifndef HIQP_PAULI_HPP
#define HIQP_PAULI_HPP

#include <cstdint>
#include <string>

#include "hiqp/bits.hpp"

namespace hiqp {

/// n-qubit Pauli operator P = i^phase * prod_q X_q^{x_q} Z_q^{z_q}
/// (phase is an i-exponent mod 4; a Y site contributes x = z = 1 plus one
/// unit of phase).
struct PauliString {
  BitVec x, z;
  std::uint8_t phase = 0;

  PauliString() = default;
  explicit PauliString(std::size_t n) : x(n), z(n) {}

  std::size_t size() const { return x.size(); }
  std::size_t weight() const {
    std::size_t w = 0;
    for (std::size_t k = 0; k < x.num_words(); ++k)
      w += std::popcount(x.word(k) | z.word(k));
    return w;
  }
  bool is_identity() const { return x.is_zero() && z.is_zero() && phase == 0; }

  /// Parse "XXIZY" or "+XXIZY"/"-XXIZY".
  static PauliString from_label(const std::string& label);
  std::string to_label() const;

  /// this <- this * other.
  void mul_inplace(const PauliString& o) {
    std::uint32_t cross = 0;
    for (std::size_t k = 0; k < z.num_words(); ++k)
      cross += std::popcount(z.word(k) & o.x.word(k));
    phase = std::uint8_t((phase + o.phase + 2 * cross) & 3);
    x.xor_with(o.x);
    z.xor_with(o.z);
  }

  bool commutes(const PauliString& o) const {
    return !(x.dot(o.z) ^ z.dot(o.x));
  }

  /// Squares to +1 (required of stabilizer group elements).
  bool is_hermitian_involution() const {
    std::uint32_t xz = 0;
    for (std::size_t k = 0; k < x.num_words(); ++k)
      xz += std::popcount(x.word(k) & z.word(k));
    return ((phase + xz) & 1u) == 0;
  }

  /// +1 or -1 for a Hermitian Pauli (phase and Y-count must be consistent).
  int sign() const {
    std::uint32_t xz = 0;
    for (std::size_t k = 0; k < x.num_words(); ++k)
      xz += std::popcount(x.word(k) & z.word(k));
    // extract i^{-1} per Y site: remaining phase must be 0 or 2
    return ((phase + 3 * xz) & 3u) == 0 ? 1 : -1;
  }

  bool operator==(const PauliString& o) const = default;
};

}  // namespace hiqp

#endif  // HIQP_PAULI_HPP
