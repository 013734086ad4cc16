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

#ifndef HIQP_TABLEAU_HPP
#define HIQP_TABLEAU_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "hiqp/circuit.hpp"
#include "hiqp/pauli.hpp"
#include "hiqp/rng.hpp"

namespace hiqp {

/// Stabilizer/destabilizer tableau with 64-bit packed rows. Row i < n holds
/// destabilizer i, row n + i stabilizer i; destabilizer i anticommutes with
/// stabilizer i only.
class Tableau {
 public:
  /// |+^n>: stabilizers X_i, destabilizers Z_i.
  explicit Tableau(std::uint32_t n);

  std::uint32_t width() const { return n_; }

  /// Conjugate every row by a Clifford gate. Throws on non-Clifford gates;
  /// noise markers are ignored.
  void apply(const Gate& g);
  void apply(const Circuit& c);

  /// Apply a Pauli operator to the state: rows that anticommute flip sign.
  void apply_pauli(const BitVec& x_mask, const BitVec& z_mask);
  void apply_pauli_1q(std::uint32_t q, std::uint8_t pauli);  // 1=X, 2=Y, 3=Z

  PauliString stabilizer(std::uint32_t i) const { return row_pauli(n_ + i); }
  PauliString destabilizer(std::uint32_t i) const { return row_pauli(i); }

  /// Expectation of a Pauli in the stabilizer state: +1, -1, or 0.
  int pauli_expectation(const PauliString& p) const;

  /// Measure X_q; outcome bit 0 means +1. `forced` pins the outcome on the
  /// random branch (0/1); on the deterministic branch it is ignored.
  int measure_x(std::uint32_t q, Rng& rng, int forced = -1);

  /// Debug invariant: stabilizer rows commute pairwise, destabilizer i
  /// anticommutes exactly with stabilizer i, phases stay Hermitian.
  bool check_invariants() const;

  /// Structure of the X-basis outcome distribution: the diagonal stabilizer
  /// subgroup (k generators that are X-only after Gaussian elimination on
  /// z-parts), its parity constraints, and an affine parameterization of the
  /// 2^{n-k} support.
  struct XBasisInfo {
    std::uint32_t n = 0;
    std::uint32_t k = 0;                 // number of diagonal stabilizers
    std::vector<BitVec> checks;          // k independent X-support masks
    std::vector<std::uint8_t> signs;     // expected parity per check (1 = -1 sign)
    BitVec particular;                   // one consistent outcome
    std::vector<BitVec> basis;           // n - k nullspace generators
  };
  XBasisInfo x_basis_info() const;

  static double ideal_probability(const XBasisInfo& info, const BitVec& outcome);
  static bool consistent(const XBasisInfo& info, const BitVec& outcome);

  /// Deterministic X-basis sampling keyed by (seed, shot).
  static BitVec sample_outcome(const XBasisInfo& info, const Rng& shot_rng);
  static std::vector<BitVec> sample_measurements(const XBasisInfo& info, std::uint64_t shots,
                                                 std::uint64_t seed);

 private:
  PauliString row_pauli(std::uint32_t r) const;
  void mult_rows(std::uint32_t dst, std::uint32_t src);  // row dst *= row src
  std::uint8_t row_phase(std::uint32_t r) const;
  void add_row_phase(std::uint32_t r, std::uint8_t delta);

  std::uint32_t n_ = 0;
  std::size_t words_ = 0;
  // row-major packed bits: xs_[r * words_ + w], zs_ likewise
  std::vector<Word> xs_, zs_;
  std::vector<std::uint8_t> ph_;  // i-exponent mod 4 per row

  Word* xrow(std::uint32_t r) { return xs_.data() + std::size_t(r) * words_; }
  const Word* xrow(std::uint32_t r) const { return xs_.data() + std::size_t(r) * words_; }
  Word* zrow(std::uint32_t r) { return zs_.data() + std::size_t(r) * words_; }
  const Word* zrow(std::uint32_t r) const { return zs_.data() + std::size_t(r) * words_; }

  bool get_bit(const Word* row, std::uint32_t q) const {
    return (row[q / kWordBits] >> (q % kWordBits)) & 1u;
  }
  void flip_bit(Word* row, std::uint32_t q) { row[q / kWordBits] ^= Word(1) << (q % kWordBits); }
};

/// Ideal XEB of a stabilizer state, 2^k - 1.
double ideal_xeb(const Tableau::XBasisInfo& info);

/// Exact linear XEB between two stabilizer states,
/// 2^n sum_x q(x) p(x) - 1 = 2^{k_p + k_q - rank} - 1 when the joint parity
/// system is consistent and -1 otherwise.
double xeb_exact_between(const Tableau::XBasisInfo& ideal, const Tableau::XBasisInfo& noisy);

}  // namespace hiqp

#endif  // HIQP_TABLEAU_HPP
