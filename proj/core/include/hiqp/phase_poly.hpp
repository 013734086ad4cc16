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

#ifndef HIQP_PHASE_POLY_HPP
#define HIQP_PHASE_POLY_HPP

#include <array>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "hiqp/bits.hpp"
#include "hiqp/circuit.hpp"

namespace hiqp {

/// A monomial over binary variables: up to 8 sorted qubit indices packed into
/// 128 bits (unused slots hold 0xffff). The artifact only needs degrees up to
/// the Bell-sampling case D = 4; 8 is a comfortable cap.
struct Monomial {
  std::uint64_t lo = ~0ull;
  std::uint64_t hi = ~0ull;

  static constexpr std::size_t kMaxDegree = 8;

  static Monomial from_indices(const std::uint32_t* idx, std::size_t k);
  std::size_t degree() const;
  std::array<std::uint16_t, kMaxDegree> indices() const;

  bool operator==(const Monomial& o) const { return lo == o.lo && hi == o.hi; }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    std::uint64_t z = m.lo * 0x9e3779b97f4a7c15ull;
    z ^= m.hi + 0x9e3779b97f4a7c15ull + (z << 6) + (z >> 2);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    return std::size_t(z ^ (z >> 31));
  }
};

/// Boolean phase polynomial f: F_2^n -> F_2 as a set of monomials with
/// coefficient one; duplicate insertions cancel mod 2. A constant term is
/// the empty monomial (it only contributes a global phase).
class PhasePolynomial {
 public:
  PhasePolynomial() = default;
  explicit PhasePolynomial(std::uint32_t n) : n_(n) {}

  std::uint32_t width() const { return n_; }
  std::size_t term_count() const { return terms_.size(); }
  std::uint32_t degree() const;
  const std::unordered_set<Monomial, MonomialHash>& terms() const { return terms_; }

  /// XOR-toggle a monomial's coefficient.
  void toggle(const std::uint32_t* idx, std::size_t k);
  void toggle(const std::vector<std::uint32_t>& idx) { toggle(idx.data(), idx.size()); }
  void toggle_term(Monomial m);
  bool contains(const std::vector<std::uint32_t>& idx) const;

  /// Evaluate f(x) where bit i of x is x_i (n <= 64).
  bool eval(std::uint64_t x) const;

  /// Diagonal circuit realizing this polynomial (one C^{k-1}Z per term;
  /// constant terms are dropped).
  Circuit to_circuit() const;

  /// Sorted term list, for deterministic output.
  std::vector<std::vector<std::uint32_t>> sorted_terms() const;

  bool operator==(const PhasePolynomial& o) const { return n_ == o.n_ && terms_ == o.terms_; }

 private:
  std::uint32_t n_ = 0;
  std::unordered_set<Monomial, MonomialHash> terms_;
};

/// Canonical diagonal form of an IQP+CNOT circuit. The circuit prepares
/// exactly the phase state of `poly` (the linear gates fix |+^n>, so the
/// X-basis outcome distribution of the circuit equals that of poly's pure
/// diagonal circuit with no relabeling). `linear_map` is the composed
/// basis-state action x -> Ax of all CNOT/SWAP/PERM gates; operationally a
/// trailing linear layer can be traded for applying A^T to measured
/// bitstrings in classical post-processing instead.
struct EffectivePolynomial {
  PhasePolynomial poly;
  BitMat linear_map;  // invertible n x n matrix over F2
};

/// Canonical phase polynomial of a circuit with diagonal, CNOT, SWAP and PERM
/// gates only. Throws if other gates are present.
EffectivePolynomial effective_phase_polynomial(const Circuit& c);

/// Hypergraph view of a polynomial: hyperedges are the terms of degree >= 2,
/// degree-1 terms become vertex weights.
struct Hypergraph {
  std::uint32_t num_vertices = 0;
  std::vector<std::vector<std::uint32_t>> edges;
  std::vector<std::uint8_t> vertex_weights;

  std::string to_json() const;
};

Hypergraph hypergraph_of(const PhasePolynomial& p);

}  // namespace hiqp

#endif  // HIQP_PHASE_POLY_HPP
