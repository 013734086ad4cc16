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

#ifndef HIQP_CIRCUIT_HPP
#define HIQP_CIRCUIT_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hiqp/rng.hpp"

namespace hiqp {

/// Gate kinds of the circuit IR. Circuits are implicitly prepared in |+^n>
/// and measured in the X basis.
///
/// CkZ covers the whole diagonal family: support size 1 is Z, 2 is CZ,
/// 3 is CCZ and so on. Rz4/Rzz4/Cp4 carry an eighth-root power t in {0..7}:
/// Rz4 is diag(1, e^{i pi t/4}) on one qubit, Rzz4 the same phase on the
/// odd-parity subspace of a pair, Cp4 the controlled version phasing |11>
/// only (t=2 is CS, t=4 is CZ). They appear in compiled physical circuits
/// (Rz4 t=1 is T, t=2 is S, t=4 is Z). Perm relabels a subset of qubits and
/// Noise marks where a parallel noise layer applies.
enum class GateKind : std::uint8_t {
  CkZ,
  Cnot,
  Swap,
  Perm,
  H,
  Rz4,
  Rzz4,
  Cp4,
  PauliX,
  PauliY,
  Noise,
};

struct Gate {
  GateKind kind = GateKind::CkZ;
  /// Supports: CkZ sorted tuple; Cnot (control, target); Swap (a, b);
  /// Perm flattened pairs [s0, d0, s1, d1, ...] meaning the qubit at s_i
  /// moves to position d_i; Rz4/Pauli single qubit; Rzz4 pair; Noise empty.
  std::vector<std::uint32_t> qubits;
  /// Eighth-root power for Rz4/Rzz4 (mod 8).
  std::uint8_t t = 0;

  static Gate z(std::uint32_t q) { return {GateKind::CkZ, {q}, 0}; }
  static Gate cz(std::uint32_t a, std::uint32_t b);
  static Gate ccz(std::uint32_t a, std::uint32_t b, std::uint32_t c);
  static Gate ckz(std::vector<std::uint32_t> support);
  static Gate cnot(std::uint32_t c, std::uint32_t t) { return {GateKind::Cnot, {c, t}, 0}; }
  static Gate swap(std::uint32_t a, std::uint32_t b) { return {GateKind::Swap, {a, b}, 0}; }
  static Gate perm(std::vector<std::uint32_t> pairs) { return {GateKind::Perm, std::move(pairs), 0}; }
  static Gate h(std::uint32_t q) { return {GateKind::H, {q}, 0}; }
  static Gate rz4(std::uint32_t q, std::uint8_t t) { return {GateKind::Rz4, {q}, std::uint8_t(t & 7)}; }
  static Gate rzz4(std::uint32_t a, std::uint32_t b, std::uint8_t t) {
    return {GateKind::Rzz4, {a, b}, std::uint8_t(t & 7)};
  }
  static Gate cp4(std::uint32_t a, std::uint32_t b, std::uint8_t t) {
    return {GateKind::Cp4, {a, b}, std::uint8_t(t & 7)};
  }
  static Gate pauli_x(std::uint32_t q) { return {GateKind::PauliX, {q}, 0}; }
  static Gate pauli_y(std::uint32_t q) { return {GateKind::PauliY, {q}, 0}; }
  static Gate noise_marker() { return {GateKind::Noise, {}, 0}; }

  bool is_diagonal() const {
    return kind == GateKind::CkZ || kind == GateKind::Rz4 || kind == GateKind::Rzz4 ||
           kind == GateKind::Cp4;
  }
  bool is_linear() const {
    return kind == GateKind::Cnot || kind == GateKind::Swap || kind == GateKind::Perm;
  }
  /// True for gates the stabilizer engine accepts.
  bool is_clifford() const;

  bool operator==(const Gate& o) const = default;
};

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(std::uint32_t n) : n_(n) {}

  std::uint32_t width() const { return n_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::vector<Gate>& gates() { return gates_; }

  void append(Gate g);
  void append(const Circuit& other);  // same width

  /// Max diagonal-gate arity present (0 for an empty circuit).
  std::uint32_t degree() const;
  std::size_t gate_count() const;  // excludes noise markers
  bool is_clifford() const;
  /// Only diagonal + linear gates (the IQP+CNOT family).
  bool is_diagonal_linear() const;
  /// Gate indices after which a marked noise layer applies.
  std::vector<std::size_t> noise_marker_positions() const;

  std::string serialize() const;
  static Circuit deserialize(const std::string& text);

  std::uint64_t content_hash() const;

  bool operator==(const Circuit& o) const = default;

 private:
  std::uint32_t n_ = 0;
  std::vector<Gate> gates_;
};

/// Ensemble parameters for hypercube IQP circuits: blocks of m logical
/// qubits sit on the 2^hyperdim vertices of a hypercube and are coupled by
/// transversal CNOTs along its edges for `hyperdepth` rounds.
struct HiqpSpec {
  std::uint32_t degree = 3;           // max diagonal arity D
  std::uint32_t hyperdim = 2;         // hypercube dimension
  std::uint32_t hyperdepth = 1;       // number of hypercube layers
  std::uint32_t qubits_per_block = 0; // m; defaults to degree when 0
  bool include_in_block_cnots = true;
  /// Orientation of the transversal CNOT on an edge: one coin per edge
  /// ("randomized parallel") or one coin per qubit pair.
  bool orient_per_pair = false;
  /// Variant where random IQP gates land on a block only if it was a CNOT
  /// target in the previous layer, the top gate is applied deterministically
  /// and Z gates only appear in the final layer.
  bool target_conditioned = false;

  std::uint32_t m() const { return qubits_per_block ? qubits_per_block : degree; }
  std::uint32_t blocks() const { return 1u << hyperdim; }
  std::uint32_t width() const { return m() * blocks(); }
  void validate() const;
};

/// Uniform degree-D IQP ensemble: every C^{k-1}Z, k <= D, on every k-subset
/// with an independent fair coin.
Circuit build_uniform_iqp(std::uint32_t n, std::uint32_t degree, std::uint64_t seed);

/// Sparse degree-2 ensemble: num_layers layers, each a random pair with
/// CZ/Z/Z coins, followed by a noise marker.
Circuit build_sparse_iqp(std::uint32_t n, std::uint64_t num_layers, std::uint64_t seed);

/// Logical-level hypercube IQP circuit.
Circuit build_hiqp(const HiqpSpec& spec, std::uint64_t seed);

/// Uniform random degree-D IQP circuit on an explicit qubit subset.
void append_uniform_iqp_block(Circuit& c, const std::vector<std::uint32_t>& qubits,
                              std::uint32_t degree, Rng rng);

/// Uniformly random invertible CNOT circuit on a qubit subset (uniform over
/// GL(m, 2), emitted as a CNOT sequence).
void append_uniform_cnot_block(Circuit& c, const std::vector<std::uint32_t>& qubits, Rng rng);

}  // namespace hiqp

#endif  // HIQP_CIRCUIT_HPP
