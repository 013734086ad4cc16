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

#ifndef HIQP_CODES_HPP
#define HIQP_CODES_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hiqp/circuit.hpp"
#include "hiqp/pauli.hpp"

namespace hiqp {

/// A CSS stabilizer code block together with fixed logical representatives,
/// the physical sites that carry one rotation power each in transversal
/// diagonal patterns (singleton qubits, or qubit pairs for the
/// repetition-concatenated code), and its |+^k> encoding circuit.
struct CodeSpec {
  std::string name;
  std::uint32_t n = 0, k = 0, d = 0;
  std::vector<PauliString> stabilizers;
  std::vector<std::uint32_t> x_type_checks;  // indices into stabilizers, X-type
  std::vector<std::uint32_t> z_type_checks;  // indices into stabilizers, Z-type
  std::vector<PauliString> logical_x, logical_z;
  std::vector<std::vector<std::uint32_t>> rotation_sites;
  Circuit encoding;  // prepares logical |+^k> from |+^n>

  /// Structural invariants: generator commutation and independence, CSS
  /// purity, logical pairing, Hermitian phases. Throws on violation.
  void check() const;

  /// Is the Pauli a product of stabilizer generators (up to sign)?
  bool in_stabilizer_group(const PauliString& p) const;
  /// Commutes with every generator but lies outside the group.
  bool is_nontrivial_logical(const PauliString& p) const;
  /// Smallest weight of a nontrivial logical operator among Paulis of weight
  /// <= max_weight; 0 if none found (exhaustive enumeration).
  std::uint32_t min_logical_weight_upto(std::uint32_t max_weight) const;

  std::string to_json() const;
};

/// [[2^D, D, 2]] hypercube color code; physical qubit = vertex bitstring.
CodeSpec hypercube_code(std::uint32_t D);
/// [[15, 1, 3]] punctured Reed-Muller code.
CodeSpec reed_muller_code();
/// [[16, 3, 4]]: every qubit of [[8,3,2]] replaced by a two-qubit
/// repetition code with XX stabilizers.
CodeSpec concat_repetition(const CodeSpec& cube3);

/// Recursive two-half preparation circuit of logical |+^D> for one
/// hypercube block (same circuit as CodeSpec::encoding of hypercube_code).
Circuit encoding_circuit(std::uint32_t D);

/// Preparation of |+^{k B}> across B blocks: per-block encodings shifted.
Circuit encode_blocks(const CodeSpec& code, std::uint32_t blocks);

/// Transversal realization of one logical diagonal gate: an eighth-root
/// power per entry. Parity terms act as Rz4/Rzz4 on a rotation site; product
/// terms act as Cp4 across a cross-block qubit pair.
struct TransversalEntry {
  struct Term {
    std::vector<std::uint32_t> qubits;
    bool product = false;  // parity trigger when false
    std::uint8_t power = 0;
  };
  std::vector<Term> terms;
  Circuit to_circuit(std::uint32_t width) const;
};

/// Find rotation powers implementing the logical C^{|subset|-1}Z on a code
/// block (verified exactly on codeword cosets). Throws if no pattern exists.
TransversalEntry derive_transversal_pattern(const CodeSpec& code,
                                            const std::vector<std::uint32_t>& logical_subset);

/// General solver: target phase exponent tau(x) in Z_8 per logical basis
/// label x of `blocks` adjacent code blocks; the ansatz spans per-site
/// parity terms and, for two blocks, aligned cross-block product terms.
TransversalEntry derive_transversal_pattern(const CodeSpec& code, std::uint32_t blocks,
                                            const std::vector<std::uint8_t>& target_exponents);

/// Exact codeword-coset phase check of an entry against target exponents.
bool check_pattern_on_cosets(const CodeSpec& code, std::uint32_t blocks,
                             const TransversalEntry& entry,
                             const std::vector<std::uint8_t>& target_exponents);

/// Derivation cache used by the compiler.
class TransversalMap {
 public:
  explicit TransversalMap(const CodeSpec* code) : code_(code) {}
  const TransversalEntry& diagonal(const std::vector<std::uint32_t>& local_subset);
  /// Transversal CZ between two whole blocks of a k = 1 code.
  const TransversalEntry& cross_cz();

 private:
  const CodeSpec* code_;
  std::map<std::vector<std::uint32_t>, TransversalEntry> cache_;
  std::optional<TransversalEntry> cross_cz_;
};

/// Physical qubit permutation (PERM pairs) realizing an in-block logical
/// CNOT / SWAP on a hypercube-family block (vertex relabeling v_a ^= v_b and
/// coordinate swap respectively). `site_size` spreads the permutation over
/// rotation sites of that many qubits.
std::vector<std::uint32_t> hypercube_cnot_perm(std::uint32_t D, std::uint32_t a, std::uint32_t b,
                                               std::uint32_t site_size = 1);
std::vector<std::uint32_t> hypercube_swap_perm(std::uint32_t D, std::uint32_t a, std::uint32_t b,
                                               std::uint32_t site_size = 1);

/// Compile a logical circuit over blocks * k logical qubits onto the code.
/// In-block diagonal gates become transversal rotations, in-block CNOT/SWAP
/// become PERMs, aligned full-block CNOT runs become transversal CNOT
/// layers, and isolated inter-block CNOTs use the two-transversal-CNOT
/// gadget. Throws on gates without a mapping.
Circuit compile_logical(const Circuit& logical, const CodeSpec& code, TransversalMap& map);

/// Lookup decoder: syndrome bits (packed, low bit = first check) to a
/// minimum-weight correction; ties broken lexicographically. Syndromes
/// without an entry are rejects.
struct LookupDecoder {
  std::uint32_t num_checks = 0;
  bool correct_x_errors = false;  // true: X errors from Z-type checks
  std::unordered_map<std::uint64_t, BitVec> table;
  const BitVec* lookup(std::uint64_t syndrome) const {
    auto it = table.find(syndrome);
    return it == table.end() ? nullptr : &it->second;
  }
};

/// Enumerate errors up to max_weight. X-error decoders read Z-type checks
/// (the virtual correction before X measurement); Z-error decoders read
/// X-type checks (sample-side correction).
LookupDecoder build_lookup_decoder(const CodeSpec& code, std::uint32_t max_weight,
                                   bool correct_x_errors);

struct DecodePolicy {
  enum class Mode { Postselect, LookupCorrect, CorrectThenPostselect };
  Mode mode = Mode::Postselect;
  /// Max violated X-type checks across the whole system for Postselect.
  std::uint32_t threshold = 0;
  /// Lookup decoder enumeration weight.
  std::uint32_t max_weight = 1;
  /// CorrectThenPostselect: discard when uncorrectable-block count reaches
  /// this value (1 = plain correct-and-discard, 2 = sliding-scale).
  std::uint32_t uncorrectable_limit = 1;
};

struct ReadoutResult {
  std::vector<BitVec> logical_samples;  // kept samples only
  std::vector<std::uint32_t> violated_counts;  // per input sample
  std::uint64_t kept = 0, total = 0;
  double acceptance() const { return total ? double(kept) / double(total) : 0.0; }
};

/// Evaluate per-block X-type checks on X-basis samples, apply the policy and
/// extract logical bits as parities over the logical X supports.
ReadoutResult readout_logical(const std::vector<BitVec>& physical_samples, const CodeSpec& code,
                              const DecodePolicy& policy);

/// Every single Z fault after gate `first_location` is either detectable in
/// the final X-type syndromes or acts trivially; returns the offending
/// (location, qubit) pairs (empty = audit passed).
std::vector<std::pair<std::uint32_t, std::uint32_t>> audit_z_faults(
    const Circuit& physical, const CodeSpec& code, std::uint32_t blocks,
    std::uint32_t first_location = 0);

}  // namespace hiqp

#endif  // HIQP_CODES_HPP
