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

#ifndef HIQP_EXACTSIM_HPP
#define HIQP_EXACTSIM_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "hiqp/circuit.hpp"
#include "hiqp/phase_poly.hpp"

namespace hiqp {

struct CodeSpec;
struct TransversalEntry;

using cplx = std::complex<double>;

/// Full statevector on up to kMaxQubits qubits. Bit q of a basis index is the
/// value of qubit q.
class DenseState {
 public:
  static constexpr std::uint32_t kMaxQubits = 26;

  static DenseState plus_state(std::uint32_t n);
  static DenseState zero_state(std::uint32_t n);
  static DenseState from_amplitudes(std::uint32_t n, std::vector<cplx> amps);

  std::uint32_t width() const { return n_; }
  std::size_t dim() const { return amp_.size(); }
  const std::vector<cplx>& amplitudes() const { return amp_; }
  cplx amp(std::uint64_t v) const { return amp_[v]; }
  cplx& amp(std::uint64_t v) { return amp_[v]; }

  void apply(const Gate& g);
  void apply(const Circuit& c);
  /// Pauli X^x Z^z up to global phase (Z applied first).
  void apply_pauli(std::uint64_t x_mask, std::uint64_t z_mask);

  double norm() const;
  cplx inner(const DenseState& o) const;

  /// Output distribution when every qubit is measured in the X basis;
  /// index bit q = 1 means outcome -1 on qubit q.
  std::vector<double> x_basis_probabilities() const;
  /// Z-basis probabilities |amp|^2.
  std::vector<double> z_basis_probabilities() const;

  /// State prepared as circuit acting on |+^n>.
  static DenseState run(const Circuit& c);

 private:
  DenseState(std::uint32_t n, std::vector<cplx> a) : n_(n), amp_(std::move(a)) {}
  std::uint32_t n_ = 0;
  std::vector<cplx> amp_;
};

/// Amplitude <x|_X D_f |+^n> = 2^{-n} sum_z (-1)^{f(z) + x.z}, evaluated by
/// Gray-code enumeration with O(1) incremental phase updates per step.
double phase_poly_amplitude(const PhasePolynomial& f, std::uint64_t x);

/// All 2^n X-basis amplitudes of the phase state of f (a Walsh-Hadamard
/// transform of the sign vector), scaled so that squares are probabilities.
std::vector<double> phase_poly_amplitudes(const PhasePolynomial& f);

struct MonteCarloEstimate {
  double value = 0;
  double std_error = 0;
  std::uint64_t samples = 0;
};

/// Ideal XEB of the uniform degree-D ensemble, 2^{2n} E_C[p_C(x)^2] - 1,
/// by exhaustive enumeration over all gate coins (circuits = 0) or by
/// Monte-Carlo over `circuits` sampled circuits.
MonteCarloEstimate uniform_iqp_xeb_bruteforce(std::uint32_t n, std::uint32_t degree,
                                              std::uint64_t circuits, std::uint64_t seed);

/// Dense check that a transversal pattern implements the logical diagonal
/// unitary with the given eighth-root exponents (one per logical basis label
/// of `blocks` adjacent blocks) on the code space, up to a global phase.
bool verify_transversal(const CodeSpec& code, const TransversalEntry& entry, std::uint32_t blocks,
                        const std::vector<std::uint8_t>& target_exponents, double tol = 1e-10);

/// Convenience wrapper for a logical C^{|subset|-1}Z target on one block.
bool verify_transversal_ckz(const CodeSpec& code, const TransversalEntry& entry,
                            const std::vector<std::uint32_t>& logical_subset, double tol = 1e-10);

/// Dense codeword |x> of `blocks` adjacent code blocks (logical Z-basis
/// label x across blocks).
DenseState codeword_state(const CodeSpec& code, std::uint32_t blocks, std::uint64_t x);

}  // namespace hiqp

#endif  // HIQP_EXACTSIM_HPP
