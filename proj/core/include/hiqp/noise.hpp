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

#ifndef HIQP_NOISE_HPP
#define HIQP_NOISE_HPP

#include <cstdint>
#include <vector>

#include "hiqp/circuit.hpp"
#include "hiqp/tableau.hpp"

namespace hiqp {

/// Single-qubit Pauli channel rates.
struct NoiseChannel {
  double px = 0, py = 0, pz = 0;
  double total() const { return px + py + pz; }
  bool trivial() const { return total() <= 0; }
  static NoiseChannel depolarizing(double p) { return {p / 3, p / 3, p / 3}; }
  static NoiseChannel dephasing(double p) { return {0, 0, p}; }
};

/// Circuit-level Pauli noise. Channels attach per gate class to the qubits a
/// gate touches (one independent draw per involved qubit), plus an optional
/// all-qubit channel at NOISE markers.
struct PauliNoise {
  NoiseChannel gate1;   // single-qubit gates (rotations)
  NoiseChannel gate2;   // two-qubit gates and wider entangling supports
  NoiseChannel move;    // SWAP/PERM relabelings (atom transport)
  NoiseChannel marker;  // applied to every qubit at NOISE markers
  /// Depolarizing with per-qubit rate p after every gate on the touched
  /// qubits; one- and two-qubit gate fidelities come out as 1-p and 1-2p.
  static PauliNoise depolarizing_after_gates(double p) {
    PauliNoise m;
    m.gate1 = m.gate2 = NoiseChannel::depolarizing(p);
    return m;
  }
  /// One-qubit gate fidelity 1 - p/10, two-qubit gate fidelity 1 - p.
  static PauliNoise encoded_gate_noise(double p) {
    PauliNoise m;
    m.gate1 = NoiseChannel::depolarizing(p / 10);
    m.gate2 = NoiseChannel::depolarizing(p / 2);
    return m;
  }
  /// Perfect single-qubit gates; two-qubit gates with fidelity 1 - p
  /// realized as independent depolarizing channels on the affected sites.
  static PauliNoise two_qubit_gate_noise(double p) {
    PauliNoise m;
    m.gate2 = NoiseChannel::depolarizing(p / 2);
    return m;
  }
  /// Channel applied at NOISE markers only (the sparse-circuit model).
  static PauliNoise at_markers(NoiseChannel c) {
    PauliNoise m;
    m.marker = c;
    return m;
  }
  void validate() const;
};

/// One concrete draw of Pauli faults: (location, qubit, pauli) triples where
/// location is the gate index the fault follows.
struct NoiseRealization {
  struct Event {
    std::uint32_t location;
    std::uint32_t qubit;
    std::uint8_t pauli;  // 1 = X, 2 = Y, 3 = Z
  };
  std::vector<Event> events;
};

/// Potential fault sites of a circuit under a noise model.
struct NoiseSite {
  std::uint32_t location;
  std::uint32_t qubit;
  NoiseChannel channel;
};
std::vector<NoiseSite> noise_sites(const Circuit& c, const PauliNoise& noise);

/// Independent per-site draws; deterministic given the seed and keyed by
/// (seed, site index) so evaluation order is irrelevant.
NoiseRealization sample_noise(const PauliNoise& noise, const Circuit& c, std::uint64_t seed);
NoiseRealization sample_noise(const std::vector<NoiseSite>& sites, std::uint64_t seed);

/// Full tableau evolution of |+^n> through a Clifford circuit with the given
/// fault insertions (the slow per-realization oracle).
Tableau evolve(const Circuit& c, const NoiseRealization& realization);
inline Tableau evolve(const Circuit& c) { return evolve(c, NoiseRealization{}); }

/// Net Pauli frame of a realization propagated to the end of the circuit.
/// The returned masks satisfy: noisy state = (frame) * (ideal state) up to a
/// global phase, so X-basis outcomes flip where the z-mask is set.
struct PauliFrame {
  BitVec x, z;
};
PauliFrame propagate_frame(const Circuit& c, const NoiseRealization& realization);

/// 0/1 fidelity indicator of a noise realization against the ideal circuit
/// state: 1 iff the net frame commutes with every circuit-level stabilizer.
bool frame_preserves_state(const Tableau& ideal, const PauliFrame& frame);

}  // namespace hiqp

#endif  // HIQP_NOISE_HPP
