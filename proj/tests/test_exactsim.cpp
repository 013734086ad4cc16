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

#include <cmath>

#include "doctest.h"
#include "hiqp/exactsim.hpp"
#include "test_helpers.hpp"

using namespace hiqp;

TEST_CASE("dense gate algebra") {
  // CZ == H_t CNOT H_t
  Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    auto c = testing::random_diag_linear_circuit(3, 6, rng);
    DenseState a = DenseState::run(c);
    DenseState b = a;
    a.apply(Gate::cz(0, 2));
    b.apply(Gate::h(2));
    b.apply(Gate::cnot(0, 2));
    b.apply(Gate::h(2));
    CHECK(std::abs(a.inner(b) - cplx(1, 0)) < 1e-12);
  }
  // Rz4(2) is S: |1> picks up i
  DenseState s = DenseState::zero_state(1);
  s.apply(Gate::pauli_x(0));
  s.apply(Gate::rz4(0, 2));
  CHECK(std::abs(s.amp(1) - cplx(0, 1)) < 1e-15);
  // Rz4(4) is Z, Rz4(1) is T
  DenseState t = DenseState::zero_state(1);
  t.apply(Gate::pauli_x(0));
  t.apply(Gate::rz4(0, 1));
  CHECK(std::abs(t.amp(1) - std::polar(1.0, M_PI / 4)) < 1e-14);
  // Rzz4 phases odd parity only
  DenseState z2 = DenseState::plus_state(2);
  z2.apply(Gate::rzz4(0, 1, 4));
  CHECK(std::abs(z2.amp(0) - 0.5) < 1e-14);
  CHECK(std::abs(z2.amp(1) + 0.5) < 1e-14);
  CHECK(std::abs(z2.amp(2) + 0.5) < 1e-14);
  CHECK(std::abs(z2.amp(3) - 0.5) < 1e-14);
  // PERM {0->1, 1->2, 2->0} == SWAP(1,2) then SWAP(0,1)
  Rng rng2(5);
  for (int trial = 0; trial < 10; ++trial) {
    auto c = testing::random_diag_linear_circuit(4, 8, rng2);
    DenseState a = DenseState::run(c);
    DenseState b = a;
    a.apply(Gate::perm({0, 1, 1, 2, 2, 0}));
    b.apply(Gate::swap(1, 2));
    b.apply(Gate::swap(0, 1));
    CHECK(std::abs(a.inner(b) - cplx(1, 0)) < 1e-12);
  }
  // Pauli application matches gates
  DenseState p1 = DenseState::run(testing::random_diag_linear_circuit(3, 5, rng2));
  DenseState p2 = p1;
  p1.apply_pauli(0b101, 0b010);
  p2.apply(Gate::z(1));
  p2.apply(Gate::pauli_x(0));
  p2.apply(Gate::pauli_x(2));
  CHECK(std::abs(p1.inner(p2) - cplx(1, 0)) < 1e-12);
}

TEST_CASE("phase polynomial amplitude: trivial cases") {
  PhasePolynomial f(4);
  CHECK(phase_poly_amplitude(f, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(phase_poly_amplitude(f, 3) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("phase polynomial amplitude vs dense statevector") {
  Rng rng(99);
  for (std::uint32_t n : {3u, 6u, 10u}) {
    for (int trial = 0; trial < (n == 10 ? 3 : 10); ++trial) {
      auto c = build_uniform_iqp(n, std::min(n, 3u), rng.next());
      auto eff = effective_phase_polynomial(c);
      auto dense = DenseState::run(c).x_basis_probabilities();
      auto amps = phase_poly_amplitudes(eff.poly);
      double total = 0;
      for (std::uint64_t x = 0; x < (std::uint64_t(1) << n); ++x) {
        CHECK(std::abs(amps[x] * amps[x] - dense[x]) < 1e-12);
        // spot-check the single-amplitude path on a few points
        if (x % 37 == 0) CHECK(std::abs(phase_poly_amplitude(eff.poly, x) - amps[x]) < 1e-12);
        total += dense[x];
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("phase-polynomial soundness: circuit prepares the polynomial's phase state") {
  Rng rng(1234);
  for (std::uint32_t n : {2u, 4u, 6u}) {
    for (int trial = 0; trial < 12; ++trial) {
      auto c = testing::random_diag_linear_circuit(n, 3 * n, rng);
      auto eff = effective_phase_polynomial(c);
      auto p_circuit = DenseState::run(c).x_basis_probabilities();
      auto amps = phase_poly_amplitudes(eff.poly);
      for (std::uint64_t x = 0; x < (std::uint64_t(1) << n); ++x)
        CHECK(std::abs(p_circuit[x] - amps[x] * amps[x]) < 1e-12);
      // sign-level equality of the prepared states
      DenseState a = DenseState::run(c);
      DenseState b = DenseState::run(eff.poly.to_circuit());
      for (std::uint64_t v = 0; v < (std::uint64_t(1) << n); ++v)
        CHECK(std::abs(a.amp(v) - b.amp(v)) < 1e-12);
      // linear_map is the composed basis action of the linear gates
      BitMat composed = BitMat::identity(n);
      for (const auto& g : c.gates()) {
        if (g.kind == GateKind::Cnot) {
          composed.row_xor(g.qubits[1], g.qubits[0]);
        } else if (g.kind == GateKind::Swap) {
          composed.swap_rows(g.qubits[0], g.qubits[1]);
        } else if (g.kind == GateKind::Perm) {
          std::vector<BitVec> saved;
          for (std::size_t i = 0; i < g.qubits.size(); i += 2)
            saved.push_back(composed.row(g.qubits[i]));
          for (std::size_t i = 0; i < g.qubits.size(); i += 2)
            composed.set_row(g.qubits[i + 1], saved[i / 2]);
        }
      }
      CHECK(eff.linear_map == composed);
    }
  }
}

TEST_CASE("uniform degree-2 XEB at n=3 is exactly 1.75 (exhaustive)") {
  auto est = uniform_iqp_xeb_bruteforce(3, 2, 0, 0);
  CHECK(est.samples == 64);  // one coin per subset of size <= 2, 2^6 circuits
  CHECK(est.value == doctest::Approx(2.0 - std::pow(2.0, -2.0)).epsilon(1e-12));
}

TEST_CASE("uniform XEB n=1 is 1") {
  auto est = uniform_iqp_xeb_bruteforce(1, 1, 0, 0);
  CHECK(est.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("uniform degree-3 XEB Monte Carlo matches 2 - 2^{1-n}") {
  auto est = uniform_iqp_xeb_bruteforce(6, 3, 400, 11);
  double expect = 2.0 - std::pow(2.0, -5.0);
  CHECK(std::abs(est.value - expect) < 3 * est.std_error + 1e-9);
}
