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

#include <map>

#include "doctest.h"
#include "hiqp/circuit.hpp"
#include "hiqp/phase_poly.hpp"
#include "test_helpers.hpp"

using namespace hiqp;

TEST_CASE("gate factories validate support") {
  Circuit c(4);
  CHECK_THROWS(c.append(Gate::cz(0, 4)));
  CHECK_THROWS(c.append(Gate{GateKind::CkZ, {1, 0}, 0}));  // unsorted
  CHECK_THROWS(c.append(Gate{GateKind::Cnot, {2, 2}, 0}));
  CHECK_THROWS(c.append(Gate::perm({0, 1, 1, 2})));  // not a bijection
  c.append(Gate::perm({0, 1, 1, 0}));
  c.append(Gate::ccz(3, 1, 0));
  CHECK(c.gates()[1].qubits == std::vector<std::uint32_t>{0, 1, 3});
  CHECK(c.degree() == 3);
}

TEST_CASE("serialization round trip") {
  Circuit c(5);
  c.append(Gate::z(2));
  c.append(Gate::cz(0, 3));
  c.append(Gate::ccz(1, 2, 4));
  c.append(Gate::cnot(3, 0));
  c.append(Gate::swap(1, 2));
  c.append(Gate::perm({0, 1, 1, 2, 2, 0}));
  c.append(Gate::h(4));
  c.append(Gate::rz4(0, 7));
  c.append(Gate::rzz4(2, 3, 2));
  c.append(Gate::pauli_x(1));
  c.append(Gate::noise_marker());
  auto text = c.serialize();
  auto back = Circuit::deserialize(text);
  CHECK(back == c);
  CHECK(back.serialize() == text);
  CHECK_THROWS(Circuit::deserialize("CZ 0 1\n"));      // missing header
  CHECK_THROWS(Circuit::deserialize("WIDTH 2\nQQ 0")); // unknown op
}

TEST_CASE("uniform IQP ensemble: determinism and gate membership") {
  auto a = build_uniform_iqp(6, 3, 123);
  auto b = build_uniform_iqp(6, 3, 123);
  CHECK(a == b);
  CHECK(a.serialize() == b.serialize());
  CHECK(build_uniform_iqp(6, 3, 124) != a);

  // n=2, D=2: gates drawn from {Z0, Z1, CZ01}
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto c = build_uniform_iqp(2, 2, seed);
    for (const auto& g : c.gates()) {
      CHECK(g.kind == GateKind::CkZ);
      CHECK(g.qubits.size() <= 2);
    }
  }
  // n=1, D=1: empty or a single Z
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto c = build_uniform_iqp(1, 1, seed);
    CHECK(c.gates().size() <= 1);
  }
  CHECK_THROWS(build_uniform_iqp(2, 3, 0));
}

TEST_CASE("uniform IQP: mean gate count n=3 D=3 is 3.5") {
  // 7 subsets, each present with probability 1/2
  const int kSeeds = 100000;
  double sum = 0;
  for (int s = 0; s < kSeeds; ++s) sum += double(build_uniform_iqp(3, 3, s).gate_count());
  double mean = sum / kSeeds;
  double sigma = std::sqrt(7.0 / 4.0 / kSeeds);
  CHECK(std::abs(mean - 3.5) < 3 * sigma);
}

TEST_CASE("uniform IQP: per-degree counts are Binomial(subsets, 1/2)") {
  const std::uint32_t n = 5, D = 2;
  const int kSeeds = 100000;
  // count histogram per degree
  std::map<int, int> hist1, hist2;
  for (int s = 0; s < kSeeds; ++s) {
    auto c = build_uniform_iqp(n, D, 777000 + s);
    int c1 = 0, c2 = 0;
    for (const auto& g : c.gates()) (g.qubits.size() == 1 ? c1 : c2)++;
    hist1[c1]++;
    hist2[c2]++;
  }
  auto chi2_vs_binomial = [&](std::map<int, int>& hist, int m) {
    // expected counts; merge bins with expectation < 5 into neighbors
    std::vector<double> expected(m + 1), observed(m + 1, 0);
    double comb = 1;
    for (int k = 0; k <= m; ++k) {
      expected[k] = comb * std::pow(0.5, m) * kSeeds;
      comb = comb * (m - k) / (k + 1);
    }
    for (auto& [k, c] : hist) observed[k] = c;
    double chi2 = 0;
    int bins = 0;
    double eacc = 0, oacc = 0;
    for (int k = 0; k <= m; ++k) {
      eacc += expected[k];
      oacc += observed[k];
      if (eacc >= 5) {
        chi2 += (oacc - eacc) * (oacc - eacc) / eacc;
        ++bins;
        eacc = oacc = 0;
      }
    }
    if (eacc > 0) {
      chi2 += (oacc - eacc) * (oacc - eacc) / eacc;
      ++bins;
    }
    return std::pair{chi2, bins - 1};
  };
  auto [c1, dof1] = chi2_vs_binomial(hist1, 5);
  auto [c2, dof2] = chi2_vs_binomial(hist2, 10);
  CHECK(c1 < testing::chi2_crit_p01(dof1));
  CHECK(c2 < testing::chi2_crit_p01(dof2));
}

TEST_CASE("sparse IQP ensemble") {
  CHECK(build_sparse_iqp(4, 0, 1).gates().empty());
  CHECK_THROWS(build_sparse_iqp(1, 3, 0));

  // n=2, single layer: pair is always (0,1); 8 equally likely gate subsets
  const int kSeeds = 80000;
  std::map<std::string, int> hist;
  for (int s = 0; s < kSeeds; ++s) {
    auto c = build_sparse_iqp(2, 1, s);
    auto markers = c.noise_marker_positions();
    REQUIRE(markers.size() == 1);
    CHECK(markers[0] == c.gates().size() - 1);
    std::string key;
    for (const auto& g : c.gates())
      if (g.kind == GateKind::CkZ) {
        key += g.qubits.size() == 2 ? "C" : (g.qubits[0] == 0 ? "a" : "b");
        for (auto q : g.qubits) CHECK(q < 2);
      }
    hist[key]++;
  }
  CHECK(hist.size() == 8);
  double chi2 = 0;
  for (auto& [k, c] : hist) {
    double e = kSeeds / 8.0;
    chi2 += (c - e) * (c - e) / e;
  }
  CHECK(chi2 < testing::chi2_crit_p01(7));

  // layer count and markers
  auto c = build_sparse_iqp(8, 25, 9);
  CHECK(c.noise_marker_positions().size() == 25);
}

namespace {

int count_transversal_cnots(const Circuit& c, std::uint32_t m) {
  int k = 0;
  for (const auto& g : c.gates())
    if (g.kind == GateKind::Cnot && g.qubits[0] / m != g.qubits[1] / m) ++k;
  return k;
}

}  // namespace

TEST_CASE("hIQP generator structure") {
  HiqpSpec spec;
  spec.degree = 3;
  spec.hyperdim = 1;
  spec.hyperdepth = 1;
  spec.include_in_block_cnots = false;
  auto c = build_hiqp(spec, 5);
  CHECK(c.width() == 6);
  // one edge, m = 3 transversal CNOTs
  CHECK(count_transversal_cnots(c, 3) == 3);
  // random diagonal gates appear both before and after the CNOT layer
  std::size_t first_cnot = 0, last_cnot = 0;
  for (std::size_t i = 0; i < c.gates().size(); ++i)
    if (c.gates()[i].kind == GateKind::Cnot) {
      if (!first_cnot) first_cnot = i;
      last_cnot = i;
    }
  bool diag_before = false, diag_after = false;
  for (std::size_t i = 0; i < first_cnot; ++i) diag_before |= c.gates()[i].is_diagonal();
  for (std::size_t i = last_cnot + 1; i < c.gates().size(); ++i)
    diag_after |= c.gates()[i].is_diagonal();
  CHECK(diag_before);
  CHECK(diag_after);

  // hypercube dimension 2: 4 edges in 2 direction classes
  spec.hyperdim = 2;
  auto c2 = build_hiqp(spec, 5);
  CHECK(c2.width() == 12);
  CHECK(count_transversal_cnots(c2, 3) == 4 * 3);

  // determinism
  CHECK(build_hiqp(spec, 5) == c2);
  CHECK(build_hiqp(spec, 6) != c2);

  // in-block CNOTs stay within blocks
  spec.include_in_block_cnots = true;
  auto c3 = build_hiqp(spec, 11);
  for (const auto& g : c3.gates())
    if (g.kind == GateKind::Cnot && g.qubits[0] / 3 == g.qubits[1] / 3)
      CHECK(g.qubits[0] / 3 == g.qubits[1] / 3);

  HiqpSpec bad;
  bad.hyperdim = 0;
  CHECK_THROWS(bad.validate());
  HiqpSpec bad2;
  bad2.degree = 4;
  bad2.qubits_per_block = 3;
  CHECK_THROWS(bad2.validate());
}

TEST_CASE("target-conditioned variant emits top gate deterministically") {
  HiqpSpec spec;
  spec.degree = 3;
  spec.hyperdim = 1;
  spec.hyperdepth = 2;
  spec.include_in_block_cnots = false;
  spec.target_conditioned = true;
  auto c = build_hiqp(spec, 3);
  // no single-qubit Z anywhere except after the last transversal layer
  std::size_t last_cnot = 0;
  for (std::size_t i = 0; i < c.gates().size(); ++i)
    if (c.gates()[i].kind == GateKind::Cnot) last_cnot = i;
  for (std::size_t i = 0; i < last_cnot; ++i)
    if (c.gates()[i].kind == GateKind::CkZ) CHECK(c.gates()[i].qubits.size() >= 2);
}

TEST_CASE("phase polynomial: cancellation and degree") {
  PhasePolynomial p(4);
  p.toggle({0, 1});
  p.toggle({0, 1});
  CHECK(p.term_count() == 0);
  p.toggle({2});
  p.toggle({0, 1, 3});
  CHECK(p.degree() == 3);
  CHECK(p.contains({3, 1, 0}));
  // x^2 = x collapse
  std::vector<std::uint32_t> dup{1, 1, 2};
  p.toggle(dup);
  CHECK(p.contains({1, 2}));
}

TEST_CASE("effective polynomial: no CNOTs reduces to mod-2 union of supports") {
  Circuit c(3);
  c.append(Gate::cz(0, 1));
  c.append(Gate::z(2));
  c.append(Gate::cz(0, 1));
  c.append(Gate::ccz(0, 1, 2));
  auto eff = effective_phase_polynomial(c);
  CHECK(eff.poly.term_count() == 2);
  CHECK(eff.poly.contains({2}));
  CHECK(eff.poly.contains({0, 1, 2}));
  CHECK(eff.linear_map == BitMat::identity(3));
}

TEST_CASE("effective polynomial: CZ conjugated through CNOT") {
  // CZ(0,1) then CNOT(0 -> 1): x0 x1 becomes x0 (x0 + x1) = x0 + x0 x1
  Circuit c(2);
  c.append(Gate::cz(0, 1));
  c.append(Gate::cnot(0, 1));
  auto eff = effective_phase_polynomial(c);
  CHECK(eff.poly.term_count() == 2);
  CHECK(eff.poly.contains({0}));
  CHECK(eff.poly.contains({0, 1}));
}

TEST_CASE("effective polynomial: degree-2 adjacency transforms as M^T A M") {
  Rng rng(21);
  const std::uint32_t n = 6;
  for (int trial = 0; trial < 25; ++trial) {
    // random degree-2 circuit followed by random CNOT circuit
    Circuit c(n);
    BitMat adj(n, n);
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = i + 1; j < n; ++j)
        if (rng.bit()) {
          c.append(Gate::cz(i, j));
          adj.set(i, j, true);
          adj.set(j, i, true);
        }
    Circuit lin(n);
    for (int g = 0; g < 8; ++g) {
      std::uint32_t a = std::uint32_t(rng.below(n));
      std::uint32_t b = std::uint32_t(rng.below(n - 1));
      if (b >= a) ++b;
      lin.append(Gate::cnot(a, b));
    }
    c.append(lin);
    auto eff = effective_phase_polynomial(c);
    // build the linear matrix M of the CNOT circuit: basis action x -> Mx
    BitMat m = BitMat::identity(n);
    for (const auto& g : lin.gates()) {
      // row t += row c
      m.row_xor(g.qubits[1], g.qubits[0]);
    }
    auto minv = m.inverse();
    REQUIRE(minv.has_value());
    // f(M^{-1} x): quadratic part has adjacency (M^{-1})^T A (M^{-1})
    BitMat expect = minv->transpose().mul(adj).mul(*minv);
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = i + 1; j < n; ++j) {
        bool present = eff.poly.contains({i, j});
        CHECK(present == expect.get(i, j));
      }
    CHECK(eff.linear_map == m);
  }
}

TEST_CASE("effective polynomial is idempotent (canonical)") {
  Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    auto c = testing::random_diag_linear_circuit(5, 12, rng);
    auto eff = effective_phase_polynomial(c);
    auto again = effective_phase_polynomial(eff.poly.to_circuit());
    CHECK(again.poly == eff.poly);
    CHECK(again.linear_map == BitMat::identity(5));
  }
}

TEST_CASE("effective polynomial rejects non-diagonal gates") {
  Circuit c(2);
  c.append(Gate::h(0));
  CHECK_THROWS(effective_phase_polynomial(c));
}

TEST_CASE("hypergraph view") {
  PhasePolynomial p(4);
  auto h0 = hypergraph_of(p);
  CHECK(h0.num_vertices == 4);
  CHECK(h0.edges.empty());
  p.toggle({0, 1, 2});
  p.toggle({3});
  auto h = hypergraph_of(p);
  CHECK(h.edges.size() == 1);
  CHECK(h.edges[0] == std::vector<std::uint32_t>{0, 1, 2});
  CHECK(h.vertex_weights[3] == 1);
  CHECK(h.to_json() ==
        "{\"vertices\": 4, \"edges\": [[0, 1, 2]], \"vertex_weights\": [0, 0, 0, 1]}");
}
