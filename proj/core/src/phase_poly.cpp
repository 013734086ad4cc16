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

#include "hiqp/phase_poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hiqp {

Monomial Monomial::from_indices(const std::uint32_t* idx, std::size_t k) {
  if (k > kMaxDegree) throw std::invalid_argument("monomial degree exceeds cap of 8");
  Monomial m;
  for (std::size_t i = 0; i < k; ++i) {
    if (idx[i] > 0xfffeu) throw std::invalid_argument("qubit index too large for monomial");
    std::uint64_t v = idx[i];
    if (i < 4)
      m.lo = (m.lo & ~(0xffffull << (16 * i))) | (v << (16 * i));
    else
      m.hi = (m.hi & ~(0xffffull << (16 * (i - 4)))) | (v << (16 * (i - 4)));
  }
  return m;
}

std::size_t Monomial::degree() const {
  std::size_t k = 0;
  for (std::size_t i = 0; i < 4; ++i)
    if (((lo >> (16 * i)) & 0xffff) != 0xffff) ++k;
  for (std::size_t i = 0; i < 4; ++i)
    if (((hi >> (16 * i)) & 0xffff) != 0xffff) ++k;
  return k;
}

std::array<std::uint16_t, Monomial::kMaxDegree> Monomial::indices() const {
  std::array<std::uint16_t, kMaxDegree> out;
  for (std::size_t i = 0; i < 4; ++i) out[i] = std::uint16_t(lo >> (16 * i));
  for (std::size_t i = 0; i < 4; ++i) out[4 + i] = std::uint16_t(hi >> (16 * i));
  return out;
}

std::uint32_t PhasePolynomial::degree() const {
  std::size_t d = 0;
  for (const auto& m : terms_) d = std::max(d, m.degree());
  return std::uint32_t(d);
}

void PhasePolynomial::toggle_term(Monomial m) {
  auto it = terms_.find(m);
  if (it == terms_.end())
    terms_.insert(m);
  else
    terms_.erase(it);
}

void PhasePolynomial::toggle(const std::uint32_t* idx, std::size_t k) {
  // Normalize: sort and collapse repeats (x^2 = x).
  std::uint32_t buf[Monomial::kMaxDegree];
  if (k > Monomial::kMaxDegree) throw std::invalid_argument("monomial degree exceeds cap of 8");
  std::copy(idx, idx + k, buf);
  std::sort(buf, buf + k);
  std::size_t kk = std::unique(buf, buf + k) - buf;
  toggle_term(Monomial::from_indices(buf, kk));
}

bool PhasePolynomial::contains(const std::vector<std::uint32_t>& idx) const {
  std::vector<std::uint32_t> s = idx;
  std::sort(s.begin(), s.end());
  return terms_.count(Monomial::from_indices(s.data(), s.size())) > 0;
}

bool PhasePolynomial::eval(std::uint64_t x) const {
  bool acc = false;
  for (const auto& m : terms_) {
    auto idx = m.indices();
    bool v = true;
    for (std::size_t i = 0; i < Monomial::kMaxDegree && v; ++i) {
      if (idx[i] == 0xffff) break;
      v = (x >> idx[i]) & 1u;
    }
    acc ^= v;
  }
  return acc;
}

Circuit PhasePolynomial::to_circuit() const {
  Circuit c(n_);
  for (const auto& t : sorted_terms())
    if (!t.empty()) c.append(Gate::ckz(t));
  return c;
}

std::vector<std::vector<std::uint32_t>> PhasePolynomial::sorted_terms() const {
  std::vector<std::vector<std::uint32_t>> out;
  out.reserve(terms_.size());
  for (const auto& m : terms_) {
    std::vector<std::uint32_t> t;
    auto idx = m.indices();
    for (std::size_t i = 0; i < Monomial::kMaxDegree; ++i)
      if (idx[i] != 0xffff) t.push_back(idx[i]);
    out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

EffectivePolynomial effective_phase_polynomial(const Circuit& c) {
  const std::uint32_t n = c.width();
  // rows[i] = row i of the inverse of the linear map made of all
  // CNOT/SWAP/PERM gates after the current scan position.
  std::vector<BitVec> rows(n, BitVec(n));
  for (std::uint32_t i = 0; i < n; ++i) rows[i].set(i, true);

  PhasePolynomial poly(n);
  std::vector<std::uint16_t> sets[Monomial::kMaxDegree];

  const auto& gates = c.gates();
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
    const Gate& g = *it;
    switch (g.kind) {
      case GateKind::Noise:
        break;
      case GateKind::Cnot:
        rows[g.qubits[1]].xor_with(rows[g.qubits[0]]);
        break;
      case GateKind::Swap:
        std::swap(rows[g.qubits[0]], rows[g.qubits[1]]);
        break;
      case GateKind::Perm: {
        std::vector<BitVec> saved;
        for (std::size_t i = 0; i < g.qubits.size(); i += 2) saved.push_back(rows[g.qubits[i + 1]]);
        for (std::size_t i = 0; i < g.qubits.size(); i += 2)
          rows[g.qubits[i]] = std::move(saved[i / 2]);
        break;
      }
      case GateKind::Cp4:
        if ((g.t & 7) != 4)
          throw std::invalid_argument("effective_phase_polynomial: non-binary controlled phase");
        [[fallthrough]];  // t = 4 is a CZ
      case GateKind::CkZ: {
        const std::size_t k = g.qubits.size();
        bool dead = false;
        for (std::size_t i = 0; i < k; ++i) {
          sets[i].clear();
          const BitVec& r = rows[g.qubits[i]];
          for (std::uint32_t q = 0; q < n; ++q)
            if (r.get(q)) sets[i].push_back(std::uint16_t(q));
          if (sets[i].empty()) dead = true;
        }
        if (dead) break;
        // Expand the product of linear forms into monomials mod 2.
        std::uint32_t buf[Monomial::kMaxDegree];
        std::vector<std::size_t> pos(k, 0);
        bool done = false;
        while (!done) {
          for (std::size_t i = 0; i < k; ++i) buf[i] = sets[i][pos[i]];
          poly.toggle(buf, k);
          std::size_t lvl = k;
          for (;;) {
            if (lvl == 0) {
              done = true;
              break;
            }
            --lvl;
            if (++pos[lvl] < sets[lvl].size()) break;
            pos[lvl] = 0;
          }
        }
        break;
      }
      default:
        throw std::invalid_argument(
            "effective_phase_polynomial: circuit must contain only C^kZ, CNOT, SWAP, PERM");
    }
  }

  BitMat inv(n, n);
  for (std::uint32_t i = 0; i < n; ++i) inv.set_row(i, rows[i]);
  auto a = inv.inverse();
  if (!a) throw std::logic_error("linear part not invertible");
  return EffectivePolynomial{std::move(poly), std::move(*a)};
}

Hypergraph hypergraph_of(const PhasePolynomial& p) {
  Hypergraph h;
  h.num_vertices = p.width();
  h.vertex_weights.assign(p.width(), 0);
  for (const auto& t : p.sorted_terms()) {
    if (t.empty()) continue;
    if (t.size() == 1)
      h.vertex_weights[t[0]] = 1;
    else
      h.edges.push_back(t);
  }
  return h;
}

std::string Hypergraph::to_json() const {
  std::ostringstream os;
  os << "{\"vertices\": " << num_vertices << ", \"edges\": [";
  for (std::size_t i = 0; i < edges.size(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < edges[i].size(); ++j) os << (j ? ", " : "") << edges[i][j];
    os << "]";
  }
  os << "], \"vertex_weights\": [";
  for (std::size_t i = 0; i < vertex_weights.size(); ++i)
    os << (i ? ", " : "") << unsigned(vertex_weights[i]);
  os << "]}";
  return os.str();
}

}  // namespace hiqp
