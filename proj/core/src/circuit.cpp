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

#include "hiqp/circuit.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hiqp/bits.hpp"

namespace hiqp {

Gate Gate::cz(std::uint32_t a, std::uint32_t b) {
  return ckz({a, b});
}

Gate Gate::ccz(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  return ckz({a, b, c});
}

Gate Gate::ckz(std::vector<std::uint32_t> support) {
  std::sort(support.begin(), support.end());
  return {GateKind::CkZ, std::move(support), 0};
}

bool Gate::is_clifford() const {
  switch (kind) {
    case GateKind::CkZ:
      return qubits.size() <= 2;
    case GateKind::Rz4:
    case GateKind::Rzz4:
      return (t & 1u) == 0;
    case GateKind::Cp4:
      return (t & 3u) == 0;
    default:
      return true;
  }
}

namespace {

void check_support(const Gate& g, std::uint32_t n) {
  for (auto q : g.qubits)
    if (q >= n) throw std::invalid_argument("gate qubit out of range");
  switch (g.kind) {
    case GateKind::CkZ: {
      if (g.qubits.empty()) throw std::invalid_argument("CkZ needs support");
      if (!std::is_sorted(g.qubits.begin(), g.qubits.end()) ||
          std::adjacent_find(g.qubits.begin(), g.qubits.end()) != g.qubits.end())
        throw std::invalid_argument("CkZ support must be sorted and distinct");
      break;
    }
    case GateKind::Cnot:
    case GateKind::Swap:
    case GateKind::Rzz4:
    case GateKind::Cp4:
      if (g.qubits.size() != 2 || g.qubits[0] == g.qubits[1])
        throw std::invalid_argument("two-qubit gate needs two distinct qubits");
      break;
    case GateKind::H:
    case GateKind::Rz4:
    case GateKind::PauliX:
    case GateKind::PauliY:
      if (g.qubits.size() != 1) throw std::invalid_argument("single-qubit gate needs one qubit");
      break;
    case GateKind::Perm: {
      if (g.qubits.empty() || g.qubits.size() % 2)
        throw std::invalid_argument("PERM needs (src, dst) pairs");
      std::set<std::uint32_t> srcs, dsts;
      for (std::size_t i = 0; i < g.qubits.size(); i += 2) {
        srcs.insert(g.qubits[i]);
        dsts.insert(g.qubits[i + 1]);
      }
      if (srcs.size() != g.qubits.size() / 2 || srcs != dsts)
        throw std::invalid_argument("PERM must be a bijection on its subset");
      break;
    }
    case GateKind::Noise:
      if (!g.qubits.empty()) throw std::invalid_argument("NOISE takes no qubits");
      break;
  }
}

}  // namespace

void Circuit::append(Gate g) {
  check_support(g, n_);
  gates_.push_back(std::move(g));
}

void Circuit::append(const Circuit& other) {
  if (other.width() != n_) throw std::invalid_argument("width mismatch");
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
}

std::uint32_t Circuit::degree() const {
  std::uint32_t d = 0;
  for (const auto& g : gates_)
    if (g.kind == GateKind::CkZ) d = std::max<std::uint32_t>(d, g.qubits.size());
  return d;
}

std::size_t Circuit::gate_count() const {
  std::size_t c = 0;
  for (const auto& g : gates_)
    if (g.kind != GateKind::Noise) ++c;
  return c;
}

bool Circuit::is_clifford() const {
  return std::all_of(gates_.begin(), gates_.end(), [](const Gate& g) { return g.is_clifford(); });
}

bool Circuit::is_diagonal_linear() const {
  return std::all_of(gates_.begin(), gates_.end(), [](const Gate& g) {
    return g.kind == GateKind::Noise ||
           (g.kind == GateKind::CkZ || g.is_linear() ||
            (g.kind == GateKind::Cp4 && (g.t & 7) == 4));
  });
}

std::vector<std::size_t> Circuit::noise_marker_positions() const {
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < gates_.size(); ++i)
    if (gates_[i].kind == GateKind::Noise) pos.push_back(i);
  return pos;
}

std::string Circuit::serialize() const {
  std::ostringstream os;
  os << "WIDTH " << n_ << "\n";
  for (const auto& g : gates_) {
    switch (g.kind) {
      case GateKind::CkZ:
        if (g.qubits.size() == 1)
          os << "Z";
        else if (g.qubits.size() == 2)
          os << "CZ";
        else if (g.qubits.size() == 3)
          os << "CCZ";
        else
          os << "CKZ";
        break;
      case GateKind::Cnot:
        os << "CNOT";
        break;
      case GateKind::Swap:
        os << "SWAP";
        break;
      case GateKind::Perm:
        os << "PERM";
        break;
      case GateKind::H:
        os << "H";
        break;
      case GateKind::Rz4:
        os << "RZ4 " << unsigned(g.t);
        break;
      case GateKind::Rzz4:
        os << "RZZ4 " << unsigned(g.t);
        break;
      case GateKind::Cp4:
        os << "CP4 " << unsigned(g.t);
        break;
      case GateKind::PauliX:
        os << "X";
        break;
      case GateKind::PauliY:
        os << "Y";
        break;
      case GateKind::Noise:
        os << "NOISE";
        break;
    }
    for (auto q : g.qubits) os << " " << q;
    os << "\n";
  }
  return os.str();
}

Circuit Circuit::deserialize(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  Circuit c;
  bool have_width = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string op;
    ls >> op;
    if (op == "WIDTH") {
      std::uint32_t n;
      if (!(ls >> n)) throw std::invalid_argument("bad WIDTH line");
      c = Circuit(n);
      have_width = true;
      continue;
    }
    if (!have_width) throw std::invalid_argument("missing WIDTH header");
    auto read_qubits = [&ls]() {
      std::vector<std::uint32_t> qs;
      std::uint32_t q;
      while (ls >> q) qs.push_back(q);
      return qs;
    };
    Gate g;
    if (op == "Z" || op == "CZ" || op == "CCZ" || op == "CKZ") {
      g = Gate::ckz(read_qubits());
    } else if (op == "CNOT" || op == "SWAP" || op == "PERM" || op == "H" || op == "X" ||
               op == "Y") {
      GateKind k = op == "CNOT"   ? GateKind::Cnot
                   : op == "SWAP" ? GateKind::Swap
                   : op == "PERM" ? GateKind::Perm
                   : op == "H"    ? GateKind::H
                   : op == "X"    ? GateKind::PauliX
                                  : GateKind::PauliY;
      g = Gate{k, read_qubits(), 0};
    } else if (op == "RZ4" || op == "RZZ4" || op == "CP4") {
      unsigned t;
      if (!(ls >> t)) throw std::invalid_argument("missing rotation power");
      auto qs = read_qubits();
      GateKind k = op == "RZ4" ? GateKind::Rz4 : (op == "RZZ4" ? GateKind::Rzz4 : GateKind::Cp4);
      g = Gate{k, std::move(qs), std::uint8_t(t & 7)};
    } else if (op == "NOISE") {
      g = Gate::noise_marker();
    } else {
      throw std::invalid_argument("unknown gate: " + op);
    }
    c.append(std::move(g));
  }
  if (!have_width) throw std::invalid_argument("missing WIDTH header");
  return c;
}

std::uint64_t Circuit::content_hash() const {
  // FNV-1a over the serialized text
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char ch : serialize()) {
    h ^= std::uint8_t(ch);
    h *= 0x100000001b3ull;
  }
  return h;
}

void HiqpSpec::validate() const {
  if (hyperdim < 1) throw std::invalid_argument("hyperdim must be >= 1");
  if (hyperdepth < 1) throw std::invalid_argument("hyperdepth must be >= 1");
  if (degree < 1) throw std::invalid_argument("degree must be >= 1");
  if (m() < 1) throw std::invalid_argument("qubits_per_block must be >= 1");
  if (degree > m()) throw std::invalid_argument("degree exceeds block size");
}

namespace {

// Lexicographic k-subset iteration over {0..n-1}.
bool next_subset(std::vector<std::uint32_t>& idx, std::uint32_t n) {
  std::uint32_t k = idx.size();
  for (std::uint32_t i = k; i-- > 0;) {
    if (idx[i] < n - (k - i)) {
      ++idx[i];
      for (std::uint32_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

Circuit build_uniform_iqp(std::uint32_t n, std::uint32_t degree, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (degree < 1 || degree > n) throw std::invalid_argument("degree must satisfy 1 <= D <= n");
  Circuit c(n);
  Rng master(seed);
  for (std::uint32_t k = 1; k <= degree; ++k) {
    Rng stream = master.child(k);
    std::vector<std::uint32_t> subset(k);
    for (std::uint32_t i = 0; i < k; ++i) subset[i] = i;
    std::uint64_t index = 0;
    do {
      if (stream.at(index) >> 63) c.append(Gate{GateKind::CkZ, subset, 0});
      ++index;
    } while (next_subset(subset, n));
  }
  return c;
}

Circuit build_sparse_iqp(std::uint32_t n, std::uint64_t num_layers, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("sparse ensemble needs n >= 2");
  Circuit c(n);
  Rng master(seed);
  for (std::uint64_t layer = 0; layer < num_layers; ++layer) {
    Rng r = master.child(layer);
    std::uint32_t a = std::uint32_t(r.below(n));
    std::uint32_t b = std::uint32_t(r.below(n - 1));
    if (b >= a) ++b;
    if (a > b) std::swap(a, b);
    if (r.bit()) c.append(Gate::cz(a, b));
    if (r.bit()) c.append(Gate::z(a));
    if (r.bit()) c.append(Gate::z(b));
    c.append(Gate::noise_marker());
  }
  return c;
}

void append_uniform_iqp_block(Circuit& c, const std::vector<std::uint32_t>& qubits,
                              std::uint32_t degree, Rng rng) {
  std::uint32_t m = qubits.size();
  std::uint32_t dmax = std::min(degree, m);
  for (std::uint32_t k = 1; k <= dmax; ++k) {
    Rng stream = rng.child(k);
    std::vector<std::uint32_t> subset(k);
    for (std::uint32_t i = 0; i < k; ++i) subset[i] = i;
    std::uint64_t index = 0;
    do {
      if (stream.at(index) >> 63) {
        std::vector<std::uint32_t> mapped(k);
        for (std::uint32_t i = 0; i < k; ++i) mapped[i] = qubits[subset[i]];
        c.append(Gate::ckz(std::move(mapped)));
      }
      ++index;
    } while (next_subset(subset, m));
  }
}

void append_uniform_cnot_block(Circuit& c, const std::vector<std::uint32_t>& qubits, Rng rng) {
  std::uint32_t m = qubits.size();
  if (m < 2) return;
  // Rejection-sample a uniform element of GL(m, 2).
  BitMat mat(m, m);
  for (;;) {
    for (std::uint32_t r = 0; r < m; ++r)
      for (std::uint32_t col = 0; col < m; ++col) mat.set(r, col, rng.bit());
    if (mat.rank() == m) break;
  }
  // Reduce to the identity with row additions (row_t += row_c corresponds to
  // CNOT(c -> t) acting as x_t ^= x_c); the gate list is the reversed op list.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> ops;
  BitMat work = mat;
  for (std::uint32_t col = 0; col < m; ++col) {
    if (!work.get(col, col)) {
      for (std::uint32_t r = 0; r < m; ++r) {
        if (r != col && work.get(r, col)) {
          work.row_xor(col, r);
          ops.emplace_back(r, col);
          break;
        }
      }
    }
    for (std::uint32_t r = 0; r < m; ++r) {
      if (r != col && work.get(r, col)) {
        work.row_xor(r, col);
        ops.emplace_back(col, r);
      }
    }
  }
  for (auto it = ops.rbegin(); it != ops.rend(); ++it)
    c.append(Gate::cnot(qubits[it->first], qubits[it->second]));
}

Circuit build_hiqp(const HiqpSpec& spec, std::uint64_t seed) {
  spec.validate();
  const std::uint32_t m = spec.m();
  const std::uint32_t nb = spec.blocks();
  Circuit c(spec.width());
  Rng master(seed);

  auto block_qubits = [&](std::uint32_t b) {
    std::vector<std::uint32_t> qs(m);
    for (std::uint32_t i = 0; i < m; ++i) qs[i] = b * m + i;
    return qs;
  };

  // Target-conditioned bookkeeping: which blocks receive random gates next.
  std::vector<bool> active(nb, true);

  auto append_block_layer = [&](Rng layer_rng, bool last_layer) {
    for (std::uint32_t b = 0; b < nb; ++b) {
      Rng br = layer_rng.child(b);
      auto qs = block_qubits(b);
      if (!spec.target_conditioned) {
        append_uniform_iqp_block(c, qs, spec.degree, br.child(0));
      } else {
        if (active[b] || last_layer) {
          // Deterministic top gate, random intermediate degrees, Z gates only
          // in the final layer.
          Rng gr = br.child(0);
          if (spec.degree >= 2 && spec.degree <= m) {
            // one C^{D-1}Z per D-subset, deterministic
            std::vector<std::uint32_t> subset(spec.degree);
            for (std::uint32_t i = 0; i < spec.degree; ++i) subset[i] = i;
            do {
              std::vector<std::uint32_t> mapped(spec.degree);
              for (std::uint32_t i = 0; i < spec.degree; ++i) mapped[i] = qs[subset[i]];
              c.append(Gate::ckz(std::move(mapped)));
            } while (next_subset(subset, m));
          }
          for (std::uint32_t k = 2; k + 1 <= spec.degree; ++k) {
            Rng stream = gr.child(k);
            std::vector<std::uint32_t> subset(k);
            for (std::uint32_t i = 0; i < k; ++i) subset[i] = i;
            std::uint64_t index = 0;
            do {
              if (stream.at(index) >> 63) {
                std::vector<std::uint32_t> mapped(k);
                for (std::uint32_t i = 0; i < k; ++i) mapped[i] = qs[subset[i]];
                c.append(Gate::ckz(std::move(mapped)));
              }
              ++index;
            } while (next_subset(subset, m));
          }
          if (last_layer) {
            Rng zs = gr.child(1);
            for (std::uint32_t i = 0; i < m; ++i)
              if (zs.at(i) >> 63) c.append(Gate::z(qs[i]));
          }
        }
      }
      if (spec.include_in_block_cnots && !last_layer)
        append_uniform_cnot_block(c, qs, br.child(1));
    }
  };

  for (std::uint32_t layer = 0; layer < spec.hyperdepth; ++layer) {
    for (std::uint32_t dir = 0; dir < spec.hyperdim; ++dir) {
      Rng lr = master.child(layer).child(dir);
      append_block_layer(lr.child(0), false);
      // Transversal CNOTs on all edges along this direction.
      std::vector<bool> next_active(nb, false);
      Rng orient = lr.child(1);
      std::uint32_t edge_id = 0;
      for (std::uint32_t v = 0; v < nb; ++v) {
        if (v & (1u << dir)) continue;
        std::uint32_t w = v | (1u << dir);
        if (!spec.orient_per_pair) {
          bool flip = orient.at(edge_id) >> 63;
          std::uint32_t cb = flip ? w : v, tb = flip ? v : w;
          for (std::uint32_t i = 0; i < m; ++i) c.append(Gate::cnot(cb * m + i, tb * m + i));
          next_active[tb] = true;
        } else {
          Rng er = orient.child(edge_id);
          for (std::uint32_t i = 0; i < m; ++i) {
            bool flip = er.at(i) >> 63;
            std::uint32_t cb = flip ? w : v, tb = flip ? v : w;
            c.append(Gate::cnot(cb * m + i, tb * m + i));
            next_active[tb] = true;
          }
        }
        ++edge_id;
      }
      active = next_active;
    }
  }
  append_block_layer(master.child(spec.hyperdepth).child(0).child(0), true);
  return c;
}

}  // namespace hiqp
