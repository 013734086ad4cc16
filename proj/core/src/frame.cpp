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

#include "hiqp/frame.hpp"

#include <cmath>
#include <stdexcept>

namespace hiqp {

BatchedFrameSampler::BatchedFrameSampler(const Circuit& c, const PauliNoise& noise) : n_(c.width()) {
  if (!c.is_clifford())
    throw std::invalid_argument("frame sampling requires a Clifford circuit");
  auto sites = noise_sites(c, noise);
  const auto& gates = c.gates();
  ops_.reserve(gates.size());
  for (const Gate& g : gates) {
    Op op;
    op.kind = g.kind;
    op.t = g.t;
    op.arity = std::uint8_t(std::min<std::size_t>(g.qubits.size(), 255));
    if (g.kind == GateKind::Perm)
      op.perm = g.qubits;
    else if (!g.qubits.empty()) {
      op.a = g.qubits[0];
      if (g.qubits.size() > 1) op.b = g.qubits[1];
    }
    ops_.push_back(std::move(op));
  }
  // first site index belonging to each op
  sites_begin_.assign(gates.size() + 1, std::uint32_t(sites.size()));
  std::size_t j = 0;
  for (std::uint32_t i = 0; i < gates.size(); ++i) {
    while (j < sites.size() && sites[j].location < i) ++j;
    sites_begin_[i] = std::uint32_t(j);
  }
  sites_ = std::move(sites);
}

BatchedFrameSampler::Batch BatchedFrameSampler::run(std::uint64_t seed, std::uint64_t batch_index,
                                                    std::size_t W) const {
  Batch batch;
  batch.words = W;
  batch.x.assign(n_, std::vector<Word>(W, 0));
  batch.z.assign(n_, std::vector<Word>(W, 0));
  Rng master = Rng(seed).child(0x6e6f697365ull);  // noise stream

  const std::uint64_t lanes = std::uint64_t(W) * 64;
  auto inject_site = [&](std::size_t site_idx) {
    const NoiseSite& site = sites_[site_idx];
    const double p = site.channel.total();
    if (p <= 0) return;
    Rng stream = master.child(site_idx).child(batch_index);
    const double log1mp = std::log1p(-p);
    Word* xq = batch.x[site.qubit].data();
    Word* zq = batch.z[site.qubit].data();
    std::uint64_t lane = 0;
    for (;;) {
      double u = 1.0 - stream.unit();
      double jump = std::floor(std::log(u) / log1mp);
      if (jump > double(lanes)) break;
      lane += std::uint64_t(jump);
      if (lane >= lanes) break;
      // which Pauli
      double v = stream.unit() * p;
      std::uint8_t pauli = v < site.channel.px ? 1 : (v < site.channel.px + site.channel.py ? 2 : 3);
      Word m = Word(1) << (lane % 64);
      if (pauli != 3) xq[lane / 64] ^= m;
      if (pauli != 1) zq[lane / 64] ^= m;
      ++lane;
    }
  };

  auto word_xor = [W](std::vector<Word>& dst, const std::vector<Word>& src) {
    for (std::size_t w = 0; w < W; ++w) dst[w] ^= src[w];
  };

  for (std::uint32_t i = 0; i < ops_.size(); ++i) {
    const Op& op = ops_[i];
    switch (op.kind) {
      case GateKind::Cnot:
        word_xor(batch.x[op.b], batch.x[op.a]);
        word_xor(batch.z[op.a], batch.z[op.b]);
        break;
      case GateKind::CkZ:
        if (op.arity == 2) {
          word_xor(batch.z[op.a], batch.x[op.b]);
          word_xor(batch.z[op.b], batch.x[op.a]);
        }
        break;
      case GateKind::Rz4:
        if ((op.t & 3) == 2) word_xor(batch.z[op.a], batch.x[op.a]);
        break;
      case GateKind::Rzz4:
        if ((op.t & 3) == 2) {
          for (std::size_t w = 0; w < W; ++w) {
            Word s = batch.x[op.a][w] ^ batch.x[op.b][w];
            batch.z[op.a][w] ^= s;
            batch.z[op.b][w] ^= s;
          }
        }
        break;
      case GateKind::Cp4:
        if ((op.t & 7) == 4) {
          word_xor(batch.z[op.a], batch.x[op.b]);
          word_xor(batch.z[op.b], batch.x[op.a]);
        }
        break;
      case GateKind::H:
        std::swap(batch.x[op.a], batch.z[op.a]);
        break;
      case GateKind::Swap:
        std::swap(batch.x[op.a], batch.x[op.b]);
        std::swap(batch.z[op.a], batch.z[op.b]);
        break;
      case GateKind::Perm: {
        std::vector<std::vector<Word>> savedx(op.perm.size() / 2), savedz(op.perm.size() / 2);
        for (std::size_t j = 0; j < op.perm.size(); j += 2) {
          savedx[j / 2] = std::move(batch.x[op.perm[j]]);
          savedz[j / 2] = std::move(batch.z[op.perm[j]]);
        }
        for (std::size_t j = 0; j < op.perm.size(); j += 2) {
          batch.x[op.perm[j + 1]] = std::move(savedx[j / 2]);
          batch.z[op.perm[j + 1]] = std::move(savedz[j / 2]);
        }
        break;
      }
      default:
        break;
    }
    for (std::uint32_t s = sites_begin_[i]; s < sites_begin_[i + 1]; ++s) inject_site(s);
  }
  return batch;
}

void xor_masked_planes(const std::vector<std::vector<Word>>& planes, const BitVec& mask,
                       std::vector<Word>& acc) {
  for (std::uint32_t q = 0; q < mask.size(); ++q) {
    if (!mask.get(q)) continue;
    const auto& src = planes[q];
    for (std::size_t w = 0; w < acc.size(); ++w) acc[w] ^= src[w];
  }
}

}  // namespace hiqp
