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

#include "hiqp/noise.hpp"

#include <stdexcept>

namespace hiqp {

namespace {

void check_channel(const NoiseChannel& c) {
  if (c.px < 0 || c.py < 0 || c.pz < 0 || c.total() > 1.0)
    throw std::invalid_argument("invalid Pauli channel rates");
}

}  // namespace

void PauliNoise::validate() const {
  check_channel(gate1);
  check_channel(gate2);
  check_channel(move);
  check_channel(marker);
}

std::vector<NoiseSite> noise_sites(const Circuit& c, const PauliNoise& noise) {
  noise.validate();
  std::vector<NoiseSite> sites;
  const auto& gates = c.gates();
  for (std::uint32_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    if (g.kind == GateKind::Noise) {
      if (!noise.marker.trivial())
        for (std::uint32_t q = 0; q < c.width(); ++q) sites.push_back({i, q, noise.marker});
      continue;
    }
    const NoiseChannel* ch = nullptr;
    switch (g.kind) {
      case GateKind::Swap:
      case GateKind::Perm:
        ch = &noise.move;
        break;
      case GateKind::CkZ:
      case GateKind::Rz4:
      case GateKind::Rzz4:
      case GateKind::Cp4:
      case GateKind::Cnot:
        ch = (g.qubits.size() == 1) ? &noise.gate1 : &noise.gate2;
        break;
      case GateKind::H:
      case GateKind::PauliX:
      case GateKind::PauliY:
        ch = &noise.gate1;
        break;
      default:
        break;
    }
    if (!ch || ch->trivial()) continue;
    if (g.kind == GateKind::Perm) {
      for (std::size_t j = 0; j < g.qubits.size(); j += 2)
        sites.push_back({i, g.qubits[j + 1], *ch});
    } else {
      for (auto q : g.qubits) sites.push_back({i, q, *ch});
    }
  }
  return sites;
}

NoiseRealization sample_noise(const std::vector<NoiseSite>& sites, std::uint64_t seed) {
  Rng master(seed);
  NoiseRealization out;
  for (std::size_t s = 0; s < sites.size(); ++s) {
    const auto& site = sites[s];
    double u = double(master.at(s) >> 11) * 0x1.0p-53;
    std::uint8_t pauli = 0;
    if (u < site.channel.px)
      pauli = 1;
    else if (u < site.channel.px + site.channel.py)
      pauli = 2;
    else if (u < site.channel.total())
      pauli = 3;
    if (pauli) out.events.push_back({site.location, site.qubit, pauli});
  }
  return out;
}

NoiseRealization sample_noise(const PauliNoise& noise, const Circuit& c, std::uint64_t seed) {
  return sample_noise(noise_sites(c, noise), seed);
}

Tableau evolve(const Circuit& c, const NoiseRealization& realization) {
  if (!c.is_clifford())
    throw std::invalid_argument(
        "circuit contains non-Clifford gates; use the dense simulator instead");
  Tableau t(c.width());
  std::size_t e = 0;
  const auto& events = realization.events;
  const auto& gates = c.gates();
  for (std::uint32_t i = 0; i < gates.size(); ++i) {
    t.apply(gates[i]);
    while (e < events.size() && events[e].location == i) {
      t.apply_pauli_1q(events[e].qubit, events[e].pauli);
      ++e;
    }
  }
  if (e != events.size()) throw std::invalid_argument("realization events must be location-sorted");
  return t;
}

PauliFrame propagate_frame(const Circuit& c, const NoiseRealization& realization) {
  const std::uint32_t n = c.width();
  PauliFrame f{BitVec(n), BitVec(n)};
  std::size_t e = 0;
  const auto& events = realization.events;
  const auto& gates = c.gates();
  auto step_gate = [&](const Gate& g) {
    switch (g.kind) {
      case GateKind::Cnot: {
        std::uint32_t cq = g.qubits[0], tq = g.qubits[1];
        if (f.x.get(cq)) f.x.flip(tq);
        if (f.z.get(tq)) f.z.flip(cq);
        break;
      }
      case GateKind::CkZ:
        if (g.qubits.size() == 2) {
          std::uint32_t a = g.qubits[0], b = g.qubits[1];
          bool xa = f.x.get(a), xb = f.x.get(b);
          if (xb) f.z.flip(a);
          if (xa) f.z.flip(b);
        } else if (g.qubits.size() > 2) {
          throw std::invalid_argument("frame propagation through C^kZ, k >= 2 is not Clifford");
        }
        break;
      case GateKind::Cp4:
        if ((g.t & 7) == 4) {
          std::uint32_t a = g.qubits[0], b = g.qubits[1];
          bool xa = f.x.get(a), xb = f.x.get(b);
          if (xb) f.z.flip(a);
          if (xa) f.z.flip(b);
        } else if (g.t & 3) {
          throw std::invalid_argument("non-Clifford rotation in frame propagation");
        }
        break;
      case GateKind::Rz4:
        if ((g.t & 3) == 2) {  // S or S^dag
          if (f.x.get(g.qubits[0])) f.z.flip(g.qubits[0]);
        } else if (g.t & 1) {
          throw std::invalid_argument("non-Clifford rotation in frame propagation");
        }
        break;
      case GateKind::Rzz4: {
        if ((g.t & 3) == 2) {
          std::uint32_t a = g.qubits[0], b = g.qubits[1];
          bool xa = f.x.get(a), xb = f.x.get(b);
          if (xa != xb) {
            f.z.flip(a);
            f.z.flip(b);
          }
        } else if (g.t & 1) {
          throw std::invalid_argument("non-Clifford rotation in frame propagation");
        }
        break;
      }
      case GateKind::H: {
        std::uint32_t q = g.qubits[0];
        bool xb = f.x.get(q), zb = f.z.get(q);
        if (xb != zb) {
          f.x.flip(q);
          f.z.flip(q);
        }
        break;
      }
      case GateKind::Swap: {
        std::uint32_t a = g.qubits[0], b = g.qubits[1];
        bool xa = f.x.get(a), xb = f.x.get(b), za = f.z.get(a), zb = f.z.get(b);
        f.x.set(a, xb);
        f.x.set(b, xa);
        f.z.set(a, zb);
        f.z.set(b, za);
        break;
      }
      case GateKind::Perm: {
        std::vector<std::pair<bool, bool>> saved(g.qubits.size() / 2);
        for (std::size_t j = 0; j < g.qubits.size(); j += 2)
          saved[j / 2] = {f.x.get(g.qubits[j]), f.z.get(g.qubits[j])};
        for (std::size_t j = 0; j < g.qubits.size(); j += 2) {
          f.x.set(g.qubits[j + 1], saved[j / 2].first);
          f.z.set(g.qubits[j + 1], saved[j / 2].second);
        }
        break;
      }
      default:
        break;  // Paulis and markers commute through the frame picture
    }
  };
  for (std::uint32_t i = 0; i < gates.size(); ++i) {
    step_gate(gates[i]);
    while (e < events.size() && events[e].location == i) {
      const auto& ev = events[e];
      if (ev.pauli == 1 || ev.pauli == 2) f.x.flip(ev.qubit);
      if (ev.pauli == 2 || ev.pauli == 3) f.z.flip(ev.qubit);
      ++e;
    }
  }
  return f;
}

bool frame_preserves_state(const Tableau& ideal, const PauliFrame& frame) {
  const std::uint32_t n = ideal.width();
  for (std::uint32_t i = 0; i < n; ++i) {
    PauliString s = ideal.stabilizer(i);
    if (s.x.dot(frame.z) ^ s.z.dot(frame.x)) return false;
  }
  return true;
}

}  // namespace hiqp
