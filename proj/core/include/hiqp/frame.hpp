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

#ifndef HIQP_FRAME_HPP
#define HIQP_FRAME_HPP

#include <cstdint>
#include <vector>

#include "hiqp/circuit.hpp"
#include "hiqp/noise.hpp"

namespace hiqp {

/// Bit-plane Pauli frames for 64*W shots at a time: plane [qubit][word],
/// bit b of word w belongs to shot 64w + b of the batch. Gates act as word
/// ops across all shots; faults are injected by geometric skipping over the
/// (site, lane) space, so cost scales with the number of fault events.
class BatchedFrameSampler {
 public:
  BatchedFrameSampler(const Circuit& c, const PauliNoise& noise);

  std::uint32_t width() const { return n_; }
  std::size_t site_count() const { return sites_.size(); }

  struct Batch {
    std::size_t words = 0;                // W
    std::vector<std::vector<Word>> x, z;  // [qubit][W]
  };

  /// Frames for shots [64 * W * batch_index, 64 * W * (batch_index + 1)).
  /// Deterministic in (seed, batch_index, site); independent of scheduling.
  Batch run(std::uint64_t seed, std::uint64_t batch_index, std::size_t W) const;

 private:
  struct Op {
    GateKind kind;
    std::uint32_t a = 0, b = 0;
    std::uint8_t t = 0;
    std::uint8_t arity = 0;
    std::vector<std::uint32_t> perm;  // for Perm only
  };
  std::uint32_t n_ = 0;
  std::vector<Op> ops_;
  // sites grouped by the op they follow
  std::vector<NoiseSite> sites_;
  std::vector<std::uint32_t> sites_begin_;  // per op index, into sites_
};

/// acc ^= XOR over q in mask of planes[q].
void xor_masked_planes(const std::vector<std::vector<Word>>& planes, const BitVec& mask,
                       std::vector<Word>& acc);

}  // namespace hiqp

#endif  // HIQP_FRAME_HPP
