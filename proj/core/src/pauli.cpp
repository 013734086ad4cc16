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

#include "hiqp/pauli.hpp"

#include <stdexcept>

namespace hiqp {

PauliString PauliString::from_label(const std::string& label) {
  std::size_t start = 0;
  bool negate = false;
  if (!label.empty() && (label[0] == '+' || label[0] == '-')) {
    negate = label[0] == '-';
    start = 1;
  }
  PauliString p(label.size() - start);
  for (std::size_t i = start; i < label.size(); ++i) {
    std::size_t q = i - start;
    switch (label[i]) {
      case 'I':
        break;
      case 'X':
        p.x.set(q, true);
        break;
      case 'Y':
        p.x.set(q, true);
        p.z.set(q, true);
        p.phase = std::uint8_t((p.phase + 1) & 3);
        break;
      case 'Z':
        p.z.set(q, true);
        break;
      default:
        throw std::invalid_argument("bad pauli character");
    }
  }
  if (negate) p.phase = std::uint8_t((p.phase + 2) & 3);
  return p;
}

std::string PauliString::to_label() const {
  std::string s;
  s += sign() == 1 ? '+' : '-';
  for (std::size_t q = 0; q < size(); ++q) {
    bool xb = x.get(q), zb = z.get(q);
    s += xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
  }
  return s;
}

}  // namespace hiqp
