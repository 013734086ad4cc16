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

#include "hiqp/tableau.hpp"

#include <cmath>
#include <stdexcept>

namespace hiqp {

Tableau::Tableau(std::uint32_t n) : n_(n), words_(words_for(n)) {
  xs_.assign(std::size_t(2) * n * words_, 0);
  zs_.assign(std::size_t(2) * n * words_, 0);
  ph_.assign(std::size_t(2) * n, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    flip_bit(zrow(i), i);       // destabilizer Z_i
    flip_bit(xrow(n + i), i);   // stabilizer X_i
  }
}

PauliString Tableau::row_pauli(std::uint32_t r) const {
  PauliString p(n_);
  for (std::size_t w = 0; w < words_; ++w) {
    p.x.word(w) = xrow(r)[w];
    p.z.word(w) = zrow(r)[w];
  }
  p.phase = ph_[r];
  return p;
}

std::uint8_t Tableau::row_phase(std::uint32_t r) const { return ph_[r]; }

void Tableau::add_row_phase(std::uint32_t r, std::uint8_t delta) {
  ph_[r] = std::uint8_t((ph_[r] + delta) & 3);
}

void Tableau::mult_rows(std::uint32_t dst, std::uint32_t src) {
  // (X^{x1} Z^{z1})(X^{x2} Z^{z2}) = (-1)^{z1.x2} X^{x1+x2} Z^{z1+z2}
  std::uint32_t cross = 0;
  Word* xd = xrow(dst);
  Word* zd = zrow(dst);
  const Word* xsrc = xrow(src);
  const Word* zsrc = zrow(src);
  for (std::size_t w = 0; w < words_; ++w) {
    cross += std::popcount(zd[w] & xsrc[w]);
    xd[w] ^= xsrc[w];
    zd[w] ^= zsrc[w];
  }
  ph_[dst] = std::uint8_t((ph_[dst] + ph_[src] + 2 * cross) & 3);
}

void Tableau::apply(const Gate& g) {
  const std::uint32_t rows = 2 * n_;
  auto s_update = [&](std::uint32_t q, std::uint8_t k) {
    // z_q ^= x_q with phase += k per x-hit (k = 1 for S, 3 for S^dag)
    for (std::uint32_t r = 0; r < rows; ++r)
      if (get_bit(xrow(r), q)) {
        add_row_phase(r, k);
        flip_bit(zrow(r), q);
      }
  };
  auto z_update = [&](std::uint32_t q) {
    for (std::uint32_t r = 0; r < rows; ++r)
      if (get_bit(xrow(r), q)) add_row_phase(r, 2);
  };
  auto cz_update = [&](std::uint32_t a, std::uint32_t b) {
    for (std::uint32_t r = 0; r < rows; ++r) {
      bool xa = get_bit(xrow(r), a), xb = get_bit(xrow(r), b);
      if (xa && xb) add_row_phase(r, 2);
      if (xb) flip_bit(zrow(r), a);
      if (xa) flip_bit(zrow(r), b);
    }
  };
  switch (g.kind) {
    case GateKind::Noise:
      return;
    case GateKind::H: {
      std::uint32_t q = g.qubits[0];
      for (std::uint32_t r = 0; r < rows; ++r) {
        bool xb = get_bit(xrow(r), q), zb = get_bit(zrow(r), q);
        if (xb && zb) add_row_phase(r, 2);
        if (xb != zb) {
          flip_bit(xrow(r), q);
          flip_bit(zrow(r), q);
        }
      }
      return;
    }
    case GateKind::Cnot: {
      std::uint32_t c = g.qubits[0], t = g.qubits[1];
      for (std::uint32_t r = 0; r < rows; ++r) {
        if (get_bit(xrow(r), c)) flip_bit(xrow(r), t);
        if (get_bit(zrow(r), t)) flip_bit(zrow(r), c);
      }
      return;
    }
    case GateKind::Swap: {
      std::uint32_t a = g.qubits[0], b = g.qubits[1];
      for (std::uint32_t r = 0; r < rows; ++r) {
        bool xa = get_bit(xrow(r), a), xb = get_bit(xrow(r), b);
        if (xa != xb) {
          flip_bit(xrow(r), a);
          flip_bit(xrow(r), b);
        }
        bool za = get_bit(zrow(r), a), zb = get_bit(zrow(r), b);
        if (za != zb) {
          flip_bit(zrow(r), a);
          flip_bit(zrow(r), b);
        }
      }
      return;
    }
    case GateKind::Perm: {
      for (std::uint32_t r = 0; r < rows; ++r) {
        std::vector<std::pair<bool, bool>> saved(g.qubits.size() / 2);
        for (std::size_t i = 0; i < g.qubits.size(); i += 2)
          saved[i / 2] = {get_bit(xrow(r), g.qubits[i]), get_bit(zrow(r), g.qubits[i])};
        for (std::size_t i = 0; i < g.qubits.size(); i += 2) {
          std::uint32_t d = g.qubits[i + 1];
          if (get_bit(xrow(r), d) != saved[i / 2].first) flip_bit(xrow(r), d);
          if (get_bit(zrow(r), d) != saved[i / 2].second) flip_bit(zrow(r), d);
        }
      }
      return;
    }
    case GateKind::CkZ: {
      if (g.qubits.size() == 1) {
        z_update(g.qubits[0]);
        return;
      }
      if (g.qubits.size() == 2) {
        cz_update(g.qubits[0], g.qubits[1]);
        return;
      }
      throw std::invalid_argument(
          "stabilizer engine cannot apply C^kZ with k >= 2; use the dense simulator");
    }
    case GateKind::Rz4: {
      switch (g.t & 7) {
        case 0:
          return;
        case 2:
          s_update(g.qubits[0], 1);
          return;
        case 4:
          z_update(g.qubits[0]);
          return;
        case 6:
          s_update(g.qubits[0], 3);
          return;
        default:
          throw std::invalid_argument("non-Clifford rotation; use the dense simulator");
      }
    }
    case GateKind::Rzz4: {
      std::uint32_t a = g.qubits[0], b = g.qubits[1];
      switch (g.t & 7) {
        case 0:
          return;
        case 2:
          s_update(a, 1);
          s_update(b, 1);
          cz_update(a, b);
          return;
        case 4:
          z_update(a);
          z_update(b);
          return;
        case 6:
          s_update(a, 3);
          s_update(b, 3);
          cz_update(a, b);
          return;
        default:
          throw std::invalid_argument("non-Clifford rotation; use the dense simulator");
      }
    }
    case GateKind::Cp4: {
      switch (g.t & 7) {
        case 0:
          return;
        case 4:
          cz_update(g.qubits[0], g.qubits[1]);
          return;
        default:
          throw std::invalid_argument("non-Clifford rotation; use the dense simulator");
      }
    }
    case GateKind::PauliX:
      apply_pauli_1q(g.qubits[0], 1);
      return;
    case GateKind::PauliY:
      apply_pauli_1q(g.qubits[0], 2);
      return;
  }
}

void Tableau::apply(const Circuit& c) {
  if (c.width() != n_) throw std::invalid_argument("width mismatch");
  for (const auto& g : c.gates()) apply(g);
}

void Tableau::apply_pauli(const BitVec& x_mask, const BitVec& z_mask) {
  const std::uint32_t rows = 2 * n_;
  for (std::uint32_t r = 0; r < rows; ++r) {
    Word acc = 0;
    for (std::size_t w = 0; w < words_; ++w)
      acc ^= (xrow(r)[w] & z_mask.word(w)) ^ (zrow(r)[w] & x_mask.word(w));
    if (std::popcount(acc) & 1) add_row_phase(r, 2);
  }
}

void Tableau::apply_pauli_1q(std::uint32_t q, std::uint8_t pauli) {
  const std::uint32_t rows = 2 * n_;
  for (std::uint32_t r = 0; r < rows; ++r) {
    bool xb = get_bit(xrow(r), q), zb = get_bit(zrow(r), q);
    bool anti = false;
    switch (pauli) {
      case 1: anti = zb; break;            // X
      case 2: anti = xb != zb; break;      // Y
      case 3: anti = xb; break;            // Z
      default: throw std::invalid_argument("bad pauli code");
    }
    if (anti) add_row_phase(r, 2);
  }
}

int Tableau::pauli_expectation(const PauliString& p) const {
  if (p.size() != n_) throw std::invalid_argument("width mismatch");
  // anticommuting with any stabilizer -> expectation 0
  for (std::uint32_t i = 0; i < n_; ++i) {
    Word acc = 0;
    for (std::size_t w = 0; w < words_; ++w)
      acc ^= (xrow(n_ + i)[w] & p.z.word(w)) ^ (zrow(n_ + i)[w] & p.x.word(w));
    if (std::popcount(acc) & 1) return 0;
  }
  // decompose over stabilizers: stabilizer i participates iff p anticommutes
  // with destabilizer i
  PauliString accum(n_);
  for (std::uint32_t i = 0; i < n_; ++i) {
    Word acc = 0;
    for (std::size_t w = 0; w < words_; ++w)
      acc ^= (xrow(i)[w] & p.z.word(w)) ^ (zrow(i)[w] & p.x.word(w));
    if (std::popcount(acc) & 1) accum.mul_inplace(stabilizer(i));
  }
  if (accum.x != p.x || accum.z != p.z)
    return 0;  // commutes with the group but is not in it (cannot happen for full-rank states)
  std::uint8_t d = std::uint8_t((p.phase - accum.phase) & 3);
  if (d == 0) return 1;
  if (d == 2) return -1;
  throw std::logic_error("non-Hermitian phase relation");
}

int Tableau::measure_x(std::uint32_t q, Rng& rng, int forced) {
  // X_q anticommutes with rows carrying Z or Y at q, i.e. z-bit set.
  std::uint32_t pivot = 0;
  bool random_branch = false;
  for (std::uint32_t i = n_; i < 2 * n_; ++i) {
    if (get_bit(zrow(i), q)) {
      pivot = i;
      random_branch = true;
      break;
    }
  }
  if (!random_branch) {
    PauliString xq(n_);
    xq.x.set(q, true);
    int e = pauli_expectation(xq);
    if (e == 0) throw std::logic_error("deterministic measurement with zero expectation");
    return e == 1 ? 0 : 1;
  }
  int outcome = (forced >= 0) ? forced : int(rng.bit());
  for (std::uint32_t r = 0; r < 2 * n_; ++r)
    if (r != pivot && get_bit(zrow(r), q)) mult_rows(r, pivot);
  // destabilizer slot takes the old pivot row; pivot becomes +-X_q
  std::uint32_t d = pivot - n_;
  for (std::size_t w = 0; w < words_; ++w) {
    xrow(d)[w] = xrow(pivot)[w];
    zrow(d)[w] = zrow(pivot)[w];
    xrow(pivot)[w] = 0;
    zrow(pivot)[w] = 0;
  }
  ph_[d] = ph_[pivot];
  flip_bit(xrow(pivot), q);
  ph_[pivot] = std::uint8_t(outcome ? 2 : 0);
  return outcome;
}

bool Tableau::check_invariants() const {
  auto anticommutes = [&](std::uint32_t r1, std::uint32_t r2) {
    Word acc = 0;
    for (std::size_t w = 0; w < words_; ++w)
      acc ^= (xrow(r1)[w] & zrow(r2)[w]) ^ (zrow(r1)[w] & xrow(r2)[w]);
    return bool(std::popcount(acc) & 1);
  };
  for (std::uint32_t i = 0; i < n_; ++i) {
    for (std::uint32_t j = 0; j < n_; ++j) {
      if (anticommutes(n_ + i, n_ + j)) return false;              // stab pair
      if (anticommutes(i, j)) return false;                        // destab pair
      if (anticommutes(i, n_ + j) != (i == j)) return false;       // pairing
    }
    if (!row_pauli(n_ + i).is_hermitian_involution()) return false;
    if (!row_pauli(i).is_hermitian_involution()) return false;
  }
  return true;
}

Tableau::XBasisInfo Tableau::x_basis_info() const {
  // Work on a copy of the stabilizer rows only.
  std::vector<PauliString> rows(n_);
  for (std::uint32_t i = 0; i < n_; ++i) rows[i] = stabilizer(i);

  // Gaussian elimination on z-parts; rows left with zero z-part generate the
  // diagonal (X-only) subgroup.
  std::uint32_t r = 0;
  for (std::uint32_t c = 0; c < n_ && r < n_; ++c) {
    std::uint32_t p = r;
    while (p < n_ && !rows[p].z.get(c)) ++p;
    if (p == n_) continue;
    std::swap(rows[r], rows[p]);
    for (std::uint32_t i = 0; i < n_; ++i)
      if (i != r && rows[i].z.get(c)) rows[i].mul_inplace(rows[r]);
    ++r;
  }

  XBasisInfo info;
  info.n = n_;
  BitMat checks(0, 0);
  std::vector<BitVec> masks;
  std::vector<std::uint8_t> signs;
  for (std::uint32_t i = r; i < n_; ++i) {
    if (!rows[i].z.is_zero()) throw std::logic_error("elimination failed");
    masks.push_back(rows[i].x);
    signs.push_back(rows[i].sign() == 1 ? 0 : 1);
  }
  info.k = std::uint32_t(masks.size());
  info.checks = masks;
  info.signs = signs;

  // Solve parity system checks . s = signs.
  BitMat sys(info.k, n_);
  BitVec rhs(info.k);
  for (std::uint32_t i = 0; i < info.k; ++i) {
    sys.set_row(i, masks[i]);
    if (signs[i]) rhs.set(i, true);
  }
  auto sol = sys.solve(rhs);
  if (!sol) throw std::logic_error("inconsistent diagonal stabilizers");
  info.particular = *sol;
  info.basis = sys.nullspace();
  return info;
}

bool Tableau::consistent(const XBasisInfo& info, const BitVec& outcome) {
  for (std::uint32_t i = 0; i < info.k; ++i)
    if (outcome.dot(info.checks[i]) != bool(info.signs[i])) return false;
  return true;
}

double Tableau::ideal_probability(const XBasisInfo& info, const BitVec& outcome) {
  if (outcome.size() != info.n) throw std::invalid_argument("length mismatch");
  if (!consistent(info, outcome)) return 0.0;
  return std::pow(2.0, double(info.k) - double(info.n));
}

BitVec Tableau::sample_outcome(const XBasisInfo& info, const Rng& shot_rng) {
  BitVec out = info.particular;
  for (std::size_t j = 0; j < info.basis.size(); ++j) {
    // one random bit per free direction, counter-indexed for reproducibility
    if ((shot_rng.at(j / 64) >> (j % 64)) & 1u) out.xor_with(info.basis[j]);
  }
  return out;
}

std::vector<BitVec> Tableau::sample_measurements(const XBasisInfo& info, std::uint64_t shots,
                                                 std::uint64_t seed) {
  Rng master(seed);
  std::vector<BitVec> out;
  out.reserve(shots);
  for (std::uint64_t s = 0; s < shots; ++s) out.push_back(sample_outcome(info, master.child(s)));
  return out;
}

double ideal_xeb(const Tableau::XBasisInfo& info) {
  return std::pow(2.0, double(info.k)) - 1.0;
}

double xeb_exact_between(const Tableau::XBasisInfo& ideal, const Tableau::XBasisInfo& noisy) {
  if (ideal.n != noisy.n) throw std::invalid_argument("width mismatch");
  const std::uint32_t n = ideal.n;
  const std::uint32_t m = ideal.k + noisy.k;
  BitMat sys(m, n);
  BitVec rhs(m);
  for (std::uint32_t i = 0; i < ideal.k; ++i) {
    sys.set_row(i, ideal.checks[i]);
    if (ideal.signs[i]) rhs.set(i, true);
  }
  for (std::uint32_t i = 0; i < noisy.k; ++i) {
    sys.set_row(ideal.k + i, noisy.checks[i]);
    if (noisy.signs[i]) rhs.set(ideal.k + i, true);
  }
  if (!sys.solve(rhs)) return -1.0;  // disjoint supports
  double r = double(sys.rank());
  return std::pow(2.0, double(ideal.k) + double(noisy.k) - r) - 1.0;
}

}  // namespace hiqp
