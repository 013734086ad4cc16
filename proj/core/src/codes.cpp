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

#include "hiqp/codes.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hiqp {

namespace {

bool is_pure_x(const PauliString& p) { return p.z.is_zero(); }
bool is_pure_z(const PauliString& p) { return p.x.is_zero(); }

/// Symplectic row (x | z) of a Pauli for rank computations.
void set_symplectic_row(BitMat& m, std::size_t row, const PauliString& p) {
  const std::uint32_t n = std::uint32_t(p.size());
  for (std::uint32_t q = 0; q < n; ++q) {
    if (p.x.get(q)) m.set(row, q, true);
    if (p.z.get(q)) m.set(row, n + q, true);
  }
}

}  // namespace

void CodeSpec::check() const {
  if (stabilizers.size() != n - k) throw std::logic_error(name + ": generator count != n - k");
  if (logical_x.size() != k || logical_z.size() != k)
    throw std::logic_error(name + ": logical operator count != k");
  for (const auto& g : stabilizers) {
    if (g.size() != n) throw std::logic_error(name + ": generator width");
    if (!g.is_hermitian_involution()) throw std::logic_error(name + ": non-Hermitian generator");
    if (!is_pure_x(g) && !is_pure_z(g)) throw std::logic_error(name + ": non-CSS generator");
  }
  for (std::size_t i = 0; i < stabilizers.size(); ++i)
    for (std::size_t j = i + 1; j < stabilizers.size(); ++j)
      if (!stabilizers[i].commutes(stabilizers[j]))
        throw std::logic_error(name + ": generators do not commute");
  BitMat sym(stabilizers.size(), 2 * n);
  for (std::size_t i = 0; i < stabilizers.size(); ++i) set_symplectic_row(sym, i, stabilizers[i]);
  if (sym.rank() != stabilizers.size()) throw std::logic_error(name + ": dependent generators");
  for (std::uint32_t i = 0; i < k; ++i) {
    for (const auto& g : stabilizers) {
      if (!logical_x[i].commutes(g)) throw std::logic_error(name + ": logical X anticommutes");
      if (!logical_z[i].commutes(g)) throw std::logic_error(name + ": logical Z anticommutes");
    }
    for (std::uint32_t j = 0; j < k; ++j) {
      if (logical_x[i].commutes(logical_z[j]) != (i != j))
        throw std::logic_error(name + ": logical pairing broken");
      if (!logical_x[i].commutes(logical_x[j]) || !logical_z[i].commutes(logical_z[j]))
        throw std::logic_error(name + ": logicals of like type must commute");
    }
    if (in_stabilizer_group(logical_x[i]) || in_stabilizer_group(logical_z[i]))
      throw std::logic_error(name + ": logical operator inside stabilizer group");
  }
  for (auto idx : x_type_checks)
    if (!is_pure_x(stabilizers.at(idx))) throw std::logic_error(name + ": bad x_type_checks");
  for (auto idx : z_type_checks)
    if (!is_pure_z(stabilizers.at(idx))) throw std::logic_error(name + ": bad z_type_checks");
  if (x_type_checks.size() + z_type_checks.size() != stabilizers.size())
    throw std::logic_error(name + ": checks must partition the generators");
}

bool CodeSpec::in_stabilizer_group(const PauliString& p) const {
  // solve for a generator combination with the same (x, z) parts
  BitMat m(2 * n, stabilizers.size());
  for (std::size_t j = 0; j < stabilizers.size(); ++j) {
    const auto& g = stabilizers[j];
    for (std::uint32_t q = 0; q < n; ++q) {
      if (g.x.get(q)) m.set(q, j, true);
      if (g.z.get(q)) m.set(n + q, j, true);
    }
  }
  BitVec b(2 * n);
  for (std::uint32_t q = 0; q < n; ++q) {
    if (p.x.get(q)) b.set(q, true);
    if (p.z.get(q)) b.set(n + q, true);
  }
  return m.solve(b).has_value();
}

bool CodeSpec::is_nontrivial_logical(const PauliString& p) const {
  for (const auto& g : stabilizers)
    if (!p.commutes(g)) return false;
  return !in_stabilizer_group(p);
}

std::uint32_t CodeSpec::min_logical_weight_upto(std::uint32_t max_weight) const {
  // enumerate supports of growing weight, all 3^w letter choices
  std::vector<std::uint32_t> support;
  std::uint32_t best = 0;
  auto try_support = [&](const std::vector<std::uint32_t>& qs) {
    std::uint64_t combos = 1;
    for (std::size_t i = 0; i < qs.size(); ++i) combos *= 3;
    for (std::uint64_t pattern = 0; pattern < combos; ++pattern) {
      PauliString p(n);
      std::uint64_t rest = pattern;
      for (auto q : qs) {
        std::uint8_t letter = rest % 3;
        rest /= 3;
        if (letter == 0) {
          p.x.set(q, true);
        } else if (letter == 1) {
          p.x.set(q, true);
          p.z.set(q, true);
          p.phase = std::uint8_t((p.phase + 1) & 3);
        } else {
          p.z.set(q, true);
        }
      }
      if (is_nontrivial_logical(p)) return true;
    }
    return false;
  };
  std::vector<std::uint32_t> idx;
  for (std::uint32_t w = 1; w <= max_weight && !best; ++w) {
    idx.assign(w, 0);
    for (std::uint32_t i = 0; i < w; ++i) idx[i] = i;
    for (;;) {
      if (try_support(idx)) {
        best = w;
        break;
      }
      // next combination
      std::uint32_t i = w;
      while (i-- > 0) {
        if (idx[i] < n - (w - i)) {
          ++idx[i];
          for (std::uint32_t j = i + 1; j < w; ++j) idx[j] = idx[j - 1] + 1;
          break;
        }
        if (i == 0) {
          i = std::uint32_t(-1);
          break;
        }
      }
      if (i == std::uint32_t(-1)) break;
    }
  }
  return best;
}

std::string CodeSpec::to_json() const {
  std::ostringstream os;
  auto emit = [&os](const std::vector<PauliString>& v) {
    os << "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::string raw = v[i].to_label().substr(1);  // strip the sign
      os << (i ? ", " : "") << '"' << raw << '"';
    }
    os << "]";
  };
  os << "{\"name\": \"" << name << "\", \"n\": " << n << ", \"k\": " << k << ", \"d\": " << d
     << ", \"stabilizers\": ";
  emit(stabilizers);
  os << ", \"logical_x\": ";
  emit(logical_x);
  os << ", \"logical_z\": ";
  emit(logical_z);
  os << "}";
  return os.str();
}

// ---------------------------------------------------------------------------
// Code constructions
// ---------------------------------------------------------------------------

namespace {

/// Indicator BitVec over 2^D vertices of {v : v_i = 1 for all i in S}.
BitVec subcube_indicator(std::uint32_t D, std::uint32_t s_mask) {
  BitVec v(1u << D);
  for (std::uint32_t q = 0; q < (1u << D); ++q)
    if ((q & s_mask) == s_mask) v.set(q, true);
  return v;
}

PauliString pure_x(const BitVec& support) {
  PauliString p(support.size());
  p.x = support;
  return p;
}
PauliString pure_z(const BitVec& support) {
  PauliString p(support.size());
  p.z = support;
  return p;
}

/// Generic CSS |+^k> preparation: the X-group span (X stabilizers plus
/// logical X representatives) determines a coset state sum_{g in span}|g>;
/// echelonize, put pivots in |+>, others in |0>, and fan out with CNOTs.
Circuit coset_prep_circuit(std::uint32_t n, const std::vector<BitVec>& x_group_basis) {
  BitMat m(x_group_basis.size(), n);
  for (std::size_t i = 0; i < x_group_basis.size(); ++i) m.set_row(i, x_group_basis[i]);
  // echelonize
  std::vector<std::uint32_t> pivots;
  std::size_t r = 0;
  for (std::uint32_t c = 0; c < n && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && !m.get(p, c)) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != r && m.get(i, c)) m.row_xor(i, r);
    pivots.push_back(c);
    ++r;
  }
  if (r != m.rows()) throw std::logic_error("dependent X group basis");
  Circuit c(n);
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  for (std::uint32_t q = 0; q < n; ++q)
    if (!is_pivot[q]) c.append(Gate::h(q));
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::uint32_t q = 0; q < n; ++q)
      if (q != pivots[i] && m.get(i, q)) c.append(Gate::cnot(pivots[i], q));
  return c;
}

}  // namespace

Circuit encoding_circuit(std::uint32_t D) {
  if (D < 1) throw std::invalid_argument("D must be >= 1");
  const std::uint32_t n = 1u << D;
  Circuit c(n);
  if (D == 1) return c;  // |++> is already the logical |+>
  // two-half construction: logical |+^{D-1}> on the v_D = 0 half, a GHZ
  // state on the v_D = 1 half, then a transversal CNOT between the halves
  const std::uint32_t half = n / 2;
  Circuit sub = encoding_circuit(D - 1);
  c.append(sub);  // acts on [0, half)
  for (std::uint32_t q = half + 1; q < n; ++q) c.append(Gate::h(q));
  for (std::uint32_t q = half + 1; q < n; ++q) c.append(Gate::cnot(half, q));
  for (std::uint32_t q = 0; q < half; ++q) c.append(Gate::cnot(q, half + q));
  return c;
}

CodeSpec hypercube_code(std::uint32_t D) {
  if (D < 2) throw std::invalid_argument("hypercube code needs D >= 2");
  const std::uint32_t n = 1u << D;
  CodeSpec code;
  code.name = "[[" + std::to_string(n) + "," + std::to_string(D) + ",2]] hypercube";
  code.n = n;
  code.k = D;
  code.d = 2;
  // X stabilizer: all qubits
  BitVec all(n);
  for (std::uint32_t q = 0; q < n; ++q) all.set(q, true);
  code.stabilizers.push_back(pure_x(all));
  code.x_type_checks.push_back(0);
  // Z stabilizers: faces. For D = 2 the single generator is the full square;
  // for D >= 3 use the D positive coordinate faces, one negative face, and
  // all deeper subcube monomials of degree 2..D-2.
  if (D == 2) {
    code.stabilizers.push_back(pure_z(subcube_indicator(2, 0)));
  } else {
    for (std::uint32_t i = 0; i < D; ++i)
      code.stabilizers.push_back(pure_z(subcube_indicator(D, 1u << i)));
    BitVec neg(n);
    for (std::uint32_t q = 0; q < n; ++q)
      if (!(q & 1u)) neg.set(q, true);
    code.stabilizers.push_back(pure_z(neg));
    for (std::uint32_t mask = 1; mask < n; ++mask) {
      std::uint32_t deg = std::uint32_t(std::popcount(mask));
      if (deg >= 2 && deg <= D - 2) code.stabilizers.push_back(pure_z(subcube_indicator(D, mask)));
    }
  }
  for (std::uint32_t j = 1; j < code.stabilizers.size(); ++j) code.z_type_checks.push_back(j);
  // logical X_i: face {v_i = 1}; logical Z_i: edge {0, e_i}
  for (std::uint32_t i = 0; i < D; ++i) {
    code.logical_x.push_back(pure_x(subcube_indicator(D, 1u << i)));
    BitVec edge(n);
    edge.set(0, true);
    edge.set(1u << i, true);
    code.logical_z.push_back(pure_z(edge));
  }
  for (std::uint32_t q = 0; q < n; ++q) code.rotation_sites.push_back({q});
  code.encoding = encoding_circuit(D);
  return code;
}

CodeSpec reed_muller_code() {
  const std::uint32_t n = 15;
  CodeSpec code;
  code.name = "[[15,1,3]] punctured Reed-Muller";
  code.n = n;
  code.k = 1;
  code.d = 3;
  // qubit q <-> nonzero vector v = q + 1 over F_2^4
  auto indicator = [&](auto&& pred) {
    BitVec b(n);
    for (std::uint32_t q = 0; q < n; ++q)
      if (pred(q + 1)) b.set(q, true);
    return b;
  };
  // X stabilizers: hyperplanes {v_i = 1} (weight 8)
  for (std::uint32_t i = 0; i < 4; ++i) {
    code.stabilizers.push_back(
        pure_x(indicator([i](std::uint32_t v) { return (v >> i) & 1u; })));
    code.x_type_checks.push_back(i);
  }
  // Z stabilizers: the same hyperplanes plus the six {v_i = v_j = 1} planes
  for (std::uint32_t i = 0; i < 4; ++i)
    code.stabilizers.push_back(
        pure_z(indicator([i](std::uint32_t v) { return (v >> i) & 1u; })));
  for (std::uint32_t i = 0; i < 4; ++i)
    for (std::uint32_t j = i + 1; j < 4; ++j)
      code.stabilizers.push_back(pure_z(indicator(
          [i, j](std::uint32_t v) { return ((v >> i) & 1u) && ((v >> j) & 1u); })));
  for (std::uint32_t idx = 4; idx < 14; ++idx) code.z_type_checks.push_back(idx);
  // logical X: all 15 qubits; logical Z: the weight-3 line {v_1 = v_2 = 0}
  BitVec all(n);
  for (std::uint32_t q = 0; q < n; ++q) all.set(q, true);
  code.logical_x.push_back(pure_x(all));
  code.logical_z.push_back(pure_z(
      indicator([](std::uint32_t v) { return (v & 3u) == 0; })));
  for (std::uint32_t q = 0; q < n; ++q) code.rotation_sites.push_back({q});
  // encoding: generic coset preparation from the X-group span
  std::vector<BitVec> xgroup;
  for (std::uint32_t i = 0; i < 4; ++i) xgroup.push_back(code.stabilizers[i].x);
  xgroup.push_back(code.logical_x[0].x);
  code.encoding = coset_prep_circuit(n, xgroup);
  return code;
}

CodeSpec concat_repetition(const CodeSpec& cube3) {
  if (cube3.n != 8 || cube3.k != 3)
    throw std::invalid_argument("repetition concatenation is defined for the [[8,3,2]] code");
  const std::uint32_t n = 16;
  CodeSpec code;
  code.name = "[[16,3,4]] repetition-concatenated";
  code.n = n;
  code.k = 3;
  code.d = 4;
  auto lift_x = [&](const BitVec& outer) {
    // X representative on the first qubit of each pair
    BitVec b(n);
    for (std::uint32_t q = 0; q < 8; ++q)
      if (outer.get(q)) b.set(2 * q, true);
    return b;
  };
  auto lift_z = [&](const BitVec& outer) {
    // Z lifts to ZZ on the pair
    BitVec b(n);
    for (std::uint32_t q = 0; q < 8; ++q)
      if (outer.get(q)) {
        b.set(2 * q, true);
        b.set(2 * q + 1, true);
      }
    return b;
  };
  // inner XX stabilizers
  for (std::uint32_t q = 0; q < 8; ++q) {
    BitVec b(n);
    b.set(2 * q, true);
    b.set(2 * q + 1, true);
    code.stabilizers.push_back(pure_x(b));
    code.x_type_checks.push_back(q);
  }
  // outer stabilizers lifted
  for (auto idx : cube3.x_type_checks) {
    code.stabilizers.push_back(pure_x(lift_x(cube3.stabilizers[idx].x)));
    code.x_type_checks.push_back(std::uint32_t(code.stabilizers.size() - 1));
  }
  for (auto idx : cube3.z_type_checks) {
    code.stabilizers.push_back(pure_z(lift_z(cube3.stabilizers[idx].z)));
    code.z_type_checks.push_back(std::uint32_t(code.stabilizers.size() - 1));
  }
  for (std::uint32_t i = 0; i < 3; ++i) {
    code.logical_x.push_back(pure_x(lift_x(cube3.logical_x[i].x)));
    code.logical_z.push_back(pure_z(lift_z(cube3.logical_z[i].z)));
  }
  for (std::uint32_t q = 0; q < 8; ++q) code.rotation_sites.push_back({2 * q, 2 * q + 1});
  // encoding: outer circuit on first-of-pairs, then CNOT(second -> first)
  Circuit enc(n);
  for (const auto& g : cube3.encoding.gates()) {
    Gate lifted = g;
    for (auto& q : lifted.qubits) q = 2 * q;
    enc.append(lifted);
  }
  for (std::uint32_t q = 0; q < 8; ++q) enc.append(Gate::cnot(2 * q + 1, 2 * q));
  code.encoding = enc;
  return code;
}

Circuit encode_blocks(const CodeSpec& code, std::uint32_t blocks) {
  Circuit c(code.n * blocks);
  for (std::uint32_t b = 0; b < blocks; ++b) {
    for (const auto& g : code.encoding.gates()) {
      Gate shifted = g;
      for (auto& q : shifted.qubits) q += b * code.n;
      c.append(shifted);
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Transversal pattern derivation (solver over Z_8)
// ---------------------------------------------------------------------------

namespace {

/// Solve A t = b (mod 2^log2mod) by unit-pivot elimination with recursive
/// halving of the modulus when only even coefficients remain.
std::optional<std::vector<std::uint8_t>> solve_mod_pow2(std::vector<std::vector<int>> a,
                                                        std::vector<int> b, int mod) {
  const std::size_t rows = a.size();
  if (rows == 0) return std::vector<std::uint8_t>();
  const std::size_t c = a[0].size();
  if (mod == 1) return std::vector<std::uint8_t>(c, 0);
  std::vector<std::uint8_t> t(c, 0);
  std::vector<bool> row_done(rows, false), col_done(c, false);
  std::vector<std::pair<std::size_t, std::size_t>> pivots;

  auto reduce = [&](int v) { return ((v % mod) + mod) % mod; };

  for (;;) {
    // find a unit (odd) pivot among active entries
    std::size_t pr = rows, pc = c;
    for (std::size_t i = 0; i < rows && pr == rows; ++i) {
      if (row_done[i]) continue;
      for (std::size_t j = 0; j < c; ++j) {
        if (col_done[j]) continue;
        if (a[i][j] & 1) {
          pr = i;
          pc = j;
          break;
        }
      }
    }
    if (pr == rows) break;
    // scale row so the pivot is exactly 1 (odd numbers are invertible)
    int inv = 1;
    while (reduce(a[pr][pc] * inv) != 1) ++inv;
    for (std::size_t j = 0; j < c; ++j) a[pr][j] = reduce(a[pr][j] * inv);
    b[pr] = reduce(b[pr] * inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == pr) continue;
      int f = reduce(a[i][pc]);
      if (!f) continue;
      for (std::size_t j = 0; j < c; ++j) a[i][j] = reduce(a[i][j] - f * a[pr][j]);
      b[i] = reduce(b[i] - f * b[pr]);
    }
    row_done[pr] = true;
    col_done[pc] = true;
    pivots.emplace_back(pr, pc);
  }
  // remaining active entries are all even
  if (mod > 1) {
    std::vector<std::size_t> rrows, rcols;
    for (std::size_t i = 0; i < rows; ++i)
      if (!row_done[i]) rrows.push_back(i);
    for (std::size_t j = 0; j < c; ++j)
      if (!col_done[j]) rcols.push_back(j);
    if (!rrows.empty()) {
      std::vector<std::vector<int>> a2(rrows.size(), std::vector<int>(rcols.size()));
      std::vector<int> b2(rrows.size());
      for (std::size_t i = 0; i < rrows.size(); ++i) {
        if (reduce(b[rrows[i]]) & 1) return std::nullopt;
        b2[i] = reduce(b[rrows[i]]) / 2;
        for (std::size_t j = 0; j < rcols.size(); ++j) a2[i][j] = reduce(a[rrows[i]][rcols[j]]) / 2;
      }
      if (mod / 2 >= 1) {
        auto sub = solve_mod_pow2(std::move(a2), std::move(b2), mod / 2);
        if (!sub) return std::nullopt;
        for (std::size_t j = 0; j < rcols.size(); ++j) t[rcols[j]] = (*sub)[j];
      }
    }
  }
  // back-substitute pivots (rows are fully reduced, so direct evaluation)
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    auto [pr, pc] = *it;
    int acc = b[pr];
    for (std::size_t j = 0; j < c; ++j)
      if (j != pc) acc -= a[pr][j] * int(t[j]);
    t[pc] = std::uint8_t(reduce(acc));
  }
  return t;
}

struct Ansatz {
  std::vector<TransversalEntry::Term> terms;
  std::vector<BitVec> xgroup;       // global X-span basis
  std::vector<BitVec> logical_rep;  // global logical X representative per logical qubit
  std::uint32_t width = 0;
};

Ansatz build_ansatz(const CodeSpec& code, std::uint32_t blocks) {
  Ansatz a;
  a.width = code.n * blocks;
  for (std::uint32_t b = 0; b < blocks; ++b) {
    for (const auto& site : code.rotation_sites) {
      TransversalEntry::Term t;
      for (auto q : site) t.qubits.push_back(q + b * code.n);
      t.product = false;
      a.terms.push_back(std::move(t));
    }
    for (auto idx : code.x_type_checks) {
      BitVec g(a.width);
      for (std::uint32_t q = 0; q < code.n; ++q)
        if (code.stabilizers[idx].x.get(q)) g.set(q + b * code.n, true);
      a.xgroup.push_back(std::move(g));
    }
    for (std::uint32_t i = 0; i < code.k; ++i) {
      BitVec l(a.width);
      for (std::uint32_t q = 0; q < code.n; ++q)
        if (code.logical_x[i].x.get(q)) l.set(q + b * code.n, true);
      a.logical_rep.push_back(std::move(l));
    }
  }
  if (blocks == 2) {
    for (std::uint32_t q = 0; q < code.n; ++q) {
      TransversalEntry::Term t;
      t.qubits = {q, q + code.n};
      t.product = true;
      a.terms.push_back(std::move(t));
    }
  }
  return a;
}

int term_value(const TransversalEntry::Term& t, const BitVec& w) {
  if (t.product) {
    for (auto q : t.qubits)
      if (!w.get(q)) return 0;
    return 1;
  }
  bool par = false;
  for (auto q : t.qubits) par ^= w.get(q);
  return par ? 1 : 0;
}

}  // namespace

Circuit TransversalEntry::to_circuit(std::uint32_t width) const {
  Circuit c(width);
  for (const auto& t : terms) {
    if (t.power == 0) continue;
    if (t.product) {
      if (t.qubits.size() != 2) throw std::logic_error("product terms are pairwise");
      c.append(Gate::cp4(t.qubits[0], t.qubits[1], t.power));
    } else if (t.qubits.size() == 1) {
      c.append(Gate::rz4(t.qubits[0], t.power));
    } else if (t.qubits.size() == 2) {
      c.append(Gate::rzz4(t.qubits[0], t.qubits[1], t.power));
    } else {
      throw std::logic_error("parity terms act on one or two qubits");
    }
  }
  return c;
}

bool check_pattern_on_cosets(const CodeSpec& code, std::uint32_t blocks,
                             const TransversalEntry& entry,
                             const std::vector<std::uint8_t>& target_exponents) {
  Ansatz a = build_ansatz(code, blocks);
  const std::uint32_t klog = code.k * blocks;
  if (target_exponents.size() != (std::size_t(1) << klog)) return false;
  const std::size_t ncos = std::size_t(1) << a.xgroup.size();
  int offset = -1;
  for (std::uint32_t x = 0; x < (1u << klog); ++x) {
    BitVec base(a.width);
    for (std::uint32_t i = 0; i < klog; ++i)
      if ((x >> i) & 1u) base.xor_with(a.logical_rep[i]);
    for (std::size_t gsel = 0; gsel < ncos; ++gsel) {
      BitVec w = base;
      for (std::size_t j = 0; j < a.xgroup.size(); ++j)
        if ((gsel >> j) & 1u) w.xor_with(a.xgroup[j]);
      int phi = 0;
      for (const auto& t : entry.terms) phi += int(t.power) * term_value(t, w);
      phi = ((phi - int(target_exponents[x])) % 8 + 8) % 8;
      if (offset < 0) offset = phi;
      if (phi != offset) return false;
    }
  }
  return true;
}

TransversalEntry derive_transversal_pattern(const CodeSpec& code, std::uint32_t blocks,
                                            const std::vector<std::uint8_t>& target_exponents) {
  Ansatz a = build_ansatz(code, blocks);
  const std::uint32_t klog = code.k * blocks;
  if (target_exponents.size() != (std::size_t(1) << klog))
    throw std::invalid_argument("target exponent table size mismatch");
  const std::size_t ncos = std::size_t(1) << a.xgroup.size();
  const std::size_t unknowns = a.terms.size() + 1;  // + global offset
  std::vector<std::vector<int>> sys;
  std::vector<int> rhs;
  for (std::uint32_t x = 0; x < (1u << klog); ++x) {
    BitVec base(a.width);
    for (std::uint32_t i = 0; i < klog; ++i)
      if ((x >> i) & 1u) base.xor_with(a.logical_rep[i]);
    for (std::size_t gsel = 0; gsel < ncos; ++gsel) {
      BitVec w = base;
      for (std::size_t j = 0; j < a.xgroup.size(); ++j)
        if ((gsel >> j) & 1u) w.xor_with(a.xgroup[j]);
      std::vector<int> row(unknowns, 0);
      for (std::size_t tix = 0; tix < a.terms.size(); ++tix)
        row[tix] = term_value(a.terms[tix], w);
      row[unknowns - 1] = -1;  // global offset unknown
      sys.push_back(std::move(row));
      rhs.push_back(int(target_exponents[x]));
    }
  }
  auto sol = solve_mod_pow2(std::move(sys), std::move(rhs), 8);
  if (!sol)
    throw std::runtime_error(code.name + ": no transversal pattern found for the target gate");
  TransversalEntry entry;
  for (std::size_t tix = 0; tix < a.terms.size(); ++tix) {
    if ((*sol)[tix] % 8 == 0) continue;
    TransversalEntry::Term t = a.terms[tix];
    t.power = std::uint8_t((*sol)[tix] % 8);
    entry.terms.push_back(std::move(t));
  }
  if (!check_pattern_on_cosets(code, blocks, entry, target_exponents))
    throw std::logic_error("derived pattern failed the coset check");
  return entry;
}

TransversalEntry derive_transversal_pattern(const CodeSpec& code,
                                            const std::vector<std::uint32_t>& logical_subset) {
  for (auto i : logical_subset)
    if (i >= code.k) throw std::invalid_argument("logical index out of range");
  if (logical_subset.size() == 1) {
    // the Pauli representative is already the pattern: Z on its support
    TransversalEntry entry;
    const BitVec& zsupp = code.logical_z[logical_subset[0]].z;
    for (const auto& site : code.rotation_sites) {
      bool on = false;
      for (auto q : site) on ^= zsupp.get(q);
      if (on) {
        TransversalEntry::Term t;
        t.qubits = site;
        t.product = false;
        t.power = 4;
        entry.terms.push_back(std::move(t));
      }
    }
    return entry;
  }
  std::vector<std::uint8_t> target(std::size_t(1) << code.k, 0);
  for (std::uint32_t x = 0; x < (1u << code.k); ++x) {
    bool all = true;
    for (auto i : logical_subset) all &= bool((x >> i) & 1u);
    target[x] = all ? 4 : 0;
  }
  return derive_transversal_pattern(code, 1, target);
}

const TransversalEntry& TransversalMap::cross_cz() {
  if (!cross_cz_) {
    if (code_->k != 1) throw std::invalid_argument("cross-block CZ pattern needs k = 1");
    std::vector<std::uint8_t> target{0, 0, 0, 4};
    cross_cz_ = derive_transversal_pattern(*code_, 2, target);
  }
  return *cross_cz_;
}

const TransversalEntry& TransversalMap::diagonal(const std::vector<std::uint32_t>& local_subset) {
  auto it = cache_.find(local_subset);
  if (it != cache_.end()) return it->second;
  auto entry = derive_transversal_pattern(*code_, local_subset);
  return cache_.emplace(local_subset, std::move(entry)).first->second;
}

// ---------------------------------------------------------------------------
// Permutation gadgets and compilation
// ---------------------------------------------------------------------------

namespace {

std::vector<std::uint32_t> vertex_perm_pairs(std::uint32_t D,
                                             const std::vector<std::uint32_t>& image,
                                             std::uint32_t site_size) {
  std::vector<std::uint32_t> pairs;
  for (std::uint32_t v = 0; v < (1u << D); ++v) {
    if (image[v] == v) continue;
    for (std::uint32_t s = 0; s < site_size; ++s) {
      pairs.push_back(v * site_size + s);
      pairs.push_back(image[v] * site_size + s);
    }
  }
  return pairs;
}

}  // namespace

std::vector<std::uint32_t> hypercube_cnot_perm(std::uint32_t D, std::uint32_t a, std::uint32_t b,
                                               std::uint32_t site_size) {
  if (a >= D || b >= D || a == b) throw std::invalid_argument("bad logical pair");
  // Z-basis logical labels transform as x_b ^= x_a under the vertex map
  // v_a ^= v_b (derived from the face/edge representative structure).
  std::vector<std::uint32_t> image(1u << D);
  for (std::uint32_t v = 0; v < (1u << D); ++v)
    image[v] = ((v >> b) & 1u) ? (v ^ (1u << a)) : v;
  return vertex_perm_pairs(D, image, site_size);
}

std::vector<std::uint32_t> hypercube_swap_perm(std::uint32_t D, std::uint32_t a, std::uint32_t b,
                                               std::uint32_t site_size) {
  if (a >= D || b >= D || a == b) throw std::invalid_argument("bad logical pair");
  std::vector<std::uint32_t> image(1u << D);
  for (std::uint32_t v = 0; v < (1u << D); ++v) {
    std::uint32_t va = (v >> a) & 1u, vb = (v >> b) & 1u;
    image[v] = (v & ~((1u << a) | (1u << b))) | (va << b) | (vb << a);
  }
  return vertex_perm_pairs(D, image, site_size);
}

namespace {

bool hypercube_family(const CodeSpec& code) {
  return code.rotation_sites.size() == (1u << code.k) &&
         code.n == code.rotation_sites.size() * code.rotation_sites[0].size();
}

std::uint32_t hypercube_dim(const CodeSpec& code) { return code.k; }

/// Transversal CNOT between two whole blocks, pairing physical q <-> q.
void emit_transversal_cnot(Circuit& phys, const CodeSpec& code, std::uint32_t bc,
                           std::uint32_t bt) {
  for (std::uint32_t q = 0; q < code.n; ++q)
    phys.append(Gate::cnot(bc * code.n + q, bt * code.n + q));
}

void emit_block_perm(Circuit& phys, const CodeSpec& code, std::uint32_t block,
                     const std::vector<std::uint32_t>& pairs) {
  if (pairs.empty()) return;
  std::vector<std::uint32_t> shifted = pairs;
  for (auto& q : shifted) q += block * code.n;
  phys.append(Gate::perm(std::move(shifted)));
}

void emit_inblock_cnot(Circuit& phys, const CodeSpec& code, std::uint32_t block, std::uint32_t a,
                       std::uint32_t b) {
  if (!hypercube_family(code))
    throw std::invalid_argument(code.name + ": no in-block CNOT mapping");
  emit_block_perm(phys, code, block,
                  hypercube_cnot_perm(hypercube_dim(code), a, b, code.rotation_sites[0].size()));
}

}  // namespace

Circuit compile_logical(const Circuit& logical, const CodeSpec& code, TransversalMap& map) {
  const std::uint32_t k = code.k;
  if (logical.width() % k) throw std::invalid_argument("logical width not a multiple of k");
  const std::uint32_t blocks = logical.width() / k;
  Circuit phys(blocks * code.n);

  const auto& gates = logical.gates();
  for (std::size_t gi = 0; gi < gates.size(); ++gi) {
    const Gate& g = gates[gi];
    switch (g.kind) {
      case GateKind::Noise:
        phys.append(g);
        break;
      case GateKind::CkZ: {
        std::uint32_t block = g.qubits[0] / k;
        bool in_block = true;
        for (auto q : g.qubits) in_block &= (q / k == block);
        if (in_block) {
          std::vector<std::uint32_t> local;
          for (auto q : g.qubits) local.push_back(q % k);
          std::sort(local.begin(), local.end());
          const auto& entry = map.diagonal(local);
          for (const auto& t : entry.terms) {
            std::vector<std::uint32_t> qs;
            for (auto q : t.qubits) qs.push_back(q + block * code.n);
            if (t.product)
              phys.append(Gate::cp4(qs[0], qs[1], t.power));
            else if (qs.size() == 1)
              phys.append(Gate::rz4(qs[0], t.power));
            else
              phys.append(Gate::rzz4(qs[0], qs[1], t.power));
          }
        } else if (g.qubits.size() == 2 && k == 1) {
          // CZ between two single-logical-qubit blocks: transversal
          // cross-block pattern derived once per code
          const auto& entry = map.cross_cz();
          std::uint32_t ba = g.qubits[0], bb = g.qubits[1];
          for (const auto& t : entry.terms) {
            std::vector<std::uint32_t> qs(2);
            qs[0] = t.qubits[0] + ba * code.n;
            qs[1] = t.qubits[1] - code.n + bb * code.n;
            if (t.product)
              phys.append(Gate::cp4(qs[0], qs[1], t.power));
            else
              phys.append(Gate::rzz4(qs[0], qs[1], t.power));
          }
        } else {
          throw std::invalid_argument("unmapped gate: diagonal across blocks");
        }
        break;
      }
      case GateKind::Cnot: {
        std::uint32_t bc = g.qubits[0] / k, bt = g.qubits[1] / k;
        if (bc == bt) {
          emit_inblock_cnot(phys, code, bc, g.qubits[0] % k, g.qubits[1] % k);
          break;
        }
        // try to greedily absorb a full aligned run covering all residues
        std::vector<bool> seen(k, false);
        std::size_t run = 0;
        while (gi + run < gates.size()) {
          const Gate& h = gates[gi + run];
          if (h.kind != GateKind::Cnot) break;
          if (h.qubits[0] / k != bc || h.qubits[1] / k != bt) break;
          if (h.qubits[0] % k != h.qubits[1] % k) break;
          if (seen[h.qubits[0] % k]) break;
          seen[h.qubits[0] % k] = true;
          ++run;
          if (run == k) break;
        }
        if (run == k) {
          emit_transversal_cnot(phys, code, bc, bt);
          gi += run - 1;
        } else if (k == 1) {
          emit_transversal_cnot(phys, code, bc, bt);
        } else {
          // single-pair gadget: transversal CNOT, in-block CNOT on the
          // target block, transversal CNOT, in-block CNOT again
          std::uint32_t alpha = g.qubits[0] % k, beta = g.qubits[1] % k;
          if (alpha == beta) {
            // conjugate by an in-block swap on the target block to avoid a
            // degenerate in-block CNOT(alpha -> alpha)
            std::uint32_t other = (beta + 1) % k;
            auto sw = hypercube_swap_perm(hypercube_dim(code), beta, other,
                                          code.rotation_sites[0].size());
            emit_block_perm(phys, code, bt, sw);
            emit_transversal_cnot(phys, code, bc, bt);
            emit_inblock_cnot(phys, code, bt, alpha, other);
            emit_transversal_cnot(phys, code, bc, bt);
            emit_inblock_cnot(phys, code, bt, alpha, other);
            emit_block_perm(phys, code, bt, sw);
          } else {
            emit_transversal_cnot(phys, code, bc, bt);
            emit_inblock_cnot(phys, code, bt, alpha, beta);
            emit_transversal_cnot(phys, code, bc, bt);
            emit_inblock_cnot(phys, code, bt, alpha, beta);
          }
        }
        break;
      }
      case GateKind::Swap: {
        std::uint32_t ba = g.qubits[0] / k, bb = g.qubits[1] / k;
        if (ba == bb) {
          if (!hypercube_family(code))
            throw std::invalid_argument(code.name + ": no in-block SWAP mapping");
          emit_block_perm(phys, code, ba,
                          hypercube_swap_perm(hypercube_dim(code), g.qubits[0] % k,
                                              g.qubits[1] % k, code.rotation_sites[0].size()));
        } else if (k == 1) {
          // whole-block swap: physical relabeling
          std::vector<std::uint32_t> norm;
          for (std::uint32_t q = 0; q < code.n; ++q) {
            norm.push_back(ba * code.n + q);
            norm.push_back(bb * code.n + q);
          }
          for (std::uint32_t q = 0; q < code.n; ++q) {
            norm.push_back(bb * code.n + q);
            norm.push_back(ba * code.n + q);
          }
          phys.append(Gate::perm(std::move(norm)));
        } else {
          throw std::invalid_argument("unmapped gate: inter-block SWAP of single logicals");
        }
        break;
      }
      default:
        throw std::invalid_argument("unmapped gate kind in logical circuit");
    }
  }
  return phys;
}

// ---------------------------------------------------------------------------
// Decoding and readout
// ---------------------------------------------------------------------------

LookupDecoder build_lookup_decoder(const CodeSpec& code, std::uint32_t max_weight,
                                   bool correct_x_errors) {
  const auto& check_ids = correct_x_errors ? code.z_type_checks : code.x_type_checks;
  LookupDecoder dec;
  dec.num_checks = std::uint32_t(check_ids.size());
  dec.correct_x_errors = correct_x_errors;
  if (dec.num_checks > 64) throw std::invalid_argument("too many checks for packed syndromes");

  auto syndrome_of = [&](const BitVec& err) {
    std::uint64_t s = 0;
    for (std::size_t j = 0; j < check_ids.size(); ++j) {
      const PauliString& g = code.stabilizers[check_ids[j]];
      const BitVec& gmask = correct_x_errors ? g.z : g.x;
      if (err.dot(gmask)) s |= std::uint64_t(1) << j;
    }
    return s;
  };

  // weight-ascending, lexicographic enumeration keeps first-found entries
  // minimal and ties broken lexicographically
  std::vector<std::uint32_t> idx;
  BitVec err(code.n);
  dec.table.emplace(0, BitVec(code.n));
  for (std::uint32_t w = 1; w <= max_weight; ++w) {
    idx.assign(w, 0);
    for (std::uint32_t i = 0; i < w; ++i) idx[i] = i;
    for (;;) {
      err.clear();
      for (auto q : idx) err.set(q, true);
      std::uint64_t s = syndrome_of(err);
      dec.table.emplace(s, err);  // keeps the earlier (lower-weight / lex) entry
      std::uint32_t i = w;
      bool done = true;
      while (i-- > 0) {
        if (idx[i] < code.n - (w - i)) {
          ++idx[i];
          for (std::uint32_t j = i + 1; j < w; ++j) idx[j] = idx[j - 1] + 1;
          done = false;
          break;
        }
      }
      if (done) break;
    }
  }
  return dec;
}

ReadoutResult readout_logical(const std::vector<BitVec>& physical_samples, const CodeSpec& code,
                              const DecodePolicy& policy) {
  ReadoutResult res;
  res.total = physical_samples.size();
  if (physical_samples.empty()) return res;
  const std::uint32_t width = std::uint32_t(physical_samples[0].size());
  if (width % code.n) throw std::invalid_argument("sample width not a multiple of n");
  const std::uint32_t blocks = width / code.n;

  // global masks
  std::vector<std::vector<BitVec>> checks(blocks);
  std::vector<std::vector<BitVec>> logx(blocks);
  for (std::uint32_t b = 0; b < blocks; ++b) {
    for (auto idx : code.x_type_checks) {
      BitVec m(width);
      for (std::uint32_t q = 0; q < code.n; ++q)
        if (code.stabilizers[idx].x.get(q)) m.set(b * code.n + q, true);
      checks[b].push_back(std::move(m));
    }
    for (std::uint32_t i = 0; i < code.k; ++i) {
      BitVec m(width);
      for (std::uint32_t q = 0; q < code.n; ++q)
        if (code.logical_x[i].x.get(q)) m.set(b * code.n + q, true);
      logx[b].push_back(std::move(m));
    }
  }
  LookupDecoder dec;
  const bool correcting = policy.mode != DecodePolicy::Mode::Postselect;
  if (correcting) dec = build_lookup_decoder(code, policy.max_weight, /*correct_x_errors=*/false);

  for (const auto& sample : physical_samples) {
    std::uint32_t violated = 0;
    std::vector<std::uint64_t> syndromes(blocks, 0);
    for (std::uint32_t b = 0; b < blocks; ++b)
      for (std::size_t j = 0; j < checks[b].size(); ++j)
        if (sample.dot(checks[b][j])) {
          syndromes[b] |= std::uint64_t(1) << j;
          ++violated;
        }
    res.violated_counts.push_back(violated);

    BitVec corrected = sample;
    bool keep = true;
    if (policy.mode == DecodePolicy::Mode::Postselect) {
      keep = violated <= policy.threshold;
    } else {
      std::uint32_t uncorrectable = 0;
      for (std::uint32_t b = 0; b < blocks; ++b) {
        if (const BitVec* corr = dec.lookup(syndromes[b])) {
          for (std::uint32_t q = 0; q < code.n; ++q)
            if (corr->get(q)) corrected.flip(b * code.n + q);
        } else {
          ++uncorrectable;
        }
      }
      if (policy.mode == DecodePolicy::Mode::CorrectThenPostselect)
        keep = uncorrectable < policy.uncorrectable_limit;
    }
    if (!keep) continue;
    BitVec logical(code.k * blocks);
    for (std::uint32_t b = 0; b < blocks; ++b)
      for (std::uint32_t i = 0; i < code.k; ++i)
        if (corrected.dot(logx[b][i])) logical.set(b * code.k + i, true);
    res.logical_samples.push_back(std::move(logical));
    ++res.kept;
  }
  return res;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> audit_z_faults(
    const Circuit& physical, const CodeSpec& code, std::uint32_t blocks,
    std::uint32_t first_location) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> bad;
  const std::uint32_t width = physical.width();
  if (width != blocks * code.n) throw std::invalid_argument("width mismatch");

  std::vector<BitVec> xcheck_masks;
  for (std::uint32_t b = 0; b < blocks; ++b)
    for (auto idx : code.x_type_checks) {
      BitVec m(width);
      for (std::uint32_t q = 0; q < code.n; ++q)
        if (code.stabilizers[idx].x.get(q)) m.set(b * code.n + q, true);
      xcheck_masks.push_back(std::move(m));
    }
  // Z-stabilizer span columns for triviality checks
  std::vector<BitVec> zgens;
  for (std::uint32_t b = 0; b < blocks; ++b)
    for (auto idx : code.z_type_checks) {
      BitVec m(width);
      for (std::uint32_t q = 0; q < code.n; ++q)
        if (code.stabilizers[idx].z.get(q)) m.set(b * code.n + q, true);
      zgens.push_back(std::move(m));
    }
  BitMat span(width, zgens.size());
  for (std::size_t j = 0; j < zgens.size(); ++j)
    for (std::uint32_t q = 0; q < width; ++q)
      if (zgens[j].get(q)) span.set(q, j, true);

  const auto& gates = physical.gates();
  for (std::uint32_t loc = first_location; loc < gates.size(); ++loc) {
    if (gates[loc].kind == GateKind::Noise) continue;
    for (std::uint32_t q = 0; q < width; ++q) {
      NoiseRealization r;
      r.events.push_back({loc, q, 3});
      PauliFrame f = propagate_frame(physical, r);
      if (!f.x.is_zero()) {
        bad.emplace_back(loc, q);  // Z fault grew an X component (H present)
        continue;
      }
      bool detected = false;
      for (const auto& m : xcheck_masks)
        if (f.z.dot(m)) {
          detected = true;
          break;
        }
      if (detected) continue;
      if (!span.solve(f.z)) bad.emplace_back(loc, q);
    }
  }
  return bad;
}

}  // namespace hiqp
