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

#include "hiqp/exactsim.hpp"

#include <cmath>
#include <stdexcept>

namespace hiqp {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;

cplx eighth_root(unsigned t) {
  // exp(i pi t / 4)
  static const cplx table[8] = {
      {1, 0},         {kInvSqrt2, kInvSqrt2},   {0, 1},  {-kInvSqrt2, kInvSqrt2},
      {-1, 0},        {-kInvSqrt2, -kInvSqrt2}, {0, -1}, {kInvSqrt2, -kInvSqrt2},
  };
  return table[t & 7];
}

void check_width(std::uint32_t n) {
  if (n > DenseState::kMaxQubits) throw std::invalid_argument("dense simulation cap exceeded");
}

}  // namespace

DenseState DenseState::plus_state(std::uint32_t n) {
  check_width(n);
  std::vector<cplx> a(std::size_t(1) << n, cplx(std::pow(2.0, -double(n) / 2.0), 0));
  return DenseState(n, std::move(a));
}

DenseState DenseState::zero_state(std::uint32_t n) {
  check_width(n);
  std::vector<cplx> a(std::size_t(1) << n, cplx(0, 0));
  a[0] = 1;
  return DenseState(n, std::move(a));
}

DenseState DenseState::from_amplitudes(std::uint32_t n, std::vector<cplx> amps) {
  check_width(n);
  if (amps.size() != (std::size_t(1) << n)) throw std::invalid_argument("bad amplitude count");
  return DenseState(n, std::move(amps));
}

void DenseState::apply(const Gate& g) {
  const std::size_t dim = amp_.size();
  switch (g.kind) {
    case GateKind::Noise:
      break;
    case GateKind::CkZ: {
      std::uint64_t mask = 0;
      for (auto q : g.qubits) mask |= std::uint64_t(1) << q;
      for (std::size_t v = 0; v < dim; ++v)
        if ((v & mask) == mask) amp_[v] = -amp_[v];
      break;
    }
    case GateKind::Rz4: {
      cplx ph = eighth_root(g.t);
      std::uint64_t m = std::uint64_t(1) << g.qubits[0];
      for (std::size_t v = 0; v < dim; ++v)
        if (v & m) amp_[v] *= ph;
      break;
    }
    case GateKind::Rzz4: {
      cplx ph = eighth_root(g.t);
      std::uint64_t ma = std::uint64_t(1) << g.qubits[0];
      std::uint64_t mb = std::uint64_t(1) << g.qubits[1];
      for (std::size_t v = 0; v < dim; ++v)
        if (bool(v & ma) != bool(v & mb)) amp_[v] *= ph;
      break;
    }
    case GateKind::Cp4: {
      cplx ph = eighth_root(g.t);
      std::uint64_t ma = std::uint64_t(1) << g.qubits[0];
      std::uint64_t mb = std::uint64_t(1) << g.qubits[1];
      std::uint64_t mm = ma | mb;
      for (std::size_t v = 0; v < dim; ++v)
        if ((v & mm) == mm) amp_[v] *= ph;
      break;
    }
    case GateKind::Cnot: {
      std::uint64_t mc = std::uint64_t(1) << g.qubits[0];
      std::uint64_t mt = std::uint64_t(1) << g.qubits[1];
      for (std::size_t v = 0; v < dim; ++v)
        if ((v & mc) && !(v & mt)) std::swap(amp_[v], amp_[v | mt]);
      break;
    }
    case GateKind::Swap: {
      std::uint64_t ma = std::uint64_t(1) << g.qubits[0];
      std::uint64_t mb = std::uint64_t(1) << g.qubits[1];
      for (std::size_t v = 0; v < dim; ++v)
        if ((v & ma) && !(v & mb)) std::swap(amp_[v], amp_[(v ^ ma) | mb]);
      break;
    }
    case GateKind::Perm: {
      std::vector<cplx> out(dim);
      std::uint64_t moved = 0;
      for (std::size_t i = 0; i < g.qubits.size(); i += 2) moved |= std::uint64_t(1) << g.qubits[i];
      for (std::size_t v = 0; v < dim; ++v) {
        std::uint64_t w = v & ~moved;
        for (std::size_t i = 0; i < g.qubits.size(); i += 2)
          if (v & (std::uint64_t(1) << g.qubits[i])) w |= std::uint64_t(1) << g.qubits[i + 1];
        out[w] = amp_[v];
      }
      amp_ = std::move(out);
      break;
    }
    case GateKind::H: {
      std::uint64_t m = std::uint64_t(1) << g.qubits[0];
      for (std::size_t v = 0; v < dim; ++v) {
        if (v & m) continue;
        cplx a0 = amp_[v], a1 = amp_[v | m];
        amp_[v] = (a0 + a1) * kInvSqrt2;
        amp_[v | m] = (a0 - a1) * kInvSqrt2;
      }
      break;
    }
    case GateKind::PauliX: {
      std::uint64_t m = std::uint64_t(1) << g.qubits[0];
      for (std::size_t v = 0; v < dim; ++v)
        if (!(v & m)) std::swap(amp_[v], amp_[v | m]);
      break;
    }
    case GateKind::PauliY: {
      std::uint64_t m = std::uint64_t(1) << g.qubits[0];
      const cplx i_unit(0, 1);
      for (std::size_t v = 0; v < dim; ++v) {
        if (v & m) continue;
        cplx a0 = amp_[v], a1 = amp_[v | m];
        amp_[v] = -i_unit * a1;
        amp_[v | m] = i_unit * a0;
      }
      break;
    }
  }
}

void DenseState::apply(const Circuit& c) {
  if (c.width() != n_) throw std::invalid_argument("width mismatch");
  for (const auto& g : c.gates()) apply(g);
}

void DenseState::apply_pauli(std::uint64_t x_mask, std::uint64_t z_mask) {
  const std::size_t dim = amp_.size();
  std::vector<cplx> out(dim);
  for (std::size_t v = 0; v < dim; ++v) {
    cplx a = amp_[v];
    if (std::popcount(std::uint64_t(v) & z_mask) & 1u) a = -a;
    out[v ^ x_mask] = a;
  }
  amp_ = std::move(out);
}

double DenseState::norm() const {
  double s = 0;
  for (const auto& a : amp_) s += std::norm(a);
  return std::sqrt(s);
}

cplx DenseState::inner(const DenseState& o) const {
  if (o.n_ != n_) throw std::invalid_argument("width mismatch");
  cplx s = 0;
  for (std::size_t v = 0; v < amp_.size(); ++v) s += std::conj(amp_[v]) * o.amp_[v];
  return s;
}

std::vector<double> DenseState::x_basis_probabilities() const {
  // In-place Walsh-Hadamard transform of a copy.
  std::vector<cplx> a = amp_;
  for (std::uint32_t q = 0; q < n_; ++q) {
    std::uint64_t m = std::uint64_t(1) << q;
    for (std::size_t v = 0; v < a.size(); ++v) {
      if (v & m) continue;
      cplx a0 = a[v], a1 = a[v | m];
      a[v] = (a0 + a1) * kInvSqrt2;
      a[v | m] = (a0 - a1) * kInvSqrt2;
    }
  }
  std::vector<double> p(a.size());
  for (std::size_t v = 0; v < a.size(); ++v) p[v] = std::norm(a[v]);
  return p;
}

std::vector<double> DenseState::z_basis_probabilities() const {
  std::vector<double> p(amp_.size());
  for (std::size_t v = 0; v < amp_.size(); ++v) p[v] = std::norm(amp_[v]);
  return p;
}

DenseState DenseState::run(const Circuit& c) {
  DenseState s = plus_state(c.width());
  s.apply(c);
  return s;
}

double phase_poly_amplitude(const PhasePolynomial& f, std::uint64_t x) {
  const std::uint32_t n = f.width();
  if (n > DenseState::kMaxQubits) throw std::invalid_argument("dense simulation cap exceeded");
  // Per-qubit lists of monomial remainders: flipping bit u toggles f by
  // the product over each monomial containing u of the other variables.
  std::vector<std::vector<std::uint64_t>> rem(n);
  for (const auto& m : f.terms()) {
    auto idx = m.indices();
    std::uint64_t mask = 0;
    std::size_t k = 0;
    for (; k < Monomial::kMaxDegree && idx[k] != 0xffff; ++k) mask |= std::uint64_t(1) << idx[k];
    for (std::size_t i = 0; i < k; ++i)
      rem[idx[i]].push_back(mask & ~(std::uint64_t(1) << idx[i]));
  }
  const std::uint64_t total = std::uint64_t(1) << n;
  std::uint64_t z = 0;
  bool fz = f.eval(0);
  bool xz = false;
  std::int64_t acc = 0;
  for (std::uint64_t s = 0;; ++s) {
    acc += (fz ^ xz) ? -1 : 1;
    if (s + 1 == total) break;
    std::uint64_t g1 = (s + 1) ^ ((s + 1) >> 1);
    std::uint64_t g0 = s ^ (s >> 1);
    unsigned u = std::countr_zero(g0 ^ g1);
    z ^= std::uint64_t(1) << u;
    for (std::uint64_t mask : rem[u]) fz ^= ((z & mask) == mask);
    xz ^= (x >> u) & 1u;
  }
  return double(acc) / double(total);
}

std::vector<double> phase_poly_amplitudes(const PhasePolynomial& f) {
  const std::uint32_t n = f.width();
  if (n > DenseState::kMaxQubits) throw std::invalid_argument("dense simulation cap exceeded");
  const std::size_t dim = std::size_t(1) << n;
  std::vector<double> a(dim);
  // Sign vector via the same incremental walk, then a real WHT.
  std::vector<std::vector<std::uint64_t>> rem(n);
  for (const auto& m : f.terms()) {
    auto idx = m.indices();
    std::uint64_t mask = 0;
    std::size_t k = 0;
    for (; k < Monomial::kMaxDegree && idx[k] != 0xffff; ++k) mask |= std::uint64_t(1) << idx[k];
    for (std::size_t i = 0; i < k; ++i)
      rem[idx[i]].push_back(mask & ~(std::uint64_t(1) << idx[i]));
  }
  std::uint64_t z = 0;
  bool fz = f.eval(0);
  for (std::uint64_t s = 0;; ++s) {
    a[z] = fz ? -1.0 : 1.0;
    if (s + 1 == dim) break;
    std::uint64_t g1 = (s + 1) ^ ((s + 1) >> 1);
    std::uint64_t g0 = s ^ (s >> 1);
    unsigned u = std::countr_zero(g0 ^ g1);
    z ^= std::uint64_t(1) << u;
    for (std::uint64_t mask : rem[u]) fz ^= ((z & mask) == mask);
  }
  for (std::uint32_t q = 0; q < n; ++q) {
    std::uint64_t m = std::uint64_t(1) << q;
    for (std::size_t v = 0; v < dim; ++v) {
      if (v & m) continue;
      double a0 = a[v], a1 = a[v | m];
      a[v] = a0 + a1;
      a[v | m] = a0 - a1;
    }
  }
  for (auto& v : a) v /= double(dim);
  return a;
}

MonteCarloEstimate uniform_iqp_xeb_bruteforce(std::uint32_t n, std::uint32_t degree,
                                              std::uint64_t circuits, std::uint64_t seed) {
  auto chi_of = [n](const Circuit& c) {
    auto eff = effective_phase_polynomial(c);
    auto amps = phase_poly_amplitudes(eff.poly);
    double sum_p2 = 0;
    for (double a : amps) {
      double p = a * a;
      sum_p2 += p * p;
    }
    return std::pow(2.0, double(n)) * sum_p2 - 1.0;
  };

  MonteCarloEstimate est;
  double sum = 0, sum2 = 0;
  if (circuits == 0) {
    // Exhaustive over all coin patterns: one coin per subset of size <= D.
    std::vector<std::vector<std::uint32_t>> subsets;
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
      if (std::uint32_t(std::popcount(mask)) > degree) continue;
      std::vector<std::uint32_t> s;
      for (std::uint32_t q = 0; q < n; ++q)
        if (mask & (std::uint64_t(1) << q)) s.push_back(q);
      subsets.push_back(std::move(s));
    }
    if (subsets.size() > 22) throw std::invalid_argument("exhaustive enumeration too large");
    std::uint64_t count = std::uint64_t(1) << subsets.size();
    for (std::uint64_t pat = 0; pat < count; ++pat) {
      Circuit c(n);
      for (std::size_t i = 0; i < subsets.size(); ++i)
        if (pat & (std::uint64_t(1) << i)) c.append(Gate::ckz(subsets[i]));
      double chi = chi_of(c);
      sum += chi;
      sum2 += chi * chi;
    }
    est.samples = count;
  } else {
    Rng master(seed);
    for (std::uint64_t i = 0; i < circuits; ++i) {
      double chi = chi_of(build_uniform_iqp(n, degree, master.child(i).next()));
      sum += chi;
      sum2 += chi * chi;
    }
    est.samples = circuits;
  }
  est.value = sum / double(est.samples);
  double var = sum2 / double(est.samples) - est.value * est.value;
  est.std_error = est.samples > 1 ? std::sqrt(std::max(0.0, var) / double(est.samples)) : 0.0;
  return est;
}

}  // namespace hiqp

// separate include to keep the header dependency one-way
#include "hiqp/codes.hpp"

namespace hiqp {

DenseState codeword_state(const CodeSpec& code, std::uint32_t blocks, std::uint64_t x) {
  const std::uint32_t n = code.n * blocks;
  if (n > DenseState::kMaxQubits) throw std::invalid_argument("dense simulation cap exceeded");
  // X-group span generators and logical X representatives across blocks
  std::vector<std::uint64_t> gens;
  std::uint64_t base = 0;
  for (std::uint32_t b = 0; b < blocks; ++b) {
    for (auto idx : code.x_type_checks) {
      std::uint64_t g = 0;
      for (std::uint32_t q = 0; q < code.n; ++q)
        if (code.stabilizers[idx].x.get(q)) g |= std::uint64_t(1) << (b * code.n + q);
      gens.push_back(g);
    }
    for (std::uint32_t i = 0; i < code.k; ++i) {
      if (!((x >> (b * code.k + i)) & 1u)) continue;
      for (std::uint32_t q = 0; q < code.n; ++q)
        if (code.logical_x[i].x.get(q)) base ^= std::uint64_t(1) << (b * code.n + q);
    }
  }
  std::vector<cplx> amps(std::size_t(1) << n, cplx(0, 0));
  const double norm = std::pow(2.0, -double(gens.size()) / 2.0);
  for (std::uint64_t sel = 0; sel < (std::uint64_t(1) << gens.size()); ++sel) {
    std::uint64_t w = base;
    for (std::size_t j = 0; j < gens.size(); ++j)
      if ((sel >> j) & 1u) w ^= gens[j];
    amps[w] += norm;
  }
  return DenseState::from_amplitudes(n, std::move(amps));
}

bool verify_transversal(const CodeSpec& code, const TransversalEntry& entry, std::uint32_t blocks,
                        const std::vector<std::uint8_t>& target_exponents, double tol) {
  const std::uint32_t n = code.n * blocks;
  const std::uint32_t klog = code.k * blocks;
  if (target_exponents.size() != (std::size_t(1) << klog))
    throw std::invalid_argument("target exponent table size mismatch");
  Circuit pattern = entry.to_circuit(n);
  cplx global(0, 0);
  for (std::uint64_t x = 0; x < (std::uint64_t(1) << klog); ++x) {
    DenseState cw = codeword_state(code, blocks, x);
    DenseState out = cw;
    out.apply(pattern);
    cplx overlap = cw.inner(out);  // should be a pure phase
    if (std::abs(std::abs(overlap) - 1.0) > tol) return false;
    // residual orthogonal component
    double out_norm = out.norm();
    if (std::abs(out_norm - 1.0) > tol) return false;
    cplx expected = overlap;
    // target phase relative to global
    static const double pi4 = 0.78539816339744830961566084581988;
    cplx tph = std::polar(1.0, pi4 * double(target_exponents[x] & 7));
    if (x == 0) {
      global = overlap / tph;
      if (std::abs(std::abs(global) - 1.0) > tol) return false;
    }
    if (std::abs(expected - global * tph) > tol) return false;
    // full state equality, not just the diagonal overlap
    for (std::uint64_t v = 0; v < out.dim(); ++v)
      if (std::abs(out.amp(v) - global * tph * cw.amp(v)) > tol) return false;
  }
  return true;
}

bool verify_transversal_ckz(const CodeSpec& code, const TransversalEntry& entry,
                            const std::vector<std::uint32_t>& logical_subset, double tol) {
  std::vector<std::uint8_t> target(std::size_t(1) << code.k, 0);
  for (std::uint32_t x = 0; x < (1u << code.k); ++x) {
    bool all = true;
    for (auto i : logical_subset) all &= bool((x >> i) & 1u);
    target[x] = all ? 4 : 0;
  }
  return verify_transversal(code, entry, 1, target, tol);
}

}  // namespace hiqp
