// Copyright 2026 The cliffvqd Authors
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

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "cliffvqd/error.hpp"
#include "cliffvqd/pauli.hpp"

namespace cliffvqd {

enum class Gate { H, S, S_DAG, X, Z, CNOT };

inline const char *gate_name(Gate g) {
  switch (g) {
    case Gate::H: return "H";
    case Gate::S: return "S";
    case Gate::S_DAG: return "S_DAG";
    case Gate::X: return "X";
    case Gate::Z: return "Z";
    case Gate::CNOT: return "CNOT";
  }
  return "?";
}

/// Conjugation action of a single-qubit Clifford U: images U X U^dag, U Y U^dag, U Z U^dag.
///
/// Each image is a signed single-qubit Pauli stored as (x, z, negative).
struct SingleQubitClifford {
  struct Image {
    bool x = false;
    bool z = false;
    bool negative = false;
  };
  Image of_x{true, false, false};
  Image of_y{true, true, false};
  Image of_z{false, true, false};
};

/// Stabilizer state on n qubits as a 2n-row tableau: rows [0, n) are destabilizers,
/// rows [n, 2n) stabilizers. Each row is a labeled Pauli times (-1)^sign.
///
/// Global phase is not represented.
class StabilizerTableau {
 public:
  struct Row {
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    bool sign = false;
    bool operator==(const Row &) const = default;
  };

  /// |0...0>: destabilizers X_j, stabilizers +Z_j.
  explicit StabilizerTableau(std::size_t num_qubits) : n_(num_qubits), rows_(2 * num_qubits) {
    if (num_qubits == 0 || num_qubits > kMaxQubits) {
      throw InvalidArgument("StabilizerTableau: qubit count must be in [1, 64], got " +
                            std::to_string(num_qubits));
    }
    reset();
  }

  /// Back to |0...0> without reallocating.
  void reset() noexcept {
    for (std::size_t j = 0; j < n_; ++j) {
      rows_[j] = {std::uint64_t{1} << j, 0, false};
      rows_[n_ + j] = {0, std::uint64_t{1} << j, false};
    }
  }

  std::size_t num_qubits() const noexcept { return n_; }
  std::span<const Row> rows() const noexcept { return rows_; }
  const Row &destabilizer_row(std::size_t i) const { return rows_.at(i); }
  const Row &stabilizer_row(std::size_t i) const { return rows_.at(n_ + i); }

  /// Stabilizer generator i as a Pauli with phase 0 (+) or 2 (-).
  PauliString stabilizer(std::size_t i) const { return as_pauli(stabilizer_row(i)); }
  PauliString destabilizer(std::size_t i) const { return as_pauli(destabilizer_row(i)); }

  void apply_h(std::size_t q) {
    const std::uint64_t b = bit(q);
    for (auto &r : rows_) {
      const std::uint64_t xb = r.x & b, zb = r.z & b;
      r.sign ^= (xb & zb) != 0;
      r.x = (r.x & ~b) | zb;
      r.z = (r.z & ~b) | xb;
    }
  }

  void apply_s(std::size_t q) {
    const std::uint64_t b = bit(q);
    for (auto &r : rows_) {
      r.sign ^= (r.x & r.z & b) != 0;
      r.z ^= r.x & b;
    }
  }

  void apply_s_dag(std::size_t q) {
    const std::uint64_t b = bit(q);
    for (auto &r : rows_) {
      r.sign ^= (r.x & ~r.z & b) != 0;
      r.z ^= r.x & b;
    }
  }

  void apply_x(std::size_t q) {
    const std::uint64_t b = bit(q);
    for (auto &r : rows_) r.sign ^= (r.z & b) != 0;
  }

  void apply_z(std::size_t q) {
    const std::uint64_t b = bit(q);
    for (auto &r : rows_) r.sign ^= (r.x & b) != 0;
  }

  void apply_cnot(std::size_t control, std::size_t target) {
    if (control == target) throw InvalidArgument("CNOT: control equals target");
    const std::uint64_t bc = bit(control), bt = bit(target);
    for (auto &r : rows_) {
      const bool xc = r.x & bc, zc = r.z & bc, xt = r.x & bt, zt = r.z & bt;
      r.sign ^= xc && zt && (xt == zc);
      if (xc) r.x ^= bt;
      if (zt) r.z ^= bc;
    }
  }

  void apply(Gate g, std::size_t q) {
    switch (g) {
      case Gate::H: apply_h(q); return;
      case Gate::S: apply_s(q); return;
      case Gate::S_DAG: apply_s_dag(q); return;
      case Gate::X: apply_x(q); return;
      case Gate::Z: apply_z(q); return;
      case Gate::CNOT: throw InvalidArgument("CNOT needs two qubits");
    }
  }

  void apply(Gate g, std::span<const std::size_t> qubits) {
    if (g == Gate::CNOT) {
      if (qubits.size() != 2) throw InvalidArgument("CNOT needs exactly two qubit indices");
      apply_cnot(qubits[0], qubits[1]);
    } else {
      if (qubits.size() != 1) {
        throw InvalidArgument(std::string(gate_name(g)) + " needs exactly one qubit index");
      }
      apply(g, qubits[0]);
    }
  }

  /// Applies a precomputed single-qubit conjugation in one pass over the rows.
  void apply(const SingleQubitClifford &c, std::size_t q) {
    const std::uint64_t b = bit(q);
    const std::array<const SingleQubitClifford::Image *, 4> table{nullptr, &c.of_x, &c.of_z,
                                                                  &c.of_y};
    for (auto &r : rows_) {
      const unsigned code = ((r.x & b) != 0) | (((r.z & b) != 0) << 1);
      if (code == 0) continue;
      const auto &img = *table[code];
      r.x = img.x ? (r.x | b) : (r.x & ~b);
      r.z = img.z ? (r.z | b) : (r.z & ~b);
      r.sign ^= img.negative;
    }
  }

  /// Checks commutation structure and GF(2) independence of the stabilizers.
  bool satisfies_invariants() const {
    for (std::size_t i = 0; i < n_; ++i) {
      const Row &si = rows_[n_ + i];
      for (std::size_t j = 0; j < n_; ++j) {
        const Row &sj = rows_[n_ + j];
        const Row &dj = rows_[j];
        if (detail::anticommute_bits(si.x, si.z, sj.x, sj.z)) return false;
        if (detail::anticommute_bits(si.x, si.z, dj.x, dj.z) != (i == j)) return false;
      }
    }
    return stabilizer_rank() == n_;
  }

  /// GF(2) rank of the stabilizer rows in symplectic form.
  std::size_t stabilizer_rank() const {
    // Rows pack into 128 bits: x in the low word, z in the high word.
    std::vector<std::array<std::uint64_t, 2>> m;
    m.reserve(n_);
    for (std::size_t i = 0; i < n_; ++i) m.push_back({rows_[n_ + i].x, rows_[n_ + i].z});
    std::size_t rank = 0;
    for (std::size_t col = 0; col < 128 && rank < m.size(); ++col) {
      const std::size_t w = col / 64;
      const std::uint64_t b = std::uint64_t{1} << (col % 64);
      std::size_t pivot = rank;
      while (pivot < m.size() && !(m[pivot][w] & b)) ++pivot;
      if (pivot == m.size()) continue;
      std::swap(m[rank], m[pivot]);
      for (std::size_t r = 0; r < m.size(); ++r) {
        if (r != rank && (m[r][w] & b)) {
          m[r][0] ^= m[rank][0];
          m[r][1] ^= m[rank][1];
        }
      }
      ++rank;
    }
    return rank;
  }

  friend bool operator==(const StabilizerTableau &, const StabilizerTableau &) = default;

 private:
  std::uint64_t bit(std::size_t q) const {
    if (q >= n_) {
      throw InvalidArgument("qubit index " + std::to_string(q) + " out of range for " +
                            std::to_string(n_) + " qubits");
    }
    return std::uint64_t{1} << q;
  }

  PauliString as_pauli(const Row &r) const { return {n_, r.x, r.z, r.sign ? 2u : 0u}; }

  std::size_t n_;
  std::vector<Row> rows_;
};

inline StabilizerTableau tableau_init(std::size_t num_qubits) {
  return StabilizerTableau(num_qubits);
}

/// Functional form: returns t conjugated by the gate.
inline StabilizerTableau apply_gate(StabilizerTableau t, Gate g,
                                    std::initializer_list<std::size_t> qubits) {
  t.apply(g, std::span<const std::size_t>(qubits.begin(), qubits.size()));
  return t;
}

/// Composite conjugation action of a gate list (application order) on one qubit.
inline SingleQubitClifford compose_single_qubit(std::span<const Gate> gates) {
  StabilizerTableau t(1);  // rows: X (destabilizer), Z (stabilizer)
  for (Gate g : gates) t.apply(g, 0);
  const PauliString img_x = t.destabilizer(0);
  const PauliString img_z = t.stabilizer(0);
  // Y = i X Z.
  const PauliString img_y = multiply(img_x, img_z).with_phase(multiply(img_x, img_z).phase_ipow() + 1);
  auto image = [](const PauliString &p) {
    if (p.phase_ipow() & 1u) throw ValidationError("non-Hermitian single-qubit image");
    return SingleQubitClifford::Image{p.x(0), p.z(0), p.phase_ipow() == 2};
  };
  return {image(img_x), image(img_y), image(img_z)};
}

namespace detail {

inline void require_same_size(const StabilizerTableau &a, std::size_t n, const char *op) {
  if (a.num_qubits() != n) {
    throw InvalidArgument(std::string(op) + ": qubit count mismatch (" +
                          std::to_string(a.num_qubits()) + " vs " + std::to_string(n) + ")");
  }
}

/// <t|P|t> for a labeled P given as bits, in {-1, 0, +1}.
///
/// If P commutes with every stabilizer it is +-(product of the stabilizers S_i whose
/// destabilizer D_i anticommutes with P); the sign of that product is the expectation.
inline int expectation_bits(const StabilizerTableau &t, std::uint64_t px, std::uint64_t pz) {
  const std::size_t n = t.num_qubits();
  const auto rows = t.rows();
  for (std::size_t i = 0; i < n; ++i) {
    const auto &s = rows[n + i];
    if (anticommute_bits(px, pz, s.x, s.z)) return 0;
  }
  std::uint64_t ax = 0, az = 0;
  unsigned phase = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto &d = rows[i];
    if (!anticommute_bits(px, pz, d.x, d.z)) continue;
    const auto &s = rows[n + i];
    phase += product_ipow(ax, az, s.x, s.z) + (s.sign ? 2u : 0u);
    ax ^= s.x;
    az ^= s.z;
  }
  if (ax != px || az != pz || (phase & 1u)) {
    throw ValidationError("pauli_expectation: stabilizer decomposition failed");
  }
  return (phase & 3u) == 0 ? 1 : -1;
}

}  // namespace detail

/// <t|P|t> for a phase-free Pauli: 0 if P anticommutes with the stabilizer group, else +-1.
inline int pauli_expectation(const StabilizerTableau &t, const PauliString &p) {
  detail::require_same_size(t, p.num_qubits(), "pauli_expectation");
  if (p.phase_ipow() != 0) throw InvalidArgument("pauli_expectation: Pauli must be phase-free");
  return detail::expectation_bits(t, p.x_bits(), p.z_bits());
}

/// All 2^n signed elements of the stabilizer group (phase 0 or 2), in Gray-code order.
inline std::vector<PauliString> stabilizer_group(const StabilizerTableau &t) {
  const std::size_t n = t.num_qubits();
  if (n > 20) throw InvalidArgument("stabilizer_group: refusing to enumerate beyond 20 qubits");
  std::vector<PauliString> out;
  out.reserve(std::size_t{1} << n);
  PauliString acc = PauliString::identity(n);
  out.push_back(acc);
  for (std::uint64_t k = 1; k < (std::uint64_t{1} << n); ++k) {
    // Gray code step flips generator ctz(k).
    acc = multiply(acc, t.stabilizer(static_cast<std::size_t>(std::countr_zero(k))));
    out.push_back(acc);
  }
  return out;
}

/// |<a|b>|^2 by the projector expansion 2^-n sum_{g in S_b} <a|g|a>.
///
/// Exponential in n; this is the reference the canonical-form route is checked against.
inline double overlap_sq_projector(const StabilizerTableau &a, const StabilizerTableau &b) {
  detail::require_same_size(a, b.num_qubits(), "overlap_sq");
  long long total = 0;
  for (const PauliString &g : stabilizer_group(b)) {
    const int e = pauli_expectation(a, g.unsigned_part());
    total += g.phase_ipow() == 0 ? e : -e;
  }
  if (total < 0) throw ValidationError("overlap_sq_projector: negative projector sum");
  return std::ldexp(static_cast<double>(total), -static_cast<int>(a.num_qubits()));
}

/// |<a|b>|^2 via the intersection of the two stabilizer groups.
///
/// The elements of S_b with nonzero expectation in a form a subgroup of dimension d
/// (the kernel of the anticommutation matrix against a's stabilizers). The overlap is
/// 2^(d-n) if every kernel generator has the same sign in both groups, else 0.
inline double overlap_sq(const StabilizerTableau &a, const StabilizerTableau &b) {
  const std::size_t n = a.num_qubits();
  detail::require_same_size(a, b.num_qubits(), "overlap_sq");
  const auto ra = a.rows();
  const auto rb = b.rows();

  // Column j: which of a's stabilizers anticommute with b's generator j. Track the
  // combination of b generators each reduced column represents.
  std::array<std::uint64_t, kMaxQubits> col;
  std::array<std::uint64_t, kMaxQubits> combo;
  for (std::size_t j = 0; j < n; ++j) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (detail::anticommute_bits(ra[n + i].x, ra[n + i].z, rb[n + j].x, rb[n + j].z)) {
        v |= std::uint64_t{1} << i;
      }
    }
    col[j] = v;
    combo[j] = std::uint64_t{1} << j;
  }

  std::size_t kernel_dim = 0;
  std::size_t rank = 0;
  for (std::size_t j = 0; j < n; ++j) {
    // Reduce column j against the pivots found so far (pivot rows stored in col[0..rank)).
    for (std::size_t p = 0; p < rank; ++p) {
      const std::uint64_t lead = col[p] & (~col[p] + 1);  // lowest set bit is the pivot
      if (col[j] & lead) {
        col[j] ^= col[p];
        combo[j] ^= combo[p];
      }
    }
    if (col[j] != 0) {
      const std::uint64_t lead = col[j] & (~col[j] + 1);
      for (std::size_t p = 0; p < rank; ++p) {
        if (col[p] & lead) {
          col[p] ^= col[j];
          combo[p] ^= combo[j];
        }
      }
      std::swap(col[rank], col[j]);
      std::swap(combo[rank], combo[j]);
      ++rank;
      continue;
    }
    // combo[j] is a kernel element: a product of b generators lying in +-S_a.
    ++kernel_dim;
    std::uint64_t gx = 0, gz = 0;
    unsigned phase = 0;
    for (std::size_t g = 0; g < n; ++g) {
      if (!((combo[j] >> g) & 1u)) continue;
      const auto &s = rb[n + g];
      phase += detail::product_ipow(gx, gz, s.x, s.z) + (s.sign ? 2u : 0u);
      gx ^= s.x;
      gz ^= s.z;
    }
    const int sign_b = (phase & 3u) == 0 ? 1 : -1;
    const int sign_a = detail::expectation_bits(a, gx, gz);
    if (sign_a == 0) throw ValidationError("overlap_sq: kernel element outside stabilizer group");
    if (sign_a != sign_b) return 0.0;
  }
  return std::ldexp(1.0, static_cast<int>(kernel_dim) - static_cast<int>(n));
}

}  // namespace cliffvqd
