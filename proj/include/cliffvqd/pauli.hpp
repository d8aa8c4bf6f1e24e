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

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cliffvqd/error.hpp"

namespace cliffvqd {

/// Upper bound on register size; every Pauli row is a single 64-bit word pair.
inline constexpr std::size_t kMaxQubits = 64;

/// An n-qubit Pauli operator i^phase * P_0 (x) ... (x) P_{n-1} in binary symplectic form.
///
/// Qubit j lives at bit j of both words. (x, z) = (1, 1) encodes Y itself, not XZ,
/// so labeled Paulis always carry phase 0.
class PauliString {
 public:
  PauliString() = default;

  PauliString(std::size_t num_qubits, std::uint64_t x_bits, std::uint64_t z_bits,
              unsigned phase_ipow = 0)
      : num_qubits_(num_qubits), x_(x_bits), z_(z_bits), phase_(phase_ipow & 3u) {
    if (num_qubits == 0 || num_qubits > kMaxQubits) {
      throw InvalidArgument("PauliString: qubit count must be in [1, 64], got " +
                            std::to_string(num_qubits));
    }
    if ((x_bits | z_bits) & ~mask()) {
      throw InvalidArgument("PauliString: bits set beyond qubit count");
    }
  }

  static PauliString identity(std::size_t num_qubits) { return {num_qubits, 0, 0, 0}; }

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::uint64_t x_bits() const noexcept { return x_; }
  std::uint64_t z_bits() const noexcept { return z_; }
  unsigned phase_ipow() const noexcept { return phase_; }

  bool x(std::size_t q) const noexcept { return (x_ >> q) & 1u; }
  bool z(std::size_t q) const noexcept { return (z_ >> q) & 1u; }

  /// Character at qubit q, ignoring the phase.
  char letter(std::size_t q) const noexcept { return "IXZY"[x(q) | (z(q) << 1)]; }

  bool is_identity() const noexcept { return (x_ | z_) == 0; }
  std::size_t weight() const noexcept { return std::popcount(x_ | z_); }

  /// Same operator with the phase replaced.
  PauliString with_phase(unsigned phase_ipow) const noexcept {
    PauliString out = *this;
    out.phase_ = phase_ipow & 3u;
    return out;
  }

  /// Same Pauli letters with phase 0.
  PauliString unsigned_part() const noexcept { return with_phase(0); }

  std::uint64_t mask() const noexcept {
    return num_qubits_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << num_qubits_) - 1;
  }

  friend bool operator==(const PauliString &, const PauliString &) = default;

 private:
  std::size_t num_qubits_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  unsigned phase_ = 0;
};

/// Parses a label such as "XIZY"; character j acts on qubit j.
inline PauliString parse_pauli(std::string_view label) {
  if (label.empty()) throw ParseError("empty Pauli label");
  if (label.size() > kMaxQubits) {
    throw ParseError("Pauli label longer than " + std::to_string(kMaxQubits) + " qubits");
  }
  std::uint64_t x = 0, z = 0;
  for (std::size_t j = 0; j < label.size(); ++j) {
    const std::uint64_t bit = std::uint64_t{1} << j;
    switch (label[j]) {
      case 'I': break;
      case 'X': x |= bit; break;
      case 'Z': z |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      default:
        throw ParseError(std::string("invalid Pauli character '") + label[j] + "' in label \"" +
                         std::string(label) + "\"");
    }
  }
  return {label.size(), x, z, 0};
}

/// Inverse of parse_pauli. A non-zero phase is rendered as a prefix: "+i", "-", "-i".
inline std::string format_pauli(const PauliString &p) {
  static constexpr const char *kPrefix[4] = {"", "+i", "-", "-i"};
  std::string out = kPrefix[p.phase_ipow()];
  for (std::size_t q = 0; q < p.num_qubits(); ++q) out.push_back(p.letter(q));
  return out;
}

namespace detail {

inline void require_same_size(const PauliString &p, const PauliString &q, const char *op) {
  if (p.num_qubits() != q.num_qubits()) {
    throw InvalidArgument(std::string(op) + ": qubit count mismatch (" +
                          std::to_string(p.num_qubits()) + " vs " +
                          std::to_string(q.num_qubits()) + ")");
  }
}

/// Symplectic inner product of two (x, z) word pairs.
inline bool anticommute_bits(std::uint64_t x1, std::uint64_t z1, std::uint64_t x2,
                             std::uint64_t z2) noexcept {
  return std::popcount((x1 & z2) ^ (z1 & x2)) & 1;
}

/// Exponent e (mod 4) with P1 * P2 = i^e * P3 for labeled Paulis, accumulated over qubits.
inline unsigned product_ipow(std::uint64_t x1, std::uint64_t z1, std::uint64_t x2,
                             std::uint64_t z2) noexcept {
  const std::uint64_t y1 = x1 & z1, only_x1 = x1 & ~z1, only_z1 = z1 & ~x1;
  const std::uint64_t y2 = x2 & z2, only_x2 = x2 & ~z2, only_z2 = z2 & ~x2;
  // XY = iZ, YZ = iX, ZX = iY; reversed order picks up -i.
  const std::uint64_t plus = (only_x1 & y2) | (y1 & only_z2) | (only_z1 & only_x2);
  const std::uint64_t minus = (y1 & only_x2) | (only_x1 & only_z2) | (only_z1 & y2);
  return static_cast<unsigned>(std::popcount(plus) - std::popcount(minus)) & 3u;
}

}  // namespace detail

inline bool commutes(const PauliString &p, const PauliString &q) {
  detail::require_same_size(p, q, "commutes");
  return !detail::anticommute_bits(p.x_bits(), p.z_bits(), q.x_bits(), q.z_bits());
}

/// Exact operator product p * q including the i-power.
inline PauliString multiply(const PauliString &p, const PauliString &q) {
  detail::require_same_size(p, q, "multiply");
  const unsigned phase = p.phase_ipow() + q.phase_ipow() +
                         detail::product_ipow(p.x_bits(), p.z_bits(), q.x_bits(), q.z_bits());
  return {p.num_qubits(), p.x_bits() ^ q.x_bits(), p.z_bits() ^ q.z_bits(), phase};
}

struct PauliTerm {
  double coefficient = 0.0;
  PauliString pauli;
};

/// Real-weighted sum of labeled Paulis (Hartree). Duplicate labels are merged on insertion.
class PauliSumHamiltonian {
 public:
  PauliSumHamiltonian() = default;
  explicit PauliSumHamiltonian(std::size_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits == 0 || num_qubits > kMaxQubits) {
      throw InvalidArgument("PauliSumHamiltonian: qubit count must be in [1, 64]");
    }
  }

  /// Builds from (coefficient, label) pairs; the first label fixes the qubit count.
  static PauliSumHamiltonian from_labels(
      const std::vector<std::pair<double, std::string>> &terms) {
    if (terms.empty()) throw InvalidArgument("PauliSumHamiltonian: no terms");
    PauliSumHamiltonian h(terms.front().second.size());
    for (const auto &[c, label] : terms) h.add_term(c, parse_pauli(label));
    return h;
  }

  void add_term(double coefficient, const PauliString &pauli) {
    if (pauli.num_qubits() != num_qubits_) {
      throw InvalidArgument("PauliSumHamiltonian: term has " + std::to_string(pauli.num_qubits()) +
                            " qubits, expected " + std::to_string(num_qubits_));
    }
    if (pauli.phase_ipow() != 0) {
      throw InvalidArgument("PauliSumHamiltonian: terms must be phase-free labeled Paulis");
    }
    if (!std::isfinite(coefficient)) {
      throw InvalidArgument("PauliSumHamiltonian: non-finite coefficient for " +
                            format_pauli(pauli));
    }
    const Key key{pauli.x_bits(), pauli.z_bits()};
    if (auto it = index_.find(key); it != index_.end()) {
      terms_[it->second].coefficient += coefficient;
      return;
    }
    index_.emplace(key, terms_.size());
    terms_.push_back({coefficient, pauli});
  }

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  const std::vector<PauliTerm> &terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  /// Sum of |c_j|.
  double coefficient_one_norm() const noexcept {
    double s = 0.0;
    for (const auto &t : terms_) s += std::abs(t.coefficient);
    return s;
  }

  /// Coefficient of the identity term, or 0.
  double identity_coefficient() const noexcept {
    for (const auto &t : terms_) {
      if (t.pauli.is_identity()) return t.coefficient;
    }
    return 0.0;
  }

 private:
  struct Key {
    std::uint64_t x, z;
    bool operator==(const Key &) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key &k) const noexcept {
      return std::hash<std::uint64_t>{}(k.x * 0x9E3779B97F4A7C15ull ^ k.z);
    }
  };

  std::size_t num_qubits_ = 0;
  std::vector<PauliTerm> terms_;
  std::unordered_map<Key, std::size_t, KeyHash> index_;
};

}  // namespace cliffvqd
