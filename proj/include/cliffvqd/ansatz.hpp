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

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cliffvqd/error.hpp"
#include "cliffvqd/linalg.hpp"
#include "cliffvqd/tableau.hpp"

namespace cliffvqd {

enum class RotationAxis { X, Y, Z };

inline const char *axis_name(RotationAxis a) {
  switch (a) {
    case RotationAxis::X: return "RX";
    case RotationAxis::Y: return "RY";
    case RotationAxis::Z: return "RZ";
  }
  return "?";
}

struct RotationSlot {
  RotationAxis axis;
  std::size_t qubit;
  std::size_t param;  // index into the parameter vector
};

struct CnotSlot {
  std::size_t control;
  std::size_t target;
};

using ScheduleOp = std::variant<RotationSlot, CnotSlot>;

/// Hardware-efficient layout: L blocks of [Ry column, Rz column, CNOT chain], then a
/// trailing Ry and Rz column. Parameters are numbered in schedule order, ascending
/// qubit within a column, so (n=2, L=2) gives theta0..theta11 as
///   Ry q0, Ry q1, Rz q0, Rz q1, CNOT(0,1), ..., Ry q0, Ry q1, Rz q0, Rz q1.
class AnsatzTemplate {
 public:
  AnsatzTemplate(std::size_t num_qubits, std::size_t entangling_blocks)
      : n_(num_qubits), blocks_(entangling_blocks) {
    if (num_qubits == 0 || num_qubits > kMaxQubits) {
      throw InvalidArgument("AnsatzTemplate: qubit count must be in [1, 64]");
    }
    std::size_t p = 0;
    auto rotation_column = [&](RotationAxis axis) {
      for (std::size_t q = 0; q < n_; ++q) schedule_.push_back(RotationSlot{axis, q, p++});
    };
    for (std::size_t b = 0; b < blocks_; ++b) {
      rotation_column(RotationAxis::Y);
      rotation_column(RotationAxis::Z);
      for (std::size_t q = 0; q + 1 < n_; ++q) schedule_.push_back(CnotSlot{q, q + 1});
    }
    rotation_column(RotationAxis::Y);
    rotation_column(RotationAxis::Z);
    parameter_count_ = p;
  }

  std::size_t num_qubits() const noexcept { return n_; }
  std::size_t entangling_blocks() const noexcept { return blocks_; }
  std::size_t parameter_count() const noexcept { return parameter_count_; }
  const std::vector<ScheduleOp> &schedule() const noexcept { return schedule_; }

  friend bool operator==(const AnsatzTemplate &a, const AnsatzTemplate &b) {
    return a.n_ == b.n_ && a.blocks_ == b.blocks_;
  }

 private:
  std::size_t n_;
  std::size_t blocks_;
  std::size_t parameter_count_ = 0;
  std::vector<ScheduleOp> schedule_;
};

/// Discrete rotation parameters; entry j means angle ks[j] * pi/2.
class CliffordParams {
 public:
  CliffordParams() = default;
  explicit CliffordParams(std::size_t count) : ks_(count, 0) {}
  explicit CliffordParams(std::vector<std::uint8_t> ks) : ks_(std::move(ks)) {
    for (auto k : ks_) {
      if (k > 3) throw InvalidArgument("CliffordParams: entries must be in {0,1,2,3}");
    }
  }
  CliffordParams(std::initializer_list<int> ks) {
    ks_.reserve(ks.size());
    for (int k : ks) {
      if (k < 0 || k > 3) throw InvalidArgument("CliffordParams: entries must be in {0,1,2,3}");
      ks_.push_back(static_cast<std::uint8_t>(k));
    }
  }

  /// Parses a base-4 digit string such as "020013100230".
  static CliffordParams from_string(std::string_view digits) {
    std::vector<std::uint8_t> ks;
    ks.reserve(digits.size());
    for (char c : digits) {
      if (c < '0' || c > '3') {
        throw ParseError("invalid Clifford parameter digit '" + std::string(1, c) + "'");
      }
      ks.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return CliffordParams(std::move(ks));
  }

  /// Decodes a lexicographic rank: digit 0 is the most significant base-4 digit.
  static CliffordParams from_index(std::uint64_t index, std::size_t count) {
    CliffordParams p(count);
    p.assign_index(index);
    return p;
  }

  std::size_t size() const noexcept { return ks_.size(); }
  std::uint8_t operator[](std::size_t j) const { return ks_[j]; }
  std::span<const std::uint8_t> values() const noexcept { return ks_; }

  void set(std::size_t j, std::uint8_t k) {
    if (k > 3) throw InvalidArgument("CliffordParams: entries must be in {0,1,2,3}");
    ks_.at(j) = k;
  }

  void assign_index(std::uint64_t index) noexcept {
    for (std::size_t j = ks_.size(); j-- > 0;) {
      ks_[j] = static_cast<std::uint8_t>(index & 3u);
      index >>= 2;
    }
  }

  /// Lexicographic successor; returns false after the last vector (all 3s).
  bool increment() noexcept {
    for (std::size_t j = ks_.size(); j-- > 0;) {
      if (ks_[j] < 3) {
        ++ks_[j];
        return true;
      }
      ks_[j] = 0;
    }
    return false;
  }

  std::uint64_t index() const noexcept {
    std::uint64_t idx = 0;
    for (auto k : ks_) idx = (idx << 2) | k;
    return idx;
  }

  std::string to_string() const {
    std::string s;
    s.reserve(ks_.size());
    for (auto k : ks_) s.push_back(static_cast<char>('0' + k));
    return s;
  }

  std::vector<double> angles() const {
    std::vector<double> out;
    out.reserve(ks_.size());
    for (auto k : ks_) out.push_back(k * (std::numbers::pi / 2));
    return out;
  }

  friend bool operator==(const CliffordParams &, const CliffordParams &) = default;
  friend auto operator<=>(const CliffordParams &, const CliffordParams &) = default;

 private:
  std::vector<std::uint8_t> ks_;
};

/// Clifford gate list (application order) equal to exp(-i k pi/4 A) up to global phase.
inline std::vector<Gate> rotation_to_cliffords(RotationAxis axis, int k) {
  if (k < 0 || k > 3) {
    throw InvalidArgument("rotation_to_cliffords: k must be in {0,1,2,3}, got " +
                          std::to_string(k));
  }
  std::vector<Gate> rz;
  if (k == 1) rz = {Gate::S};
  if (k == 2) rz = {Gate::Z};
  if (k == 3) rz = {Gate::S_DAG};
  std::vector<Gate> out;
  switch (axis) {
    case RotationAxis::Z:
      return rz;
    case RotationAxis::X:
      out.push_back(Gate::H);
      out.insert(out.end(), rz.begin(), rz.end());
      out.push_back(Gate::H);
      return out;
    case RotationAxis::Y:
      // Ry = S Rx S^dag
      out = {Gate::S_DAG, Gate::H};
      out.insert(out.end(), rz.begin(), rz.end());
      out.push_back(Gate::H);
      out.push_back(Gate::S);
      return out;
  }
  return out;
}

namespace detail {

/// Conjugation tables for every (axis, k), derived once from rotation_to_cliffords.
inline const std::array<std::array<SingleQubitClifford, 4>, 3> &rotation_tables() {
  static const auto tables = [] {
    std::array<std::array<SingleQubitClifford, 4>, 3> t{};
    for (int a = 0; a < 3; ++a) {
      for (int k = 0; k < 4; ++k) {
        const auto seq = rotation_to_cliffords(static_cast<RotationAxis>(a), k);
        t[a][k] = compose_single_qubit(seq);
      }
    }
    return t;
  }();
  return tables;
}

inline void require_matching(const AnsatzTemplate &t, std::size_t count, const char *op) {
  if (count != t.parameter_count()) {
    throw InvalidArgument(std::string(op) + ": expected " + std::to_string(t.parameter_count()) +
                          " parameters, got " + std::to_string(count));
  }
}

}  // namespace detail

/// Writes U(ks * pi/2)|0...0> into `out`, reusing its storage.
inline void prepare_state_into(const AnsatzTemplate &t, const CliffordParams &params,
                               StabilizerTableau &out) {
  detail::require_matching(t, params.size(), "prepare_state");
  if (out.num_qubits() != t.num_qubits()) {
    throw InvalidArgument("prepare_state: output tableau has the wrong qubit count");
  }
  const auto &tables = detail::rotation_tables();
  out.reset();
  for (const auto &op : t.schedule()) {
    if (const auto *rot = std::get_if<RotationSlot>(&op)) {
      const std::uint8_t k = params[rot->param];
      if (k != 0) out.apply(tables[static_cast<int>(rot->axis)][k], rot->qubit);
    } else {
      const auto &cx = std::get<CnotSlot>(op);
      out.apply_cnot(cx.control, cx.target);
    }
  }
}

inline StabilizerTableau prepare_state(const AnsatzTemplate &t, const CliffordParams &params) {
  StabilizerTableau out(t.num_qubits());
  prepare_state_into(t, params, out);
  return out;
}

inline Matrix2 rotation_matrix(RotationAxis axis, double theta) {
  switch (axis) {
    case RotationAxis::X: return gates::rx(theta);
    case RotationAxis::Y: return gates::ry(theta);
    case RotationAxis::Z: return gates::rz(theta);
  }
  return {};
}

/// Applies U(angles) to a state vector in place.
inline void apply_ansatz(const AnsatzTemplate &t, std::span<const double> angles,
                         std::span<Complex> v) {
  detail::require_matching(t, angles.size(), "apply_ansatz");
  const std::size_t n = t.num_qubits();
  for (const auto &op : t.schedule()) {
    if (const auto *rot = std::get_if<RotationSlot>(&op)) {
      apply_single(v, n, rot->qubit, rotation_matrix(rot->axis, angles[rot->param]));
    } else {
      const auto &cx = std::get<CnotSlot>(op);
      apply_cnot(v, n, cx.control, cx.target);
    }
  }
}

/// Full 2^n x 2^n matrix of U(angles); qubit 0 is the most significant basis bit.
inline DenseMatrix dense_unitary(const AnsatzTemplate &t, std::span<const double> angles,
                                 std::size_t qubit_cap = kDenseQubitCap) {
  require_dense_size(t.num_qubits(), qubit_cap);
  detail::require_matching(t, angles.size(), "dense_unitary");
  const std::size_t dim = std::size_t{1} << t.num_qubits();
  DenseMatrix u(dim);
  StateVector col(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    std::fill(col.begin(), col.end(), Complex{});
    col[c] = 1.0;
    apply_ansatz(t, angles, col);
    for (std::size_t r = 0; r < dim; ++r) u(r, c) = col[r];
  }
  return u;
}

}  // namespace cliffvqd
