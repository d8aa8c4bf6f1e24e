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
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cliffvqd/error.hpp"
#include "cliffvqd/tableau.hpp"

namespace cliffvqd {

using Complex = std::complex<double>;
using StateVector = std::vector<Complex>;

/// Largest register the dense routines accept by default.
inline constexpr std::size_t kDenseQubitCap = 12;

inline void require_dense_size(std::size_t num_qubits, std::size_t cap = kDenseQubitCap) {
  if (num_qubits == 0 || num_qubits > cap) {
    throw InvalidArgument("dense simulation supports 1.." + std::to_string(cap) +
                          " qubits, got " + std::to_string(num_qubits));
  }
}

/// Square complex matrix, row-major.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  static DenseMatrix identity(std::size_t dim) {
    DenseMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t dim() const noexcept { return dim_; }
  Complex &operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const Complex &operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
  std::span<const Complex> data() const noexcept { return data_; }

  DenseMatrix adjoint() const {
    DenseMatrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
      for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    }
    return out;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  StateVector apply(std::span<const Complex> v) const {
    if (v.size() != dim_) throw InvalidArgument("DenseMatrix::apply: dimension mismatch");
    StateVector out(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
      Complex s = 0.0;
      for (std::size_t c = 0; c < dim_; ++c) s += (*this)(r, c) * v[c];
      out[r] = s;
    }
    return out;
  }

  friend DenseMatrix operator*(const DenseMatrix &a, const DenseMatrix &b) {
    if (a.dim_ != b.dim_) throw InvalidArgument("DenseMatrix product: dimension mismatch");
    DenseMatrix out(a.dim_);
    for (std::size_t r = 0; r < a.dim_; ++r) {
      for (std::size_t k = 0; k < a.dim_; ++k) {
        const Complex ark = a(r, k);
        if (ark == Complex{}) continue;
        for (std::size_t c = 0; c < a.dim_; ++c) out(r, c) += ark * b(k, c);
      }
    }
    return out;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

using Matrix2 = std::array<Complex, 4>;  // row-major 2x2

namespace gates {

inline Matrix2 rx(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return {Complex(c, 0), Complex(0, -s), Complex(0, -s), Complex(c, 0)};
}

inline Matrix2 ry(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return {Complex(c, 0), Complex(-s, 0), Complex(s, 0), Complex(c, 0)};
}

inline Matrix2 rz(double theta) {
  return {std::polar(1.0, -theta / 2), 0.0, 0.0, std::polar(1.0, theta / 2)};
}

inline Matrix2 single(Gate g) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (g) {
    case Gate::H: return {r, r, r, -r};
    case Gate::S: return {1.0, 0.0, 0.0, Complex(0, 1)};
    case Gate::S_DAG: return {1.0, 0.0, 0.0, Complex(0, -1)};
    case Gate::X: return {0.0, 1.0, 1.0, 0.0};
    case Gate::Z: return {1.0, 0.0, 0.0, -1.0};
    case Gate::CNOT: break;
  }
  throw InvalidArgument("gates::single: CNOT is not a single-qubit gate");
}

inline Matrix2 multiply(const Matrix2 &a, const Matrix2 &b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

}  // namespace gates

/// Bit of the computational-basis index holding qubit q; qubit 0 is most significant.
inline std::size_t basis_bit(std::size_t num_qubits, std::size_t q) { return num_qubits - 1 - q; }

/// v <- (I (x) .. (x) u_q (x) .. (x) I) v
inline void apply_single(std::span<Complex> v, std::size_t num_qubits, std::size_t q,
                         const Matrix2 &u) {
  const std::size_t stride = std::size_t{1} << basis_bit(num_qubits, q);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i & stride) continue;
    const Complex a = v[i], b = v[i | stride];
    v[i] = u[0] * a + u[1] * b;
    v[i | stride] = u[2] * a + u[3] * b;
  }
}

inline void apply_cnot(std::span<Complex> v, std::size_t num_qubits, std::size_t control,
                       std::size_t target) {
  if (control == target) throw InvalidArgument("CNOT: control equals target");
  const std::size_t cb = std::size_t{1} << basis_bit(num_qubits, control);
  const std::size_t tb = std::size_t{1} << basis_bit(num_qubits, target);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if ((i & cb) && !(i & tb)) std::swap(v[i], v[i | tb]);
  }
}

/// Dense matrix of a Clifford gate list (application order) on one qubit.
inline Matrix2 sequence_matrix(std::span<const Gate> gates_in_order) {
  Matrix2 u{1.0, 0.0, 0.0, 1.0};
  for (Gate g : gates_in_order) u = gates::multiply(gates::single(g), u);
  return u;
}

inline Complex inner(std::span<const Complex> u, std::span<const Complex> v) {
  if (u.size() != v.size()) throw InvalidArgument("inner: dimension mismatch");
  Complex s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

inline double norm(std::span<const Complex> v) { return std::sqrt(std::real(inner(v, v))); }

}  // namespace cliffvqd
