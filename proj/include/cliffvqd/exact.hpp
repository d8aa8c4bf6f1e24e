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

// Dense ground truth: Hamiltonian matrices, Hermitian eigenvalues, statevectors.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cliffvqd/ansatz.hpp"
#include "cliffvqd/error.hpp"
#include "cliffvqd/linalg.hpp"
#include "cliffvqd/pauli.hpp"

namespace cliffvqd {

/// Dense matrix checked Hermitian on construction.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(DenseMatrix m, double tolerance = 1e-12) : m_(std::move(m)) {
    const std::size_t d = m_.dim();
    if (d == 0 || !std::has_single_bit(d)) {
      throw InvalidArgument("HermitianMatrix: dimension must be a power of two");
    }
    double scale = 1.0;
    for (const auto &z : m_.data()) scale = std::max(scale, std::abs(z));
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = r; c < d; ++c) {
        if (std::abs(m_(r, c) - std::conj(m_(c, r))) > tolerance * scale) {
          throw InvalidArgument("HermitianMatrix: input is not Hermitian at (" +
                                std::to_string(r) + ", " + std::to_string(c) + ")");
        }
      }
    }
  }

  std::size_t dim() const noexcept { return m_.dim(); }
  const DenseMatrix &matrix() const noexcept { return m_; }
  const Complex &operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

 private:
  DenseMatrix m_;
};

namespace detail {

struct DensePauli {
  std::size_t xmask = 0;  // basis-index bits flipped by P
  std::size_t zmask = 0;  // basis-index bits contributing (-1)
  Complex phase = 1.0;    // i^(number of Y factors)
};

inline DensePauli dense_pauli(const PauliString &p) {
  const std::size_t n = p.num_qubits();
  DensePauli d;
  int ys = 0;
  for (std::size_t q = 0; q < n; ++q) {
    const std::size_t b = std::size_t{1} << basis_bit(n, q);
    if (p.x(q)) d.xmask |= b;
    if (p.z(q)) d.zmask |= b;
    if (p.x(q) && p.z(q)) ++ys;
  }
  static constexpr Complex kIpow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  d.phase = kIpow[(ys + p.phase_ipow()) & 3];
  return d;
}

}  // namespace detail

/// Dense matrix of a Pauli string (phase included); P|b> = phase * (-1)^{|b & z|} |b ^ x>.
inline DenseMatrix dense_pauli_matrix(const PauliString &p,
                                      std::size_t qubit_cap = kDenseQubitCap) {
  require_dense_size(p.num_qubits(), qubit_cap);
  const auto dp = detail::dense_pauli(p);
  const std::size_t dim = std::size_t{1} << p.num_qubits();
  DenseMatrix m(dim);
  for (std::size_t b = 0; b < dim; ++b) {
    const double sign = (std::popcount(b & dp.zmask) & 1) ? -1.0 : 1.0;
    m(b ^ dp.xmask, b) = dp.phase * sign;
  }
  return m;
}

inline HermitianMatrix dense_hamiltonian(const PauliSumHamiltonian &h,
                                         std::size_t qubit_cap = kDenseQubitCap) {
  require_dense_size(h.num_qubits(), qubit_cap);
  const std::size_t dim = std::size_t{1} << h.num_qubits();
  DenseMatrix m(dim);
  for (const auto &term : h.terms()) {
    const auto dp = detail::dense_pauli(term.pauli);
    for (std::size_t b = 0; b < dim; ++b) {
      const double sign = (std::popcount(b & dp.zmask) & 1) ? -1.0 : 1.0;
      m(b ^ dp.xmask, b) += term.coefficient * sign * dp.phase;
    }
  }
  return HermitianMatrix(std::move(m));
}

/// Eigenvalues of a real symmetric matrix (row-major, dim x dim) by cyclic Jacobi.
/// Unsorted; the input is destroyed.
inline std::vector<double> jacobi_symmetric_eigenvalues(std::vector<double> &a, std::size_t dim,
                                                        double off_tolerance = 1e-13,
                                                        int max_sweeps = 100) {
  auto at = [&](std::size_t r, std::size_t c) -> double & { return a[r * dim + c]; };
  double frob = 0.0;
  for (double v : a) frob += v * v;
  const double threshold = off_tolerance * std::max(1.0, std::sqrt(frob));

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < dim; ++p) {
      for (std::size_t q = p + 1; q < dim; ++q) off += 2 * at(p, q) * at(p, q);
    }
    if (std::sqrt(off) <= threshold) break;

    for (std::size_t p = 0; p + 1 < dim; ++p) {
      for (std::size_t q = p + 1; q < dim; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;
        // A <- J^T A J with the rotation in the (p, q) plane.
        for (std::size_t k = 0; k < dim; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < dim; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        at(p, q) = 0.0;
        at(q, p) = 0.0;
      }
    }
  }
  std::vector<double> eig(dim);
  for (std::size_t i = 0; i < dim; ++i) eig[i] = at(i, i);
  return eig;
}

/// All eigenvalues, ascending, via the real symmetric embedding [[Re, -Im], [Im, Re]].
///
/// The embedding doubles every eigenvalue; the sorted spectrum is paired up and each pair
/// must agree to 1e-9 (relative to the matrix scale).
inline std::vector<double> eigenspectrum(const HermitianMatrix &m) {
  const std::size_t d = m.dim();
  const std::size_t d2 = 2 * d;
  std::vector<double> a(d2 * d2);
  double scale = 1.0;
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      const Complex z = m(r, c);
      a[r * d2 + c] = z.real();
      a[r * d2 + (c + d)] = -z.imag();
      a[(r + d) * d2 + c] = z.imag();
      a[(r + d) * d2 + (c + d)] = z.real();
      scale = std::max(scale, std::abs(z));
    }
  }
  std::vector<double> doubled = jacobi_symmetric_eigenvalues(a, d2);
  std::sort(doubled.begin(), doubled.end());
  std::vector<double> out;
  out.reserve(d);
  for (std::size_t i = 0; i < d2; i += 2) {
    if (std::abs(doubled[i] - doubled[i + 1]) > 1e-9 * scale * static_cast<double>(d)) {
      throw ValidationError("eigenspectrum: embedded eigenvalues failed to pair at index " +
                            std::to_string(i / 2));
    }
    out.push_back(0.5 * (doubled[i] + doubled[i + 1]));
  }
  return out;
}

inline std::vector<double> eigenspectrum(const PauliSumHamiltonian &h) {
  return eigenspectrum(dense_hamiltonian(h));
}

/// U(angles)|0...0>.
inline StateVector dense_state(const AnsatzTemplate &t, std::span<const double> angles,
                               std::size_t qubit_cap = kDenseQubitCap) {
  require_dense_size(t.num_qubits(), qubit_cap);
  StateVector v(std::size_t{1} << t.num_qubits());
  v[0] = 1.0;
  apply_ansatz(t, angles, v);
  return v;
}

namespace detail {

inline void require_normalized(std::span<const Complex> v, const char *op) {
  if (std::abs(norm(v) - 1.0) > 1e-8) {
    throw InvalidArgument(std::string(op) + ": input state is not normalized");
  }
}

}  // namespace detail

/// <v|P|v> for one Pauli without forming its matrix.
inline Complex dense_pauli_expectation(std::span<const Complex> v, const PauliString &p) {
  const auto dp = detail::dense_pauli(p);
  Complex s = 0.0;
  for (std::size_t b = 0; b < v.size(); ++b) {
    const double sign = (std::popcount(b & dp.zmask) & 1) ? -1.0 : 1.0;
    s += std::conj(v[b ^ dp.xmask]) * v[b] * sign;
  }
  return s * dp.phase;
}

/// <v|H|v> in Hartree; the imaginary part must vanish to 1e-10.
inline double dense_expectation(std::span<const Complex> v, const PauliSumHamiltonian &h) {
  if (v.size() != (std::size_t{1} << h.num_qubits())) {
    throw InvalidArgument("dense_expectation: dimension mismatch");
  }
  detail::require_normalized(v, "dense_expectation");
  Complex total = 0.0;
  for (const auto &term : h.terms()) total += term.coefficient * dense_pauli_expectation(v, term.pauli);
  if (std::abs(total.imag()) > 1e-10) {
    throw ValidationError("dense_expectation: non-real expectation value");
  }
  return total.real();
}

inline double dense_expectation(std::span<const Complex> v, const HermitianMatrix &m) {
  if (v.size() != m.dim()) throw InvalidArgument("dense_expectation: dimension mismatch");
  detail::require_normalized(v, "dense_expectation");
  const Complex total = inner(v, m.matrix().apply(v));
  if (std::abs(total.imag()) > 1e-10) {
    throw ValidationError("dense_expectation: non-real expectation value");
  }
  return total.real();
}

inline double dense_overlap_sq(std::span<const Complex> u, std::span<const Complex> v) {
  if (u.size() != v.size()) throw InvalidArgument("dense_overlap_sq: dimension mismatch");
  detail::require_normalized(u, "dense_overlap_sq");
  detail::require_normalized(v, "dense_overlap_sq");
  return std::norm(inner(u, v));
}

}  // namespace cliffvqd
