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

// Stabilizer engine vs dense statevector cross-checks.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cliffvqd/ansatz.hpp"
#include "cliffvqd/cost.hpp"
#include "cliffvqd/exact.hpp"
#include "cliffvqd/tableau.hpp"

namespace cliffvqd {

/// Uniform double in [lo, hi) from 53 random bits.
inline double uniform_real(std::mt19937_64 &rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

inline CliffordParams random_params(std::mt19937_64 &rng, std::size_t count) {
  std::vector<std::uint8_t> ks(count);
  for (auto &k : ks) k = static_cast<std::uint8_t>(rng() >> 62);
  return CliffordParams(std::move(ks));
}

/// `terms` random labels (repeats merge) with coefficients uniform in [lo, hi).
inline PauliSumHamiltonian random_hamiltonian(std::mt19937_64 &rng, std::size_t n,
                                              std::size_t terms, double lo = -2.0,
                                              double hi = 2.0) {
  PauliSumHamiltonian h(n);
  const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  for (std::size_t t = 0; t < terms; ++t) {
    const double c = uniform_real(rng, lo, hi);
    h.add_term(c, PauliString(n, rng() & mask, rng() & mask));
  }
  return h;
}

/// Every one of the 4^n labels with an independent coefficient in [lo, hi).
inline PauliSumHamiltonian random_full_hamiltonian(std::mt19937_64 &rng, std::size_t n,
                                                   double lo = -2.0, double hi = 2.0) {
  PauliSumHamiltonian h(n);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << (2 * n)); ++code) {
    const std::uint64_t x = code & ((std::uint64_t{1} << n) - 1);
    const std::uint64_t z = code >> n;
    h.add_term(uniform_real(rng, lo, hi), PauliString(n, x, z));
  }
  return h;
}

/// | |tr(U_c^dag R)| - 2 | for the compiled rotation (axis, k).
inline double rotation_compilation_error(RotationAxis axis, int k) {
  const auto seq = rotation_to_cliffords(axis, k);
  const Matrix2 uc = sequence_matrix(seq);
  const Matrix2 r = rotation_matrix(axis, k * std::numbers::pi / 2);
  const Complex tr = std::conj(uc[0]) * r[0] + std::conj(uc[2]) * r[2] +
                     std::conj(uc[1]) * r[1] + std::conj(uc[3]) * r[3];
  return std::abs(std::abs(tr) - 2.0);
}

struct ValidationOptions {
  std::size_t n_qubits = 2;
  std::size_t entangling_blocks = 2;
  std::size_t samples = 1000;       // random parameter vectors
  std::size_t hamiltonians = 5;     // random Hamiltonians checked on every sample
  std::size_t terms_per_hamiltonian = 12;
  std::size_t pairs = 1000;         // random state pairs for overlaps
  std::uint64_t seed = 1;
  double tolerance = 1e-10;
  std::vector<PauliSumHamiltonian> extra_hamiltonians;
};

struct ValidationReport {
  std::size_t energy_checks = 0;
  std::size_t overlap_checks = 0;
  std::size_t invariant_checks = 0;
  std::size_t rotation_checks = 0;
  std::size_t failures = 0;
  double max_energy_error = 0.0;
  double max_overlap_error = 0.0;
  std::vector<std::string> messages;  // first few failures

  bool ok() const noexcept { return failures == 0; }

  void fail(std::string msg) {
    ++failures;
    if (messages.size() < 10) messages.push_back(std::move(msg));
  }
};

/// Random Clifford-grid states on the template: energies against dense expectations,
/// both overlap routes against dense overlaps, tableau invariants, and the 12
/// rotation compilations.
inline ValidationReport validate_cross_oracle(const ValidationOptions &opts) {
  ValidationReport rep;
  const AnsatzTemplate t(opts.n_qubits, opts.entangling_blocks);
  std::mt19937_64 rng(opts.seed);

  for (int a = 0; a < 3; ++a) {
    for (int k = 0; k < 4; ++k) {
      ++rep.rotation_checks;
      const double err = rotation_compilation_error(static_cast<RotationAxis>(a), k);
      if (err > 1e-12) {
        rep.fail(std::string("rotation ") + axis_name(static_cast<RotationAxis>(a)) + "(" +
                 std::to_string(k) + ") compiles incorrectly, error " + std::to_string(err));
      }
    }
  }

  std::vector<PauliSumHamiltonian> hs;
  for (std::size_t i = 0; i < opts.hamiltonians; ++i) {
    hs.push_back(random_hamiltonian(rng, opts.n_qubits, opts.terms_per_hamiltonian));
  }
  for (const auto &h : opts.extra_hamiltonians) {
    if (h.num_qubits() != opts.n_qubits) {
      throw InvalidArgument("validate: Hamiltonian qubit count differs from --qubits");
    }
    hs.push_back(h);
  }

  std::vector<StabilizerTableau> tabs;
  std::vector<StateVector> vecs;
  std::vector<std::string> labels;
  tabs.reserve(opts.samples);
  vecs.reserve(opts.samples);
  for (std::size_t s = 0; s < opts.samples; ++s) {
    const CliffordParams p = random_params(rng, t.parameter_count());
    StabilizerTableau tab = prepare_state(t, p);
    StateVector v = dense_state(t, p.angles());
    ++rep.invariant_checks;
    if (!tab.satisfies_invariants()) rep.fail("tableau invariants violated for " + p.to_string());
    for (std::size_t hi = 0; hi < hs.size(); ++hi) {
      ++rep.energy_checks;
      const double err = std::abs(energy(tab, hs[hi]) - dense_expectation(v, hs[hi]));
      rep.max_energy_error = std::max(rep.max_energy_error, err);
      if (err > opts.tolerance) {
        rep.fail("energy mismatch " + std::to_string(err) + " for params " + p.to_string() +
                 " on Hamiltonian " + std::to_string(hi));
      }
    }
    labels.push_back(p.to_string());
    tabs.push_back(std::move(tab));
    vecs.push_back(std::move(v));
  }

  if (!tabs.empty()) {
    for (std::size_t i = 0; i < opts.pairs; ++i) {
      const std::size_t a = rng() % tabs.size();
      const std::size_t b = rng() % tabs.size();
      ++rep.overlap_checks;
      const double fast = overlap_sq(tabs[a], tabs[b]);
      const double reference = overlap_sq_projector(tabs[a], tabs[b]);
      const double dense = dense_overlap_sq(vecs[a], vecs[b]);
      const double err = std::max(std::abs(fast - dense), std::abs(reference - dense));
      rep.max_overlap_error = std::max(rep.max_overlap_error, err);
      if (err > opts.tolerance || fast != reference) {
        rep.fail("overlap mismatch between " + labels[a] + " and " + labels[b] + ": fast " +
                 std::to_string(fast) + ", projector " + std::to_string(reference) +
                 ", dense " + std::to_string(dense));
      }
    }
  }
  return rep;
}

}  // namespace cliffvqd
