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

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cliffvqd/ansatz.hpp"
#include "cliffvqd/error.hpp"
#include "cliffvqd/pauli.hpp"
#include "cliffvqd/tableau.hpp"

namespace cliffvqd {

/// Sum of term(0) .. term(count-1) by fixed binary-tree recursion. The association
/// order depends only on `count`, so results are reproducible bit for bit.
template <typename Term>
double pairwise_sum(std::size_t count, Term &&term) {
  struct Rec {
    Term &term;
    double operator()(std::size_t lo, std::size_t hi) const {
      if (hi - lo == 1) return term(lo);
      if (hi - lo == 2) return term(lo) + term(lo + 1);
      const std::size_t mid = lo + (hi - lo) / 2;
      return (*this)(lo, mid) + (*this)(mid, hi);
    }
  };
  if (count == 0) return 0.0;
  return Rec{term}(0, count);
}

/// <state|H|state> in Hartree.
inline double energy(const StabilizerTableau &state, const PauliSumHamiltonian &h) {
  if (state.num_qubits() != h.num_qubits()) {
    throw InvalidArgument("energy: state has " + std::to_string(state.num_qubits()) +
                          " qubits, Hamiltonian has " + std::to_string(h.num_qubits()));
  }
  const auto &terms = h.terms();
  return pairwise_sum(terms.size(), [&](std::size_t j) {
    const auto &t = terms[j];
    const int e = detail::expectation_bits(state, t.pauli.x_bits(), t.pauli.z_bits());
    return e == 0 ? 0.0 : e * t.coefficient;
  });
}

/// Previously found states and their penalty weights, in discovery order.
class DeflationContext {
 public:
  struct Entry {
    StabilizerTableau state;
    double beta;
  };

  DeflationContext() = default;

  void push(StabilizerTableau state, double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
      throw InvalidArgument("DeflationContext: beta must be a positive finite real");
    }
    if (!entries_.empty() && entries_.front().state.num_qubits() != state.num_qubits()) {
      throw InvalidArgument("DeflationContext: all states must share a qubit count");
    }
    entries_.push_back({std::move(state), beta});
  }

  /// Number of states held; the next level to solve.
  std::size_t level() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const std::vector<Entry> &entries() const noexcept { return entries_; }

 private:
  std::vector<Entry> entries_;
};

/// Sum of beta_i |<phi_i|state>|^2.
inline double deflation_penalty(const StabilizerTableau &state, const DeflationContext &ctx) {
  const auto &entries = ctx.entries();
  return pairwise_sum(entries.size(), [&](std::size_t i) {
    const auto &e = entries[i];
    if (e.state.num_qubits() != state.num_qubits()) {
      throw InvalidArgument("clifford_vqd_cost: context state qubit count mismatch");
    }
    const double ov = overlap_sq(e.state, state);
    return ov == 0.0 ? 0.0 : e.beta * ov;
  });
}

struct CostBreakdown {
  double energy = 0.0;
  double penalty = 0.0;
  double cost = 0.0;
};

inline CostBreakdown clifford_vqd_breakdown(const StabilizerTableau &state,
                                            const PauliSumHamiltonian &h,
                                            const DeflationContext &ctx) {
  CostBreakdown b;
  b.energy = energy(state, h);
  b.penalty = deflation_penalty(state, ctx);
  b.cost = b.energy + b.penalty;
  return b;
}

/// Energy plus overlap penalties against every context state.
inline double clifford_vqd_cost(const StabilizerTableau &state, const PauliSumHamiltonian &h,
                                const DeflationContext &ctx) {
  return clifford_vqd_breakdown(state, h, ctx).cost;
}

/// Twice the coefficient 1-norm: exceeds the spectral spread of H.
inline double default_beta(const PauliSumHamiltonian &h) {
  if (h.empty()) throw InvalidArgument("default_beta: Hamiltonian has no terms");
  const double beta = 2.0 * h.coefficient_one_norm();
  if (!(beta > 0.0)) throw InvalidArgument("default_beta: all coefficients are zero");
  return beta;
}

struct LevelResult {
  std::size_t level = 0;
  CliffordParams params;
  double energy = 0.0;
  double penalty = 0.0;
  double cost = 0.0;
  StabilizerTableau state{1};
  std::optional<double> exact_energy;
  std::optional<double> abs_error;
};

}  // namespace cliffvqd
