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


#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "cliffvqd/cost.hpp"
#include "cliffvqd/exact.hpp"
#include "cliffvqd/validate.hpp"

namespace cliffvqd {
namespace {

StabilizerTableau bell() {
  return apply_gate(apply_gate(tableau_init(2), Gate::H, {0}), Gate::CNOT, {0, 1});
}

StabilizerTableau basis(std::initializer_list<int> bits) {
  StabilizerTableau t(bits.size());
  std::size_t q = 0;
  for (int b : bits) {
    if (b) t.apply_x(q);
    ++q;
  }
  return t;
}

const auto kDiag = PauliSumHamiltonian::from_labels({{1.0, "ZI"}, {2.0, "IZ"}});

TEST(Energy, Examples) {
  EXPECT_EQ(energy(tableau_init(2), kDiag), 3.0);
  EXPECT_EQ(energy(bell(), PauliSumHamiltonian::from_labels({{0.5, "XX"}})), 0.5);
  EXPECT_EQ(energy(tableau_init(2), PauliSumHamiltonian::from_labels({{0.7, "XY"}})), 0.0);
  EXPECT_THROW(energy(tableau_init(1), kDiag), InvalidArgument);
}

TEST(CliffordVqdCost, Examples) {
  DeflationContext ctx;
  ctx.push(tableau_init(2), 10.0);
  EXPECT_EQ(clifford_vqd_cost(tableau_init(2), kDiag, ctx), 13.0);
  EXPECT_EQ(clifford_vqd_cost(basis({1, 1}), kDiag, ctx), -3.0);
  const auto plus0 = apply_gate(tableau_init(2), Gate::H, {0});
  EXPECT_EQ(clifford_vqd_cost(plus0, kDiag, ctx), 7.0);
  const auto b = clifford_vqd_breakdown(plus0, kDiag, ctx);
  EXPECT_EQ(b.energy, 2.0);
  EXPECT_EQ(b.penalty, 5.0);
}

TEST(DeflationContext, Validation) {
  DeflationContext ctx;
  EXPECT_THROW(ctx.push(tableau_init(2), 0.0), InvalidArgument);
  EXPECT_THROW(ctx.push(tableau_init(2), -1.0), InvalidArgument);
  ctx.push(tableau_init(2), 1.0);
  EXPECT_THROW(ctx.push(tableau_init(3), 1.0), InvalidArgument);
  EXPECT_EQ(ctx.level(), 1u);
}

TEST(DefaultBeta, Examples) {
  EXPECT_EQ(default_beta(kDiag), 6.0);
  EXPECT_EQ(default_beta(PauliSumHamiltonian::from_labels({{0.5, "XX"}})), 1.0);
  EXPECT_EQ(default_beta(PauliSumHamiltonian::from_labels({{-1.0, "Z"}, {0.25, "X"}})), 2.5);
  EXPECT_THROW(default_beta(PauliSumHamiltonian(2)), InvalidArgument);
  EXPECT_THROW(default_beta(PauliSumHamiltonian::from_labels({{0.0, "Z"}})), InvalidArgument);
}

TEST(PairwiseSum, FixedOrder) {
  std::vector<double> v{1e16, 1.0, -1e16, 1.0};
  // ((1e16 + 1) + (-1e16 + 1)) = 0 in double arithmetic.
  EXPECT_EQ(pairwise_sum(v.size(), [&](std::size_t i) { return v[i]; }), 0.0);
  EXPECT_EQ(pairwise_sum(0, [](std::size_t) { return 1.0; }), 0.0);
  EXPECT_EQ(pairwise_sum(7, [](std::size_t i) { return static_cast<double>(i); }), 21.0);
}

TEST(Cost, PropertiesOnRandomStates) {
  std::mt19937_64 rng(41);
  const AnsatzTemplate t(3, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto h1 = random_hamiltonian(rng, 3, 8);
    const auto h2 = random_hamiltonian(rng, 3, 8);
    const double a = uniform_real(rng, -3, 3), b = uniform_real(rng, -3, 3);
    PauliSumHamiltonian combo(3);
    for (const auto &term : h1.terms()) combo.add_term(a * term.coefficient, term.pauli);
    for (const auto &term : h2.terms()) combo.add_term(b * term.coefficient, term.pauli);

    const auto s = prepare_state(t, random_params(rng, t.parameter_count()));
    EXPECT_NEAR(energy(s, combo), a * energy(s, h1) + b * energy(s, h2), 1e-12);

    DeflationContext empty;
    EXPECT_EQ(clifford_vqd_cost(s, h1, empty), energy(s, h1));

    DeflationContext ctx;
    for (int i = 0; i < 3; ++i) ctx.push(prepare_state(t, random_params(rng, t.parameter_count())), 1.5);
    const auto br = clifford_vqd_breakdown(s, h1, ctx);
    EXPECT_GE(br.cost, br.energy);
    bool any_overlap = false;
    for (const auto &e : ctx.entries()) any_overlap |= overlap_sq(e.state, s) > 0.0;
    EXPECT_EQ(br.cost == br.energy, !any_overlap);

    EXPECT_GE(energy(s, h1), eigenspectrum(h1).front() - 1e-9);
  }
}

}  // namespace
}  // namespace cliffvqd
