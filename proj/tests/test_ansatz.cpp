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

#include <cmath>
#include <numbers>
#include <random>
#include <variant>
#include <vector>

#include "cliffvqd/ansatz.hpp"
#include "cliffvqd/exact.hpp"
#include "cliffvqd/validate.hpp"

namespace cliffvqd {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(AnsatzTemplate, ParameterCountFormula) {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::size_t l = 0; l <= 4; ++l) EXPECT_EQ(AnsatzTemplate(n, l).parameter_count(), 2 * n * (l + 1));
  }
}

TEST(AnsatzTemplate, TwoQubitTwoBlockSchedule) {
  const AnsatzTemplate t(2, 2);
  const auto &s = t.schedule();
  ASSERT_EQ(s.size(), 14u);
  // Block: Ry q0, Ry q1, Rz q0, Rz q1, CNOT(0,1).
  const RotationAxis axes[4] = {RotationAxis::Y, RotationAxis::Y, RotationAxis::Z, RotationAxis::Z};
  std::size_t param = 0;
  for (std::size_t b = 0; b < 3; ++b) {
    for (std::size_t i = 0; i < 4; ++i) {
      const auto &slot = std::get<RotationSlot>(s[5 * b + i]);
      EXPECT_EQ(slot.axis, axes[i]);
      EXPECT_EQ(slot.qubit, i % 2);
      EXPECT_EQ(slot.param, param++);
    }
    if (b < 2) {
      const auto &c = std::get<CnotSlot>(s[5 * b + 4]);
      EXPECT_EQ(c.control, 0u);
      EXPECT_EQ(c.target, 1u);
    }
  }
}

TEST(AnsatzTemplate, LinearCnotChain) {
  const AnsatzTemplate t(4, 1);
  std::vector<std::pair<std::size_t, std::size_t>> cnots;
  for (const auto &op : t.schedule()) {
    if (const auto *c = std::get_if<CnotSlot>(&op)) cnots.emplace_back(c->control, c->target);
  }
  EXPECT_EQ(cnots, (std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}, {2, 3}}));
}

TEST(CliffordParams, StringIndexAndOrder) {
  const auto p = CliffordParams::from_string("020013100230");
  EXPECT_EQ(p.to_string(), "020013100230");
  EXPECT_EQ(CliffordParams::from_index(p.index(), 12), p);
  EXPECT_THROW(CliffordParams::from_string("0204"), ParseError);
  EXPECT_THROW(CliffordParams({0, 4}), InvalidArgument);

  auto q = CliffordParams(3);
  CliffordParams prev = q;
  std::uint64_t count = 1;
  while (q.increment()) {
    EXPECT_LT(prev, q);
    EXPECT_EQ(q.index(), count++);
    prev = q;
  }
  EXPECT_EQ(count, 64u);
  const auto a = CliffordParams({1, 2}).angles();
  EXPECT_DOUBLE_EQ(a[0], kPi / 2);
  EXPECT_DOUBLE_EQ(a[1], kPi);
}

TEST(RotationToCliffords, Examples) {
  EXPECT_EQ(rotation_to_cliffords(RotationAxis::Z, 1), std::vector<Gate>{Gate::S});
  EXPECT_TRUE(rotation_to_cliffords(RotationAxis::Z, 0).empty());
  EXPECT_THROW(rotation_to_cliffords(RotationAxis::X, 4), InvalidArgument);

  auto apply = [](RotationAxis axis, int k) {
    StabilizerTableau t(1);
    for (Gate g : rotation_to_cliffords(axis, k)) t.apply(g, 0);
    return format_pauli(t.stabilizer(0));
  };
  EXPECT_EQ(apply(RotationAxis::Y, 2), "-Z");  // |1>
  EXPECT_EQ(apply(RotationAxis::Y, 1), "X");   // |+>
}

TEST(RotationToCliffords, EqualsRotationUpToPhase) {
  for (int a = 0; a < 3; ++a) {
    for (int k = 0; k < 4; ++k) {
      EXPECT_LE(rotation_compilation_error(static_cast<RotationAxis>(a), k), 1e-12)
          << axis_name(static_cast<RotationAxis>(a)) << " k=" << k;
    }
  }
}

TEST(PrepareState, Examples) {
  const AnsatzTemplate t10(1, 0);
  EXPECT_EQ(format_pauli(prepare_state(t10, {0, 0}).stabilizer(0)), "Z");
  EXPECT_EQ(format_pauli(prepare_state(t10, {2, 0}).stabilizer(0)), "-Z");
  const AnsatzTemplate t22(2, 2);
  const auto zero = prepare_state(t22, CliffordParams(12));
  EXPECT_EQ(overlap_sq(zero, tableau_init(2)), 1.0);
  EXPECT_THROW(prepare_state(t22, CliffordParams(11)), InvalidArgument);
}

TEST(DenseUnitary, Examples) {
  const AnsatzTemplate t10(1, 0);
  const std::vector<double> zeros{0.0, 0.0};
  const DenseMatrix id = dense_unitary(t10, zeros);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) EXPECT_EQ(id(r, c), Complex(r == c ? 1.0 : 0.0));

  const std::vector<double> half{kPi / 2, 0.0};
  const StateVector v = dense_unitary(t10, half).apply(StateVector{1.0, 0.0});
  EXPECT_NEAR(v[0].real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(v[1].real(), 1 / std::sqrt(2.0), 1e-15);

  const AnsatzTemplate t22(2, 2);
  const DenseMatrix u = dense_unitary(t22, std::vector<double>(12, 0.0));
  EXPECT_EQ(u(0, 0), Complex(1.0));
}

TEST(DenseUnitary, IsUnitary) {
  std::mt19937_64 rng(2);
  const AnsatzTemplate t(3, 2);
  std::vector<double> angles(t.parameter_count());
  for (auto &a : angles) a = uniform_real(rng, 0, 2 * kPi);
  const DenseMatrix u = dense_unitary(t, angles);
  const DenseMatrix prod = u.adjoint() * u;
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c) EXPECT_NEAR(std::abs(prod(r, c) - Complex(r == c)), 0.0, 1e-12);
}

TEST(PrepareState, MatchesDenseUnitaryOnEveryPauli) {
  std::mt19937_64 rng(4);
  const AnsatzTemplate t(2, 2);
  for (int sample = 0; sample < 200; ++sample) {
    const CliffordParams p = random_params(rng, t.parameter_count());
    const auto tab = prepare_state(t, p);
    const StateVector v = dense_unitary(t, p.angles()).apply(StateVector{1.0, 0.0, 0.0, 0.0});
    for (std::uint64_t code = 0; code < 16; ++code) {
      const PauliString pauli(2, code & 3, code >> 2);
      const Complex want = dense_pauli_expectation(v, pauli);
      ASSERT_NEAR(pauli_expectation(tab, pauli), want.real(), 1e-10)
          << p.to_string() << " " << format_pauli(pauli);
    }
  }
}

TEST(PrepareState, CrossOracleOnLargerTemplates) {
  for (auto [n, l] : {std::pair<std::size_t, std::size_t>{3, 2}, {4, 1}, {5, 1}}) {
    ValidationOptions opts;
    opts.n_qubits = n;
    opts.entangling_blocks = l;
    opts.samples = 200;
    opts.pairs = 300;
    opts.seed = 100 + n;
    const auto rep = validate_cross_oracle(opts);
    EXPECT_TRUE(rep.ok()) << (rep.messages.empty() ? "" : rep.messages.front());
  }
}

}  // namespace
}  // namespace cliffvqd
