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

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "cliffvqd/exact.hpp"
#include "cliffvqd/search.hpp"
#include "cliffvqd/validate.hpp"

namespace cliffvqd {
namespace {

namespace fs = std::filesystem;

const AnsatzTemplate kTwoBlock(2, 2);

PauliSumHamiltonian ham(std::vector<std::pair<double, std::string>> terms) {
  return PauliSumHamiltonian::from_labels(terms);
}

TEST(ExhaustiveSearch, SingleQubitExamples) {
  const AnsatzTemplate t(1, 0);
  const DeflationContext ctx;
  const auto z = ham({{1.0, "Z"}});
  const auto rz = exhaustive_search(t, LevelCost(t, z, ctx));
  EXPECT_EQ(rz.cost, -1.0);
  EXPECT_EQ(rz.params, CliffordParams({2, 0}));

  const auto x = ham({{1.0, "X"}});
  const auto rx = exhaustive_search(t, LevelCost(t, x, ctx));
  EXPECT_EQ(rx.cost, -1.0);
  // |-> is reached by Ry k=3, but Ry k=1 followed by Rz k=2 is lexicographically smaller.
  EXPECT_EQ(energy(prepare_state(t, {3, 0}), x), -1.0);
  EXPECT_EQ(rx.params, CliffordParams({1, 2}));
  for (std::uint64_t i = 0; i < CliffordParams({1, 2}).index(); ++i) {
    EXPECT_GT(energy(prepare_state(t, CliffordParams::from_index(i, 2)), x), -1.0);
  }
}

TEST(ExhaustiveSearch, BellTypeGroundStateMatchesOracle) {
  const auto h = ham({{1.0, "XX"}, {1.0, "ZZ"}});
  const auto r = exhaustive_level_search(kTwoBlock, h, DeflationContext{});
  EXPECT_EQ(r.cost, -2.0);
  EXPECT_NEAR(r.cost, eigenspectrum(h).front(), 1e-12);
}

TEST(ExhaustiveSearch, CapEnforced) {
  const AnsatzTemplate t(2, 3);  // 16 parameters
  const auto h = ham({{1.0, "ZZ"}});
  EXPECT_THROW(exhaustive_level_search(t, h, DeflationContext{}), InvalidArgument);
  EXPECT_THROW(exhaustive_search(t, LevelCost(t, h, DeflationContext{})), InvalidArgument);
}

TEST(ExhaustiveSearch, PrefixSharingMatchesGenericEnumeration) {
  std::mt19937_64 rng(8);
  const AnsatzTemplate t(2, 1);
  for (int trial = 0; trial < 6; ++trial) {
    const auto h = random_hamiltonian(rng, 2, 6);
    DeflationContext ctx;
    for (int i = 0; i < trial % 3; ++i) {
      ctx.push(prepare_state(t, random_params(rng, t.parameter_count())), 1.0 + trial);
    }
    const auto generic = exhaustive_search(t, LevelCost(t, h, ctx));
    for (std::size_t threads : {1, 3, 4}) {
      const auto fast = exhaustive_level_search(t, h, ctx, 12, threads);
      EXPECT_EQ(fast.params, generic.params);
      EXPECT_EQ(fast.cost, generic.cost);
      const auto generic_mt = exhaustive_search(t, LevelCost(t, h, ctx), 12, threads);
      EXPECT_EQ(generic_mt.params, generic.params);
    }
  }
}

TEST(CoordinateDescent, AllZeroMinimum) {
  const AnsatzTemplate t(2, 1);
  // Hamming distance to the zero vector; unique minimum reachable coordinate-wise.
  auto cost = [](const CliffordParams &p) {
    double c = 0;
    for (std::size_t j = 0; j < p.size(); ++j) c += p[j] != 0;
    return c;
  };
  const auto r = coordinate_descent_search(t, cost, 5, 4);
  EXPECT_EQ(r.params, CliffordParams(t.parameter_count()));
  EXPECT_EQ(r.cost, 0.0);
}

TEST(CoordinateDescent, SingleQubitZ) {
  const AnsatzTemplate t(1, 0);
  const auto z = ham({{1.0, "Z"}});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_EQ(coordinate_descent_search(t, LevelCost(t, z, DeflationContext{}), seed, 1).cost, -1.0);
  }
}

TEST(CoordinateDescent, NeverBeatsExhaustiveAndIsThreadIndependent) {
  std::mt19937_64 rng(12);
  const AnsatzTemplate t(2, 1);
  for (int trial = 0; trial < 5; ++trial) {
    const auto h = random_hamiltonian(rng, 2, 8);
    const DeflationContext ctx;
    const auto ex = exhaustive_level_search(t, h, ctx);
    const auto cd1 = coordinate_descent_search(t, LevelCost(t, h, ctx), 99, 16, {}, 1);
    const auto cd4 = coordinate_descent_search(t, LevelCost(t, h, ctx), 99, 16, {}, 4);
    EXPECT_LE(ex.cost, cd1.cost);
    EXPECT_EQ(cd1.params, cd4.params);
    EXPECT_EQ(cd1.cost, cd4.cost);
  }
}

TEST(CoordinateDescent, RandomStartsDependOnlyOnSeedAndRestart) {
  EXPECT_EQ(random_start(12, 7, 3), random_start(12, 7, 3));
  EXPECT_NE(random_start(12, 7, 3), random_start(12, 7, 4));
  EXPECT_NE(random_start(12, 7, 3), random_start(12, 8, 3));
}

TEST(SolveLevel, DiagonalExamples) {
  const auto h = ham({{1.0, "ZI"}, {2.0, "IZ"}});
  SearchConfig cfg;
  const auto spectrum = eigenspectrum(h);
  const auto r0 = solve_level(h, DeflationContext{}, kTwoBlock, cfg, &spectrum);
  EXPECT_EQ(r0.energy, -3.0);
  EXPECT_EQ(r0.penalty, 0.0);
  EXPECT_EQ(*r0.abs_error, 0.0);
  StabilizerTableau s11(2);
  s11.apply_x(0);
  s11.apply_x(1);
  EXPECT_EQ(overlap_sq(r0.state, s11), 1.0);

  DeflationContext ctx;
  ctx.push(s11, 6.0);
  const auto r1 = solve_level(h, ctx, kTwoBlock, cfg);
  EXPECT_EQ(r1.energy, -1.0);
  EXPECT_EQ(r1.penalty, 0.0);
  StabilizerTableau s01(2);
  s01.apply_x(1);
  EXPECT_EQ(overlap_sq(r1.state, s01), 1.0);
  EXPECT_FALSE(r1.exact_energy.has_value());
}

TEST(SolveLevel, XXGround) {
  const auto r = solve_level(ham({{1.0, "XX"}}), DeflationContext{}, kTwoBlock, SearchConfig{});
  EXPECT_EQ(r.energy, -1.0);
}

TEST(SolveLevel, Validation) {
  SearchConfig cfg;
  EXPECT_THROW(solve_level(ham({{1.0, "Z"}}), DeflationContext{}, kTwoBlock, cfg), InvalidArgument);
  cfg.restarts = 0;
  EXPECT_THROW(solve_level(ham({{1.0, "ZZ"}}), DeflationContext{}, kTwoBlock, cfg), InvalidArgument);
}

TEST(SolveLadder, SingleQubit) {
  const AnsatzTemplate t(1, 2);
  const auto lad = solve_ladder(ham({{1.0, "Z"}}), 2, t, SearchConfig{});
  ASSERT_EQ(lad.levels.size(), 2u);
  EXPECT_EQ(lad.levels[0].energy, -1.0);
  EXPECT_EQ(lad.levels[1].energy, 1.0);
  EXPECT_EQ(lad.levels[1].level, 1u);
  EXPECT_THROW(solve_ladder(ham({{1.0, "Z"}}), 5, t, SearchConfig{}), InvalidArgument);
  EXPECT_THROW(solve_ladder(ham({{1.0, "Z"}}), 0, t, SearchConfig{}), InvalidArgument);
}

TEST(SolveLadder, KOneIsPlainGroundSearch) {
  const AnsatzTemplate t(2, 1);
  std::mt19937_64 rng(3);
  const auto h = random_hamiltonian(rng, 2, 8);
  const auto lad = solve_ladder(h, 1, t, SearchConfig{});
  const auto g = exhaustive_level_search(t, h, DeflationContext{});
  EXPECT_EQ(lad.levels[0].params, g.params);
  EXPECT_EQ(lad.levels[0].cost, g.cost);
}

TEST(SolveLadder, BetaPolicy) {
  const AnsatzTemplate t(2, 1);
  const auto h = ham({{1.0, "ZI"}, {2.0, "IZ"}});
  SearchConfig cfg;
  cfg.beta.explicit_betas = {10.0, 20.0};
  EXPECT_THROW(solve_ladder(h, 4, t, cfg), InvalidArgument);
  const auto lad = solve_ladder(h, 3, t, cfg);
  EXPECT_EQ(lad.levels[2].energy, 1.0);
  cfg.beta.explicit_betas = {-1.0};
  EXPECT_THROW(solve_ladder(h, 2, t, cfg), InvalidArgument);
  BetaPolicy auto_beta;
  EXPECT_EQ(auto_beta.beta_for(5, h), 6.0);
}

TEST(SolveLadder, NonDecreasingWhenPenaltiesVanish) {
  std::mt19937_64 rng(21);
  const AnsatzTemplate t(2, 1);
  for (int trial = 0; trial < 4; ++trial) {
    const auto h = random_hamiltonian(rng, 2, 6);
    const auto lad = solve_ladder(h, 3, t, SearchConfig{});
    bool all_zero = true;
    for (const auto &l : lad.levels) all_zero &= l.penalty == 0.0;
    if (!all_zero) continue;
    for (std::size_t i = 1; i < lad.levels.size(); ++i) {
      EXPECT_LE(lad.levels[i - 1].energy, lad.levels[i].energy);
    }
  }
}

class SweepTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("cliffvqd_sweep_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string &name, const std::string &text) {
    std::ofstream(dir_ / name) << text;
    return dir_ / name;
  }

  fs::path dir_;
};

TEST_F(SweepTest, SinglePointEqualsLadder) {
  write("a.ham", "0.4 XX\n-0.7 ZI\n0.2 IZ\n");
  SweepManifest m;
  m.levels_requested = 2;
  m.points.push_back({"p", dir_ / "a.ham"});
  const AnsatzTemplate t(2, 1);
  SearchConfig cfg;
  const auto res = sweep(m, t, cfg);
  const auto lad = solve_ladder(load_hamiltonian(dir_ / "a.ham"), 2, t, cfg);
  ASSERT_EQ(res.size(), 1u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(res[0].ladder.levels[i].params, lad.levels[i].params);
    EXPECT_EQ(res[0].ladder.levels[i].cost, lad.levels[i].cost);
  }
}

TEST_F(SweepTest, TransferOnIdenticalPointsNeverWorsens) {
  write("a.ham", "0.4 XX\n-0.7 ZI\n0.2 IZ\n0.3 YY\n");
  SweepManifest m;
  m.levels_requested = 2;
  m.transfer_enabled = true;
  m.points.push_back({"1", dir_ / "a.ham"});
  m.points.push_back({"2", dir_ / "a.ham"});
  const AnsatzTemplate t(2, 2);
  SearchConfig cfg;
  cfg.strategy = SearchStrategy::coordinate_descent;
  cfg.restarts = 2;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    cfg.seed = seed;
    const auto res = sweep(m, t, cfg);
    EXPECT_EQ(res[0].transfer, TransferMode::disabled);
    EXPECT_EQ(res[1].transfer, TransferMode::applied);
    EXPECT_LE(res[1].ladder.levels[0].cost, res[0].ladder.levels[0].cost);
  }
  cfg.strategy = SearchStrategy::exhaustive;
  const AnsatzTemplate small(2, 1);
  EXPECT_EQ(sweep(m, small, cfg)[1].transfer, TransferMode::no_op);
}

TEST_F(SweepTest, RejectsQubitMismatch) {
  write("a.ham", "1.0 Z\n");
  SweepManifest m;
  m.levels_requested = 1;
  m.points.push_back({"x", dir_ / "a.ham"});
  EXPECT_THROW(sweep(m, kTwoBlock, SearchConfig{}), InvalidArgument);
}

}  // namespace
}  // namespace cliffvqd
