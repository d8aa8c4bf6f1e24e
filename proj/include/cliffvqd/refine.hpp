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

// Continuous-angle deflation on the dense simulator, started either from a discrete
// Clifford optimum or from random angles.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "cliffvqd/ansatz.hpp"
#include "cliffvqd/error.hpp"
#include "cliffvqd/exact.hpp"
#include "cliffvqd/search.hpp"

namespace cliffvqd {

enum class InitKind { clifford_warm, random_cold };

inline const char *init_kind_name(InitKind k) {
  return k == InitKind::clifford_warm ? "clifford_warm" : "random_cold";
}

struct DenseContextEntry {
  StateVector state;
  double beta;
};

struct RefineReport {
  std::size_t level = 0;
  InitKind init_kind = InitKind::clifford_warm;
  std::uint64_t cold_seed = 0;  // index of the cold start; 0 for the warm arm
  double init_cost = 0.0;
  double final_cost = 0.0;
  std::optional<std::size_t> iterations_to_tolerance;  // sweeps; empty = not reached
  double tolerance = 0.0;
  double target = 0.0;  // exact eigenvalue for this level
  std::size_t sweeps = 0;
  std::vector<double> cost_history;  // best-so-far after each sweep, history[0] = init
  std::vector<double> final_angles;
};

/// Dense deflated cost: <psi(theta)|H|psi(theta)> + sum beta_i |<ctx_i|psi(theta)>|^2.
class DenseVqdCost {
 public:
  DenseVqdCost(const AnsatzTemplate &t, const PauliSumHamiltonian &h,
               std::span<const DenseContextEntry> ctx)
      : t_(&t), h_(&h), ctx_(ctx.begin(), ctx.end()) {
    require_dense_size(t.num_qubits());
    if (t.num_qubits() != h.num_qubits()) {
      throw InvalidArgument("DenseVqdCost: template and Hamiltonian qubit counts differ");
    }
    for (const auto &e : ctx_) {
      if (e.state.size() != (std::size_t{1} << t.num_qubits())) {
        throw InvalidArgument("DenseVqdCost: context state has the wrong dimension");
      }
    }
  }

  double operator()(std::span<const double> angles) const {
    const StateVector v = dense_state(*t_, angles);
    double c = dense_expectation(v, *h_);
    for (const auto &e : ctx_) c += e.beta * dense_overlap_sq(e.state, v);
    return c;
  }

 private:
  const AnsatzTemplate *t_;
  const PauliSumHamiltonian *h_;
  std::vector<DenseContextEntry> ctx_;
};

namespace detail {

/// Golden-section minimization of f on [a, b] until the bracket is narrower than width.
template <typename F>
std::pair<double, double> golden_section(F &&f, double a, double b, double width) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > width) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? std::pair{c, fc} : std::pair{d, fd};
}

}  // namespace detail

/// Cyclic coordinate minimization of the dense deflated cost.
///
/// Per coordinate: sample the eight angles m*pi/4, keep the best of those and the
/// current value, refine by golden section on +-pi/4 around it to width 1e-6, and accept
/// only improvements. Sweeps stop when one improves the cost by less than `tolerance`
/// or after `max_sweeps`.
inline RefineReport continuous_vqd_level(const PauliSumHamiltonian &h,
                                         std::span<const DenseContextEntry> ctx,
                                         const AnsatzTemplate &t,
                                         std::span<const double> init_angles, double tolerance,
                                         std::size_t max_sweeps,
                                         std::optional<double> target = std::nullopt) {
  if (init_angles.size() != t.parameter_count()) {
    throw InvalidArgument("continuous_vqd_level: expected " +
                          std::to_string(t.parameter_count()) + " angles, got " +
                          std::to_string(init_angles.size()));
  }
  if (!(tolerance > 0.0)) throw InvalidArgument("continuous_vqd_level: tolerance must be > 0");

  if (!target) {
    const auto spectrum = eigenspectrum(h);
    if (ctx.size() >= spectrum.size()) throw InvalidArgument("continuous_vqd_level: level too high");
    target = spectrum[ctx.size()];
  }

  const DenseVqdCost cost(t, h, ctx);
  std::vector<double> angles(init_angles.begin(), init_angles.end());
  double current = cost(angles);

  RefineReport r;
  r.level = ctx.size();
  r.tolerance = tolerance;
  r.target = *target;
  r.init_cost = current;
  r.cost_history.push_back(current);
  if (std::abs(current - *target) <= tolerance) r.iterations_to_tolerance = 0;

  constexpr double kQuarter = std::numbers::pi / 4;
  for (std::size_t sweep = 1; sweep <= max_sweeps; ++sweep) {
    const double before = current;
    for (std::size_t j = 0; j < angles.size(); ++j) {
      const double original = angles[j];
      auto along = [&](double x) {
        angles[j] = x;
        return cost(angles);
      };
      double best_x = original, best = current;
      for (int m = 0; m < 8; ++m) {
        const double x = m * kQuarter;
        const double c = along(x);
        if (c < best) {
          best = c;
          best_x = x;
        }
      }
      const auto [gx, gc] =
          detail::golden_section(along, best_x - kQuarter, best_x + kQuarter, 1e-6);
      if (gc < best) {
        best = gc;
        best_x = gx;
      }
      angles[j] = best_x;
      current = best;
    }
    r.cost_history.push_back(current);
    r.sweeps = sweep;
    if (!r.iterations_to_tolerance && std::abs(current - *target) <= tolerance) {
      r.iterations_to_tolerance = sweep;
    }
    if (before - current < tolerance) break;
  }
  r.final_cost = current;
  r.final_angles = std::move(angles);
  return r;
}

/// Uniform angles in [0, 2pi) for cold start `index` at `level`.
inline std::vector<double> random_angles(std::size_t count, std::uint64_t seed, std::size_t level,
                                         std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(level), static_cast<std::uint32_t>(index),
                    0xc01du};
  std::mt19937_64 rng(seq);
  std::vector<double> out(count);
  for (auto &a : out) a = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2 * std::numbers::pi;
  return out;
}

struct WarmstartOptions {
  std::size_t cold_seeds = 20;
  double tolerance = 1e-3;
  std::size_t max_sweeps = 200;
};

/// For each level: one arm from the Clifford optimum (angles ks*pi/2) and `cold_seeds`
/// arms from random angles, all deflated against the dense Clifford states of the
/// lower levels. Reports are grouped per level, warm arm first.
inline std::vector<RefineReport> warmstart_report(const PauliSumHamiltonian &h, std::size_t k,
                                                  const AnsatzTemplate &t,
                                                  const SearchConfig &config,
                                                  const WarmstartOptions &opts,
                                                  LadderResult *ladder_out = nullptr) {
  SearchConfig discrete = config;
  discrete.oracle = true;
  LadderResult ladder = solve_ladder(h, k, t, discrete);
  const auto spectrum = eigenspectrum(h);

  std::vector<DenseContextEntry> ctx;
  std::vector<RefineReport> out;
  for (std::size_t level = 0; level < k; ++level) {
    const auto &lvl = ladder.levels[level];
    std::vector<std::vector<double>> inits;
    inits.push_back(lvl.params.angles());
    for (std::size_t s = 0; s < opts.cold_seeds; ++s) {
      inits.push_back(random_angles(t.parameter_count(), config.seed, level, s));
    }
    std::vector<RefineReport> arms(inits.size());
    const std::size_t workers = std::max<std::size_t>(1, std::min(config.threads, inits.size()));
    detail::run_workers(workers, [&](std::size_t w) {
      for (std::size_t i = w; i < inits.size(); i += workers) {
        arms[i] = continuous_vqd_level(h, ctx, t, inits[i], opts.tolerance, opts.max_sweeps,
                                       spectrum[level]);
        arms[i].init_kind = i == 0 ? InitKind::clifford_warm : InitKind::random_cold;
        arms[i].cold_seed = i == 0 ? 0 : i - 1;
      }
    });
    for (auto &a : arms) out.push_back(std::move(a));

    if (level + 1 < k) {
      ctx.push_back({dense_state(t, lvl.params.angles()), config.beta.beta_for(level, h)});
    }
  }
  if (ladder_out != nullptr) *ladder_out = std::move(ladder);
  return out;
}

/// Median with "not reached" treated as +infinity.
inline double median_iterations(std::span<const RefineReport> reports) {
  std::vector<double> v;
  for (const auto &r : reports) {
    v.push_back(r.iterations_to_tolerance ? static_cast<double>(*r.iterations_to_tolerance)
                                          : std::numeric_limits<double>::infinity());
  }
  if (v.empty()) throw InvalidArgument("median_iterations: no reports");
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size();
  return m % 2 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

}  // namespace cliffvqd
