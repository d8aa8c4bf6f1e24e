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
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "cliffvqd/ansatz.hpp"
#include "cliffvqd/cost.hpp"
#include "cliffvqd/error.hpp"
#include "cliffvqd/exact.hpp"
#include "cliffvqd/io.hpp"
#include "cliffvqd/pauli.hpp"
#include "cliffvqd/tableau.hpp"

namespace cliffvqd {

enum class SearchStrategy { exhaustive, coordinate_descent };

inline const char *strategy_name(SearchStrategy s) {
  return s == SearchStrategy::exhaustive ? "exhaustive" : "coordinate_descent";
}

/// Penalty weights: automatic (default_beta for every level) or an explicit list.
/// A single explicit value applies to every level; otherwise entry i weights the state
/// found at level i.
struct BetaPolicy {
  std::vector<double> explicit_betas;

  bool is_auto() const noexcept { return explicit_betas.empty(); }

  double beta_for(std::size_t level, const PauliSumHamiltonian &h) const {
    if (is_auto()) return default_beta(h);
    if (explicit_betas.size() == 1) return explicit_betas.front();
    if (level >= explicit_betas.size()) {
      throw InvalidArgument("beta list has " + std::to_string(explicit_betas.size()) +
                            " entries; no weight for level " + std::to_string(level));
    }
    return explicit_betas[level];
  }
};

struct SearchConfig {
  SearchStrategy strategy = SearchStrategy::exhaustive;
  std::size_t exhaustive_cap = 12;
  std::size_t restarts = 16;
  std::uint64_t seed = 0;
  BetaPolicy beta;
  bool oracle = true;
  /// Worker count. Results never depend on it.
  std::size_t threads = 1;

  void validate() const {
    if (exhaustive_cap == 0 || exhaustive_cap > 31) {
      throw InvalidArgument("exhaustive_cap must be in [1, 31]");
    }
    if (restarts == 0) throw InvalidArgument("restarts must be >= 1");
    if (threads == 0) throw InvalidArgument("threads must be >= 1");
    for (double b : beta.explicit_betas) {
      if (!(b > 0.0) || !std::isfinite(b)) throw InvalidArgument("beta values must be positive");
    }
  }
};

struct SearchOutcome {
  CliffordParams params;
  double cost = 0.0;
};

namespace detail {

/// Total order used by every reduction: lower cost, then lexicographically smaller params.
inline bool better(double cost_a, const CliffordParams &a, double cost_b,
                   const CliffordParams &b) {
  if (cost_a != cost_b) return cost_a < cost_b;
  return a < b;
}

/// Runs fn(worker_index) on `workers` threads (inline when 1) and rethrows the first error.
template <typename Fn>
void run_workers(std::size_t workers, Fn &&fn) {
  if (workers <= 1) {
    fn(std::size_t{0});
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          fn(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto &e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

inline std::optional<SearchOutcome> reduce(std::vector<std::optional<SearchOutcome>> &parts) {
  std::optional<SearchOutcome> best;
  for (auto &p : parts) {
    if (!p) continue;
    if (!best || better(p->cost, p->params, best->cost, best->params)) best = std::move(p);
  }
  return best;
}

}  // namespace detail

/// Evaluates all 4^P assignments; minimum cost, ties to the lexicographically smallest
/// vector. `cost` is copied once per worker, so it may own scratch state.
template <typename Cost>
SearchOutcome exhaustive_search(const AnsatzTemplate &t, const Cost &cost,
                                std::size_t exhaustive_cap = 12, std::size_t threads = 1) {
  const std::size_t p = t.parameter_count();
  if (p > exhaustive_cap || p > 31) {
    throw InvalidArgument("exhaustive_search: " + std::to_string(p) +
                          " parameters exceeds the exhaustive cap of " +
                          std::to_string(std::min<std::size_t>(exhaustive_cap, 31)));
  }
  const std::uint64_t total = std::uint64_t{1} << (2 * p);
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::uint64_t>(threads, total));
  std::vector<std::optional<SearchOutcome>> parts(workers);

  detail::run_workers(workers, [&](std::size_t w) {
    const std::uint64_t lo = total * w / workers;
    const std::uint64_t hi = total * (w + 1) / workers;
    if (lo == hi) return;
    Cost local = cost;
    CliffordParams params = CliffordParams::from_index(lo, p);
    double best_cost = 0.0;
    std::uint64_t best_index = lo;
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      const double c = local(params);
      // Indices ascend with lexicographic order, so strict < keeps the smallest tie.
      if (idx == lo || c < best_cost) {
        best_cost = c;
        best_index = idx;
      }
      params.increment();
    }
    parts[w] = SearchOutcome{CliffordParams::from_index(best_index, p), best_cost};
  });
  return *detail::reduce(parts);
}

/// Greedy coordinate descent from one start: each coordinate moves to the argmin over
/// {0,1,2,3} (ties to the smallest k) until a full sweep changes nothing.
template <typename Cost>
SearchOutcome coordinate_descent_from(Cost &cost, CliffordParams params,
                                      std::size_t max_sweeps = 10000) {
  double current = cost(params);
  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    bool changed = false;
    for (std::size_t j = 0; j < params.size(); ++j) {
      const std::uint8_t original = params[j];
      std::uint8_t best_k = original;
      double best = current;
      for (std::uint8_t k = 0; k < 4; ++k) {
        double c = current;
        if (k != original) {
          params.set(j, k);
          c = cost(params);
        }
        if (c < best || (c == best && k < best_k)) {
          best = c;
          best_k = k;
        }
      }
      params.set(j, best_k);
      if (best_k != original) changed = true;
      current = best;
    }
    if (!changed) break;
  }
  return {std::move(params), current};
}

/// Uniform random start for restart r; independent of thread layout.
inline CliffordParams random_start(std::size_t parameter_count, std::uint64_t seed,
                                   std::size_t restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart), 0x5eedu};
  std::mt19937_64 rng(seq);
  std::vector<std::uint8_t> ks(parameter_count);
  for (auto &k : ks) k = static_cast<std::uint8_t>(rng() >> 62);
  return CliffordParams(std::move(ks));
}

/// Multi-restart coordinate descent. `extra_starts` (e.g. transferred parameters) are
/// descended in addition to the `restarts` random starts.
template <typename Cost>
SearchOutcome coordinate_descent_search(const AnsatzTemplate &t, const Cost &cost,
                                        std::uint64_t seed, std::size_t restarts,
                                        std::span<const CliffordParams> extra_starts = {},
                                        std::size_t threads = 1) {
  if (restarts == 0) throw InvalidArgument("coordinate_descent_search: restarts must be >= 1");
  const std::size_t p = t.parameter_count();
  std::vector<CliffordParams> starts;
  starts.reserve(restarts + extra_starts.size());
  for (std::size_t r = 0; r < restarts; ++r) starts.push_back(random_start(p, seed, r));
  for (const auto &s : extra_starts) {
    if (s.size() != p) throw InvalidArgument("coordinate_descent_search: start length mismatch");
    starts.push_back(s);
  }

  const std::size_t workers = std::max<std::size_t>(1, std::min(threads, starts.size()));
  std::vector<std::optional<SearchOutcome>> parts(workers);
  detail::run_workers(workers, [&](std::size_t w) {
    Cost local = cost;
    for (std::size_t i = w; i < starts.size(); i += workers) {
      SearchOutcome o = coordinate_descent_from(local, starts[i]);
      if (!parts[w] || detail::better(o.cost, o.params, parts[w]->cost, parts[w]->params)) {
        parts[w] = std::move(o);
      }
    }
  });
  return *detail::reduce(parts);
}

/// Cost functor for one deflation level: params -> clifford_vqd_cost(U(params)|0>).
class LevelCost {
 public:
  LevelCost(const AnsatzTemplate &t, const PauliSumHamiltonian &h, const DeflationContext &ctx)
      : t_(&t), h_(&h), ctx_(&ctx), scratch_(t.num_qubits()) {}

  double operator()(const CliffordParams &params) {
    prepare_state_into(*t_, params, scratch_);
    return clifford_vqd_cost(scratch_, *h_, *ctx_);
  }

 private:
  const AnsatzTemplate *t_;
  const PauliSumHamiltonian *h_;
  const DeflationContext *ctx_;
  StabilizerTableau scratch_;
};

namespace detail {

/// Schedule regrouped by parameter: the CNOTs before parameter 0, then for every
/// parameter its rotation and the CNOTs that follow it.
struct ParamPlan {
  struct Slot {
    RotationAxis axis;
    std::size_t qubit;
    std::vector<CnotSlot> then;
  };
  std::vector<CnotSlot> leading;
  std::vector<Slot> slots;
};

inline ParamPlan plan_by_parameter(const AnsatzTemplate &t) {
  ParamPlan plan;
  for (const auto &op : t.schedule()) {
    if (const auto *rot = std::get_if<RotationSlot>(&op)) {
      if (rot->param != plan.slots.size()) {
        throw InvalidArgument("plan_by_parameter: parameters out of schedule order");
      }
      plan.slots.push_back({rot->axis, rot->qubit, {}});
    } else {
      auto &dest = plan.slots.empty() ? plan.leading : plan.slots.back().then;
      dest.push_back(std::get<CnotSlot>(op));
    }
  }
  return plan;
}

/// Depth-first enumeration of a parameter subtree, keeping one tableau per depth so
/// sibling assignments share their common circuit prefix.
class PrefixEnumerator {
 public:
  PrefixEnumerator(const AnsatzTemplate &t, const ParamPlan &plan, const PauliSumHamiltonian &h,
                   const DeflationContext &ctx)
      : plan_(&plan), h_(&h), ctx_(&ctx), tables_(&rotation_tables()),
        stack_(plan.slots.size() + 1, StabilizerTableau(t.num_qubits())) {
    for (const auto &cx : plan.leading) stack_[0].apply_cnot(cx.control, cx.target);
  }

  /// Visits every completion of the first `prefix_len` digits of `prefix`.
  void run_unit(std::uint64_t prefix, std::size_t prefix_len) {
    for (std::size_t d = 0; d < prefix_len; ++d) {
      const auto digit = static_cast<std::uint8_t>((prefix >> (2 * (prefix_len - 1 - d))) & 3u);
      step(d, digit);
    }
    descend(prefix_len, prefix);
  }

  bool has_best() const noexcept { return have_; }
  double best_cost() const noexcept { return best_cost_; }
  std::uint64_t best_index() const noexcept { return best_index_; }

 private:
  void step(std::size_t d, std::uint8_t k) {
    StabilizerTableau &next = stack_[d + 1];
    next = stack_[d];
    const auto &slot = plan_->slots[d];
    if (k != 0) next.apply((*tables_)[static_cast<int>(slot.axis)][k], slot.qubit);
    for (const auto &cx : slot.then) next.apply_cnot(cx.control, cx.target);
  }

  void descend(std::size_t d, std::uint64_t index) {
    const std::size_t depth = plan_->slots.size();
    if (d == depth) {
      const double c = clifford_vqd_cost(stack_[depth], *h_, *ctx_);
      // Leaves arrive in ascending index order, so strict < keeps the smallest tie.
      if (!have_ || c < best_cost_) {
        have_ = true;
        best_cost_ = c;
        best_index_ = index;
      }
      return;
    }
    for (std::uint8_t k = 0; k < 4; ++k) {
      step(d, k);
      descend(d + 1, (index << 2) | k);
    }
  }

  const ParamPlan *plan_;
  const PauliSumHamiltonian *h_;
  const DeflationContext *ctx_;
  const std::array<std::array<SingleQubitClifford, 4>, 3> *tables_;
  std::vector<StabilizerTableau> stack_;
  bool have_ = false;
  double best_cost_ = 0.0;
  std::uint64_t best_index_ = 0;
};

}  // namespace detail

/// exhaustive_search specialized to the deflated Clifford cost. Returns exactly what
/// exhaustive_search(t, LevelCost(t, h, ctx), ...) returns, but shares circuit prefixes
/// between neighbouring assignments.
inline SearchOutcome exhaustive_level_search(const AnsatzTemplate &t, const PauliSumHamiltonian &h,
                                             const DeflationContext &ctx,
                                             std::size_t exhaustive_cap = 12,
                                             std::size_t threads = 1) {
  const std::size_t p = t.parameter_count();
  if (p > exhaustive_cap || p > 31) {
    throw InvalidArgument("exhaustive_search: " + std::to_string(p) +
                          " parameters exceeds the exhaustive cap of " +
                          std::to_string(std::min<std::size_t>(exhaustive_cap, 31)));
  }
  if (t.num_qubits() != h.num_qubits()) {
    throw InvalidArgument("exhaustive_level_search: template/Hamiltonian qubit count mismatch");
  }
  const detail::ParamPlan plan = detail::plan_by_parameter(t);

  // Work units are subtrees under a fixed digit prefix, dealt round-robin to workers.
  std::size_t prefix_len = 0;
  while (prefix_len < p && (std::uint64_t{1} << (2 * prefix_len)) < 8 * threads) ++prefix_len;
  const std::uint64_t units = std::uint64_t{1} << (2 * prefix_len);
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::uint64_t>(threads, units));

  std::vector<std::optional<SearchOutcome>> parts(workers);
  detail::run_workers(workers, [&](std::size_t w) {
    std::optional<SearchOutcome> best;
    for (std::uint64_t u = w; u < units; u += workers) {
      detail::PrefixEnumerator e(t, plan, h, ctx);
      e.run_unit(u, prefix_len);
      if (!e.has_best()) continue;
      if (!best || e.best_cost() < best->cost) {  // units ascend in index within a worker
        best = SearchOutcome{CliffordParams::from_index(e.best_index(), p), e.best_cost()};
      }
    }
    parts[w] = std::move(best);
  });
  return *detail::reduce(parts);
}

inline SearchOutcome run_search(const AnsatzTemplate &t, const PauliSumHamiltonian &h,
                                const DeflationContext &ctx, const SearchConfig &config,
                                std::span<const CliffordParams> warm_starts = {}) {
  if (config.strategy == SearchStrategy::exhaustive) {
    return exhaustive_level_search(t, h, ctx, config.exhaustive_cap, config.threads);
  }
  const LevelCost cost(t, h, ctx);
  return coordinate_descent_search(t, cost, config.seed, config.restarts, warm_starts,
                                   config.threads);
}

/// Minimizes the deflated cost for level ctx.level(). `spectrum`, when given, fills the
/// exact_energy/abs_error columns from its ctx.level()-th entry.
inline LevelResult solve_level(const PauliSumHamiltonian &h, const DeflationContext &ctx,
                               const AnsatzTemplate &t, const SearchConfig &config,
                               const std::vector<double> *spectrum = nullptr,
                               std::span<const CliffordParams> warm_starts = {}) {
  config.validate();
  if (t.num_qubits() != h.num_qubits()) {
    throw InvalidArgument("solve_level: template has " + std::to_string(t.num_qubits()) +
                          " qubits, Hamiltonian has " + std::to_string(h.num_qubits()));
  }
  if (h.num_qubits() < 32 && ctx.level() >= (std::size_t{1} << (2 * h.num_qubits()))) {
    throw InvalidArgument("solve_level: level exceeds the Hilbert-space dimension");
  }
  const SearchOutcome best = run_search(t, h, ctx, config, warm_starts);

  LevelResult r;
  r.level = ctx.level();
  r.params = best.params;
  r.state = prepare_state(t, best.params);
  const CostBreakdown b = clifford_vqd_breakdown(r.state, h, ctx);
  r.energy = b.energy;
  r.penalty = b.penalty;
  r.cost = b.cost;
  if (spectrum != nullptr) {
    if (r.level >= spectrum->size()) throw InvalidArgument("solve_level: spectrum too short");
    r.exact_energy = (*spectrum)[r.level];
    r.abs_error = std::abs(r.energy - *r.exact_energy);
  }
  return r;
}

struct LadderResult {
  std::vector<LevelResult> levels;
  std::string hamiltonian_id;
  SearchConfig config_echo;
};

/// Solves levels 0..k-1, each deflated against every previously found state.
/// `warm_starts[j]`, if present, seeds the coordinate-descent search of level j.
inline LadderResult solve_ladder(const PauliSumHamiltonian &h, std::size_t k,
                                 const AnsatzTemplate &t, const SearchConfig &config,
                                 std::string hamiltonian_id = {},
                                 std::span<const CliffordParams> warm_starts = {}) {
  config.validate();
  if (k == 0) throw InvalidArgument("solve_ladder: k must be >= 1");
  if (h.num_qubits() < 32 && k > (std::size_t{1} << (2 * h.num_qubits()))) {
    throw InvalidArgument("solve_ladder: k exceeds the Hilbert-space dimension");
  }
  if (!config.beta.is_auto() && config.beta.explicit_betas.size() != 1 &&
      config.beta.explicit_betas.size() + 1 < k) {
    throw InvalidArgument("solve_ladder: explicit beta list needs 1 or at least k-1 entries");
  }
  std::vector<double> spectrum;
  if (config.oracle) spectrum = eigenspectrum(h);

  LadderResult out;
  out.hamiltonian_id = std::move(hamiltonian_id);
  out.config_echo = config;
  DeflationContext ctx;
  for (std::size_t level = 0; level < k; ++level) {
    std::span<const CliffordParams> warm;
    if (level < warm_starts.size()) warm = warm_starts.subspan(level, 1);
    LevelResult r = solve_level(h, ctx, t, config, config.oracle ? &spectrum : nullptr, warm);
    if (level + 1 < k) ctx.push(r.state, config.beta.beta_for(level, h));
    out.levels.push_back(std::move(r));
  }
  return out;
}

enum class TransferMode { disabled, applied, no_op };

inline const char *transfer_name(TransferMode m) {
  switch (m) {
    case TransferMode::disabled: return "disabled";
    case TransferMode::applied: return "applied";
    case TransferMode::no_op: return "no_op";
  }
  return "?";
}

struct SweepPointResult {
  std::string label;
  LadderResult ladder;
  TransferMode transfer = TransferMode::disabled;
};

/// Processes manifest points in order. With transfer enabled and coordinate descent,
/// level j at point i+1 also descends from level j's optimum at point i. Exhaustive
/// search is global, so transfer is recorded as a no-op there.
inline std::vector<SweepPointResult> sweep(const SweepManifest &manifest, const AnsatzTemplate &t,
                                           const SearchConfig &config) {
  if (manifest.points.empty()) throw InvalidArgument("sweep: manifest has no points");
  std::vector<PauliSumHamiltonian> hs;
  hs.reserve(manifest.points.size());
  for (const auto &p : manifest.points) {
    hs.push_back(load_hamiltonian(p.hamiltonian_source));
    if (hs.back().num_qubits() != t.num_qubits()) {
      throw InvalidArgument("sweep: point \"" + p.label + "\" has " +
                            std::to_string(hs.back().num_qubits()) + " qubits, expected " +
                            std::to_string(t.num_qubits()));
    }
  }

  std::vector<SweepPointResult> out;
  std::vector<CliffordParams> previous;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    SweepPointResult r;
    r.label = manifest.points[i].label;
    std::span<const CliffordParams> warm;
    if (!manifest.transfer_enabled) {
      r.transfer = TransferMode::disabled;
    } else if (config.strategy == SearchStrategy::exhaustive) {
      r.transfer = TransferMode::no_op;
    } else if (!previous.empty()) {
      r.transfer = TransferMode::applied;
      warm = previous;
    }
    r.ladder = solve_ladder(hs[i], manifest.levels_requested, t, config,
                            manifest.points[i].hamiltonian_source.filename().string(), warm);
    previous.clear();
    for (const auto &lvl : r.ladder.levels) previous.push_back(lvl.params);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace cliffvqd
