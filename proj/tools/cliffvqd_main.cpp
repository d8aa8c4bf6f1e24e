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

// Batch front end:
//   cliffvqd solve    --hamiltonian <file> --levels <k> --out <file> [...]
//   cliffvqd sweep    --manifest <file> --out <file> [--transfer] [...]
//   cliffvqd refine   --hamiltonian <file> --levels <k> --cold-seeds <m> --tolerance <ha> --out <file>
//   cliffvqd validate [--qubits <n>] [--samples <count>] [--seed <u64>]
//
// Exit codes: 0 success, 1 validation failure, 2 usage/parse error, 3 I/O error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "cliffvqd/cliffvqd.hpp"

namespace {

using namespace cliffvqd;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct SearchFlags {
  std::size_t blocks = 2;
  std::string search = "exhaustive";
  std::string beta = "auto";
  std::uint64_t seed = 1;
  bool no_oracle = false;
  std::string out;
  std::string format = "csv";
  std::size_t restarts = 16;
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
};

void add_search_flags(CLI::App *cmd, SearchFlags &f) {
  cmd->add_option("--blocks", f.blocks, "Entangling blocks L of the ansatz")->capture_default_str();
  cmd->add_option("--search", f.search, "Search strategy")
      ->check(CLI::IsMember({"exhaustive", "cd"}))
      ->capture_default_str();
  cmd->add_option("--beta", f.beta, "Penalty weights: auto or v1,v2,...")->capture_default_str();
  cmd->add_option("--seed", f.seed, "Seed for random restarts")->capture_default_str();
  cmd->add_flag("--no-oracle", f.no_oracle, "Skip exact diagonalization");
  cmd->add_option("--out", f.out, "Output file")->required();
  cmd->add_option("--format", f.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--restarts", f.restarts, "Random restarts for coordinate descent")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--threads", f.threads, "Worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber);
}

BetaPolicy parse_beta(const std::string &text) {
  BetaPolicy p;
  if (text == "auto") return p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception &) {
      throw InvalidArgument("--beta: cannot parse \"" + item + "\"");
    }
    if (used != item.size() || !(v > 0.0)) {
      throw InvalidArgument("--beta: values must be positive reals, got \"" + item + "\"");
    }
    p.explicit_betas.push_back(v);
  }
  if (p.explicit_betas.empty()) throw InvalidArgument("--beta: empty list");
  return p;
}

SearchConfig make_config(const SearchFlags &f) {
  SearchConfig c;
  c.strategy = f.search == "cd" ? SearchStrategy::coordinate_descent : SearchStrategy::exhaustive;
  c.beta = parse_beta(f.beta);
  c.seed = f.seed;
  c.oracle = !f.no_oracle;
  c.restarts = f.restarts;
  c.threads = f.threads;
  c.validate();
  return c;
}

RunEcho make_echo(const std::string &command, const AnsatzTemplate &t, std::size_t levels,
                  const SearchConfig &config) {
  return {command, t.num_qubits(), t.entangling_blocks(), levels, config};
}

void print_summary(const std::vector<SweepPointResult> &results) {
  for (const auto &p : results) {
    for (const auto &l : p.ladder.levels) {
      std::cout << p.label << " level " << l.level << ": energy " << format_real(l.energy);
      if (l.exact_energy) {
        std::cout << "  exact " << format_real(*l.exact_energy) << "  |err| "
                  << format_real(*l.abs_error);
      }
      std::cout << "  params " << l.params.to_string() << '\n';
    }
  }
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Clifford-restricted variational deflation for Pauli-sum Hamiltonians"};
  app.require_subcommand(1);

  SearchFlags solve_flags;
  std::string solve_hamiltonian;
  std::size_t solve_levels = 1;
  auto *solve = app.add_subcommand("solve", "Lowest k levels of one Hamiltonian");
  solve->add_option("--hamiltonian", solve_hamiltonian, "Hamiltonian text file")->required();
  solve->add_option("--levels", solve_levels, "Number of levels k")
      ->required()
      ->check(CLI::PositiveNumber);
  add_search_flags(solve, solve_flags);

  SearchFlags sweep_flags;
  std::string manifest_path;
  bool transfer = false;
  auto *sweep_cmd = app.add_subcommand("sweep", "Ladder at every point of a sweep manifest");
  sweep_cmd->add_option("--manifest", manifest_path, "Sweep manifest (JSON)")->required();
  sweep_cmd->add_flag("--transfer", transfer, "Warm-start each point from the previous one");
  add_search_flags(sweep_cmd, sweep_flags);

  std::string refine_hamiltonian;
  std::size_t refine_levels = 1;
  std::size_t cold_seeds = 20;
  double tolerance = 1e-3;
  std::string refine_out;
  std::string refine_format = "csv";
  std::size_t refine_blocks = 2;
  std::uint64_t refine_seed = 1;
  std::size_t max_sweeps = 200;
  std::string refine_beta = "auto";
  std::size_t refine_threads = std::max(1u, std::thread::hardware_concurrency());
  auto *refine = app.add_subcommand("refine", "Continuous refinement: Clifford warm vs cold starts");
  refine->add_option("--hamiltonian", refine_hamiltonian, "Hamiltonian text file")->required();
  refine->add_option("--levels", refine_levels, "Number of levels k")
      ->required()
      ->check(CLI::PositiveNumber);
  refine->add_option("--cold-seeds", cold_seeds, "Random cold starts per level")->required();
  refine->add_option("--tolerance", tolerance, "Convergence tolerance (Ha)")
      ->required()
      ->check(CLI::PositiveNumber);
  refine->add_option("--out", refine_out, "Output file")->required();
  refine->add_option("--format", refine_format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  refine->add_option("--blocks", refine_blocks, "Entangling blocks L")->capture_default_str();
  refine->add_option("--seed", refine_seed, "Seed for cold starts")->capture_default_str();
  refine->add_option("--max-sweeps", max_sweeps, "Sweep budget per arm")->capture_default_str();
  refine->add_option("--beta", refine_beta, "Penalty weights: auto or v1,v2,...");
  refine->add_option("--threads", refine_threads, "Worker threads")->check(CLI::PositiveNumber);

  std::size_t val_qubits = 2;
  std::size_t val_blocks = 2;
  std::size_t val_samples = 200;
  std::uint64_t val_seed = 1;
  std::vector<std::string> val_hamiltonians;
  auto *validate = app.add_subcommand("validate", "Stabilizer vs dense cross-oracle checks");
  validate->add_option("--qubits", val_qubits, "Qubit count")->check(CLI::Range(1, 10));
  validate->add_option("--blocks", val_blocks, "Entangling blocks L")->capture_default_str();
  validate->add_option("--samples", val_samples, "Random parameter vectors and state pairs")
      ->check(CLI::PositiveNumber);
  validate->add_option("--seed", val_seed, "Seed")->capture_default_str();
  validate->add_option("--hamiltonian", val_hamiltonians,
                       "Also check these Hamiltonian files (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve) {
      const SearchConfig config = make_config(solve_flags);
      const PauliSumHamiltonian h = load_hamiltonian(solve_hamiltonian);
      const AnsatzTemplate t(h.num_qubits(), solve_flags.blocks);
      const std::string id = std::filesystem::path(solve_hamiltonian).filename().string();
      std::vector<SweepPointResult> results(1);
      results[0].label = id;
      results[0].ladder = solve_ladder(h, solve_levels, t, config, id);
      write_results(results, make_echo("solve", t, solve_levels, config),
                    parse_output_format(solve_flags.format), solve_flags.out);
      print_summary(results);
    } else if (*sweep_cmd) {
      const SearchConfig config = make_config(sweep_flags);
      SweepManifest m = load_manifest(manifest_path);
      if (transfer) m.transfer_enabled = true;
      const PauliSumHamiltonian first = load_hamiltonian(m.points.front().hamiltonian_source);
      const AnsatzTemplate t(first.num_qubits(), sweep_flags.blocks);
      const auto results = sweep(m, t, config);
      write_results(results, make_echo("sweep", t, m.levels_requested, config),
                    parse_output_format(sweep_flags.format), sweep_flags.out);
      print_summary(results);
    } else if (*refine) {
      SearchConfig config;
      config.seed = refine_seed;
      config.beta = parse_beta(refine_beta);
      config.threads = refine_threads;
      config.validate();
      const PauliSumHamiltonian h = load_hamiltonian(refine_hamiltonian);
      const AnsatzTemplate t(h.num_qubits(), refine_blocks);
      WarmstartOptions opts;
      opts.cold_seeds = cold_seeds;
      opts.tolerance = tolerance;
      opts.max_sweeps = max_sweeps;
      const auto reports = warmstart_report(h, refine_levels, t, config, opts);
      write_refine_reports(reports, make_echo("refine", t, refine_levels, config),
                           parse_output_format(refine_format), refine_out);
      for (std::size_t level = 0; level < refine_levels; ++level) {
        const std::size_t per = cold_seeds + 1;
        const RefineReport &warm = reports[level * per];
        std::span<const RefineReport> cold(reports.data() + level * per + 1, cold_seeds);
        std::cout << "level " << level << ": warm init " << format_real(warm.init_cost)
                  << " final " << format_real(warm.final_cost) << " iterations "
                  << (warm.iterations_to_tolerance
                          ? std::to_string(*warm.iterations_to_tolerance)
                          : std::string("not_reached"));
        if (!cold.empty()) std::cout << "; cold median iterations " << median_iterations(cold);
        std::cout << '\n';
      }
    } else if (*validate) {
      ValidationOptions opts;
      opts.n_qubits = val_qubits;
      opts.entangling_blocks = val_blocks;
      opts.samples = val_samples;
      opts.pairs = val_samples;
      opts.seed = val_seed;
      for (const auto &path : val_hamiltonians) opts.extra_hamiltonians.push_back(load_hamiltonian(path));
      const ValidationReport rep = validate_cross_oracle(opts);
      std::cout << "rotation checks " << rep.rotation_checks << ", invariant checks "
                << rep.invariant_checks << ", energy checks " << rep.energy_checks
                << " (max error " << rep.max_energy_error << "), overlap checks "
                << rep.overlap_checks << " (max error " << rep.max_overlap_error << ")\n";
      for (const auto &msg : rep.messages) std::cerr << "FAIL: " << msg << '\n';
      if (!rep.ok()) {
        std::cerr << rep.failures << " check(s) failed\n";
        return kExitValidation;
      }
      std::cout << "all checks passed\n";
    }
  } catch (const IoError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ParseError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidationError &e) {
    std::cerr << "internal check failed: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}
