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

// Result files.
//
// CSV (one row per point and level):
//   point_label,level,energy_ha,penalty_ha,cost_ha,exact_ha,abs_error_ha,params
// Reals use fixed notation with 12 decimals; missing oracle values are empty fields;
// params is the base-4 digit string.
//
// JSON carries the same fields per level (full double precision) plus the run echo.

#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cliffvqd/error.hpp"
#include "cliffvqd/refine.hpp"
#include "cliffvqd/search.hpp"

namespace cliffvqd {

enum class OutputFormat { csv, json };

inline OutputFormat parse_output_format(std::string_view s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw InvalidArgument("unknown output format \"" + std::string(s) + "\" (expected csv|json)");
}

/// Run settings echoed into structured output. Thread count is deliberately absent:
/// output must not depend on it.
struct RunEcho {
  std::string command;
  std::size_t n_qubits = 0;
  std::size_t entangling_blocks = 0;
  std::size_t levels = 0;
  SearchConfig config;
};

struct ResultRow {
  std::string point_label;
  std::size_t level = 0;
  double energy = 0.0;
  double penalty = 0.0;
  double cost = 0.0;
  std::optional<double> exact;
  std::optional<double> abs_error;
  std::string params;
  bool operator==(const ResultRow &) const = default;
};

inline std::vector<ResultRow> to_rows(std::span<const SweepPointResult> results) {
  std::vector<ResultRow> rows;
  for (const auto &p : results) {
    for (const auto &l : p.ladder.levels) {
      rows.push_back({p.label, l.level, l.energy, l.penalty, l.cost, l.exact_energy, l.abs_error,
                      l.params.to_string()});
    }
  }
  return rows;
}

/// Fixed-point with 12 decimals; negative zero prints as zero.
inline std::string format_real(double v) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

namespace detail {

inline std::string stabilizer_label(const PauliString &p) {
  return (p.phase_ipow() == 2 ? "-" : "+") + format_pauli(p.unsigned_part());
}

inline nlohmann::json optional_json(const std::optional<double> &v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

inline nlohmann::json echo_json(const RunEcho &echo) {
  nlohmann::json beta = "auto";
  if (!echo.config.beta.is_auto()) beta = echo.config.beta.explicit_betas;
  return {
      {"command", echo.command},
      {"template", {{"n_qubits", echo.n_qubits}, {"entangling_blocks", echo.entangling_blocks}}},
      {"levels", echo.levels},
      {"strategy", strategy_name(echo.config.strategy)},
      {"exhaustive_cap", echo.config.exhaustive_cap},
      {"restarts", echo.config.restarts},
      {"beta", beta},
      {"oracle", echo.config.oracle},
  };
}

inline void write_text(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace detail

inline std::string results_csv(std::span<const SweepPointResult> results) {
  std::ostringstream out;
  out << "point_label,level,energy_ha,penalty_ha,cost_ha,exact_ha,abs_error_ha,params\n";
  for (const auto &r : to_rows(results)) {
    out << r.point_label << ',' << r.level << ',' << format_real(r.energy) << ','
        << format_real(r.penalty) << ',' << format_real(r.cost) << ','
        << (r.exact ? format_real(*r.exact) : "") << ','
        << (r.abs_error ? format_real(*r.abs_error) : "") << ',' << r.params << '\n';
  }
  return out.str();
}

inline nlohmann::json results_json(std::span<const SweepPointResult> results,
                                   const RunEcho &echo) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto &p : results) {
    nlohmann::json levels = nlohmann::json::array();
    for (const auto &l : p.ladder.levels) {
      nlohmann::json stabs = nlohmann::json::array();
      for (std::size_t i = 0; i < l.state.num_qubits(); ++i) {
        stabs.push_back(detail::stabilizer_label(l.state.stabilizer(i)));
      }
      levels.push_back({
          {"level", l.level},
          {"energy_ha", l.energy},
          {"penalty_ha", l.penalty},
          {"cost_ha", l.cost},
          {"exact_ha", detail::optional_json(l.exact_energy)},
          {"abs_error_ha", detail::optional_json(l.abs_error)},
          {"params", l.params.to_string()},
          {"stabilizers", stabs},
      });
    }
    points.push_back({{"point_label", p.label},
                      {"hamiltonian_id", p.ladder.hamiltonian_id},
                      {"transfer", transfer_name(p.transfer)},
                      {"levels", levels}});
  }
  return {{"format", "cliffvqd-results/1"},
          {"config", detail::echo_json(echo)},
          {"seed", echo.config.seed},
          {"points", points}};
}

inline void write_results(std::span<const SweepPointResult> results, const RunEcho &echo,
                          OutputFormat format, const std::filesystem::path &path) {
  if (format == OutputFormat::csv) {
    detail::write_text(path, results_csv(results));
  } else {
    detail::write_text(path, results_json(results, echo).dump(2) + "\n");
  }
}

/// Reloads the per-level rows of a JSON results file.
inline std::vector<ResultRow> read_results_json(const std::filesystem::path &path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(detail::read_file(path));
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  std::vector<ResultRow> rows;
  try {
    for (const auto &p : j.at("points")) {
      for (const auto &l : p.at("levels")) {
        ResultRow r;
        r.point_label = p.at("point_label").get<std::string>();
        r.level = l.at("level").get<std::size_t>();
        r.energy = l.at("energy_ha").get<double>();
        r.penalty = l.at("penalty_ha").get<double>();
        r.cost = l.at("cost_ha").get<double>();
        if (!l.at("exact_ha").is_null()) r.exact = l.at("exact_ha").get<double>();
        if (!l.at("abs_error_ha").is_null()) r.abs_error = l.at("abs_error_ha").get<double>();
        r.params = l.at("params").get<std::string>();
        rows.push_back(std::move(r));
      }
    }
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return rows;
}

inline std::string refine_csv(std::span<const RefineReport> reports) {
  std::ostringstream out;
  out << "level,init_kind,cold_seed,init_cost_ha,final_cost_ha,target_ha,"
         "iterations_to_tolerance,sweeps,tolerance_ha\n";
  for (const auto &r : reports) {
    out << r.level << ',' << init_kind_name(r.init_kind) << ',' << r.cold_seed << ','
        << format_real(r.init_cost) << ',' << format_real(r.final_cost) << ','
        << format_real(r.target) << ','
        << (r.iterations_to_tolerance ? std::to_string(*r.iterations_to_tolerance)
                                      : std::string("not_reached"))
        << ',' << r.sweeps << ',' << format_real(r.tolerance) << '\n';
  }
  return out.str();
}

inline nlohmann::json refine_json(std::span<const RefineReport> reports, const RunEcho &echo) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto &r : reports) {
    arr.push_back({
        {"level", r.level},
        {"init_kind", init_kind_name(r.init_kind)},
        {"cold_seed", r.cold_seed},
        {"init_cost_ha", r.init_cost},
        {"final_cost_ha", r.final_cost},
        {"target_ha", r.target},
        {"iterations_to_tolerance",
         r.iterations_to_tolerance ? nlohmann::json(*r.iterations_to_tolerance)
                                   : nlohmann::json("not_reached")},
        {"sweeps", r.sweeps},
        {"tolerance_ha", r.tolerance},
    });
  }
  return {{"format", "cliffvqd-refine/1"},
          {"config", detail::echo_json(echo)},
          {"seed", echo.config.seed},
          {"reports", arr}};
}

inline void write_refine_reports(std::span<const RefineReport> reports, const RunEcho &echo,
                                 OutputFormat format, const std::filesystem::path &path) {
  if (format == OutputFormat::csv) {
    detail::write_text(path, refine_csv(reports));
  } else {
    detail::write_text(path, refine_json(reports, echo).dump(2) + "\n");
  }
}

}  // namespace cliffvqd
