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

// Input formats.
//
// Hamiltonian text: one term per line, "<coefficient> <label>", e.g. "-1.0523 ZI".
// Lines starting with '#' are comments; blank lines are ignored. Repeated labels are
// merged by adding coefficients.
//
// Sweep manifest (JSON):
//   {
//     "levels": 3,
//     "transfer": true,
//     "points": [ {"label": "0.74", "hamiltonian": "h2_0.74.txt"}, ... ]
//   }
// Relative Hamiltonian paths resolve against the manifest's directory.

#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cliffvqd/error.hpp"
#include "cliffvqd/pauli.hpp"

namespace cliffvqd {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
  return ss.str();
}

}  // namespace detail

/// Parses Hamiltonian text (see file comment). Errors carry 1-based line numbers.
inline PauliSumHamiltonian parse_hamiltonian(std::string_view text) {
  std::vector<std::pair<double, PauliString>> terms;
  std::size_t line_no = 0;
  std::size_t width = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const auto line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;

    const auto split = line.find_first_of(" \t");
    if (split == std::string_view::npos) {
      throw ParseError("expected '<coefficient> <label>', got \"" + std::string(line) + "\"",
                       line_no);
    }
    const auto coef_text = line.substr(0, split);
    const auto label = detail::trim(line.substr(split));
    if (label.find_first_of(" \t") != std::string_view::npos) {
      throw ParseError("trailing tokens after Pauli label", line_no);
    }

    double coef = 0.0;
    const char *first = coef_text.data();
    const char *last = first + coef_text.size();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, coef);
    if (ec != std::errc() || ptr != last || !std::isfinite(coef)) {
      throw ParseError("invalid coefficient \"" + std::string(coef_text) + "\"", line_no);
    }

    PauliString p;
    try {
      p = parse_pauli(label);
    } catch (const ParseError &e) {
      throw ParseError(e.what(), line_no);
    }
    if (width == 0) {
      width = p.num_qubits();
    } else if (p.num_qubits() != width) {
      throw ParseError("label \"" + std::string(label) + "\" has " +
                           std::to_string(p.num_qubits()) + " qubits, expected " +
                           std::to_string(width),
                       line_no);
    }
    terms.emplace_back(coef, p);
  }
  if (terms.empty()) throw ParseError("Hamiltonian has no terms");

  PauliSumHamiltonian h(width);
  for (const auto &[c, p] : terms) h.add_term(c, p);
  return h;
}

inline PauliSumHamiltonian load_hamiltonian(const std::filesystem::path &path) {
  const std::string text = detail::read_file(path);
  try {
    return parse_hamiltonian(text);
  } catch (const ParseError &e) {
    throw ParseError(path.string() + ": ", e);
  }
}

/// Renders a Hamiltonian in the text format; coefficients round-trip exactly.
inline std::string format_hamiltonian(const PauliSumHamiltonian &h) {
  std::ostringstream out;
  out.precision(17);
  for (const auto &t : h.terms()) out << t.coefficient << ' ' << format_pauli(t.pauli) << '\n';
  return out.str();
}

struct SweepPoint {
  std::string label;
  std::filesystem::path hamiltonian_source;
};

struct SweepManifest {
  std::vector<SweepPoint> points;
  std::size_t levels_requested = 1;
  bool transfer_enabled = false;
};

/// Validates manifest structure; paths in `j` resolve against `base_dir`.
inline SweepManifest parse_manifest(const nlohmann::json &j,
                                    const std::filesystem::path &base_dir) {
  if (!j.is_object()) throw ParseError("manifest must be a JSON object");
  SweepManifest m;
  try {
    const auto levels = j.at("levels").get<long long>();
    if (levels < 1) throw ParseError("manifest: levels must be >= 1");
    m.levels_requested = static_cast<std::size_t>(levels);
    m.transfer_enabled = j.value("transfer", false);
    const auto &points = j.at("points");
    if (!points.is_array() || points.empty()) {
      throw ParseError("manifest: points must be a non-empty array");
    }
    std::set<std::string> seen;
    for (const auto &p : points) {
      SweepPoint sp;
      sp.label = p.at("label").get<std::string>();
      std::filesystem::path src = p.at("hamiltonian").get<std::string>();
      if (src.is_relative()) src = base_dir / src;
      sp.hamiltonian_source = src.lexically_normal();
      if (!seen.insert(sp.label).second) {
        throw ParseError("manifest: duplicate point label \"" + sp.label + "\"");
      }
      if (!std::filesystem::exists(sp.hamiltonian_source)) {
        throw IoError("manifest: point \"" + sp.label + "\" references missing file '" +
                      sp.hamiltonian_source.string() + "'");
      }
      m.points.push_back(std::move(sp));
    }
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("manifest: ") + e.what());
  }
  return m;
}

inline SweepManifest load_manifest(const std::filesystem::path &path) {
  const std::string text = detail::read_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return parse_manifest(j, path.parent_path());
}

}  // namespace cliffvqd
