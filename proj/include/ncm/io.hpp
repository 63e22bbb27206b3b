// Copyright 2026 The ncmarkov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ncm/markov.hpp"
#include "ncm/model.hpp"
#include "ncm/scattering.hpp"
#include "ncm/transfer.hpp"

// Model files, reports and CSV exports. Every writer returns the full text
// so callers decide where it goes; nothing here touches the clock.
namespace ncm::io {

/// Parses the model JSON format. Throws ShapeError on malformed input
/// (bad JSON, missing fields, wrong lengths).
InteractionModel parse_model(const std::string& text);
InteractionModel load_model(const std::string& path);

/// Writes reals with 17 significant digits so a reload is exact.
std::string model_to_json(const InteractionModel& model);

/// "%.17g".
std::string format_real(double x);

/// Echoed at the top of every output.
struct Header {
  std::string command;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> config;
};

std::string tool_version();

/// "# key: value" lines, used by CSV and table outputs.
std::string header_comment(const Header& header);

std::string validation_json(const Header& header, const ValidationReport& report);
std::string validation_table(const Header& header, const ValidationReport& report);

/// Rows: word, length, row, col, re, im, partial_defect. partial_defect is
/// the isometry defect of the coefficients up to that length.
std::string coefficients_csv(const Header& header, const TransferSeries& series);

/// Rows: word, probability, then a final "residual" row.
std::string records_csv(const Header& header, const RecordDistribution& dist);

std::string diagnostics_json(const Header& header, const DiagnosticsReport& report);
std::string diagnostics_table(const Header& header, const DiagnosticsReport& report);

std::string comparison_json(const Header& header, const Comparison& cmp, double tolerance, bool passed);
std::string scattering_json(const Header& header, const ScatteringDefects& defects, double tolerance,
                            bool passed);

}  // namespace ncm::io
