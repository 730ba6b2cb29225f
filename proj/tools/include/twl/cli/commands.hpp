// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The twl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "twl/cli/config.hpp"

namespace twl::cli {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum class Subcommand { kCdf, kSweepBandwidth, kSweepAntennas, kPoint };
enum class OutputFormat { kCsv, kJson };

std::optional<Subcommand> parse_subcommand(std::string_view name);
std::string_view to_string(Subcommand s);

enum ExitCode : int {
  kExitOk = 0,
  kExitIo = 1,
  kExitValidation = 2,
  kExitNumerical = 3,
};

using Cell = std::variant<std::string, double, std::int64_t>;

struct OutputTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  bool all_unidentifiable = false;
};

/// Runs one subcommand and collects its table. Throws ConfigError or
/// twl::Error on bad input.
OutputTable execute(Subcommand sub, const RunConfig& cfg);

/// CSV: `# key: value` metadata lines, header, rows. JSON: one object with
/// metadata, columns, rows. Floats use 9 significant digits; non-finite
/// values print as inf in CSV and null in JSON.
void write_table(const OutputTable& table, OutputFormat format, std::ostream& out);

struct RunOptions {
  std::optional<std::filesystem::path> out;  // stdout when unset
  OutputFormat format = OutputFormat::kCsv;
};

/// execute + write_table with the documented exit codes: 0 success,
/// 1 output not writable, 2 invalid input, 3 every position unidentifiable.
int run(Subcommand sub, const RunConfig& cfg, const RunOptions& opts, std::ostream& stdout_stream,
        std::ostream& err);

}  // namespace twl::cli
