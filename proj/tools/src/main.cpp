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

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "twl/cli/commands.hpp"
#include "twl/cli/config.hpp"

int main(int argc, char** argv) {
  using namespace twl::cli;

  CLI::App app{"Position and orientation error bounds for single-anchor two-way localization"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  std::optional<std::uint64_t> seed;

  struct Entry {
    const char* name;
    const char* help;
  };
  const Entry entries[] = {
      {"cdf", "PEB/OEB quantiles over uniformly sampled UE positions"},
      {"sweep-bw", "PEB at the 0.9 quantile versus bandwidth"},
      {"sweep-ant", "PEB at the 0.9 quantile versus array size on one side"},
      {"point", "SNR, PEB and OEB at a single UE position"},
  };
  for (const Entry& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    sub->add_option("-c,--config", config_path, "key = value config file (defaults when omitted)");
    sub->add_option("-o,--out", out_path, "output file (stdout when omitted)");
    sub->add_option("-f,--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", seed, "override the config seed");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  const auto sub = parse_subcommand(app.get_subcommands().front()->get_name());
  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = parse_config(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "twl: invalid config: " << e.what() << '\n';
    return kExitValidation;
  }
  if (seed) cfg.seed = *seed;

  RunOptions opts;
  opts.format = format == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
  if (!out_path.empty()) opts.out = out_path;
  return run(*sub, cfg, opts, std::cout, std::cerr);
}
