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

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "twl/pose.hpp"
#include "twl/protocols.hpp"
#include "twl/scenario.hpp"

namespace twl::cli {

/// Bad config content. `key()` names the offending entry when there is one.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what);
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// User-facing run parameters in the units of the config keys.
struct RunConfig {
  double carrier_hz = 38e9;
  double bandwidth_hz = 125e6;
  std::optional<double> weff2_hz2;      // default bandwidth^2 / 3
  std::optional<double> symbol_time_s;  // default 1 / bandwidth
  int n_symbols = 64;
  double tx_power_dbm = 0.0;
  double noise_psd_dbm_hz = -170.0;
  double speed_of_light_m_s = kSpeedOfLight;

  int bs_rows = 12;
  int bs_cols = 12;
  int ue_rows = 12;
  int ue_cols = 12;
  double spacing_wavelengths = 0.5;
  int n_beams_bs = 25;
  int n_beams_ue = 25;
  std::array<double, 2> sector_azimuth_deg = {30.0, 150.0};
  std::array<double, 2> sector_polar_deg = {100.0, 170.0};
  std::array<double, 2> orientation_deg = {0.0, 0.0};  // (zeta, chi)
  std::array<double, 12> region_vertices_m;

  int n_samples = 10000;
  std::uint64_t seed = 1;
  int threads = 0;
  double phase_rad = 0.0;
  double clock_bias_s = 0.0;
  std::vector<Protocol> protocols = {Protocol::kOwl, Protocol::kRlp, Protocol::kClp};
  std::vector<Device> initiators = {Device::kBs, Device::kUe};

  std::array<double, 3> position_m = {0.0, 25.0, -10.0};
  std::vector<double> bandwidths_hz = {20e6, 40e6, 60e6, 80e6, 100e6, 125e6, 250e6, 500e6, 1e9};
  std::vector<int> antennas = {36, 64, 100, 144, 196, 256};
  Device sweep_side = Device::kUe;

  RunConfig();

  /// Throws ConfigError naming the first invalid key.
  void validate() const;
  /// Scenario in SI units and radians. Validates first.
  Scenario to_scenario() const;
};

/// Parses `key = value` lines. Values are numbers, bare words, or bracketed
/// comma-separated lists; `#` starts a comment. Omitted keys keep their
/// defaults. Unknown or repeated keys are errors.
RunConfig parse_config_text(std::string_view text);

/// Reads and parses a file. A missing file is a ConfigError.
RunConfig parse_config(const std::filesystem::path& path);

/// Every key with its resolved value, one `key = value` line each, floats in
/// round-trip precision.
std::string echo_config(const RunConfig& cfg);

/// Ordered (key, value) pairs behind echo_config.
std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& cfg);

}  // namespace twl::cli
