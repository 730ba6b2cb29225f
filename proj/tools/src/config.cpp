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

#include "twl/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "twl/error.hpp"

namespace twl::cli {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

using Tokens = std::vector<std::string>;

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string unquote(std::string_view s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    return std::string(s.substr(1, s.size() - 2));
  }
  return std::string(s);
}

Tokens tokenize(const std::string& key, std::string_view value) {
  value = trim(value);
  if (value.empty()) throw ConfigError(key, "missing value for '" + key + "'");
  if (value.front() != '[') return {unquote(value)};
  if (value.back() != ']') throw ConfigError(key, "unterminated list for '" + key + "'");
  value = trim(value.substr(1, value.size() - 2));
  Tokens out;
  if (value.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = value.find(',', start);
    const std::string_view item = trim(value.substr(start, comma - start));
    if (item.empty()) throw ConfigError(key, "empty list item in '" + key + "'");
    out.push_back(unquote(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double to_double(const std::string& key, const std::string& tok) {
  double v = 0.0;
  const char* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ConfigError(key, "'" + key + "' expects a finite number, got '" + tok + "'");
  }
  return v;
}

template <class Int>
Int to_int(const std::string& key, const std::string& tok) {
  Int v{};
  const char* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(key, "'" + key + "' expects an integer, got '" + tok + "'");
  }
  return v;
}

const std::string& single(const std::string& key, const Tokens& t) {
  if (t.size() != 1) throw ConfigError(key, "'" + key + "' expects a single value");
  return t[0];
}

template <std::size_t N>
std::array<double, N> fixed_list(const std::string& key, const Tokens& t) {
  if (t.size() != N) {
    throw ConfigError(key, "'" + key + "' expects a list of " + std::to_string(N) + " numbers");
  }
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = to_double(key, t[i]);
  return out;
}

Device to_device(const std::string& key, const std::string& tok) {
  if (tok == "bs") return Device::kBs;
  if (tok == "ue") return Device::kUe;
  throw ConfigError(key, "'" + key + "' expects bs or ue, got '" + tok + "'");
}

Protocol to_protocol(const std::string& key, const std::string& tok) {
  if (tok == "owl") return Protocol::kOwl;
  if (tok == "rlp") return Protocol::kRlp;
  if (tok == "clp") return Protocol::kClp;
  throw ConfigError(key, "'" + key + "' expects owl, rlp, or clp, got '" + tok + "'");
}

std::string fmt(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

template <class Range, class F>
std::string fmt_list(const Range& r, F f) {
  std::string out = "[";
  bool first = true;
  for (const auto& v : r) {
    if (!first) out += ", ";
    out += f(v);
    first = false;
  }
  return out + "]";
}

std::string fmt_doubles(const auto& r) {
  return fmt_list(r, [](double v) { return fmt(v); });
}

struct Field {
  std::function<void(RunConfig&, const std::string&, const Tokens&)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <class T>
Field number_field(T RunConfig::*member) {
  return Field{[member](RunConfig& c, const std::string& k, const Tokens& t) {
                 if constexpr (std::is_same_v<T, double>) {
                   c.*member = to_double(k, single(k, t));
                 } else {
                   c.*member = to_int<T>(k, single(k, t));
                 }
               },
               [member](const RunConfig& c) {
                 if constexpr (std::is_same_v<T, double>) {
                   return fmt(c.*member);
                 } else {
                   return std::to_string(c.*member);
                 }
               }};
}

template <std::size_t N>
Field array_field(std::array<double, N> RunConfig::*member) {
  return Field{[member](RunConfig& c, const std::string& k, const Tokens& t) {
                 c.*member = fixed_list<N>(k, t);
               },
               [member](const RunConfig& c) { return fmt_doubles(c.*member); }};
}

Field optional_field(std::optional<double> RunConfig::*member,
                     std::function<double(const RunConfig&)> fallback) {
  return Field{[member](RunConfig& c, const std::string& k, const Tokens& t) {
                 c.*member = to_double(k, single(k, t));
               },
               [member, fallback](const RunConfig& c) {
                 return fmt((c.*member).value_or(fallback(c)));
               }};
}

// Echo order.
const std::vector<std::pair<std::string, Field>>& fields() {
  static const std::vector<std::pair<std::string, Field>> table = [] {
    std::vector<std::pair<std::string, Field>> f;
    f.emplace_back("carrier_hz", number_field(&RunConfig::carrier_hz));
    f.emplace_back("bandwidth_hz", number_field(&RunConfig::bandwidth_hz));
    f.emplace_back("weff2_hz2", optional_field(&RunConfig::weff2_hz2, [](const RunConfig& c) {
                     return c.bandwidth_hz * c.bandwidth_hz / 3.0;
                   }));
    f.emplace_back("symbol_time_s", optional_field(&RunConfig::symbol_time_s,
                                                   [](const RunConfig& c) { return 1.0 / c.bandwidth_hz; }));
    f.emplace_back("n_symbols", number_field(&RunConfig::n_symbols));
    f.emplace_back("tx_power_dbm", number_field(&RunConfig::tx_power_dbm));
    f.emplace_back("noise_psd_dbm_hz", number_field(&RunConfig::noise_psd_dbm_hz));
    f.emplace_back("speed_of_light_m_s", number_field(&RunConfig::speed_of_light_m_s));
    f.emplace_back("bs_rows", number_field(&RunConfig::bs_rows));
    f.emplace_back("bs_cols", number_field(&RunConfig::bs_cols));
    f.emplace_back("ue_rows", number_field(&RunConfig::ue_rows));
    f.emplace_back("ue_cols", number_field(&RunConfig::ue_cols));
    f.emplace_back("spacing_wavelengths", number_field(&RunConfig::spacing_wavelengths));
    f.emplace_back("n_beams_bs", number_field(&RunConfig::n_beams_bs));
    f.emplace_back("n_beams_ue", number_field(&RunConfig::n_beams_ue));
    f.emplace_back("sector_azimuth_deg", array_field(&RunConfig::sector_azimuth_deg));
    f.emplace_back("sector_polar_deg", array_field(&RunConfig::sector_polar_deg));
    f.emplace_back("orientation_deg", array_field(&RunConfig::orientation_deg));
    f.emplace_back("region_vertices_m", array_field(&RunConfig::region_vertices_m));
    f.emplace_back("n_samples", number_field(&RunConfig::n_samples));
    f.emplace_back("seed", number_field(&RunConfig::seed));
    f.emplace_back("threads", number_field(&RunConfig::threads));
    f.emplace_back("phase_rad", number_field(&RunConfig::phase_rad));
    f.emplace_back("clock_bias_s", number_field(&RunConfig::clock_bias_s));
    f.emplace_back("protocols",
                   Field{[](RunConfig& c, const std::string& k, const Tokens& t) {
                           c.protocols.clear();
                           for (const auto& s : t) c.protocols.push_back(to_protocol(k, s));
                         },
                         [](const RunConfig& c) {
                           return fmt_list(c.protocols,
                                           [](Protocol p) { return std::string(to_string(p)); });
                         }});
    f.emplace_back("initiators",
                   Field{[](RunConfig& c, const std::string& k, const Tokens& t) {
                           c.initiators.clear();
                           for (const auto& s : t) c.initiators.push_back(to_device(k, s));
                         },
                         [](const RunConfig& c) {
                           return fmt_list(c.initiators,
                                           [](Device d) { return std::string(to_string(d)); });
                         }});
    f.emplace_back("position_m", array_field(&RunConfig::position_m));
    f.emplace_back("bandwidths_hz",
                   Field{[](RunConfig& c, const std::string& k, const Tokens& t) {
                           c.bandwidths_hz.clear();
                           for (const auto& s : t) c.bandwidths_hz.push_back(to_double(k, s));
                         },
                         [](const RunConfig& c) { return fmt_doubles(c.bandwidths_hz); }});
    f.emplace_back("antennas",
                   Field{[](RunConfig& c, const std::string& k, const Tokens& t) {
                           c.antennas.clear();
                           for (const auto& s : t) c.antennas.push_back(to_int<int>(k, s));
                         },
                         [](const RunConfig& c) {
                           return fmt_list(c.antennas, [](int n) { return std::to_string(n); });
                         }});
    f.emplace_back("sweep_side",
                   Field{[](RunConfig& c, const std::string& k, const Tokens& t) {
                           c.sweep_side = to_device(k, single(k, t));
                         },
                         [](const RunConfig& c) { return std::string(to_string(c.sweep_side)); }});
    return f;
  }();
  return table;
}

void require(bool ok, const char* key, const std::string& what) {
  if (!ok) throw ConfigError(key, std::string("'") + key + "' " + what);
}

}  // namespace

ConfigError::ConfigError(std::string key, const std::string& what)
    : std::runtime_error(what), key_(std::move(key)) {}

RunConfig::RunConfig() {
  const Region r = Region::diamond();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 3; ++j) region_vertices_m[static_cast<std::size_t>(3 * i + j)] = r.vertices[i][j];
  }
}

void RunConfig::validate() const {
  require(carrier_hz > 0.0, "carrier_hz", "must be positive");
  require(bandwidth_hz > 0.0, "bandwidth_hz", "must be positive");
  require(!weff2_hz2 || *weff2_hz2 > 0.0, "weff2_hz2", "must be positive");
  require(!symbol_time_s || *symbol_time_s > 0.0, "symbol_time_s", "must be positive");
  require(n_symbols >= 1, "n_symbols", "must be >= 1");
  require(speed_of_light_m_s > 0.0, "speed_of_light_m_s", "must be positive");
  require(bs_rows >= 1, "bs_rows", "must be >= 1");
  require(bs_cols >= 1, "bs_cols", "must be >= 1");
  require(ue_rows >= 1, "ue_rows", "must be >= 1");
  require(ue_cols >= 1, "ue_cols", "must be >= 1");
  require(spacing_wavelengths > 0.0, "spacing_wavelengths", "must be positive");
  for (const char* k : {"n_beams_bs", "n_beams_ue"}) {
    const int n = std::string_view(k) == "n_beams_bs" ? n_beams_bs : n_beams_ue;
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(std::max(n, 0)))));
    require(n >= 1 && side * side == n, k, "must be a positive perfect square");
  }
  require(sector_azimuth_deg[0] <= sector_azimuth_deg[1], "sector_azimuth_deg",
          "must be an ascending [lo, hi] pair");
  require(sector_polar_deg[0] <= sector_polar_deg[1] && sector_polar_deg[0] >= 0.0 &&
              sector_polar_deg[1] <= 180.0,
          "sector_polar_deg", "must be an ascending [lo, hi] pair within [0, 180]");
  require(n_samples >= 1, "n_samples", "must be >= 1");
  require(threads >= 0, "threads", "must be >= 0");
  require(!protocols.empty(), "protocols", "must list at least one protocol");
  require(!initiators.empty(), "initiators", "must list at least one initiator");
  require(std::set<Protocol>(protocols.begin(), protocols.end()).size() == protocols.size(),
          "protocols", "must not repeat entries");
  require(std::set<Device>(initiators.begin(), initiators.end()).size() == initiators.size(),
          "initiators", "must not repeat entries");
  require(!bandwidths_hz.empty(), "bandwidths_hz", "must not be empty");
  for (std::size_t i = 0; i < bandwidths_hz.size(); ++i) {
    require(bandwidths_hz[i] > 0.0 && (i == 0 || bandwidths_hz[i] > bandwidths_hz[i - 1]),
            "bandwidths_hz", "must be positive and strictly ascending");
  }
  require(!antennas.empty(), "antennas", "must not be empty");
  for (int n : antennas) {
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(std::max(n, 0)))));
    require(n >= 1 && side * side == n, "antennas", "entries must be positive perfect squares");
  }
  try {
    Region r;
    for (int i = 0; i < 4; ++i) {
      const auto k = static_cast<std::size_t>(3 * i);
      r.vertices[i] = Vector3(region_vertices_m[k], region_vertices_m[k + 1], region_vertices_m[k + 2]);
    }
    r.validate();
  } catch (const Error& e) {
    throw ConfigError("region_vertices_m", std::string("'region_vertices_m' ") + e.what());
  }
}

Scenario RunConfig::to_scenario() const {
  validate();
  Scenario sc;
  for (int i = 0; i < 4; ++i) {
    const auto k = static_cast<std::size_t>(3 * i);
    sc.region.vertices[i] = Vector3(region_vertices_m[k], region_vertices_m[k + 1], region_vertices_m[k + 2]);
  }
  sc.bs_array = ArraySpec{bs_rows, bs_cols, spacing_wavelengths};
  sc.ue_array = ArraySpec{ue_rows, ue_cols, spacing_wavelengths};

  SignalConfig& s = sc.signal;
  s.carrier = carrier_hz;
  s.bandwidth = bandwidth_hz;
  s.weff2 = weff2_hz2.value_or(bandwidth_hz * bandwidth_hz / 3.0);
  s.symbol_time = symbol_time_s.value_or(1.0 / bandwidth_hz);
  s.n_symbols = n_symbols;
  s.energy_per_symbol = dbm_to_watts(tx_power_dbm) * s.symbol_time;
  s.noise_psd = dbm_to_watts(noise_psd_dbm_hz);
  s.c = speed_of_light_m_s;

  sc.bs_beams = n_beams_bs;
  sc.ue_beams = n_beams_ue;
  sc.sector_azimuth = {sector_azimuth_deg[0] * kDeg, sector_azimuth_deg[1] * kDeg};
  sc.sector_polar = {sector_polar_deg[0] * kDeg, sector_polar_deg[1] * kDeg};
  sc.zeta = orientation_deg[0] * kDeg;
  sc.chi = orientation_deg[1] * kDeg;
  sc.psi = phase_rad;
  sc.bias = clock_bias_s;
  for (Protocol p : protocols) {
    for (Device d : initiators) sc.cases.push_back({p, d});
  }
  sc.n_samples = n_samples;
  sc.seed = seed;
  sc.threads = threads;
  return sc;
}

RunConfig parse_config_text(std::string_view text) {
  std::map<std::string_view, const Field*> lookup;
  for (const auto& [name, field] : fields()) lookup.emplace(name, &field);

  RunConfig cfg;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("", "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(body.substr(0, eq)));
    const auto it = lookup.find(key);
    if (it == lookup.end()) throw ConfigError(key, "unknown key '" + key + "'");
    if (!seen.insert(key).second) throw ConfigError(key, "duplicate key '" + key + "'");
    it->second->set(cfg, key, tokenize(key, body.substr(eq + 1)));
  }
  cfg.validate();
  return cfg;
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [name, field] : fields()) out.emplace_back(name, field.get(cfg));
  return out;
}

std::string echo_config(const RunConfig& cfg) {
  std::string out;
  for (const auto& [k, v] : config_entries(cfg)) out += k + " = " + v + "\n";
  return out;
}

}  // namespace twl::cli
