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

#include "twl/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "twl/error.hpp"

namespace twl::cli {
namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

std::string fmt9(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string cell_text(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* d = std::get_if<double>(&c)) return fmt9(*d);
  return std::to_string(std::get<std::int64_t>(c));
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string protocol_name(const ProtocolCase& pc) { return std::string(to_string(pc.protocol)); }
std::string initiator_name(const ProtocolCase& pc) { return std::string(to_string(pc.initiator)); }

std::string pair_text(const std::array<double, 2>& v) { return fmt9(v[0]) + "," + fmt9(v[1]); }

void add_metadata(OutputTable& t, Subcommand sub, const RunConfig& cfg) {
  t.metadata.emplace_back("tool", "twl");
  t.metadata.emplace_back("version", std::string(kToolVersion));
  t.metadata.emplace_back("subcommand", std::string(to_string(sub)));
  t.metadata.emplace_back("seed", std::to_string(cfg.seed));
  t.metadata.emplace_back("sector_azimuth_deg", pair_text(cfg.sector_azimuth_deg));
  t.metadata.emplace_back("sector_polar_deg", pair_text(cfg.sector_polar_deg));
  for (const auto& [k, v] : config_entries(cfg)) t.metadata.emplace_back("config." + k, v);
}

OutputTable cdf_table(const Scenario& sc) {
  const CdfResult res = run_cdf(sc);
  OutputTable t;
  t.metadata.emplace_back("n_samples", std::to_string(sc.n_samples));
  t.columns = {"protocol", "initiator", "quantile", "peb_m", "oeb_deg", "snr_p10_db", "n_unidentifiable"};
  bool all_bad = true;
  for (const QuantileRow& q : res.table) {
    all_bad = all_bad && q.n_unidentifiable == sc.n_samples;
    t.rows.push_back({protocol_name(q.which), initiator_name(q.which), q.quantile, q.peb,
                      q.oeb * kRadToDeg, res.snr_p10_db, static_cast<std::int64_t>(q.n_unidentifiable)});
  }
  t.all_unidentifiable = all_bad;
  return t;
}

OutputTable sweep_table(const std::vector<SweepRow>& rows, int n_samples,
                        std::vector<std::string> lead_columns,
                        const std::function<std::vector<Cell>(const SweepRow&)>& lead) {
  OutputTable t;
  t.metadata.emplace_back("n_samples", std::to_string(n_samples));
  t.columns = std::move(lead_columns);
  for (const char* c : {"protocol", "initiator", "peb90_m", "n_unidentifiable"}) t.columns.push_back(c);
  bool all_bad = true;
  for (const SweepRow& r : rows) {
    all_bad = all_bad && r.n_unidentifiable == n_samples;
    std::vector<Cell> row = lead(r);
    row.emplace_back(protocol_name(r.which));
    row.emplace_back(initiator_name(r.which));
    row.emplace_back(r.peb90);
    row.emplace_back(static_cast<std::int64_t>(r.n_unidentifiable));
    t.rows.push_back(std::move(row));
  }
  t.all_unidentifiable = all_bad;
  return t;
}

OutputTable sweep_bw_table(const Scenario& sc, const RunConfig& cfg) {
  return sweep_table(sweep_bandwidth(sc, cfg.bandwidths_hz), sc.n_samples, {"w_hz"},
                     [](const SweepRow& r) { return std::vector<Cell>{r.parameter}; });
}

OutputTable sweep_ant_table(const Scenario& sc, const RunConfig& cfg) {
  const std::string side(to_string(cfg.sweep_side));
  return sweep_table(sweep_antennas(sc, cfg.antennas, cfg.sweep_side), sc.n_samples,
                     {"side", "n_antennas"}, [&side](const SweepRow& r) {
                       return std::vector<Cell>{side, static_cast<std::int64_t>(std::llround(r.parameter))};
                     });
}

OutputTable point_table(const Scenario& sc, const RunConfig& cfg) {
  const Deployment dep = deploy(sc);
  const Vector3 p(cfg.position_m[0], cfg.position_m[1], cfg.position_m[2]);
  const PositionRecord rec = evaluate_position(sc, dep, p);
  OutputTable t;
  t.columns = {"px", "py", "pz", "zeta_deg", "chi_deg", "protocol", "initiator", "snr_db", "peb_m", "oeb_deg"};
  bool all_bad = true;
  for (std::size_t i = 0; i < sc.cases.size(); ++i) {
    t.rows.push_back({p.x(), p.y(), p.z(), cfg.orientation_deg[0], cfg.orientation_deg[1],
                      protocol_name(sc.cases[i]), initiator_name(sc.cases[i]), rec.snr_db,
                      rec.bounds[i].peb, rec.bounds[i].oeb * kRadToDeg});
    all_bad = all_bad && !rec.bounds[i].identifiable;
  }
  t.all_unidentifiable = all_bad;
  return t;
}

nlohmann::ordered_json cell_json(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return nullptr;
    // Same 9-digit value as the CSV text.
    return std::strtod(fmt9(*d).c_str(), nullptr);
  }
  return std::get<std::int64_t>(c);
}

}  // namespace

std::optional<Subcommand> parse_subcommand(std::string_view name) {
  if (name == "cdf") return Subcommand::kCdf;
  if (name == "sweep-bw") return Subcommand::kSweepBandwidth;
  if (name == "sweep-ant") return Subcommand::kSweepAntennas;
  if (name == "point") return Subcommand::kPoint;
  return std::nullopt;
}

std::string_view to_string(Subcommand s) {
  switch (s) {
    case Subcommand::kCdf: return "cdf";
    case Subcommand::kSweepBandwidth: return "sweep-bw";
    case Subcommand::kSweepAntennas: return "sweep-ant";
    case Subcommand::kPoint: return "point";
  }
  return "unknown";
}

OutputTable execute(Subcommand sub, const RunConfig& cfg) {
  const Scenario sc = cfg.to_scenario();
  OutputTable t;
  switch (sub) {
    case Subcommand::kCdf: t = cdf_table(sc); break;
    case Subcommand::kSweepBandwidth: t = sweep_bw_table(sc, cfg); break;
    case Subcommand::kSweepAntennas: t = sweep_ant_table(sc, cfg); break;
    case Subcommand::kPoint: t = point_table(sc, cfg); break;
  }
  OutputTable out;
  add_metadata(out, sub, cfg);
  out.metadata.insert(out.metadata.end(), t.metadata.begin(), t.metadata.end());
  out.columns = std::move(t.columns);
  out.rows = std::move(t.rows);
  out.all_unidentifiable = t.all_unidentifiable;
  return out;
}

void write_table(const OutputTable& table, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::kJson) {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [k, v] : table.metadata) meta[k] = v;
    doc["metadata"] = std::move(meta);
    doc["columns"] = table.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : table.rows) {
      nlohmann::ordered_json jr = nlohmann::ordered_json::array();
      for (const auto& c : r) jr.push_back(cell_json(c));
      rows.push_back(std::move(jr));
    }
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << '\n';
    return;
  }
  for (const auto& [k, v] : table.metadata) out << "# " << k << ": " << v << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << csv_escape(table.columns[i]);
  }
  out << '\n';
  for (const auto& r : table.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_escape(cell_text(r[i]));
    out << '\n';
  }
}

int run(Subcommand sub, const RunConfig& cfg, const RunOptions& opts, std::ostream& stdout_stream,
        std::ostream& err) {
  OutputTable table;
  try {
    table = execute(sub, cfg);
  } catch (const ConfigError& e) {
    err << "twl: invalid config: " << e.what() << '\n';
    return kExitValidation;
  } catch (const Error& e) {
    err << "twl: " << twl::to_string(e.code()) << ": " << e.what() << '\n';
    return kExitValidation;
  }

  std::ostringstream buf;
  write_table(table, opts.format, buf);
  if (opts.out) {
    std::ofstream file(*opts.out, std::ios::binary | std::ios::trunc);
    if (!file || !(file << buf.str()) || !file.flush()) {
      err << "twl: cannot write output file '" << opts.out->string() << "'\n";
      return kExitIo;
    }
  } else {
    stdout_stream << buf.str();
  }
  if (table.all_unidentifiable) {
    err << "twl: every evaluated position is unidentifiable\n";
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace twl::cli
