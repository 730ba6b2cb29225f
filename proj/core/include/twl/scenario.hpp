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
#include <span>
#include <vector>

#include "twl/beamforming.hpp"
#include "twl/geometry.hpp"
#include "twl/pose.hpp"
#include "twl/protocols.hpp"

namespace twl {

/// Planar convex quadrilateral at constant height, vertices in order.
struct Region {
  std::array<Vector3, 4> vertices;

  /// Diamond at z = -10 m: (0,0), (25 sqrt3, 25), (0, 50), (-25 sqrt3, 25).
  static Region diamond();

  /// Throws kInvalidArgument unless planar, convex, constant-z, nonzero area.
  void validate() const;
  bool contains(const Vector3& p, double tol = 1e-9) const;
  double area() const;
  Vector3 centroid() const;
};

/// Square-grid URA description; element pitch in wavelengths.
struct ArraySpec {
  int rows = 12;
  int cols = 12;
  double spacing_wavelengths = 0.5;

  int antennas() const { return rows * cols; }
};

struct ProtocolCase {
  Protocol protocol = Protocol::kRlp;
  Device initiator = Device::kBs;

  bool operator==(const ProtocolCase&) const = default;
};

struct Scenario {
  Region region = Region::diamond();
  ArraySpec bs_array;
  ArraySpec ue_array;
  SignalConfig signal = SignalConfig::defaults();
  int bs_beams = 25;
  int ue_beams = 25;
  AngleRange sector_azimuth;  // radians
  AngleRange sector_polar;    // radians
  double zeta = 0.0;          // UE orientation [rad]
  double chi = 0.0;
  double psi = 0.0;
  double bias = 0.0;
  std::vector<ProtocolCase> cases;
  int n_samples = 10000;
  std::uint64_t seed = 1;
  int threads = 0;  // 0 = hardware concurrency

  /// Full default study: 12x12 arrays, 25 beams on each side over azimuth
  /// [30, 150] deg and polar [100, 170] deg, OWL/RLP/CLP for both initiators.
  static Scenario defaults();
  void validate() const;
};

/// Arrays and fixed codebooks for one orientation case. BS transmit and
/// receive beams share the sector grid; the UE uses the reversed grid, fixed
/// in its local frame.
struct Deployment {
  ArrayGeometry bs;
  ArrayGeometry ue;
  Beamformer bs_tx;
  Beamformer bs_rx;
  Beamformer ue_tx;
  Beamformer ue_rx;
};

Deployment deploy(const Scenario& sc);

struct CaseBound {
  double peb = 0.0;  // [m], +inf when unidentifiable
  double oeb = 0.0;  // [rad], +inf when unidentifiable
  bool identifiable = false;
  double j_tau_f = 0.0;
  double j_tau_b = 0.0;
};

struct PositionRecord {
  Vector3 position = Vector3::Zero();
  double snr_db = 0.0;  // uplink SNR
  std::vector<CaseBound> bounds;  // parallel to Scenario::cases
};

/// All protocol cases at one UE position. Degenerate geometry or zero beam
/// gain marks every case unidentifiable instead of throwing.
PositionRecord evaluate_position(const Scenario& sc, const Deployment& dep, const Vector3& position);

struct QuantileRow {
  ProtocolCase which;
  double quantile = 0.0;
  double peb = 0.0;
  double oeb = 0.0;  // [rad]
  int n_unidentifiable = 0;
};

struct CdfResult {
  std::vector<ProtocolCase> cases;
  std::vector<PositionRecord> records;
  std::vector<QuantileRow> table;
  double snr_p10_db = 0.0;

  std::vector<double> peb_values(std::size_t case_index) const;
  std::vector<double> oeb_values(std::size_t case_index) const;
  std::vector<double> snr_values() const;
};

inline constexpr std::array<double, 3> kReportedQuantiles = {0.1, 0.5, 0.9};

/// Uniform positions over the region: split into two triangles, pick one by
/// area, then sample barycentric coordinates. Deterministic for a seed.
std::vector<Vector3> sample_positions(const Region& region, int n, std::uint64_t seed);

/// Linear interpolation between order statistics at rank q (n - 1).
/// +inf entries (unidentifiable) sort last. Throws on empty input.
double percentile(std::span<const double> values, double q);

/// Evaluates every sampled position. Output is in index order for any
/// thread count.
std::vector<PositionRecord> evaluate_positions(const Scenario& sc, const Deployment& dep,
                                               std::span<const Vector3> positions);

CdfResult run_cdf(const Scenario& sc);

struct SweepRow {
  double parameter = 0.0;  // W [Hz] or antenna count
  ProtocolCase which;
  double peb90 = 0.0;
  int n_unidentifiable = 0;
};

/// PEB at q = 0.9 per bandwidth. Positions, beams, and E_t stay fixed;
/// W_eff^2 scales with W^2.
std::vector<SweepRow> sweep_bandwidth(const Scenario& sc, std::span<const double> bandwidths);

/// PEB at q = 0.9 per square array size on `side`; the other side keeps its
/// configured array.
std::vector<SweepRow> sweep_antennas(const Scenario& sc, std::span<const int> antennas, Device side);

/// Side length of a square array with n elements; throws if n is not square.
int square_side(int n);

}  // namespace twl
