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

#include "twl/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <thread>

#include "twl/error.hpp"
#include "twl/fim.hpp"

namespace twl {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;
constexpr double kInf = std::numeric_limits<double>::infinity();

double cross_z(const Vector3& a, const Vector3& b, const Vector3& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

double triangle_area(const Vector3& a, const Vector3& b, const Vector3& c) {
  return 0.5 * std::abs(cross_z(a, b, c));
}

ArrayGeometry make_array(const ArraySpec& spec, double wavelength) {
  return make_ura(spec.rows, spec.cols, spec.spacing_wavelengths * wavelength, ArrayPlane::kXZ,
                  Vector3::Zero(), wavelength);
}

std::vector<double> column(const std::vector<PositionRecord>& records, std::size_t idx,
                           bool oeb) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    const CaseBound& b = r.bounds[idx];
    out.push_back(b.identifiable ? (oeb ? b.oeb : b.peb) : kInf);
  }
  return out;
}

int count_unidentifiable(const std::vector<PositionRecord>& records, std::size_t idx) {
  return static_cast<int>(std::count_if(records.begin(), records.end(), [idx](const auto& r) {
    return !r.bounds[idx].identifiable;
  }));
}

std::vector<SweepRow> peb90_rows(double parameter, const std::vector<ProtocolCase>& cases,
                                 const std::vector<PositionRecord>& records) {
  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const std::vector<double> peb = column(records, i, false);
    rows.push_back({parameter, cases[i], percentile(peb, 0.9), count_unidentifiable(records, i)});
  }
  return rows;
}

}  // namespace

Region Region::diamond() {
  const double s3 = std::sqrt(3.0);
  return Region{{Vector3(0, 0, -10), Vector3(25 * s3, 25, -10), Vector3(0, 50, -10),
                 Vector3(-25 * s3, 25, -10)}};
}

void Region::validate() const {
  for (const auto& v : vertices) {
    if (!v.allFinite()) throw Error(ErrorCode::kInvalidArgument, "region vertices must be finite");
    if (std::abs(v.z() - vertices[0].z()) > 1e-9) {
      throw Error(ErrorCode::kInvalidArgument, "region must lie at constant height");
    }
  }
  // Convex iff every consecutive turn has the same sign.
  double sign = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double c = cross_z(vertices[i], vertices[(i + 1) % 4], vertices[(i + 2) % 4]);
    if (c == 0.0) throw Error(ErrorCode::kInvalidArgument, "degenerate region (collinear vertices)");
    if (sign != 0.0 && (c > 0.0) != (sign > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "region must be convex with ordered vertices");
    }
    sign = c;
  }
}

double Region::area() const {
  return triangle_area(vertices[0], vertices[1], vertices[2]) +
         triangle_area(vertices[0], vertices[2], vertices[3]);
}

Vector3 Region::centroid() const {
  const double a1 = triangle_area(vertices[0], vertices[1], vertices[2]);
  const double a2 = triangle_area(vertices[0], vertices[2], vertices[3]);
  const Vector3 c1 = (vertices[0] + vertices[1] + vertices[2]) / 3.0;
  const Vector3 c2 = (vertices[0] + vertices[2] + vertices[3]) / 3.0;
  return (a1 * c1 + a2 * c2) / (a1 + a2);
}

bool Region::contains(const Vector3& p, double tol) const {
  if (std::abs(p.z() - vertices[0].z()) > tol) return false;
  const double orient = cross_z(vertices[0], vertices[1], vertices[2]) > 0.0 ? 1.0 : -1.0;
  for (int i = 0; i < 4; ++i) {
    if (orient * cross_z(vertices[i], vertices[(i + 1) % 4], p) < -tol) return false;
  }
  return true;
}

Scenario Scenario::defaults() {
  Scenario sc;
  sc.sector_azimuth = {30.0 * kDeg, 150.0 * kDeg};
  sc.sector_polar = {100.0 * kDeg, 170.0 * kDeg};
  for (Protocol p : {Protocol::kOwl, Protocol::kRlp, Protocol::kClp}) {
    for (Device d : {Device::kBs, Device::kUe}) sc.cases.push_back({p, d});
  }
  return sc;
}

void Scenario::validate() const {
  region.validate();
  signal.validate();
  for (const ArraySpec* a : {&bs_array, &ue_array}) {
    if (a->rows < 1 || a->cols < 1 || !(a->spacing_wavelengths > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "array dimensions and spacing must be positive");
    }
  }
  if (n_samples < 1) throw Error(ErrorCode::kInvalidArgument, "n_samples must be >= 1");
  if (cases.empty()) throw Error(ErrorCode::kInvalidArgument, "no protocol cases requested");
  if (threads < 0) throw Error(ErrorCode::kInvalidArgument, "threads must be >= 0");
}

Deployment deploy(const Scenario& sc) {
  const double lambda = sc.signal.wavelength();
  ArrayGeometry bs = make_array(sc.bs_array, lambda);
  ArrayGeometry ue = make_array(sc.ue_array, lambda);

  const std::vector<Direction> bs_dirs =
      sector_beam_grid(sc.bs_beams, sc.sector_azimuth, sc.sector_polar);
  Pose orientation;
  orientation.zeta = sc.zeta;
  orientation.chi = sc.chi;
  std::vector<Direction> ue_dirs =
      sector_beam_grid(sc.ue_beams, sc.sector_azimuth, sc.sector_polar, orientation);
  for (Direction& d : ue_dirs) d = to_local(d, sc.zeta, sc.chi);

  Beamformer bs_tx = directional_beams(bs, bs_dirs, BeamRole::kTransmit);
  Beamformer bs_rx = directional_beams(bs, bs_dirs, BeamRole::kReceive);
  Beamformer ue_tx = directional_beams(ue, ue_dirs, BeamRole::kTransmit);
  Beamformer ue_rx = directional_beams(ue, ue_dirs, BeamRole::kReceive);
  return Deployment{std::move(bs), std::move(ue), std::move(bs_tx), std::move(bs_rx),
                    std::move(ue_tx), std::move(ue_rx)};
}

PositionRecord evaluate_position(const Scenario& sc, const Deployment& dep,
                                 const Vector3& position) {
  PositionRecord rec;
  rec.position = position;
  rec.bounds.assign(sc.cases.size(), CaseBound{kInf, kInf, false, 0.0, 0.0});
  rec.snr_db = -kInf;

  const Pose pose{position, sc.zeta, sc.chi};
  const double lambda = sc.signal.wavelength();
  const double c = sc.signal.c;

  struct Links {
    ChannelFim fwd;
    ChannelFim bwd;
    LocationJacobian ups;
  };
  auto links_for = [&](Device initiator) {
    const ChannelGeometry cg = channel_geometry(pose, lambda, c, sc.bias, sc.psi, initiator);
    const bool bs_first = initiator == Device::kBs;
    const ArrayGeometry& g1 = bs_first ? dep.bs : dep.ue;
    const ArrayGeometry& g2 = bs_first ? dep.ue : dep.bs;
    const Beamformer& f1 = bs_first ? dep.bs_tx : dep.ue_tx;
    const Beamformer& w1 = bs_first ? dep.bs_rx : dep.ue_rx;
    const Beamformer& f2 = bs_first ? dep.ue_tx : dep.bs_tx;
    const Beamformer& w2 = bs_first ? dep.ue_rx : dep.bs_rx;
    return Links{channel_fim(LinkDirection::kForward, g1, g2, f1, w2, cg, sc.signal),
                 channel_fim(LinkDirection::kBackward, g2, g1, f2, w1, cg, sc.signal),
                 location_jacobian(pose, c, initiator)};
  };

  try {
    const ChannelGeometry cg = channel_geometry(pose, lambda, c, sc.bias, sc.psi, Device::kBs);
    const Eigen::VectorXcd a_bs = steering(dep.bs, cg.d1()).a;
    const Eigen::VectorXcd a_ue = steering(dep.ue, cg.d2()).a;
    rec.snr_db = snr_db(sc.signal, cg.beta, tx_gain(dep.ue_tx, a_ue), rx_gain(dep.bs_rx, a_bs),
                        dep.ue.size(), dep.bs.size());

    std::array<std::optional<Links>, 2> links;
    for (std::size_t i = 0; i < sc.cases.size(); ++i) {
      const ProtocolCase& pc = sc.cases[i];
      auto& slot = links[pc.initiator == Device::kBs ? 0 : 1];
      if (!slot) slot = links_for(pc.initiator);
      const LocalizationBound b = assemble(pc.protocol, slot->fwd, slot->bwd, slot->ups);
      rec.bounds[i] = CaseBound{b.peb, b.oeb, b.identifiable, delay_info(slot->fwd),
                                delay_info(slot->bwd)};
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kDegenerateGeometry && e.code() != ErrorCode::kNoIllumination &&
        e.code() != ErrorCode::kUnidentifiableNuisance && e.code() != ErrorCode::kDelayUnobservable) {
      throw;
    }
    rec.bounds.assign(sc.cases.size(), CaseBound{kInf, kInf, false, 0.0, 0.0});
  }
  return rec;
}

std::vector<Vector3> sample_positions(const Region& region, int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one position");
  region.validate();
  const auto& v = region.vertices;
  const double a1 = triangle_area(v[0], v[1], v[2]);
  const double a2 = triangle_area(v[0], v[2], v[3]);
  const double split = a1 / (a1 + a2);

  // Raw 53-bit uniforms straight from the engine.
  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  std::vector<Vector3> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double pick = uniform();
    double r1 = uniform();
    double r2 = uniform();
    if (r1 + r2 > 1.0) {
      r1 = 1.0 - r1;
      r2 = 1.0 - r2;
    }
    const Vector3& b = pick < split ? v[1] : v[2];
    const Vector3& c = pick < split ? v[2] : v[3];
    out.push_back(v[0] + r1 * (b - v[0]) + r2 * (c - v[0]));
  }
  return out;
}

double percentile(std::span<const double> values, double q) {
  if (values.empty()) throw Error(ErrorCode::kInvalidArgument, "percentile of empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "quantile must lie in [0, 1]");
  std::vector<double> sorted(values.begin(), values.end());
  for (double& x : sorted) {
    if (std::isnan(x)) x = kInf;
  }
  std::sort(sorted.begin(), sorted.end());
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  if (frac == 0.0 || sorted[lo] == sorted[hi]) return sorted[lo];
  if (std::isinf(sorted[hi])) return kInf;
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::vector<PositionRecord> evaluate_positions(const Scenario& sc, const Deployment& dep,
                                               std::span<const Vector3> positions) {
  std::vector<PositionRecord> out(positions.size());
  unsigned n_threads = sc.threads > 0 ? static_cast<unsigned>(sc.threads)
                                      : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(std::max<std::size_t>(1, positions.size())));

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out[i] = evaluate_position(sc, dep, positions[i]);
  };
  if (n_threads == 1) {
    work(0, positions.size());
    return out;
  }
  std::vector<std::exception_ptr> errors(n_threads);
  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (positions.size() + n_threads - 1) / n_threads;
    for (unsigned t = 0; t < n_threads; ++t) {
      const std::size_t begin = std::min(positions.size(), t * chunk);
      const std::size_t end = std::min(positions.size(), begin + chunk);
      pool.emplace_back([&, t, begin, end] {
        try {
          work(begin, end);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<double> CdfResult::peb_values(std::size_t case_index) const {
  return column(records, case_index, false);
}

std::vector<double> CdfResult::oeb_values(std::size_t case_index) const {
  return column(records, case_index, true);
}

std::vector<double> CdfResult::snr_values() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.snr_db);
  return out;
}

CdfResult run_cdf(const Scenario& sc) {
  sc.validate();
  const Deployment dep = deploy(sc);
  const std::vector<Vector3> positions = sample_positions(sc.region, sc.n_samples, sc.seed);

  CdfResult res;
  res.cases = sc.cases;
  res.records = evaluate_positions(sc, dep, positions);
  const std::vector<double> snr = res.snr_values();
  res.snr_p10_db = percentile(snr, 0.1);
  for (std::size_t i = 0; i < sc.cases.size(); ++i) {
    const std::vector<double> peb = res.peb_values(i);
    const std::vector<double> oeb = res.oeb_values(i);
    const int bad = count_unidentifiable(res.records, i);
    for (double q : kReportedQuantiles) {
      res.table.push_back({sc.cases[i], q, percentile(peb, q), percentile(oeb, q), bad});
    }
  }
  return res;
}

std::vector<SweepRow> sweep_bandwidth(const Scenario& sc, std::span<const double> bandwidths) {
  sc.validate();
  for (std::size_t i = 0; i < bandwidths.size(); ++i) {
    if (!(bandwidths[i] > 0.0) || (i > 0 && !(bandwidths[i] > bandwidths[i - 1]))) {
      throw Error(ErrorCode::kInvalidArgument, "bandwidths must be positive and ascending");
    }
  }
  const Deployment dep = deploy(sc);
  const std::vector<Vector3> positions = sample_positions(sc.region, sc.n_samples, sc.seed);

  std::vector<SweepRow> rows;
  for (double w : bandwidths) {
    Scenario at = sc;
    const double ratio = w / sc.signal.bandwidth;
    at.signal.bandwidth = w;
    at.signal.weff2 = sc.signal.weff2 * ratio * ratio;
    const auto records = evaluate_positions(at, dep, positions);
    const auto part = peb90_rows(w, at.cases, records);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

int square_side(int n) {
  const int side = n > 0 ? static_cast<int>(std::lround(std::sqrt(static_cast<double>(n)))) : 0;
  if (side < 1 || side * side != n) {
    throw Error(ErrorCode::kInvalidArgument,
                "antenna count " + std::to_string(n) + " is not a perfect square");
  }
  return side;
}

std::vector<SweepRow> sweep_antennas(const Scenario& sc, std::span<const int> antennas,
                                     Device side) {
  sc.validate();
  for (int n : antennas) square_side(n);
  const std::vector<Vector3> positions = sample_positions(sc.region, sc.n_samples, sc.seed);

  std::vector<SweepRow> rows;
  for (int n : antennas) {
    Scenario at = sc;
    ArraySpec& spec = side == Device::kBs ? at.bs_array : at.ue_array;
    spec.rows = spec.cols = square_side(n);
    const Deployment dep = deploy(at);
    const auto records = evaluate_positions(at, dep, positions);
    const auto part = peb90_rows(static_cast<double>(n), at.cases, records);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

}  // namespace twl
