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

#include "twl/beamforming.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "twl/error.hpp"

namespace twl {
namespace {

constexpr double kGramTolerance = 1e-12;

std::string describe_beams(Eigen::Index n) {
  std::ostringstream os;
  os << "receive beam set of " << n << " beams";
  return os.str();
}

}  // namespace

Beamformer::Beamformer(Eigen::MatrixXcd matrix, BeamRole role)
    : matrix_(std::move(matrix)), role_(role) {
  if (matrix_.rows() < 1 || matrix_.cols() < 1) {
    throw Error(ErrorCode::kInvalidArgument, "beamformer needs at least one antenna and one beam");
  }
  if (!matrix_.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "beamformer entries must be finite");
  }
  if (role_ == BeamRole::kTransmit) {
    const double power = matrix_.squaredNorm();
    if (std::abs(power - 1.0) > 1e-12) {
      throw Error(ErrorCode::kInvalidArgument,
                  "transmit beamformer must satisfy Tr(F^H F) = 1, got " + std::to_string(power));
    }
    return;
  }

  const Eigen::MatrixXcd gram = matrix_.adjoint() * matrix_;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
  const Eigen::VectorXd& ev = eig.eigenvalues();
  if (eig.info() != Eigen::Success || ev.minCoeff() <= kGramTolerance * ev.maxCoeff()) {
    throw Error(ErrorCode::kSingularGram,
                describe_beams(matrix_.cols()) + " has a singular Gram matrix (rank deficient or duplicate directions)");
  }
  gram_inverse_ = eig.eigenvectors() * ev.cwiseInverse().asDiagonal() * eig.eigenvectors().adjoint();
}

Beamformer directional_beams(const ArrayGeometry& geom, std::span<const Direction> directions,
                             BeamRole role) {
  if (directions.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one beam direction");
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(directions.size()));
  Eigen::MatrixXcd m(geom.size(), static_cast<Eigen::Index>(directions.size()));
  for (std::size_t b = 0; b < directions.size(); ++b) {
    const Eigen::VectorXcd a = steering(geom, directions[b]).a;
    m.col(static_cast<Eigen::Index>(b)) = scale * (role == BeamRole::kTransmit ? a.conjugate() : a);
  }
  if (role == BeamRole::kTransmit) {
    // Unit-norm steering vectors give Tr(F^H F) = 1 up to rounding; pin it.
    m /= m.norm();
  }
  return Beamformer(std::move(m), role);
}

std::vector<Direction> sector_beam_grid(int n_beams, AngleRange azimuth, AngleRange polar) {
  if (n_beams < 1) {
    throw Error(ErrorCode::kInvalidArgument, "beam count must be positive");
  }
  const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n_beams))));
  if (side * side != n_beams) {
    throw Error(ErrorCode::kInvalidArgument,
                "beam count " + std::to_string(n_beams) + " is not a perfect square");
  }
  if (!(azimuth.hi >= azimuth.lo) || !(polar.hi >= polar.lo) || !std::isfinite(azimuth.lo) ||
      !std::isfinite(azimuth.hi) || !std::isfinite(polar.lo) || !std::isfinite(polar.hi)) {
    throw Error(ErrorCode::kInvalidArgument, "empty beam sector");
  }

  auto grid = [side](AngleRange r, int i) {
    if (side == 1) return 0.5 * (r.lo + r.hi);
    return r.lo + (r.hi - r.lo) * static_cast<double>(i) / static_cast<double>(side - 1);
  };

  std::vector<Direction> out;
  out.reserve(static_cast<std::size_t>(n_beams));
  for (int ip = 0; ip < side; ++ip) {
    for (int ia = 0; ia < side; ++ia) {
      out.push_back({grid(polar, ip), grid(azimuth, ia)});
    }
  }
  return out;
}

std::vector<Direction> sector_beam_grid(int n_beams, AngleRange azimuth, AngleRange polar,
                                        const Pose& ue) {
  const Eigen::Matrix3d rot = rotation_matrix(ue.zeta, ue.chi);
  std::vector<Direction> out = sector_beam_grid(n_beams, azimuth, polar);
  for (Direction& d : out) {
    d = direction_of(rot * (-unit_vector(d)));
  }
  return out;
}

Direction to_local(Direction global, double zeta, double chi) {
  return direction_of(rotation_matrix(zeta, chi).transpose() * unit_vector(global));
}

Eigen::MatrixXcd projection(const Beamformer& w) {
  if (w.role() != BeamRole::kReceive) {
    // Transmit matrices skip the Gram factorization; build one on demand.
    return projection(Beamformer(w.matrix(), BeamRole::kReceive));
  }
  return w.matrix() * w.gram_inverse() * w.matrix().adjoint();
}

double tx_gain(const Beamformer& f, const Eigen::VectorXcd& a) {
  return (f.matrix().transpose() * a).norm();
}

double rx_gain(const Beamformer& w, const Eigen::VectorXcd& a) {
  return (w.matrix().adjoint() * a).norm();
}

void SignalConfig::validate() const {
  auto require = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument, std::string(name) + " must be positive and finite");
    }
  };
  require(energy_per_symbol, "energy_per_symbol");
  require(symbol_time, "symbol_time");
  require(static_cast<double>(n_symbols), "n_symbols");
  require(noise_psd, "noise_psd");
  require(bandwidth, "bandwidth");
  require(weff2, "weff2");
  require(carrier, "carrier");
  require(c, "c");
}

double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

SignalConfig SignalConfig::defaults() {
  SignalConfig s;
  s.bandwidth = 125e6;
  s.symbol_time = 1.0 / s.bandwidth;
  s.energy_per_symbol = dbm_to_watts(0.0) * s.symbol_time;
  s.n_symbols = 64;
  s.noise_psd = dbm_to_watts(-170.0);
  s.weff2 = s.bandwidth * s.bandwidth / 3.0;
  s.carrier = 38e9;
  s.c = kSpeedOfLight;
  return s;
}

double snr_constant_db(const SignalConfig& sig, Eigen::Index n_tx, Eigen::Index n_rx) {
  const double gamma = static_cast<double>(n_tx) * static_cast<double>(n_rx) * sig.n_symbols *
                       sig.energy_per_symbol / sig.noise_psd;
  return 10.0 * std::log10(gamma);
}

double snr_db(const SignalConfig& sig, double beta, double tx_gain, double rx_gain,
              Eigen::Index n_tx, Eigen::Index n_rx) {
  return snr_constant_db(sig, n_tx, n_rx) + 20.0 * std::log10(beta * tx_gain * rx_gain);
}

}  // namespace twl
