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

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "twl/geometry.hpp"
#include "twl/pose.hpp"

namespace twl {

enum class BeamRole { kTransmit, kReceive };

/// Analog beam matrix (N x N_B). Transmit matrices carry unit total power,
/// Tr(F^H F) = 1. Receive matrices must have a nonsingular Gram matrix; its
/// inverse is cached.
class Beamformer {
 public:
  Beamformer(Eigen::MatrixXcd matrix, BeamRole role);

  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  BeamRole role() const { return role_; }
  Eigen::Index antennas() const { return matrix_.rows(); }
  Eigen::Index beams() const { return matrix_.cols(); }

  /// (W^H W)^{-1}; only meaningful for the receive role.
  const Eigen::MatrixXcd& gram_inverse() const { return gram_inverse_; }

 private:
  Eigen::MatrixXcd matrix_;
  BeamRole role_;
  Eigen::MatrixXcd gram_inverse_;
};

/// Closed interval in radians.
struct AngleRange {
  double lo = 0.0;
  double hi = 0.0;
};

/// One column per direction, each scaled by 1/sqrt(N_B). Receive columns are
/// a(theta_b, phi_b); transmit columns are conj(a(theta_b, phi_b)).
Beamformer directional_beams(const ArrayGeometry& geom, std::span<const Direction> directions,
                             BeamRole role);

/// sqrt(n) x sqrt(n) grid equispaced over azimuth x polar, end points
/// included; a single beam sits at the sector center. Directions are in the
/// anchor (global) frame.
std::vector<Direction> sector_beam_grid(int n_beams, AngleRange azimuth, AngleRange polar);

/// UE codebook: the anchor grid reversed to point back at the anchor and
/// rotated with the UE so it stays fixed in the UE local frame. Returned
/// directions are global; use to_local() before steering.
std::vector<Direction> sector_beam_grid(int n_beams, AngleRange azimuth, AngleRange polar,
                                        const Pose& ue);

/// Expresses a global direction in the local frame of a device with the
/// given orientation.
Direction to_local(Direction global, double zeta, double chi);

/// Orthogonal projector onto the column space of a receive beamformer.
Eigen::MatrixXcd projection(const Beamformer& w);

/// ||F^T a||: departure gain of transmit beams toward response a.
double tx_gain(const Beamformer& f, const Eigen::VectorXcd& a);

/// ||W^H a||: combining gain of receive beams for response a.
double rx_gain(const Beamformer& w, const Eigen::VectorXcd& a);

/// Pilot and receiver parameters shared by both link directions.
struct SignalConfig {
  double energy_per_symbol = 0.0;  // E_t [J]
  double symbol_time = 0.0;        // T_s [s]
  int n_symbols = 0;               // N_s
  double noise_psd = 0.0;          // N_0 [W/Hz]
  double bandwidth = 0.0;          // W [Hz]
  double weff2 = 0.0;              // effective bandwidth squared [Hz^2]
  double carrier = 0.0;            // [Hz]
  double c = kSpeedOfLight;        // [m/s]

  double wavelength() const { return c / carrier; }

  /// Throws kInvalidArgument naming the first non-positive field.
  void validate() const;

  /// 38 GHz, 125 MHz, N_s = 64, E_t/T_s = 0 dBm with T_s = 1/W,
  /// N_0 = -170 dBm/Hz, W_eff^2 = W^2/3.
  static SignalConfig defaults();
};

double dbm_to_watts(double dbm);

/// 10 log10(N_tx N_rx N_s E_t / N_0).
double snr_constant_db(const SignalConfig& sig, Eigen::Index n_tx, Eigen::Index n_rx);

/// Link SNR: constant term plus 20 log10(beta * tx_gain * rx_gain).
double snr_db(const SignalConfig& sig, double beta, double tx_gain, double rx_gain,
              Eigen::Index n_tx, Eigen::Index n_rx);

}  // namespace twl
