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
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "twl/beamforming.hpp"
#include "twl/geometry.hpp"
#include "twl/pose.hpp"

namespace twl {

/// Forward runs initiator -> responder, backward responder -> initiator.
enum class LinkDirection { kForward, kBackward };

/// Fixed channel-parameter order of every ChannelFim.
enum ChannelParam : int {
  kTheta1 = 0,
  kPhi1 = 1,
  kTheta2 = 2,
  kPhi2 = 3,
  kBeta = 4,
  kPsi = 5,
  kTau = 6,
};

inline constexpr int kChannelParams = 7;

using Matrix7d = Eigen::Matrix<double, 7, 7>;

/// Fisher information of (theta1, phi1, theta2, phi2, beta, psi, tau) from
/// one transmission direction.
struct ChannelFim {
  Matrix7d matrix = Matrix7d::Zero();
  LinkDirection direction = LinkDirection::kBackward;
  double gamma = 0.0;  // N1 N2 N_s E_t / N_0
};

/// Equivalent FIM of a parameter subset.
struct Efim {
  Eigen::MatrixXd matrix;
  std::vector<std::string> kept_parameters;
};

const std::vector<std::string>& channel_param_labels();

/// Closed-form channel FIM for one link direction.
///
/// Backward: the responder (D2) transmits through `tx_beams` from `tx_geom`
/// and the initiator (D1) combines with `rx_beams` at `rx_geom`. Forward is
/// the mirror image. Either way the angle slots stay tied to devices: slot 1
/// always holds D1's angles, so a forward call places the transmitter's
/// angles in slot 1. With r_x, t_x the receive/transmit vectors perturbed by
/// parameter x, every spatial entry is
///
///   J_xy = gamma s_x s_y Re{ (r_x^H P_W r_y) (t_y^T F F^H t_x^*) },
///
/// with s = beta for angles and 1 for beta. The phase and delay rows are
/// diagonal; J_tau carries the extra 4 pi^2 W_eff^2 factor.
///
/// Throws kNoIllumination when the beams deliver exactly zero gain.
ChannelFim channel_fim(LinkDirection direction, const ArrayGeometry& tx_geom,
                       const ArrayGeometry& rx_geom, const Beamformer& tx_beams,
                       const Beamformer& rx_beams, const ChannelGeometry& cg,
                       const SignalConfig& sig);

/// ups * J * ups^T.
Eigen::MatrixXd transform_fim(const Eigen::MatrixXd& fim, const Eigen::MatrixXd& ups);

/// Schur complement keeping `keep`; everything else is nuisance. Labels
/// default to "p<i>". Throws kUnidentifiableNuisance if the nuisance block is
/// singular.
Efim efim(const Eigen::MatrixXd& fim, std::span<const int> keep,
          std::span<const std::string> labels = {});

/// EFIM of the four angles with beta as nuisance; psi and tau are decoupled.
Efim angle_efim(const ChannelFim& fim);

/// Equivalent delay information: the tau diagonal entry.
double delay_info(const ChannelFim& fim);

/// Sum of two EFIMs over identical parameter lists. Valid when both come
/// from independent observations with independent nuisance parameters.
Efim efim_additivity(const Efim& a, const Efim& b);

/// Symmetric with eigenvalues >= -tol * ||J||.
bool is_symmetric_psd(const Eigen::MatrixXd& m, double tol = 1e-9);

}  // namespace twl
