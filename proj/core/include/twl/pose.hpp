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

#include <Eigen/Dense>

#include "twl/geometry.hpp"

namespace twl {

inline constexpr double kSpeedOfLight = 299792458.0;

/// Which device starts the two-way exchange (D1). The other one responds.
enum class Device { kBs, kUe };

inline Device other(Device d) { return d == Device::kBs ? Device::kUe : Device::kBs; }

/// UE pose relative to a BS sitting at the origin with zero orientation.
/// zeta rotates about z, chi about the rotated x axis.
struct Pose {
  Vector3 position = Vector3::Zero();
  double zeta = 0.0;
  double chi = 0.0;
};

/// Parameters of one LOS link. Angle pair 1 belongs to the initiator (D1),
/// pair 2 to the responder (D2); each is expressed in its device's local frame.
struct ChannelGeometry {
  double theta1 = 0.0;
  double phi1 = 0.0;
  double theta2 = 0.0;
  double phi2 = 0.0;
  double tau = 0.0;   // nominal one-way delay [s]
  double beta = 0.0;  // path amplitude, equal in both directions
  double psi = 0.0;   // path phase [rad]
  double bias = 0.0;  // responder clock bias [s]

  Direction d1() const { return {theta1, phi1}; }
  Direction d2() const { return {theta2, phi2}; }
};

/// Location-to-channel Jacobian. Rows are (zeta, chi, px, py, pz); columns
/// of ups_s are (theta1, phi1, theta2, phi2), ups_tau is the delay column.
struct LocationJacobian {
  Eigen::Matrix<double, 5, 4> ups_s;
  Eigen::Matrix<double, 5, 1> ups_tau;

  Eigen::Matrix<double, 5, 5> full() const {
    Eigen::Matrix<double, 5, 5> out;
    out << ups_s, ups_tau;
    return out;
  }
};

/// R = Rz(zeta) Rx(chi); maps UE-local coordinates to global ones.
Eigen::Matrix3d rotation_matrix(double zeta, double chi);

/// Free-space amplitude lambda / (4 pi d).
double free_space_gain(double wavelength, double distance);

/// Link geometry for a UE pose. `initiator` selects which device's angles
/// fill slot 1. Throws kDegenerateGeometry for a UE at the origin.
ChannelGeometry channel_geometry(const Pose& ue, double wavelength,
                                 double c = kSpeedOfLight, double bias = 0.0,
                                 double psi = 0.0, Device initiator = Device::kBs);

/// Exact partials of (theta1, phi1, theta2, phi2, tau) with respect to
/// (zeta, chi, px, py, pz). Throws kDegenerateGeometry when either
/// direction lies on its device's polar axis.
LocationJacobian location_jacobian(const Pose& ue, double c = kSpeedOfLight,
                                   Device initiator = Device::kBs);

}  // namespace twl
