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

#include "twl/pose.hpp"

#include <cmath>
#include <numbers>

#include "twl/error.hpp"

namespace twl {
namespace {

Eigen::Matrix3d rot_z(double a) {
  const double c = std::cos(a);
  const double s = std::sin(a);
  Eigen::Matrix3d r;
  r << c, -s, 0, s, c, 0, 0, 0, 1;
  return r;
}

Eigen::Matrix3d rot_x(double a) {
  const double c = std::cos(a);
  const double s = std::sin(a);
  Eigen::Matrix3d r;
  r << 1, 0, 0, 0, c, -s, 0, s, c;
  return r;
}

Eigen::Matrix3d rot_z_prime(double a) {
  const double c = std::cos(a);
  const double s = std::sin(a);
  Eigen::Matrix3d r;
  r << -s, -c, 0, c, -s, 0, 0, 0, 0;
  return r;
}

Eigen::Matrix3d rot_x_prime(double a) {
  const double c = std::cos(a);
  const double s = std::sin(a);
  Eigen::Matrix3d r;
  r << 0, 0, 0, 0, -s, -c, 0, c, -s;
  return r;
}

// Row gradients of (theta, phi) of an unnormalized direction d.
struct AngleGradient {
  Eigen::RowVector3d theta;
  Eigen::RowVector3d phi;
};

AngleGradient angle_gradient(const Vector3& d, const char* which) {
  const double rho2 = d.x() * d.x() + d.y() * d.y();
  const double r2 = rho2 + d.z() * d.z();
  const double rho = std::sqrt(rho2);
  if (rho <= 1e-12 * std::sqrt(r2)) {
    throw Error(ErrorCode::kDegenerateGeometry,
                std::string(which) + " direction lies on the array polar axis");
  }
  AngleGradient g;
  g.theta << d.x() * d.z() / (rho * r2), d.y() * d.z() / (rho * r2), -rho / r2;
  g.phi << -d.y() / rho2, d.x() / rho2, 0.0;
  return g;
}

void check_position(const Vector3& p) {
  if (!p.allFinite() || p.norm() == 0.0) {
    throw Error(ErrorCode::kDegenerateGeometry, "UE position must be finite and away from the BS");
  }
}

}  // namespace

Eigen::Matrix3d rotation_matrix(double zeta, double chi) { return rot_z(zeta) * rot_x(chi); }

double free_space_gain(double wavelength, double distance) {
  return wavelength / (4.0 * std::numbers::pi * distance);
}

ChannelGeometry channel_geometry(const Pose& ue, double wavelength, double c, double bias,
                                 double psi, Device initiator) {
  check_position(ue.position);
  const double dist = ue.position.norm();
  const Eigen::Matrix3d rot = rotation_matrix(ue.zeta, ue.chi);

  const Direction bs = direction_of(ue.position);
  const Direction local = direction_of(-(rot.transpose() * ue.position));

  ChannelGeometry cg;
  const Direction& first = initiator == Device::kBs ? bs : local;
  const Direction& second = initiator == Device::kBs ? local : bs;
  cg.theta1 = first.theta;
  cg.phi1 = first.phi;
  cg.theta2 = second.theta;
  cg.phi2 = second.phi;
  cg.tau = dist / c;
  cg.beta = free_space_gain(wavelength, dist);
  cg.psi = psi;
  cg.bias = bias;
  return cg;
}

LocationJacobian location_jacobian(const Pose& ue, double c, Device initiator) {
  check_position(ue.position);
  const Vector3& p = ue.position;
  const Eigen::Matrix3d rot = rotation_matrix(ue.zeta, ue.chi);

  // BS angles depend on p only.
  const AngleGradient bs = angle_gradient(p, "BS");

  // UE angles come from d = -R^T p.
  const Vector3 d = -(rot.transpose() * p);
  const AngleGradient ue_grad = angle_gradient(d, "UE");
  const Eigen::Matrix3d dd_dp = -rot.transpose();
  const Vector3 dd_dzeta = -((rot_z_prime(ue.zeta) * rot_x(ue.chi)).transpose() * p);
  const Vector3 dd_dchi = -((rot_z(ue.zeta) * rot_x_prime(ue.chi)).transpose() * p);

  Eigen::Matrix<double, 5, 2> bs_cols = Eigen::Matrix<double, 5, 2>::Zero();
  bs_cols.block<3, 1>(2, 0) = bs.theta.transpose();
  bs_cols.block<3, 1>(2, 1) = bs.phi.transpose();

  Eigen::Matrix<double, 5, 2> ue_cols;
  ue_cols(0, 0) = ue_grad.theta * dd_dzeta;
  ue_cols(1, 0) = ue_grad.theta * dd_dchi;
  ue_cols(0, 1) = ue_grad.phi * dd_dzeta;
  ue_cols(1, 1) = ue_grad.phi * dd_dchi;
  ue_cols.block<3, 1>(2, 0) = (ue_grad.theta * dd_dp).transpose();
  ue_cols.block<3, 1>(2, 1) = (ue_grad.phi * dd_dp).transpose();

  LocationJacobian jac;
  if (initiator == Device::kBs) {
    jac.ups_s << bs_cols, ue_cols;
  } else {
    jac.ups_s << ue_cols, bs_cols;
  }
  jac.ups_tau.setZero();
  jac.ups_tau.tail<3>() = p / (c * p.norm());
  return jac;
}

}  // namespace twl
