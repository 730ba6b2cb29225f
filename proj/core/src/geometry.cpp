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

#include "twl/geometry.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "twl/error.hpp"

namespace twl {

Vector3 unit_vector(Direction dir) {
  const double st = std::sin(dir.theta);
  return {std::cos(dir.phi) * st, std::sin(dir.phi) * st, std::cos(dir.theta)};
}

Direction direction_of(const Vector3& v) {
  if (!v.allFinite() || v.squaredNorm() == 0.0) {
    throw Error(ErrorCode::kDegenerateGeometry, "direction of a zero or non-finite vector");
  }
  const double rho = std::hypot(v.x(), v.y());
  return {std::atan2(rho, v.z()), rho == 0.0 ? 0.0 : std::atan2(v.y(), v.x())};
}

ArrayGeometry::ArrayGeometry(Eigen::Matrix3Xd elements, double wavelength)
    : elements_(std::move(elements)), wavelength_(wavelength) {
  if (elements_.cols() < 1) {
    throw Error(ErrorCode::kInvalidArgument, "array needs at least one element");
  }
  if (!(wavelength_ > 0.0) || !std::isfinite(wavelength_)) {
    throw Error(ErrorCode::kInvalidArgument, "wavelength must be positive and finite");
  }
  if (!elements_.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "element coordinates must be finite");
  }
}

ArrayGeometry make_ura(int rows, int cols, double spacing, ArrayPlane plane,
                       const Vector3& center, double wavelength) {
  if (rows < 1 || cols < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "URA needs rows, cols >= 1 (got " + std::to_string(rows) + "x" +
                    std::to_string(cols) + ")");
  }
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw Error(ErrorCode::kInvalidArgument, "URA spacing must be positive");
  }

  int first = 0;
  int second = 2;
  switch (plane) {
    case ArrayPlane::kXY: first = 0; second = 1; break;
    case ArrayPlane::kXZ: first = 0; second = 2; break;
    case ArrayPlane::kYZ: first = 1; second = 2; break;
  }

  Eigen::Matrix3Xd elements(3, rows * cols);
  const double row_offset = 0.5 * (rows - 1);
  const double col_offset = 0.5 * (cols - 1);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      Vector3 pos = Vector3::Zero();
      pos[first] = (c - col_offset) * spacing;
      pos[second] = (r - row_offset) * spacing;
      elements.col(r * cols + c) = pos + center;
    }
  }
  return ArrayGeometry(std::move(elements), wavelength);
}

Vector3 wavenumber(double theta, double phi, double lambda) {
  return (2.0 * std::numbers::pi / lambda) * unit_vector({theta, phi});
}

SteeringBundle steering(const ArrayGeometry& geom, double theta, double phi) {
  const double scale = 2.0 * std::numbers::pi / geom.wavelength();
  const double st = std::sin(theta);
  const double ct = std::cos(theta);
  const double sp = std::sin(phi);
  const double cp = std::cos(phi);

  const Vector3 k = scale * Vector3(cp * st, sp * st, ct);
  const Vector3 dk_dtheta = scale * Vector3(cp * ct, sp * ct, -st);
  const Vector3 dk_dphi = scale * Vector3(-sp * st, cp * st, 0.0);

  const Eigen::VectorXd phase = geom.elements().transpose() * k;
  const Eigen::VectorXd dphase_dtheta = geom.elements().transpose() * dk_dtheta;
  const Eigen::VectorXd dphase_dphi = geom.elements().transpose() * dk_dphi;

  const auto n = geom.size();
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  const std::complex<double> minus_j(0.0, -1.0);

  SteeringBundle out;
  out.a.resize(n);
  out.da_dtheta.resize(n);
  out.da_dphi.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::complex<double> ai = norm * std::polar(1.0, -phase[i]);
    out.a[i] = ai;
    out.da_dtheta[i] = minus_j * dphase_dtheta[i] * ai;
    out.da_dphi[i] = minus_j * dphase_dphi[i] * ai;
  }
  return out;
}

}  // namespace twl
