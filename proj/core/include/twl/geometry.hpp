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

namespace twl {

using Vector3 = Eigen::Vector3d;

/// Spherical direction. theta is the polar angle from +z, phi the azimuth
/// from +x toward +y.
struct Direction {
  double theta = 0.0;
  double phi = 0.0;
};

/// Unit vector pointing along `dir`.
Vector3 unit_vector(Direction dir);

/// Spherical angles of a nonzero vector. phi is taken from atan2 and lies in
/// (-pi, pi]; on the polar axis it is reported as 0. Throws
/// kDegenerateGeometry for a zero or non-finite vector.
Direction direction_of(const Vector3& v);

enum class ArrayPlane { kXY, kXZ, kYZ };

/// Element layout of an antenna array, positions in meters, one column per
/// element, together with the carrier wavelength.
class ArrayGeometry {
 public:
  ArrayGeometry(Eigen::Matrix3Xd elements, double wavelength);

  const Eigen::Matrix3Xd& elements() const { return elements_; }
  double wavelength() const { return wavelength_; }
  Eigen::Index size() const { return elements_.cols(); }

 private:
  Eigen::Matrix3Xd elements_;
  double wavelength_;
};

/// Array response at one direction plus its partials in theta and phi.
struct SteeringBundle {
  Eigen::VectorXcd a;
  Eigen::VectorXcd da_dtheta;
  Eigen::VectorXcd da_dphi;
};

/// rows x cols grid with the given element pitch, lying in `plane`, with
/// centroid at `center`. Rows run along the second axis of the plane
/// (z for kXZ), columns along the first.
ArrayGeometry make_ura(int rows, int cols, double spacing, ArrayPlane plane,
                       const Vector3& center, double wavelength);

/// (2 pi / lambda) [cos phi sin theta, sin phi sin theta, cos theta].
Vector3 wavenumber(double theta, double phi, double lambda);

/// a = exp(-j D^T k) / sqrt(N) and its exact angle derivatives.
SteeringBundle steering(const ArrayGeometry& geom, double theta, double phi);

inline SteeringBundle steering(const ArrayGeometry& geom, Direction dir) {
  return steering(geom, dir.theta, dir.phi);
}

}  // namespace twl
