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

#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "jacobian_oracle.hpp"
#include "twl/error.hpp"
#include "twl/pose.hpp"
#include "twl/scenario.hpp"

using twl::Pose;
using twl::Vector3;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_SUITE("pose") {
  TEST_CASE("rotation matrix basics") {
    CHECK(twl::rotation_matrix(0.0, 0.0).isIdentity(0.0));
    const Vector3 y = twl::rotation_matrix(kPi / 2, 0.0) * Vector3::UnitX();
    CHECK((y - Vector3::UnitY()).norm() < 1e-15);
    const Eigen::Matrix3d r = twl::rotation_matrix(kPi / 6, kPi / 6);
    CHECK((r.transpose() * r - Eigen::Matrix3d::Identity()).norm() < 1e-12);
    CHECK(std::abs(r.determinant() - 1.0) < 1e-12);
  }

  TEST_CASE("rotation composes z first, then the rotated x axis") {
    const double zeta = 0.3, chi = -0.8;
    const Eigen::Matrix3d want =
        Eigen::AngleAxisd(zeta, Vector3::UnitZ()).toRotationMatrix() *
        Eigen::AngleAxisd(chi, Vector3::UnitX()).toRotationMatrix();
    CHECK((twl::rotation_matrix(zeta, chi) - want).norm() < 1e-14);
  }

  TEST_CASE("channel geometry on the y axis") {
    const twl::ChannelGeometry cg = twl::channel_geometry(Pose{Vector3(0, 10, 0), 0, 0}, 3e8 / 38e9);
    CHECK(cg.theta1 == doctest::Approx(kPi / 2).epsilon(1e-15));
    CHECK(cg.phi1 == doctest::Approx(kPi / 2).epsilon(1e-15));
    CHECK(cg.theta2 == doctest::Approx(kPi / 2).epsilon(1e-15));
    CHECK(cg.phi2 == doctest::Approx(-kPi / 2).epsilon(1e-15));
    CHECK(cg.tau == doctest::Approx(3.3356e-8).epsilon(1e-4));
    CHECK(cg.tau == doctest::Approx(10.0 / 299792458.0).epsilon(1e-15));
  }

  TEST_CASE("free-space amplitude at 10 m and 38 GHz") {
    const double lambda = 3e8 / 38e9;
    CHECK(lambda == doctest::Approx(7.8947e-3).epsilon(1e-4));
    CHECK(twl::free_space_gain(lambda, 10.0) == doctest::Approx(6.2823e-5).epsilon(1e-4));
    const auto cg = twl::channel_geometry(Pose{Vector3(6, 8, 0), 0, 0}, lambda);
    CHECK(cg.beta == doctest::Approx(lambda / (4 * kPi * 10.0)).epsilon(1e-15));
  }

  TEST_CASE("zero orientation gives the UE angles of -p") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-30.0, 30.0);
    for (int i = 0; i < 50; ++i) {
      const Vector3 p(u(rng), u(rng), u(rng));
      const auto cg = twl::channel_geometry(Pose{p, 0, 0}, 0.01);
      const Vector3 m = -p.normalized();
      CHECK(cg.theta2 == doctest::Approx(std::acos(m.z())).epsilon(1e-12));
      CHECK(cg.phi2 == doctest::Approx(std::atan2(m.y(), m.x())).epsilon(1e-12));
    }
  }

  TEST_CASE("initiator choice swaps the angle slots") {
    const Pose ue{Vector3(3, 20, -10), 0.2, -0.1};
    const auto a = twl::channel_geometry(ue, 0.01, twl::kSpeedOfLight, 0, 0, twl::Device::kBs);
    const auto b = twl::channel_geometry(ue, 0.01, twl::kSpeedOfLight, 0, 0, twl::Device::kUe);
    CHECK(a.theta1 == b.theta2);
    CHECK(a.phi1 == b.phi2);
    CHECK(a.theta2 == b.theta1);
    CHECK(a.phi2 == b.phi1);
    CHECK(a.tau == b.tau);
  }

  TEST_CASE("UE at the BS is rejected") {
    CHECK_THROWS_AS(twl::channel_geometry(Pose{Vector3::Zero(), 0, 0}, 0.01), twl::Error);
    CHECK_THROWS_AS(twl::location_jacobian(Pose{Vector3::Zero(), 0, 0}), twl::Error);
  }

  TEST_CASE("polar-axis geometry is reported as degenerate") {
    try {
      twl::location_jacobian(Pose{Vector3(0, 0, -10), 0, 0});
      FAIL("expected a degenerate-geometry error");
    } catch (const twl::Error& e) {
      CHECK(e.code() == twl::ErrorCode::kDegenerateGeometry);
    }
  }

  TEST_CASE("structural zeros of the Jacobian") {
    const auto j = twl::location_jacobian(Pose{Vector3(5, 20, -10), 0.4, 0.2});
    CHECK(j.ups_tau(0) == 0.0);
    CHECK(j.ups_tau(1) == 0.0);
    CHECK(j.ups_s.block<2, 2>(0, 0).isZero(0.0));
    const Vector3 p(5, 20, -10);
    CHECK((j.ups_tau.tail<3>() - p / (twl::kSpeedOfLight * p.norm())).norm() < 1e-25);
  }

  TEST_CASE("delay column is identical for both initiators, angle columns swap") {
    const Pose ue{Vector3(-7, 31, -10), 0.5, -0.3};
    const auto a = twl::location_jacobian(ue, twl::kSpeedOfLight, twl::Device::kBs);
    const auto b = twl::location_jacobian(ue, twl::kSpeedOfLight, twl::Device::kUe);
    CHECK(a.ups_tau == b.ups_tau);
    CHECK(a.ups_s.leftCols<2>() == b.ups_s.rightCols<2>());
    CHECK(a.ups_s.rightCols<2>() == b.ups_s.leftCols<2>());
    CHECK(a.ups_s != b.ups_s);
  }

  TEST_CASE("analytic Jacobian matches finite differences in the region") {
    const auto positions = twl::sample_positions(twl::Region::diamond(), 200, 17);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> ang(-kPi / 4, kPi / 4);
    for (const Vector3& p : positions) {
      const double zeta = ang(rng), chi = ang(rng);
      twl::testing::Vec5 loc;
      loc << zeta, chi, p;
      for (bool bs_first : {true, false}) {
        const auto dev = bs_first ? twl::Device::kBs : twl::Device::kUe;
        const auto j = twl::location_jacobian(Pose{p, zeta, chi}, twl::kSpeedOfLight, dev);
        const auto ref = twl::testing::fd_jacobian(loc, twl::kSpeedOfLight, bs_first);
        CHECK(twl::testing::jacobian_mismatch(j.full(), ref) < 1e-6);
      }
    }
  }
}
