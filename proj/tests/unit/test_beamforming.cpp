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
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <doctest.h>

#include "twl/beamforming.hpp"
#include "twl/error.hpp"
#include "twl/geometry.hpp"
#include "twl/pose.hpp"

using twl::ArrayGeometry;
using twl::Beamformer;
using twl::BeamRole;
using twl::Direction;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

ArrayGeometry ura(int side) {
  return twl::make_ura(side, side, 0.5, twl::ArrayPlane::kXY, twl::Vector3::Zero(), 1.0);
}

std::vector<Direction> default_grid() {
  return twl::sector_beam_grid(25, {30 * kDeg, 150 * kDeg}, {100 * kDeg, 170 * kDeg});
}

}  // namespace

TEST_SUITE("beamforming") {
  TEST_CASE("transmit matrix has unit trace power and equal column norms") {
    const auto f = twl::directional_beams(ura(12), default_grid(), BeamRole::kTransmit);
    CHECK(f.antennas() == 144);
    CHECK(f.beams() == 25);
    CHECK((f.matrix().adjoint() * f.matrix()).trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    for (Eigen::Index b = 0; b < f.beams(); ++b) {
      CHECK(f.matrix().col(b).norm() == doctest::Approx(1.0 / 5.0).epsilon(1e-12));
    }
  }

  TEST_CASE("transmit and receive columns are conjugates") {
    const auto g = ura(4);
    const auto dirs = twl::sector_beam_grid(4, {0.3, 1.2}, {1.8, 2.5});
    const auto f = twl::directional_beams(g, dirs, BeamRole::kTransmit);
    const auto w = twl::directional_beams(g, dirs, BeamRole::kReceive);
    CHECK((f.matrix() - w.matrix().conjugate()).norm() < 1e-14);
    const Eigen::VectorXcd a = twl::steering(g, dirs[0]).a;
    CHECK(twl::tx_gain(f, a) == doctest::Approx(twl::rx_gain(w, a)).epsilon(1e-12));
  }

  TEST_CASE("projection is a Hermitian idempotent of rank N_B") {
    const auto w = twl::directional_beams(ura(12), default_grid(), BeamRole::kReceive);
    const Eigen::MatrixXcd p = twl::projection(w);
    CHECK((p * p - p).norm() < 1e-9);
    CHECK((p - p.adjoint()).norm() < 1e-12);
    CHECK(p.trace().real() == doctest::Approx(25.0).epsilon(1e-9));
    CHECK((p * w.matrix() - w.matrix()).norm() < 1e-9);
  }

  TEST_CASE("projection is invariant to beam scaling") {
    const auto g = ura(4);
    const auto dirs = twl::sector_beam_grid(4, {0.3, 1.2}, {1.8, 2.5});
    const auto w = twl::directional_beams(g, dirs, BeamRole::kReceive);
    const Beamformer w2(w.matrix() * std::complex<double>(3.0, -1.0), BeamRole::kReceive);
    CHECK((twl::projection(w) - twl::projection(w2)).norm() < 1e-12);
  }

  TEST_CASE("duplicate receive beams are rejected") {
    const auto g = ura(4);
    const std::vector<Direction> dirs = {{1.0, 0.5}, {1.0, 0.5}};
    try {
      twl::directional_beams(g, dirs, BeamRole::kReceive);
      FAIL("expected a singular Gram matrix");
    } catch (const twl::Error& e) {
      CHECK(e.code() == twl::ErrorCode::kSingularGram);
    }
  }

  TEST_CASE("more beams than antennas is rejected") {
    const auto g = ura(4);
    const auto dirs = twl::sector_beam_grid(25, {0.3, 1.2}, {1.8, 2.5});
    CHECK_THROWS_AS(twl::directional_beams(g, dirs, BeamRole::kReceive), twl::Error);
  }

  TEST_CASE("transmit power must be normalized") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Ones(4, 1);
    CHECK_THROWS_AS(Beamformer(m, BeamRole::kTransmit), twl::Error);
    CHECK_NOTHROW(Beamformer(m / 2.0, BeamRole::kTransmit));
  }

  TEST_CASE("sector grid layout") {
    const auto one = twl::sector_beam_grid(1, {0.2, 0.6}, {1.0, 2.0});
    REQUIRE(one.size() == 1);
    CHECK(one[0].phi == doctest::Approx(0.4));
    CHECK(one[0].theta == doctest::Approx(1.5));

    const auto grid = default_grid();
    REQUIRE(grid.size() == 25);
    CHECK(grid.front().phi == doctest::Approx(30 * kDeg));
    CHECK(grid.front().theta == doctest::Approx(100 * kDeg));
    CHECK(grid.back().phi == doctest::Approx(150 * kDeg));
    CHECK(grid.back().theta == doctest::Approx(170 * kDeg));
    for (int i = 0; i < 4; ++i) CHECK(grid[i + 1].phi - grid[i].phi == doctest::Approx(30 * kDeg));
    for (int i = 0; i < 4; ++i) CHECK(grid[5 * (i + 1)].theta - grid[5 * i].theta == doctest::Approx(17.5 * kDeg));
    CHECK_THROWS_AS(twl::sector_beam_grid(24, {0, 1}, {0, 1}), twl::Error);
    CHECK_THROWS_AS(twl::sector_beam_grid(0, {0, 1}, {0, 1}), twl::Error);
  }

  TEST_CASE("UE codebook points back at the BS and stays fixed in the UE frame") {
    const auto bs = default_grid();
    const auto ue0 = twl::sector_beam_grid(25, {30 * kDeg, 150 * kDeg}, {100 * kDeg, 170 * kDeg},
                                           twl::Pose{twl::Vector3::Zero(), 0, 0});
    for (std::size_t i = 0; i < bs.size(); ++i) {
      CHECK((twl::unit_vector(ue0[i]) + twl::unit_vector(bs[i])).norm() < 1e-12);
    }
    const double zeta = 30 * kDeg, chi = 30 * kDeg;
    const auto ue = twl::sector_beam_grid(25, {30 * kDeg, 150 * kDeg}, {100 * kDeg, 170 * kDeg},
                                          twl::Pose{twl::Vector3::Zero(), zeta, chi});
    const Eigen::Matrix3d r = twl::rotation_matrix(zeta, chi);
    for (std::size_t i = 0; i < bs.size(); ++i) {
      CHECK((twl::unit_vector(ue[i]) - r * twl::unit_vector(ue0[i])).norm() < 1e-12);
      const Direction local = twl::to_local(ue[i], zeta, chi);
      CHECK((twl::unit_vector(local) - twl::unit_vector(ue0[i])).norm() < 1e-12);
    }
  }

  TEST_CASE("SNR constant with default signal and 12x12 arrays") {
    const auto sig = twl::SignalConfig::defaults();
    CHECK(sig.symbol_time == doctest::Approx(8e-9));
    CHECK(sig.energy_per_symbol == doctest::Approx(8e-12));
    CHECK(twl::dbm_to_watts(-170.0) == doctest::Approx(1e-20));
    CHECK(twl::snr_constant_db(sig, 144, 144) == doctest::Approx(150.26).epsilon(1e-4));
  }

  TEST_CASE("SNR scales with 20 log10 of the gains") {
    const auto sig = twl::SignalConfig::defaults();
    const double base = twl::snr_db(sig, 1e-4, 0.5, 0.7, 144, 144);
    CHECK(twl::snr_db(sig, 2e-4, 0.5, 0.7, 144, 144) - base == doctest::Approx(20 * std::log10(2.0)));
    CHECK(twl::snr_db(sig, 1e-4, 1.0, 0.7, 144, 144) - base == doctest::Approx(20 * std::log10(2.0)));
    CHECK(base == doctest::Approx(twl::snr_constant_db(sig, 144, 144) + 20 * std::log10(1e-4 * 0.5 * 0.7)));
  }

  TEST_CASE("signal validation names the field") {
    auto sig = twl::SignalConfig::defaults();
    sig.bandwidth = 0.0;
    try {
      sig.validate();
      FAIL("expected an error");
    } catch (const twl::Error& e) {
      CHECK(std::string(e.what()).find("bandwidth") != std::string::npos);
    }
  }
}
