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

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <doctest.h>

#include "oracle_cases.hpp"
#include "twl/error.hpp"
#include "twl/fim.hpp"

using twl::ChannelFim;
using twl::LinkDirection;

namespace {

constexpr std::array<int, 4> kAngles = {twl::kTheta1, twl::kPhi1, twl::kTheta2, twl::kPhi2};

Eigen::MatrixXd random_psd(std::mt19937_64& rng, int n, int rank) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(n, rank);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < rank; ++j) a(i, j) = g(rng);
  }
  return a * a.transpose();
}

twl::testing::OracleCase single_element_case() {
  std::mt19937_64 rng(1);
  auto c = twl::testing::random_oracle_case(rng, LinkDirection::kBackward);
  const twl::ArrayGeometry one(Eigen::Matrix3Xd::Zero(3, 1), 1.0);
  c.tx = one;
  c.rx = one;
  const std::vector<twl::Direction> d = {{1.0, 0.0}};
  c.tx_beams = twl::directional_beams(one, d, twl::BeamRole::kTransmit);
  c.rx_beams = twl::directional_beams(one, d, twl::BeamRole::kReceive);
  c.cg.beta = 1.0;
  c.sig.n_symbols = 1;
  c.sig.bandwidth = 125e6;
  c.sig.weff2 = 125e6 * 125e6 / 3.0;
  return c;
}

}  // namespace

TEST_SUITE("fim") {
  TEST_CASE("closed form matches the numerical oracle") {
    std::mt19937_64 rng(2024);
    for (auto dir : {LinkDirection::kBackward, LinkDirection::kForward}) {
      for (int i = 0; i < 10; ++i) {
        const auto c = twl::testing::random_oracle_case(rng, dir);
        const ChannelFim closed = twl::testing::closed_form(c);
        const auto cmp = twl::testing::compare_to_oracle(closed.matrix, twl::testing::numerical_fim(c.link));
        CHECK(cmp.worst_diag_rel < 1e-3);
        CHECK(cmp.worst_offdiag_abs < 1e-3);
      }
    }
  }

  TEST_CASE("delay information of a unit-gain link at 125 MHz") {
    const auto c = single_element_case();
    const ChannelFim j = twl::testing::closed_form(c);
    CHECK(j.gamma == doctest::Approx(1.0));
    const double want = 4.0 * std::numbers::pi * std::numbers::pi * 125e6 * 125e6 / 3.0;
    CHECK(want == doctest::Approx(2.056e17).epsilon(1e-3));
    CHECK(twl::delay_info(j) == doctest::Approx(want).epsilon(1e-12));
    CHECK(j.matrix(twl::kPsi, twl::kPsi) == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("structure of the channel FIM") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
      const auto c = twl::testing::random_oracle_case(rng, i % 2 ? LinkDirection::kForward : LinkDirection::kBackward);
      const ChannelFim j = twl::testing::closed_form(c);
      CHECK(j.matrix == j.matrix.transpose());
      CHECK(twl::is_symmetric_psd(j.matrix));
      for (int k = 0; k < twl::kChannelParams; ++k) {
        if (k != twl::kTau) CHECK(j.matrix(twl::kTau, k) == 0.0);
        if (k != twl::kPsi) CHECK(j.matrix(twl::kPsi, k) == 0.0);
      }
      CHECK(j.direction == c.direction);
    }
  }

  TEST_CASE("exact scaling in N_s, E_t, and beta") {
    std::mt19937_64 rng(9);
    const auto c = twl::testing::random_oracle_case(rng, LinkDirection::kBackward);
    const ChannelFim base = twl::testing::closed_form(c);
    auto c2 = c;
    c2.sig.n_symbols *= 2;
    CHECK((twl::testing::closed_form(c2).matrix - 2.0 * base.matrix).norm() < 1e-12 * base.matrix.norm());
    auto c3 = c;
    c3.sig.energy_per_symbol *= 3.0;
    CHECK((twl::testing::closed_form(c3).matrix - 3.0 * base.matrix).norm() < 1e-12 * base.matrix.norm());
    auto c4 = c;
    c4.cg.beta *= 2.0;
    const ChannelFim b2 = twl::testing::closed_form(c4);
    CHECK((b2.matrix.topLeftCorner<4, 4>() - 4.0 * base.matrix.topLeftCorner<4, 4>()).norm() <
          1e-12 * base.matrix.norm());
    CHECK(b2.matrix(twl::kTau, twl::kTau) == doctest::Approx(4.0 * base.matrix(twl::kTau, twl::kTau)));
    CHECK(b2.matrix(twl::kBeta, twl::kBeta) == doctest::Approx(base.matrix(twl::kBeta, twl::kBeta)));
  }

  TEST_CASE("invalid inputs") {
    std::mt19937_64 rng(3);
    auto c = twl::testing::random_oracle_case(rng, LinkDirection::kBackward);
    c.cg.beta = 0.0;
    CHECK_THROWS_AS(twl::testing::closed_form(c), twl::Error);
    auto d = twl::testing::random_oracle_case(rng, LinkDirection::kBackward);
    const auto big = twl::make_ura(3, 3, 0.5, twl::ArrayPlane::kXY, twl::Vector3::Zero(), 1.0);
    CHECK_THROWS_AS(twl::channel_fim(d.direction, big, d.rx, d.tx_beams, d.rx_beams, d.cg, d.sig), twl::Error);
  }

  TEST_CASE("transform_fim congruence") {
    std::mt19937_64 rng(11);
    const Eigen::MatrixXd j = random_psd(rng, 5, 5);
    const Eigen::MatrixXd i5 = Eigen::MatrixXd::Identity(5, 5);
    CHECK((twl::transform_fim(j, i5) - j).norm() < 1e-12);
    CHECK((twl::transform_fim(j, 2.0 * i5) - 4.0 * j).norm() < 1e-12);
    std::normal_distribution<double> g;
    for (int t = 0; t < 50; ++t) {
      const Eigen::MatrixXd jp = random_psd(rng, 5, 3);
      Eigen::MatrixXd u(4, 5);
      for (int r = 0; r < 4; ++r) {
        for (int k = 0; k < 5; ++k) u(r, k) = g(rng);
      }
      const Eigen::MatrixXd out = twl::transform_fim(jp, u);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(out);
      CHECK(eig.eigenvalues().minCoeff() >= -1e-10 * out.norm());
    }
    CHECK_THROWS_AS(twl::transform_fim(j, Eigen::MatrixXd::Identity(4, 4)), twl::Error);
  }

  TEST_CASE("efim examples") {
    Eigen::MatrixXd j(2, 2);
    j << 2, 1, 1, 1;
    const std::array<int, 1> keep = {0};
    CHECK(twl::efim(j, keep).matrix(0, 0) == doctest::Approx(1.0));

    Eigen::MatrixXd bd = Eigen::MatrixXd::Zero(4, 4);
    bd.topLeftCorner(2, 2) << 3, 1, 1, 2;
    bd.bottomRightCorner(2, 2) << 5, 0, 0, 7;
    const std::array<int, 2> k2 = {0, 1};
    CHECK((twl::efim(bd, k2).matrix - bd.topLeftCorner(2, 2)).norm() < 1e-15);

    const std::vector<std::string> labels = {"a", "b", "c", "d"};
    const auto e = twl::efim(bd, k2, labels);
    CHECK(e.kept_parameters == std::vector<std::string>{"a", "b"});

    Eigen::MatrixXd sing = Eigen::MatrixXd::Zero(3, 3);
    sing(0, 0) = 1.0;
    const std::array<int, 1> k0 = {0};
    try {
      twl::efim(sing, k0);
      FAIL("expected an error");
    } catch (const twl::Error& err) {
      CHECK(err.code() == twl::ErrorCode::kUnidentifiableNuisance);
    }
  }

  TEST_CASE("efim never exceeds the kept block") {
    std::mt19937_64 rng(13);
    const std::array<int, 3> keep = {0, 2, 4};
    for (int t = 0; t < 50; ++t) {
      const Eigen::MatrixXd j = random_psd(rng, 6, 6);
      const auto e = twl::efim(j, keep);
      Eigen::MatrixXd kept(3, 3);
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) kept(a, b) = j(keep[a], keep[b]);
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(kept - e.matrix);
      CHECK(eig.eigenvalues().minCoeff() >= -1e-10 * kept.norm());
      CHECK(twl::is_symmetric_psd(e.matrix));
    }
  }

  TEST_CASE("angle_efim agrees with the generic Schur complement") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 20; ++t) {
      const auto c = twl::testing::random_oracle_case(rng, t % 2 ? LinkDirection::kForward : LinkDirection::kBackward);
      const ChannelFim j = twl::testing::closed_form(c);
      const auto a = twl::angle_efim(j);
      const auto g = twl::efim(j.matrix, kAngles, twl::channel_param_labels());
      // Tolerances follow the raw angle block.
      const double scale = j.matrix.topLeftCorner<4, 4>().norm();
      CHECK((a.matrix - g.matrix).norm() < 1e-10 * scale);
      CHECK(a.kept_parameters == g.kept_parameters);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a.matrix);
      CHECK(eig.eigenvalues().minCoeff() >= -1e-9 * scale);
    }
  }

  TEST_CASE("angle_efim without amplitude coupling is the angle block") {
    ChannelFim j;
    j.matrix.topLeftCorner<4, 4>() = Eigen::Matrix4d::Identity() * 3.0;
    j.matrix(twl::kBeta, twl::kBeta) = 2.0;
    CHECK((twl::angle_efim(j).matrix - Eigen::Matrix4d::Identity() * 3.0).norm() == 0.0);
    CHECK(twl::delay_info(ChannelFim{}) == 0.0);
  }

  TEST_CASE("efim additivity equals the joint Schur complement") {
    std::mt19937_64 rng(19);
    const std::array<int, 4> keep = {0, 1, 2, 3};
    for (int t = 0; t < 100; ++t) {
      const Eigen::MatrixXd j1 = random_psd(rng, 5, 5);
      const Eigen::MatrixXd j2 = random_psd(rng, 5, 5);
      Eigen::MatrixXd joint = Eigen::MatrixXd::Zero(6, 6);
      joint.topLeftCorner(4, 4) = j1.topLeftCorner(4, 4) + j2.topLeftCorner(4, 4);
      joint.block(0, 4, 4, 1) = j1.block(0, 4, 4, 1);
      joint.block(0, 5, 4, 1) = j2.block(0, 4, 4, 1);
      joint.block(4, 0, 1, 4) = j1.block(4, 0, 1, 4);
      joint.block(5, 0, 1, 4) = j2.block(4, 0, 1, 4);
      joint(4, 4) = j1(4, 4);
      joint(5, 5) = j2(4, 4);
      const auto sum = twl::efim_additivity(twl::efim(j1, keep), twl::efim(j2, keep));
      const auto ref = twl::efim(joint, keep);
      CHECK((sum.matrix - ref.matrix).norm() <= 1e-10 * ref.matrix.norm());
    }
  }

  TEST_CASE("efim additivity identities and label checks") {
    std::mt19937_64 rng(23);
    const std::array<int, 2> keep = {0, 1};
    const auto a = twl::efim(random_psd(rng, 3, 3), keep);
    const auto b = twl::efim(random_psd(rng, 3, 3), keep);
    twl::Efim zero{Eigen::MatrixXd::Zero(2, 2), a.kept_parameters};
    CHECK(twl::efim_additivity(a, zero).matrix == a.matrix);
    CHECK(twl::efim_additivity(a, b).matrix == twl::efim_additivity(b, a).matrix);
    twl::Efim other = b;
    other.kept_parameters = {"x", "y"};
    try {
      twl::efim_additivity(a, other);
      FAIL("expected a label mismatch");
    } catch (const twl::Error& err) {
      CHECK(err.code() == twl::ErrorCode::kLabelMismatch);
    }
  }

  TEST_CASE("PSD check") {
    Eigen::MatrixXd m(2, 2);
    m << 1, 0, 0, -1e-3;
    CHECK_FALSE(twl::is_symmetric_psd(m));
    m(1, 1) = -1e-12;
    CHECK(twl::is_symmetric_psd(m));
    m << 1, 0.5, 0.4, 1;
    CHECK_FALSE(twl::is_symmetric_psd(m));
  }
}
