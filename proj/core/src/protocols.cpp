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

#include "twl/protocols.hpp"

#include <cmath>
#include <limits>

#include "twl/error.hpp"

namespace twl {
namespace {

constexpr double kRankTolerance = 1e-14;
constexpr double kIllConditioned = 1e12;

}  // namespace

std::string_view to_string(Protocol p) {
  switch (p) {
    case Protocol::kOwl: return "owl";
    case Protocol::kRlp: return "rlp";
    case Protocol::kClp: return "clp";
  }
  return "unknown";
}

std::string_view to_string(Device d) { return d == Device::kBs ? "bs" : "ue"; }

double combined_delay_info(Protocol kind, double j_tau_f, double j_tau_b) {
  if (!(j_tau_f >= 0.0) || !(j_tau_b >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "delay information must be non-negative");
  }
  if (kind == Protocol::kOwl) return j_tau_b;
  if (j_tau_f == 0.0 || j_tau_b == 0.0) {
    throw Error(ErrorCode::kDelayUnobservable, "delay unobservable: a two-way leg carries no delay information");
  }
  // 4 (1/jf + 1/jb)^-1
  return 4.0 * j_tau_f * j_tau_b / (j_tau_f + j_tau_b);
}

LocalizationBound bound_from_efim(const Matrix5d& efim) {
  LocalizationBound out;
  out.efim = 0.5 * (efim + efim.transpose());

  // Jacobi scaling before the eigen-decomposition.
  Eigen::Matrix<double, 5, 1> d = out.efim.diagonal();
  const double inf = std::numeric_limits<double>::infinity();
  out.peb = inf;
  out.oeb = inf;
  out.condition = inf;
  if (!d.allFinite() || (d.array() <= 0.0).any()) {
    out.rank = static_cast<int>((d.array() > 0.0).count());
    return out;
  }
  d = d.cwiseSqrt().cwiseInverse();
  const Matrix5d scaled = d.asDiagonal() * out.efim * d.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Matrix5d> eig(scaled);
  const auto& ev = eig.eigenvalues();
  const double top = ev.maxCoeff();
  out.rank = static_cast<int>((ev.array() > kRankTolerance * top).count());
  if (eig.info() != Eigen::Success || out.rank < 5) {
    return out;
  }
  out.condition = top / ev.minCoeff();
  out.ill_conditioned = out.condition > kIllConditioned;
  const Matrix5d scaled_inv =
      eig.eigenvectors() * ev.cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();
  out.cov = d.asDiagonal() * scaled_inv * d.asDiagonal();
  out.identifiable = true;
  out.oeb = std::sqrt(out.cov(0, 0) + out.cov(1, 1));
  out.peb = std::sqrt(out.cov(2, 2) + out.cov(3, 3) + out.cov(4, 4));
  return out;
}

LocalizationBound assemble(Protocol kind, const ChannelFim& fwd, const ChannelFim& bwd,
                           const LocationJacobian& ups) {
  if (bwd.direction != LinkDirection::kBackward ||
      (kind != Protocol::kOwl && fwd.direction != LinkDirection::kForward)) {
    throw Error(ErrorCode::kInvalidArgument, "forward/backward FIMs passed in the wrong slots");
  }
  if (!ups.ups_s.allFinite() || !ups.ups_tau.allFinite()) {
    throw Error(ErrorCode::kDegenerateGeometry, "location Jacobian is not finite");
  }

  const double j_tau =
      combined_delay_info(kind, kind == Protocol::kOwl ? 0.0 : delay_info(fwd), delay_info(bwd));
  // Angle EFIMs of the two legs add.
  Efim angles = angle_efim(bwd);
  if (kind == Protocol::kClp) {
    angles = efim_additivity(angles, angle_efim(fwd));
  }
  const Matrix5d efim = ups.ups_s * angles.matrix * ups.ups_s.transpose() +
                        j_tau * ups.ups_tau * ups.ups_tau.transpose();
  return bound_from_efim(efim);
}

bool rlp_beats_owl(double j_tau_f, double j_tau_b) { return j_tau_f > j_tau_b / 3.0; }

}  // namespace twl
