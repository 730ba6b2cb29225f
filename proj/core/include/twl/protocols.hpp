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

#include <string_view>

#include <Eigen/Dense>

#include "twl/fim.hpp"
#include "twl/pose.hpp"

namespace twl {

/// OWL: one-way, perfectly synchronized, backward link only.
/// RLP: responder replies after a fixed turnaround; localization at D1 from
///      the backward signal.
/// CLP: responder replies at an agreed instant and feeds its received
///      signal back; localization at D1 from both signals.
enum class Protocol { kOwl, kRlp, kClp };

std::string_view to_string(Protocol p);
std::string_view to_string(Device d);

using Matrix5d = Eigen::Matrix<double, 5, 5>;

/// Orientation/position bound. Parameter order (zeta, chi, px, py, pz).
/// A singular EFIM leaves `identifiable` false and peb/oeb at +inf.
struct LocalizationBound {
  Matrix5d efim = Matrix5d::Zero();
  Matrix5d cov = Matrix5d::Zero();
  double peb = 0.0;  // [m]
  double oeb = 0.0;  // [rad]
  bool identifiable = false;
  int rank = 0;
  double condition = 0.0;
  bool ill_conditioned = false;  // condition > 1e12
};

/// Delay information for tau after combining the two directions.
/// OWL returns J_b; RLP and CLP return 4 (1/J_f + 1/J_b)^-1.
double combined_delay_info(Protocol kind, double j_tau_f, double j_tau_b);

/// Inverts an EFIM and reads off PEB and OEB.
LocalizationBound bound_from_efim(const Matrix5d& efim);

/// 5x5 localization EFIM for `kind`, inverted into PEB/OEB. `fwd` is ignored
/// for OWL. Singular results come back flagged rather than thrown.
LocalizationBound assemble(Protocol kind, const ChannelFim& fwd, const ChannelFim& bwd,
                           const LocationJacobian& ups);

/// True when RLP strictly beats OWL: J_f > J_b / 3.
bool rlp_beats_owl(double j_tau_f, double j_tau_b);

}  // namespace twl
