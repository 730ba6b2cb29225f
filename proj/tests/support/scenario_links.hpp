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

// Forward/backward channel FIMs and the Jacobian at one position, built from
// a deployment the same way a protocol exchange would use it.

#include "twl/fim.hpp"
#include "twl/pose.hpp"
#include "twl/protocols.hpp"
#include "twl/scenario.hpp"

namespace twl::testing {

struct PositionLinks {
  ChannelFim fwd;
  ChannelFim bwd;
  LocationJacobian ups;
};

inline PositionLinks links_at(const Scenario& sc, const Deployment& dep, const Vector3& p,
                              Device initiator) {
  const Pose pose{p, sc.zeta, sc.chi};
  const ChannelGeometry cg =
      channel_geometry(pose, sc.signal.wavelength(), sc.signal.c, sc.bias, sc.psi, initiator);
  const bool bs = initiator == Device::kBs;
  const ArrayGeometry& g1 = bs ? dep.bs : dep.ue;
  const ArrayGeometry& g2 = bs ? dep.ue : dep.bs;
  return PositionLinks{
      channel_fim(LinkDirection::kForward, g1, g2, bs ? dep.bs_tx : dep.ue_tx,
                  bs ? dep.ue_rx : dep.bs_rx, cg, sc.signal),
      channel_fim(LinkDirection::kBackward, g2, g1, bs ? dep.ue_tx : dep.bs_tx,
                  bs ? dep.bs_rx : dep.ue_rx, cg, sc.signal),
      location_jacobian(pose, sc.signal.c, initiator)};
}

inline LocalizationBound bound_at(Protocol kind, const PositionLinks& l) {
  return assemble(kind, l.fwd, l.bwd, l.ups);
}

}  // namespace twl::testing
