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

#include <benchmark/benchmark.h>

#include "twl/fim.hpp"
#include "twl/pose.hpp"
#include "twl/protocols.hpp"
#include "twl/scenario.hpp"

namespace {

struct Fixture {
  twl::Scenario sc = twl::Scenario::defaults();
  twl::Deployment dep = twl::deploy(sc);
  twl::Pose pose{twl::Vector3(3.0, 25.0, -10.0), 0.0, 0.0};
  twl::ChannelGeometry cg = twl::channel_geometry(pose, sc.signal.wavelength());
};

void BM_ChannelFim(benchmark::State& state) {
  Fixture f;
  for (auto _ : state) {
    benchmark::DoNotOptimize(twl::channel_fim(twl::LinkDirection::kBackward, f.dep.ue, f.dep.bs,
                                              f.dep.ue_tx, f.dep.bs_rx, f.cg, f.sc.signal));
  }
}
BENCHMARK(BM_ChannelFim);

void BM_Assemble(benchmark::State& state) {
  Fixture f;
  const auto fwd = twl::channel_fim(twl::LinkDirection::kForward, f.dep.bs, f.dep.ue, f.dep.bs_tx,
                                    f.dep.ue_rx, f.cg, f.sc.signal);
  const auto bwd = twl::channel_fim(twl::LinkDirection::kBackward, f.dep.ue, f.dep.bs, f.dep.ue_tx,
                                    f.dep.bs_rx, f.cg, f.sc.signal);
  const auto ups = twl::location_jacobian(f.pose);
  for (auto _ : state) benchmark::DoNotOptimize(twl::assemble(twl::Protocol::kClp, fwd, bwd, ups));
}
BENCHMARK(BM_Assemble);

void BM_EvaluatePosition(benchmark::State& state) {
  Fixture f;
  for (auto _ : state) benchmark::DoNotOptimize(twl::evaluate_position(f.sc, f.dep, f.pose.position));
}
BENCHMARK(BM_EvaluatePosition);

void BM_RunCdf(benchmark::State& state) {
  auto sc = twl::Scenario::defaults();
  sc.n_samples = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(twl::run_cdf(sc));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunCdf)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
