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

#include "twl/error.hpp"

namespace twl {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kDimensionMismatch: return "dimension mismatch";
    case ErrorCode::kDegenerateGeometry: return "degenerate geometry";
    case ErrorCode::kSingularGram: return "singular beamformer Gram matrix";
    case ErrorCode::kNoIllumination: return "no illumination";
    case ErrorCode::kUnidentifiableNuisance: return "nuisance parameters unidentifiable";
    case ErrorCode::kDelayUnobservable: return "delay unobservable";
    case ErrorCode::kLabelMismatch: return "parameter label mismatch";
  }
  return "unknown";
}

}  // namespace twl
