// Copyright 2026 The blowup-verify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "blowup/error.h"

namespace blowup {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNotPrime: return "NotPrime";
    case ErrorCode::kNDoesNotDivide: return "NDoesNotDivide";
    case ErrorCode::kOrbitCollision: return "OrbitCollision";
    case ErrorCode::kZeroBase: return "ZeroBase";
    case ErrorCode::kTooFewPoints: return "TooFewPoints";
    case ErrorCode::kTooSmallField: return "TooSmallField";
    case ErrorCode::kExhaustedRetries: return "ExhaustedRetries";
    case ErrorCode::kAxisOutOfRange: return "AxisOutOfRange";
    case ErrorCode::kConfigMismatch: return "ConfigMismatch";
    case ErrorCode::kSameAxis: return "SameAxis";
    case ErrorCode::kNotEffective: return "NotEffective";
    case ErrorCode::kCapExceeded: return "CapExceeded";
    case ErrorCode::kAmbiguousProfile: return "AmbiguousProfile";
    case ErrorCode::kNonGeneric: return "NonGeneric";
    case ErrorCode::kOverflow: return "Overflow";
    case ErrorCode::kModulusMismatch: return "ModulusMismatch";
    case ErrorCode::kParse: return "Parse";
  }
  return "Unknown";
}

}  // namespace blowup
