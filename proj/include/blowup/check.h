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

#ifndef BLOWUP_CHECK_H_
#define BLOWUP_CHECK_H_

#include <string>
#include <utility>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace blowup {

enum class Status { kPass, kWarn, kFail };

std::string_view StatusName(Status status);

// Registry of the mathematical statements a check can be tied to. Adding a
// check against an unregistered statement does not compile.
enum class Anchor {
  kConfigStructure,
  kGenericity,
  kCanonicalDegree,
  kStrictHyperplane,
  kLineExceptional,
  kHyperplaneLineDiagonal,
  kHyperplaneLineOffDiagonal,
  kGammaClass,
  kSpadeIdentity,
  kDiamondIdentity,
  kGeneratorSet,
  kExtremality,
  kIncidenceGraph,
  kCensusExceptional,
  kCensusGamma,
  kCensusLine,
  kPinning,
  kAutomorphismGroup,
  kVectorFields,
};

struct AnchorInfo {
  std::string_view id;
  std::string_view statement;
};

const AnchorInfo& Describe(Anchor anchor);
const std::vector<Anchor>& AllAnchors();

struct CheckRecord {
  CheckRecord() = default;
  CheckRecord(std::string check_id, Anchor check_anchor)
      : id(std::move(check_id)), anchor(check_anchor) {}

  std::string id;
  Anchor anchor = Anchor::kConfigStructure;
  Status status = Status::kPass;
  nlohmann::json computed;
  nlohmann::json expected;
  std::string note;
  double elapsed_ms = 0.0;
};

struct ReportFragment {
  std::vector<CheckRecord> checks;

  bool HasFailure() const;
  void Append(ReportFragment other);
};

}  // namespace blowup

#endif  // BLOWUP_CHECK_H_
