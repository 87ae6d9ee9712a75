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

#include "blowup/check.h"

#include <array>
#include <utility>

namespace blowup {

std::string_view StatusName(Status status) {
  switch (status) {
    case Status::kPass: return "PASS";
    case Status::kWarn: return "WARN";
    case Status::kFail: return "FAIL";
  }
  return "FAIL";
}

namespace {

constexpr std::array<AnchorInfo, 19> kAnchors = {{
    {"config-structure",
     "orbit counts s_i are distinct (n*s_i >= 3 when r = 2); each Delta_i is "
     "a union of s_i free mu_n-orbits on the i-th coordinate line"},
    {"genericity",
     "the Moebius maps fixing [0:1] and preserving Delta_i are exactly the "
     "scalings [u:v] -> [u : mu v] with mu^n = 1"},
    {"canonical-degree",
     "K of (P^1)^r is -2(H_1 + ... + H_r), hence K . l_i = -2"},
    {"strict-hyperplane",
     "strict transform of H_i is pi*H_i minus the E_p with p off axis i"},
    {"line-exceptional",
     "strict transform of l_i meets E_p once for p in Delta_i, else not"},
    {"hyperplane-line-diagonal", "H~_i . l~_i = 1"},
    {"hyperplane-line-offdiagonal", "H~_i . l~_j = -|Delta_j| = -n s_j"},
    {"gamma-class",
     "gamma~_{p,i} = l~_i + sum over Delta_i of e_q - e_p; it meets E_p "
     "once and no other E_q"},
    {"spade-identity",
     "a curve with multidegree a and E_p-degrees eps is "
     "sum a_i l~_i + sum (a_axis(p) - eps_p) e_p"},
    {"diamond-identity",
     "with a_j = 0 and eps supported at q in Delta_j, the same class is "
     "(sum a_i - eps_q) e_q + sum a_i gamma~_{q,i}"},
    {"generator-set",
     "effective curve classes are generated by l~_i, e_p and gamma~_{p,i}"},
    {"extremality",
     "a curve class is indecomposable iff it is one of the generators"},
    {"incidence-graph",
     "components of F: E_p, l~_i and gamma~_{p,i}, with exact incidence"},
    {"census-exceptional", "each E_p meets exactly r other components"},
    {"census-gamma",
     "each gamma~_{p,i} meets E_p and the n s_i curves gamma~_{q,axis(p)}"},
    {"census-line",
     "each l~_i meets the n s_i divisors E_p, p in Delta_i (and the other "
     "lines at the origin)"},
    {"pinning",
     "the incidence profile singles out the E_p and each l~_i, so every "
     "automorphism descends to (P^1)^r and fixes each l_i"},
    {"automorphism-group",
     "automorphisms of (P^1)^r preserving Delta form mu_n^r = (Z/n)^r"},
    {"vector-fields",
     "a global vector field vanishing on Delta has scalar matrices on every "
     "factor, so it is zero"},
}};
static_assert(kAnchors.size() ==
              static_cast<std::size_t>(Anchor::kVectorFields) + 1);

}  // namespace

const AnchorInfo& Describe(Anchor anchor) {
  return kAnchors.at(static_cast<std::size_t>(anchor));
}

const std::vector<Anchor>& AllAnchors() {
  static const std::vector<Anchor> all = [] {
    std::vector<Anchor> v;
    for (std::size_t k = 0; k < kAnchors.size(); ++k) {
      v.push_back(static_cast<Anchor>(k));
    }
    return v;
  }();
  return all;
}

bool ReportFragment::HasFailure() const {
  for (const CheckRecord& c : checks) {
    if (c.status == Status::kFail) return true;
  }
  return false;
}

void ReportFragment::Append(ReportFragment other) {
  for (CheckRecord& c : other.checks) checks.push_back(std::move(c));
}

}  // namespace blowup
