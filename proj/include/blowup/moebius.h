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

#ifndef BLOWUP_MOEBIUS_H_
#define BLOWUP_MOEBIUS_H_

#include <array>
#include <compare>
#include <span>
#include <string>

#include "blowup/field.h"

namespace blowup::fieldgeom {

// An element of PGL_2(F_q). The matrix [[a, b], [c, d]] acts on column
// vectors: [u:v] -> [a u + b v : c u + d v]. Stored in canonical form, with
// the first nonzero entry in row-major order equal to 1.
class MoebiusMap {
 public:
  MoebiusMap(const FieldElement& a, const FieldElement& b,
             const FieldElement& c, const FieldElement& d);

  static MoebiusMap Identity(const PrimeField& field);
  // [u:v] -> [u : mu v]; fixes [0:1] and [1:0].
  static MoebiusMap Scaling(const FieldElement& mu);

  // The unique map sending src[k] to dst[k] for k = 0, 1, 2. Each triple
  // must consist of pairwise distinct points.
  static MoebiusMap FromThreePoints(std::span<const ProjPoint, 3> src,
                                    std::span<const ProjPoint, 3> dst);

  ProjPoint Apply(const ProjPoint& p) const;
  // (*this) after (other).
  MoebiusMap Compose(const MoebiusMap& other) const;
  MoebiusMap Inverse() const;
  bool IsIdentity() const;

  const std::array<FieldElement, 4>& entries() const { return m_; }
  std::uint32_t modulus() const { return m_[0].modulus(); }

  std::string ToString() const;

  friend bool operator==(const MoebiusMap&, const MoebiusMap&) = default;
  friend auto operator<=>(const MoebiusMap&, const MoebiusMap&) = default;

 private:
  explicit MoebiusMap(std::array<FieldElement, 4> m);
  void Normalize();

  std::array<FieldElement, 4> m_;
};

}  // namespace blowup::fieldgeom

#endif  // BLOWUP_MOEBIUS_H_
