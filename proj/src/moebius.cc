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

#include "blowup/moebius.h"

#include <sstream>

#include "blowup/error.h"

namespace blowup::fieldgeom {

namespace {

// Matrix whose columns are representatives of p0 and p1, scaled so that it
// sends [1:0] -> p0, [0:1] -> p1 and [1:1] -> p2.
std::array<FieldElement, 4> FrameMatrix(std::span<const ProjPoint, 3> p) {
  // Solve alpha * p0 + beta * p1 = p2 (up to scale) by Cramer's rule.
  const FieldElement& x0 = p[0].u();
  const FieldElement& y0 = p[0].v();
  const FieldElement& x1 = p[1].u();
  const FieldElement& y1 = p[1].v();
  const FieldElement& x2 = p[2].u();
  const FieldElement& y2 = p[2].v();
  const FieldElement det = x0 * y1 - x1 * y0;
  if (det.is_zero()) {
    throw Error(ErrorCode::kInvalidArgument, "frame points not distinct");
  }
  const FieldElement alpha = (x2 * y1 - x1 * y2) * det.inverse();
  const FieldElement beta = (x0 * y2 - x2 * y0) * det.inverse();
  if (alpha.is_zero() || beta.is_zero()) {
    throw Error(ErrorCode::kInvalidArgument, "frame points not distinct");
  }
  return {alpha * x0, beta * x1, alpha * y0, beta * y1};
}

std::array<FieldElement, 4> Multiply(const std::array<FieldElement, 4>& x,
                                     const std::array<FieldElement, 4>& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
          x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

std::array<FieldElement, 4> Adjugate(const std::array<FieldElement, 4>& x) {
  return {x[3], -x[1], -x[2], x[0]};
}

}  // namespace

MoebiusMap::MoebiusMap(const FieldElement& a, const FieldElement& b,
                       const FieldElement& c, const FieldElement& d)
    : MoebiusMap(std::array<FieldElement, 4>{a, b, c, d}) {}

MoebiusMap::MoebiusMap(std::array<FieldElement, 4> m) : m_(m) {
  if ((m_[0] * m_[3] - m_[1] * m_[2]).is_zero()) {
    throw Error(ErrorCode::kInvalidArgument, "singular Moebius matrix");
  }
  Normalize();
}

void MoebiusMap::Normalize() {
  for (const FieldElement& x : m_) {
    if (!x.is_zero()) {
      const FieldElement scale = x.inverse();
      for (FieldElement& y : m_) y = y * scale;
      return;
    }
  }
}

MoebiusMap MoebiusMap::Identity(const PrimeField& field) {
  return MoebiusMap(field.one(), field.zero(), field.zero(), field.one());
}

MoebiusMap MoebiusMap::Scaling(const FieldElement& mu) {
  const FieldElement one = mu.pow(0);
  const FieldElement zero = one - one;
  return MoebiusMap(one, zero, zero, mu);
}

MoebiusMap MoebiusMap::FromThreePoints(std::span<const ProjPoint, 3> src,
                                       std::span<const ProjPoint, 3> dst) {
  const auto from = FrameMatrix(src);
  const auto to = FrameMatrix(dst);
  return MoebiusMap(Multiply(to, Adjugate(from)));
}

ProjPoint MoebiusMap::Apply(const ProjPoint& p) const {
  return ProjPoint(m_[0] * p.u() + m_[1] * p.v(), m_[2] * p.u() + m_[3] * p.v());
}

MoebiusMap MoebiusMap::Compose(const MoebiusMap& other) const {
  return MoebiusMap(Multiply(m_, other.m_));
}

MoebiusMap MoebiusMap::Inverse() const { return MoebiusMap(Adjugate(m_)); }

bool MoebiusMap::IsIdentity() const {
  return m_[0].value() == 1 && m_[1].is_zero() && m_[2].is_zero() &&
         m_[3].value() == 1;
}

std::string MoebiusMap::ToString() const {
  std::ostringstream os;
  os << "[[" << m_[0].value() << ',' << m_[1].value() << "],["
     << m_[2].value() << ',' << m_[3].value() << "]]";
  return os.str();
}

}  // namespace blowup::fieldgeom
