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

#include <algorithm>
#include <set>

#include "blowup/reference.h"

namespace blowup::reference {

using fieldgeom::MoebiusMap;
using fieldgeom::ProjPoint;

std::vector<MoebiusMap> StabilizerPgl2Serial(
    const fieldgeom::PrimeField& field, std::span<const ProjPoint> points) {
  const std::int64_t q = field.modulus();
  const std::set<ProjPoint> target(points.begin(), points.end());
  const ProjPoint fixed = ProjPoint::ZeroOne(field);
  std::set<MoebiusMap> found;
  for (std::int64_t a = 0; a < q; ++a) {
    for (std::int64_t b = 0; b < q; ++b) {
      for (std::int64_t c = 0; c < q; ++c) {
        for (std::int64_t d = 0; d < q; ++d) {
          if ((a * d - b * c) % q == 0) continue;
          const MoebiusMap m(field(a), field(b), field(c), field(d));
          if (m.Apply(fixed) != fixed) continue;
          std::set<ProjPoint> image;
          for (const ProjPoint& p : points) image.insert(m.Apply(p));
          if (image == target) found.insert(m);
        }
      }
    }
  }
  return {found.begin(), found.end()};
}

}  // namespace blowup::reference
