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
#include <optional>
#include <utility>

#include "blowup/error.h"
#include "blowup/reference.h"

namespace blowup::reference {

using fieldgeom::Config;
using fieldgeom::ProjPoint;
using rigidity::ComponentId;
using rigidity::ComponentKind;

namespace {

using Point = std::vector<ProjPoint>;  // one coordinate per axis

// A coordinate line of (P^1)^r: every axis fixed except `free_axis`.
struct CoordinateCurve {
  Point fixed;
  int free_axis;

  Point At(const ProjPoint& t) const {
    Point x = fixed;
    x[free_axis] = t;
    return x;
  }
  bool Contains(const Point& x) const {
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (static_cast<int>(k) != free_axis && x[k] != fixed[k]) return false;
    }
    return true;
  }
};

Point Origin(const Config& config) {
  return Point(config.r(), ProjPoint::ZeroOne(config.field()));
}

Point FullPoint(const Config& config, std::size_t p) {
  Point x = Origin(config);
  const auto& d = config.delta().at(p);
  x[d.axis] = d.coord;
  return x;
}

CoordinateCurve CurveOf(const Config& config, const ComponentId& c) {
  if (c.kind == ComponentKind::kLine) return {Origin(config), c.axis};
  return {FullPoint(config, c.point), c.axis};
}

bool InDelta(const Config& config, const Point& x) {
  const ProjPoint origin = ProjPoint::ZeroOne(config.field());
  std::optional<int> moved;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] == origin) continue;
    if (moved) return false;
    moved = static_cast<int>(k);
  }
  return moved && config.Find(*moved, x[*moved]).has_value();
}

std::vector<ProjPoint> ProjectiveLine(const fieldgeom::PrimeField& field) {
  std::vector<ProjPoint> out{ProjPoint::ZeroOne(field)};
  for (std::int64_t z = 0; z < field.modulus(); ++z) {
    out.push_back(ProjPoint(field.one(), field(z)));
  }
  return out;
}

}  // namespace

bool PointLevelIncident(const Config& config, const ComponentId& a,
                        const ComponentId& b) {
  if (a == b) {
    throw Error(ErrorCode::kInvalidArgument, "incidence of a component with itself");
  }
  const bool a_div = a.kind == ComponentKind::kExceptional;
  const bool b_div = b.kind == ComponentKind::kExceptional;
  if (a_div && b_div) return false;
  if (a_div || b_div) {
    const ComponentId& e = a_div ? a : b;
    const ComponentId& curve = a_div ? b : a;
    return CurveOf(config, curve).Contains(FullPoint(config, e.point));
  }
  const CoordinateCurve ca = CurveOf(config, a);
  const CoordinateCurve cb = CurveOf(config, b);
  for (const ProjPoint& t : ProjectiveLine(config.field())) {
    const Point x = ca.At(t);
    if (!cb.Contains(x)) continue;
    if (!InDelta(config, x) || ca.free_axis == cb.free_axis) return true;
  }
  return false;
}

rigidity::IncidenceGraph BuildGraphSerial(const Config& config) {
  rigidity::IncidenceGraph g;
  g.vertices = rigidity::Components(config);
  const std::size_t count = g.vertices.size();
  g.adjacency.assign(count, {});
  for (std::size_t v = 0; v < count; ++v) {
    for (std::size_t w = v + 1; w < count; ++w) {
      if (rigidity::Incident(config, g.vertices[v], g.vertices[w])) {
        g.adjacency[v].push_back(w);
        g.adjacency[w].push_back(v);
      }
    }
  }
  for (auto& row : g.adjacency) std::sort(row.begin(), row.end());
  return g;
}

}  // namespace blowup::reference
