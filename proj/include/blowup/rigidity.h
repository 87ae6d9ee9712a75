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

#ifndef BLOWUP_RIGIDITY_H_
#define BLOWUP_RIGIDITY_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blowup/check.h"
#include "blowup/config.h"
#include "blowup/moebius.h"
#include "json.hpp"

namespace blowup::rigidity {

using fieldgeom::MoebiusMap;

enum class ComponentKind { kExceptional, kLine, kGamma };

// E_p, l~_i or gamma~_{p,i}. `point` is meaningful for E and gamma, `axis`
// for l~ and gamma.
struct ComponentId {
  ComponentKind kind = ComponentKind::kExceptional;
  std::size_t point = 0;
  int axis = -1;

  int Dim(int r) const { return kind == ComponentKind::kExceptional ? r - 1 : 1; }
  std::string Label(const fieldgeom::Config& config) const;

  friend bool operator==(const ComponentId&, const ComponentId&) = default;
  friend auto operator<=>(const ComponentId&, const ComponentId&) = default;
};

// E_p in Delta order, then l~_1..l~_r, then gamma~_{p,i} ordered by (p, i).
std::vector<ComponentId> Components(const fieldgeom::Config& config);
// |Delta| + r + sum_i (|Delta| - n s_i).
std::size_t ExpectedComponentCount(const fieldgeom::Config& config);

// Closed-form incidence of two distinct components. Throws InvalidArgument
// when a == b.
bool Incident(const fieldgeom::Config& config, const ComponentId& a,
              const ComponentId& b);

struct IncidenceGraph {
  std::vector<ComponentId> vertices;
  std::vector<std::vector<std::size_t>> adjacency;  // sorted neighbor lists

  std::size_t EdgeCount() const;
  bool HasEdge(std::size_t a, std::size_t b) const;
  nlohmann::json ToJson(const fieldgeom::Config& config) const;
  std::string ToDot(const fieldgeom::Config& config) const;
};

// OpenMP-parallel over rows; the serial version lives in blowup::reference.
IncidenceGraph BuildGraph(const fieldgeom::Config& config);

struct Profile {
  std::size_t divisor_neighbors = 0;
  std::size_t curve_neighbors = 0;

  std::size_t Total() const { return divisor_neighbors + curve_neighbors; }
  friend bool operator==(const Profile&, const Profile&) = default;
};

std::vector<Profile> Census(const IncidenceGraph& graph);

// Profile predicted by the closed-form incidence rules:
// E_p -> (0, r), gamma~_{p,i} -> (1, n s_i), l~_i -> (n s_i, r - 1).
Profile ExpectedProfile(const fieldgeom::Config& config, const ComponentId& c);
// Neighbor totals as stated in prose: r, n s_i + 1, n s_i.
std::size_t StatedTotal(const fieldgeom::Config& config, const ComponentId& c);

struct PinningCertificate {
  // "dimension" for r >= 3, "degree" for r = 2.
  std::string exceptional_rule;
  std::vector<std::size_t> exceptional_degrees;  // distinct totals of E_p
  std::vector<std::size_t> line_divisor_degrees;  // indexed by axis

  nlohmann::json ToJson() const;
};

// Certifies that the E_p are recognizable from the census and that each l~_i
// is the only curve vertex with its divisor-neighbor count. Throws
// AmbiguousProfile naming the offending vertices otherwise.
PinningCertificate PinComponents(const fieldgeom::Config& config,
                                 const IncidenceGraph& graph,
                                 const std::vector<Profile>& census);

struct GeometricAut {
  std::vector<MoebiusMap> maps;               // h_1..h_r, each fixing [0:1]
  std::vector<int> exponents;                 // h_i = Scaling(zeta^k_i)
  std::vector<std::size_t> permutation;       // induced action on Delta

  nlohmann::json ToJson() const;
};

// Product over axes of the per-axis stabilizers, with the induced action on
// Delta checked against the G-action. Throws NonGeneric when some factor is
// larger than mu_n.
std::vector<GeometricAut> GeometricAutomorphisms(
    const fieldgeom::Config& config);

// First stabilizer element on some axis that is not a mu_n scaling.
std::optional<std::pair<int, MoebiusMap>> ExtraStabilizerElement(
    const fieldgeom::Config& config);

// Number of automorphisms of the uncolored abstract graph, by backtracking.
// Returns nullopt when the graph has more than `max_vertices` vertices.
std::optional<std::uint64_t> AbstractAutomorphismCount(
    const IncidenceGraph& graph, std::size_t max_vertices = 24);

// Graph, census (with the line WARN), pinning and automorphism group.
ReportFragment VerifyRigidity(const fieldgeom::Config& config);

}  // namespace blowup::rigidity

#endif  // BLOWUP_RIGIDITY_H_
