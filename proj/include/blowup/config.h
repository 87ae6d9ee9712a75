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

#ifndef BLOWUP_CONFIG_H_
#define BLOWUP_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "blowup/check.h"
#include "blowup/field.h"
#include "blowup/moebius.h"
#include "json.hpp"

namespace blowup::fieldgeom {

// Axes and orbits are 0-based in the API and 1-based in labels and reports.
struct DeltaPoint {
  int axis = 0;
  int orbit = 0;
  int torsion = 0;
  ProjPoint coord;  // [1 : zeta^torsion * base[axis][orbit]]

  std::string Label() const;  // "p(axis,orbit,torsion)", axis/orbit 1-based

  friend bool operator==(const DeltaPoint&, const DeltaPoint&) = default;
};

// Raw construction parameters, as read from a config file. Nothing is
// validated yet; `base` absent means "generate from seed".
struct ConfigParams {
  int n = 0;
  int r = 0;
  std::vector<int> s;
  std::int64_t q = 0;
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<std::vector<std::int64_t>>> base;
};

ConfigParams ParamsFromJson(const nlohmann::json& j);
nlohmann::json ParamsToJson(const ConfigParams& params);

// Human-readable reasons the parameters violate the structural
// preconditions. Empty means structurally valid. Genericity is not checked.
std::vector<std::string> StructuralProblems(const ConfigParams& params);

// A structurally valid configuration together with its point set Delta,
// ordered by (axis, orbit, torsion).
class Config {
 public:
  // Enforces every structural precondition; throws blowup::Error with the
  // matching code (NotPrime, NDoesNotDivide, ZeroBase, OrbitCollision,
  // InvalidArgument). Requires params.base.
  static Config Create(const ConfigParams& params);

  // Test-harness constructor: only q prime, n | q - 1, base nonzero and
  // orbit-disjoint are enforced. Allows s_i = 0, repeated s, r = 1.
  static Config Unchecked(const ConfigParams& params);

  int n() const { return n_; }
  int r() const { return r_; }
  const std::vector<int>& s() const { return s_; }
  const PrimeField& field() const { return field_; }
  std::int64_t q() const { return field_.modulus(); }
  const FieldElement& zeta() const { return zeta_; }
  const std::vector<std::vector<FieldElement>>& base() const { return base_; }
  const std::optional<std::uint64_t>& seed() const { return seed_; }

  const std::vector<DeltaPoint>& delta() const { return delta_; }
  // Delta_i as a contiguous index range [begin, end).
  std::size_t axis_begin(int axis) const { return offsets_.at(axis); }
  std::size_t axis_end(int axis) const { return offsets_.at(axis + 1); }
  std::size_t axis_size(int axis) const {
    return axis_end(axis) - axis_begin(axis);
  }
  std::size_t IndexOf(int axis, int orbit, int torsion) const;
  // Index of the Delta point on `axis` with the given coordinate, if any.
  std::optional<std::size_t> Find(int axis, const ProjPoint& coord) const;

  ConfigParams params() const;
  // Canonical echo: sorted keys, includes base and zeta.
  nlohmann::json ToJson() const;

 private:
  Config(const ConfigParams& params, bool checked);

  int n_;
  int r_;
  std::vector<int> s_;
  PrimeField field_;
  FieldElement zeta_;
  std::vector<std::vector<FieldElement>> base_;
  std::optional<std::uint64_t> seed_;
  std::vector<DeltaPoint> delta_;
  std::vector<std::size_t> offsets_;
};

// All points of Delta; n * sum(s) of them. Throws ZeroBase or
// OrbitCollision.
std::vector<DeltaPoint> BuildDelta(
    const FieldElement& zeta, int n,
    const std::vector<std::vector<FieldElement>>& base);

// Action of g = (k_1, ..., k_r) in (Z/n)^r: [u:v] -> [u : zeta^k_i v].
DeltaPoint GAction(const Config& config, std::span<const int> g,
                   const DeltaPoint& p);
// The permutation of Delta indices induced by g.
std::vector<std::size_t> GActionPermutation(const Config& config,
                                            std::span<const int> g);

// Moebius maps fixing [0:1] and preserving `points` setwise, found by the
// three-point method. Sorted canonically. Throws TooFewPoints when fewer
// than two points are given.
std::vector<MoebiusMap> StabilizerOfPointSet(const PrimeField& field,
                                             std::span<const ProjPoint> points);
std::vector<MoebiusMap> StabilizerOfAxis(const Config& config, int axis);

// Same group, by filtering all q(q^2 - 1) elements of PGL_2(F_q). OpenMP
// kernel; the serial version lives in blowup::reference.
std::vector<MoebiusMap> EnumerateStabilizerPgl2(const PrimeField& field,
                                                std::span<const ProjPoint> points);

std::vector<ProjPoint> AxisCoordinates(const Config& config, int axis);

struct ValidationResult {
  bool structural_ok = false;
  bool generic = false;
  std::vector<std::string> reasons;
  std::optional<Config> config;
  ReportFragment fragment;

  bool valid() const { return structural_ok && generic; }
};

// Runs the structural checks and the per-axis genericity check. Failures are
// recorded, never thrown. Requires params.base.
ValidationResult ValidateConfig(const ConfigParams& params);

// Seeded search for a generic configuration. Uses std::minstd_rand seeded
// with seed mod (2^31 - 1); base coordinates are 1 + (x mod (q - 1)).
// Throws TooSmallField when some axis needs more orbits than F_q^* has, and
// ExhaustedRetries after `max_retries` non-generic draws.
Config GenerateConfig(int n, int r, const std::vector<int>& s, std::int64_t q,
                      std::uint64_t seed, int max_retries = 1000);

// Builds a Config from params, generating base coordinates when absent.
Config ResolveConfig(const ConfigParams& params);

}  // namespace blowup::fieldgeom

#endif  // BLOWUP_CONFIG_H_
