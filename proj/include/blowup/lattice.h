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

#ifndef BLOWUP_LATTICE_H_
#define BLOWUP_LATTICE_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "blowup/config.h"
#include "json.hpp"

namespace blowup::lattice {

using Coeffs = std::vector<std::int64_t>;

// Divisor class on Y over the basis (pi*H_1, ..., pi*H_r, E_p for p in Delta).
struct DivisorClass {
  Coeffs h;
  Coeffs m;

  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
};

// Curve class on Y over the basis (l~_1, ..., l~_r, e_p for p in Delta).
struct CurveClass {
  Coeffs l;
  Coeffs e;

  CurveClass& operator+=(const CurveClass& other);
  CurveClass& operator-=(const CurveClass& other);
  CurveClass operator+(const CurveClass& other) const;
  CurveClass operator-(const CurveClass& other) const;
  CurveClass Scaled(std::int64_t k) const;
  bool IsZero() const;

  friend bool operator==(const CurveClass&, const CurveClass&) = default;
  friend auto operator<=>(const CurveClass&, const CurveClass&) = default;
};

// Numerical-equivalence lattices of the blow-up Y of (P^1)^r at Delta.
// Only the axis of each Delta point matters here; point order is the
// configuration's (axis, orbit, torsion) order.
class Lattice {
 public:
  explicit Lattice(const fieldgeom::Config& config);
  // Harness form: r axes, one entry per Delta point giving its 0-based axis.
  Lattice(int r, std::vector<int> point_axes);

  int r() const { return r_; }
  std::size_t delta_size() const { return point_axes_.size(); }
  int axis_of(std::size_t p) const { return point_axes_.at(p); }
  std::size_t axis_count(int axis) const;

  CurveClass ZeroCurve() const;
  CurveClass Line(int axis) const;             // l~_i
  CurveClass ExceptionalLine(std::size_t p) const;  // e_p
  DivisorClass ZeroDivisor() const;
  DivisorClass PullbackH(int axis) const;      // pi*(H_i)
  DivisorClass Exceptional(std::size_t p) const;    // E_p

  // Throws ConfigMismatch when either class has the wrong shape.
  std::int64_t Intersect(const CurveClass& c, const DivisorClass& d) const;

  // H~_i = pi*(H_i) - sum of E_p over p in Delta \ Delta_i.
  DivisorClass StrictTransformH(int axis) const;
  // H~_p = pi*(H_axis(p)) - E_p: strict transform of the hypersurface
  // through p with the same axis(p)-coordinate.
  DivisorClass StrictTransformHp(std::size_t p) const;
  // gamma~_{p,i} = l~_i + sum_{q in Delta_i} e_q - e_p; requires axis(p) != i.
  CurveClass GammaTilde(std::size_t p, int axis) const;

  // Multidegree (pi*H_1 . c, ..., pi*H_r . c).
  Coeffs Pushforward(const CurveClass& c) const;
  // sum a_i l~_i + sum_i sum_{p in Delta_i} (a_i - eps_p) e_p.
  CurveClass ExpandInBasis(std::span<const std::int64_t> a,
                           std::span<const std::int64_t> eps) const;

  // pi*K of (P^1)^r = -2 (pi*H_1 + ... + pi*H_r).
  DivisorClass CanonicalPullback() const;
  // l~_i . pi*K; always -2.
  std::int64_t CanonicalPullbackCheck(int axis) const;
  // K_Y = pi*K + (r - 1) sum E_p. Standard blow-up formula; nothing in the
  // verification pipeline depends on it.
  DivisorClass BlowupCanonicalClass() const;

  // The unique curve class whose intersection numbers with the divisor
  // basis (pi*H_1, ..., pi*H_r, E_p, ...) are `numbers`. Solved by exact
  // rational elimination on the pairing table, independently of
  // ExpandInBasis. Throws InvalidArgument if the solution is not integral.
  CurveClass ClassFromIntersections(std::span<const std::int64_t> numbers) const;

  std::vector<std::string> CurveBasisLabels() const;
  std::vector<std::string> DivisorBasisLabels() const;
  // Rows: curve basis; columns: divisor basis.
  std::vector<Coeffs> PairingTable() const;
  std::string PairingTableCsv() const;

  // Flat arrays in basis order.
  nlohmann::json ToJson(const CurveClass& c) const;
  nlohmann::json ToJson(const DivisorClass& d) const;
  CurveClass CurveFromJson(const nlohmann::json& j) const;
  DivisorClass DivisorFromJson(const nlohmann::json& j) const;

 private:
  void RequireAxis(int axis) const;
  void RequireShape(const CurveClass& c) const;
  void RequireShape(const DivisorClass& d) const;

  int r_;
  std::vector<int> point_axes_;
  std::vector<std::string> point_labels_;
};

// Inverse of the pairing table, computed once by exact rational
// Gauss-Jordan elimination, for repeated ClassFromIntersections queries.
class PairingSolver {
 public:
  explicit PairingSolver(const Lattice& lattice);
  CurveClass Solve(std::span<const std::int64_t> numbers) const;

 private:
  int r_;
  std::size_t dim_;
  std::vector<Coeffs> inverse_;
};

// Identity suite for one configuration: canonical degree, the strict
// transform expansion of H_i, l~_i . E_p, H~_i . l~_j, the gamma~ classes,
// and `draws` random multidegree/multiplicity expansions checked against
// ClassFromIntersections.
ReportFragment VerifyIdentities(const fieldgeom::Config& config, int draws,
                                std::uint64_t seed);

}  // namespace blowup::lattice

#endif  // BLOWUP_LATTICE_H_
