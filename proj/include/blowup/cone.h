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

#ifndef BLOWUP_CONE_H_
#define BLOWUP_CONE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blowup/check.h"
#include "blowup/config.h"
#include "blowup/lattice.h"
#include "json.hpp"

namespace blowup::cone {

enum class GeneratorKind { kLine, kExceptionalLine, kGamma };

struct Generator {
  GeneratorKind kind;
  std::string label;
  lattice::CurveClass cls;
  int axis = -1;          // l~_i and gamma~_{p,i}: i
  std::size_t point = 0;  // e_p and gamma~_{p,i}: p
};

// l~_1..l~_r, then e_p in Delta order, then gamma~_{p,i} ordered by (p, i).
class GeneratorSet {
 public:
  explicit GeneratorSet(const lattice::Lattice& lattice);

  const lattice::Lattice& lattice() const { return *lattice_; }
  std::size_t size() const { return gens_.size(); }
  const Generator& operator[](std::size_t k) const { return gens_.at(k); }
  const std::vector<Generator>& all() const { return gens_; }

  std::size_t LineIndex(int axis) const;
  std::size_t ExceptionalIndex(std::size_t p) const;
  // Throws SameAxis when axis(p) == axis.
  std::size_t GammaIndex(std::size_t p, int axis) const;

  // r + |Delta| + sum_i (|Delta| - |Delta_i|).
  static std::size_t ExpectedCount(const lattice::Lattice& lattice);

  nlohmann::json ToJson() const;

 private:
  const lattice::Lattice* lattice_;
  std::vector<Generator> gens_;
  std::vector<std::size_t> gamma_offset_;  // per point, first gamma index
};

// Multiset of generators, terms sorted by generator index.
struct Decomposition {
  struct Term {
    std::size_t generator;
    std::int64_t multiplicity;
    friend bool operator==(const Term&, const Term&) = default;
  };
  std::vector<Term> terms;

  std::int64_t Parts() const;
  lattice::CurveClass Sum(const GeneratorSet& gens) const;
  nlohmann::json ToJson(const GeneratorSet& gens) const;

  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

struct TwoPartSplit {
  lattice::CurveClass first;
  lattice::CurveClass second;  // first <= second
  Decomposition first_witness;
  Decomposition second_witness;
};

// c . (N sum pi*H_i - sum E_p) with N = 1 + |Delta|.
std::int64_t PhiDegree(const lattice::Lattice& lattice,
                       const lattice::CurveClass& c);

// Exhaustive decomposition search in the effective semigroup. A
// decomposition of c uses exactly a_i generators of multidegree e_i for each
// axis i (l~_i or some gamma~_{p,i}); once those are fixed the e_p
// multiplicities are forced. Targets with PhiDegree above the cap throw
// CapExceeded.
class SemigroupSearch {
 public:
  static constexpr std::int64_t kDefaultCapFactor = 10;
  // Default bound on distinct class pairs a single split query may return.
  static constexpr std::size_t kMaxSplits = 200'000;

  explicit SemigroupSearch(const GeneratorSet& gens,
                           std::int64_t cap_factor = kDefaultCapFactor);

  std::int64_t cap() const { return cap_; }
  const GeneratorSet& generators() const { return *gens_; }

  // First decomposition found. Axes are filled in order; per axis, higher
  // multiplicities of l~_i come first, then of gamma~_{p,i} in point order.
  // In particular a class sum a_i l~_i + sum m_p e_p with all m_p >= 0 comes
  // back in exactly that form.
  std::optional<Decomposition> Member(const lattice::CurveClass& c) const;

  // Calls `visit` on every decomposition of c until it returns false.
  void ForEachDecomposition(
      const lattice::CurveClass& c,
      const std::function<bool(const Decomposition&)>& visit) const;

  // All unordered pairs {c1, c2} of nonzero semigroup classes with
  // c1 + c2 = c, sorted. Throws NotEffective when c is not a member and
  // CapExceeded once more than `max_splits` pairs turn up.
  std::vector<TwoPartSplit> TwoPartDecompositions(
      const lattice::CurveClass& c, std::size_t max_splits = kMaxSplits) const;

  // True iff c is a nonzero member with no two-part split. Throws
  // NotEffective when c is not a member. The zero class is not extremal.
  bool IsExtremal(const lattice::CurveClass& c) const;

 private:
  void CheckCap(const lattice::CurveClass& c) const;

  const GeneratorSet* gens_;
  std::int64_t cap_;
};

// Both sides of the case-3 identity for q in Delta_j, a_j = 0:
// ExpandInBasis(a, eps_q at q) and (sum a_i - eps_q) e_q + sum a_i gamma~_{q,i}.
std::pair<lattice::CurveClass, lattice::CurveClass> Case3Sides(
    const lattice::Lattice& lattice, std::size_t q,
    const std::vector<std::int64_t>& a, std::int64_t eps_q);
// Throws InvalidArgument unless a_{axis(q)} = 0.
bool Case3IdentityCheck(const lattice::Lattice& lattice, std::size_t q,
                        const std::vector<std::int64_t>& a,
                        std::int64_t eps_q);

struct ExtremalityRow {
  std::size_t generator = 0;
  bool extremal = false;
  std::size_t splits = 0;        // two-part splits of the generator itself
  // Two-part splits of c_k + c_{k+1}; nullopt above kProbeSplitLimit.
  std::optional<std::size_t> probe_splits;

  friend bool operator==(const ExtremalityRow&, const ExtremalityRow&) =
      default;
};

inline constexpr std::size_t kProbeSplitLimit = 10'000;

ExtremalityRow ExtremalityRowFor(const SemigroupSearch& search,
                                 std::size_t generator);

// One row per generator, OpenMP-parallel over generators. The serial
// version lives in blowup::reference.
std::vector<ExtremalityRow> ExtremalityTable(const SemigroupSearch& search);

// Generator count, random case-3 identities, random case-2 memberships and
// the extremality table with its non-extremal probes.
ReportFragment VerifyCone(const fieldgeom::Config& config, int draws,
                          std::uint64_t seed,
                          std::int64_t cap_factor =
                              SemigroupSearch::kDefaultCapFactor);

}  // namespace blowup::cone

#endif  // BLOWUP_CONE_H_
