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

#ifndef BLOWUP_REFERENCE_H_
#define BLOWUP_REFERENCE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "blowup/cone.h"
#include "blowup/config.h"
#include "blowup/lattice.h"
#include "blowup/moebius.h"
#include "blowup/rigidity.h"

// Straightforward serial implementations used as test oracles and as the
// baseline in the benchmarks. None of them shares search logic with the
// production kernels.
namespace blowup::reference {

// Every matrix in M_2(F_q) with nonzero determinant, deduplicated through
// MoebiusMap's normal form, filtered for fixing [0:1] and preserving
// `points` setwise.
std::vector<fieldgeom::MoebiusMap> StabilizerPgl2Serial(
    const fieldgeom::PrimeField& field,
    std::span<const fieldgeom::ProjPoint> points);

// All decompositions of c, by depth-first search over generator counts with
// the phi-degree and multidegree of c as budgets; every candidate multiset
// is re-summed and compared with c.
std::vector<cone::Decomposition> NaiveDecompositions(
    const cone::GeneratorSet& gens, const lattice::CurveClass& c);
bool NaiveIsExtremal(const cone::GeneratorSet& gens,
                     const lattice::CurveClass& c);
// Distinct unordered class pairs {c1, c - c1} with both parts nonzero.
std::size_t NaiveTwoPartCount(const cone::GeneratorSet& gens,
                              const lattice::CurveClass& c);

std::vector<cone::ExtremalityRow> ExtremalityTableSerial(
    const cone::SemigroupSearch& search);

// Incidence from explicit point sets over F_q: two curves meet iff they share
// a point off Delta, or a point of Delta where both vary along the same
// axis; E_p meets a curve iff p lies on it; distinct E_p never meet.
bool PointLevelIncident(const fieldgeom::Config& config,
                        const rigidity::ComponentId& a,
                        const rigidity::ComponentId& b);

rigidity::IncidenceGraph BuildGraphSerial(const fieldgeom::Config& config);

}  // namespace blowup::reference

#endif  // BLOWUP_REFERENCE_H_
