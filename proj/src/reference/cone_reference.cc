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

#include <functional>
#include <set>
#include <utility>

#include "blowup/reference.h"

namespace blowup::reference {

using cone::Decomposition;
using cone::GeneratorSet;
using lattice::CurveClass;

std::vector<Decomposition> NaiveDecompositions(const GeneratorSet& gens,
                                               const CurveClass& c) {
  const lattice::Lattice& lat = gens.lattice();
  const std::int64_t phi_target = cone::PhiDegree(lat, c);
  const lattice::Coeffs a_target = lat.Pushforward(c);
  std::vector<Decomposition> out;
  if (phi_target < 0) return out;
  for (std::int64_t x : a_target) {
    if (x < 0) return out;
  }

  std::vector<std::int64_t> phi(gens.size());
  std::vector<lattice::Coeffs> deg(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k) {
    phi[k] = cone::PhiDegree(lat, gens[k].cls);
    deg[k] = lat.Pushforward(gens[k].cls);
  }

  // Generators of positive multidegree first, so the e_p stage only runs
  // once the multidegree budget is spent.
  std::vector<std::size_t> order;
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const bool contracted =
          gens[k].kind == cone::GeneratorKind::kExceptionalLine;
      if (contracted == (pass == 1)) order.push_back(k);
    }
  }

  std::vector<std::int64_t> count(gens.size(), 0);
  lattice::Coeffs a_left = a_target;
  std::function<void(std::size_t, std::int64_t)> dfs =
      [&](std::size_t pos, std::int64_t phi_left) {
        if (pos < order.size() &&
            gens[order[pos]].kind == cone::GeneratorKind::kExceptionalLine) {
          for (std::int64_t x : a_left) {
            if (x != 0) return;
          }
        }
        if (pos == order.size()) {
          if (phi_left != 0) return;
          for (std::int64_t x : a_left) {
            if (x != 0) return;
          }
          Decomposition d;
          for (std::size_t t = 0; t < count.size(); ++t) {
            if (count[t] > 0) d.terms.push_back({t, count[t]});
          }
          if (d.Sum(gens) == c) out.push_back(std::move(d));
          return;
        }
        const std::size_t k = order[pos];
        for (std::int64_t m = 0;; ++m) {
          bool fits = m * phi[k] <= phi_left;
          for (std::size_t i = 0; i < a_left.size() && fits; ++i) {
            fits = m * deg[k][i] <= a_left[i];
          }
          if (!fits) break;
          count[k] = m;
          for (std::size_t i = 0; i < a_left.size(); ++i) a_left[i] -= m * deg[k][i];
          dfs(pos + 1, phi_left - m * phi[k]);
          for (std::size_t i = 0; i < a_left.size(); ++i) a_left[i] += m * deg[k][i];
        }
        count[k] = 0;
      };
  dfs(0, phi_target);
  return out;
}

bool NaiveIsExtremal(const GeneratorSet& gens, const CurveClass& c) {
  const auto all = NaiveDecompositions(gens, c);
  if (all.empty()) return false;
  for (const Decomposition& d : all) {
    if (d.Parts() != 1) return false;
  }
  return true;
}

std::size_t NaiveTwoPartCount(const GeneratorSet& gens, const CurveClass& c) {
  std::set<std::pair<CurveClass, CurveClass>> pairs;
  for (const Decomposition& d : NaiveDecompositions(gens, c)) {
    // Expand d into a flat list of generator indices and try every subset
    // pattern by multiplicity.
    std::vector<std::int64_t> pick(d.terms.size(), 0);
    while (true) {
      std::size_t t = 0;
      while (t < pick.size() && pick[t] == d.terms[t].multiplicity) pick[t++] = 0;
      if (t == pick.size()) break;
      ++pick[t];
      CurveClass first = gens.lattice().ZeroCurve();
      for (std::size_t k = 0; k < pick.size(); ++k) {
        first += gens[d.terms[k].generator].cls.Scaled(pick[k]);
      }
      CurveClass second = c - first;
      if (second.IsZero()) continue;
      if (second < first) std::swap(first, second);
      pairs.insert({std::move(first), std::move(second)});
    }
  }
  return pairs.size();
}

std::vector<cone::ExtremalityRow> ExtremalityTableSerial(
    const cone::SemigroupSearch& search) {
  std::vector<cone::ExtremalityRow> rows;
  for (std::size_t k = 0; k < search.generators().size(); ++k) {
    rows.push_back(cone::ExtremalityRowFor(search, k));
  }
  return rows;
}

}  // namespace blowup::reference
