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

#include "blowup/cone.h"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "blowup/checked.h"
#include "blowup/draws.h"
#include "blowup/error.h"

namespace blowup::cone {

using lattice::Coeffs;
using lattice::CurveClass;
using lattice::Lattice;

GeneratorSet::GeneratorSet(const Lattice& lattice) : lattice_(&lattice) {
  const int r = lattice.r();
  const std::size_t np = lattice.delta_size();
  const auto labels = lattice.CurveBasisLabels();
  for (int i = 0; i < r; ++i) {
    gens_.push_back({GeneratorKind::kLine, labels[i], lattice.Line(i), i, 0});
  }
  for (std::size_t p = 0; p < np; ++p) {
    gens_.push_back({GeneratorKind::kExceptionalLine, labels[r + p],
                     lattice.ExceptionalLine(p), -1, p});
  }
  for (std::size_t p = 0; p < np; ++p) {
    gamma_offset_.push_back(gens_.size());
    // labels[r + p] is "e_p(...)"; reuse the point part.
    const std::string point = labels[r + p].substr(2);
    for (int i = 0; i < r; ++i) {
      if (lattice.axis_of(p) == i) continue;
      gens_.push_back({GeneratorKind::kGamma,
                       "g_" + point + "_" + std::to_string(i + 1),
                       lattice.GammaTilde(p, i), i, p});
    }
  }
}

std::size_t GeneratorSet::LineIndex(int axis) const {
  if (axis < 0 || axis >= lattice_->r()) {
    throw Error(ErrorCode::kAxisOutOfRange, "axis " + std::to_string(axis));
  }
  return static_cast<std::size_t>(axis);
}

std::size_t GeneratorSet::ExceptionalIndex(std::size_t p) const {
  if (p >= lattice_->delta_size()) {
    throw Error(ErrorCode::kInvalidArgument, "point index out of range");
  }
  return static_cast<std::size_t>(lattice_->r()) + p;
}

std::size_t GeneratorSet::GammaIndex(std::size_t p, int axis) const {
  if (p >= lattice_->delta_size()) {
    throw Error(ErrorCode::kInvalidArgument, "point index out of range");
  }
  LineIndex(axis);
  const int own = lattice_->axis_of(p);
  if (own == axis) {
    throw Error(ErrorCode::kSameAxis, "gamma on the point's own axis");
  }
  return gamma_offset_[p] + static_cast<std::size_t>(axis < own ? axis : axis - 1);
}

std::size_t GeneratorSet::ExpectedCount(const Lattice& lattice) {
  std::size_t total = static_cast<std::size_t>(lattice.r()) + lattice.delta_size();
  for (int i = 0; i < lattice.r(); ++i) {
    total += lattice.delta_size() - lattice.axis_count(i);
  }
  return total;
}

nlohmann::json GeneratorSet::ToJson() const {
  nlohmann::json out = nlohmann::json::array();
  for (const Generator& g : gens_) {
    out.push_back({{"label", g.label}, {"class", lattice_->ToJson(g.cls)}});
  }
  return out;
}

std::int64_t Decomposition::Parts() const {
  std::int64_t total = 0;
  for (const Term& t : terms) total = CheckedAdd(total, t.multiplicity);
  return total;
}

CurveClass Decomposition::Sum(const GeneratorSet& gens) const {
  CurveClass out = gens.lattice().ZeroCurve();
  for (const Term& t : terms) out += gens[t.generator].cls.Scaled(t.multiplicity);
  return out;
}

nlohmann::json Decomposition::ToJson(const GeneratorSet& gens) const {
  nlohmann::json out = nlohmann::json::array();
  for (const Term& t : terms) {
    out.push_back({gens[t.generator].label, t.multiplicity});
  }
  return out;
}

std::int64_t PhiDegree(const Lattice& lattice, const CurveClass& c) {
  const std::int64_t big_n =
      1 + static_cast<std::int64_t>(lattice.delta_size());
  lattice::DivisorClass d = lattice.ZeroDivisor();
  for (auto& x : d.h) x = big_n;
  for (auto& x : d.m) x = -1;
  return lattice.Intersect(c, d);
}

SemigroupSearch::SemigroupSearch(const GeneratorSet& gens,
                                 std::int64_t cap_factor)
    : gens_(&gens),
      cap_(CheckedMul(cap_factor,
                      1 + static_cast<std::int64_t>(
                              gens.lattice().delta_size()))) {
  if (cap_factor < 1) {
    throw Error(ErrorCode::kInvalidArgument, "cap factor must be positive");
  }
}

void SemigroupSearch::CheckCap(const CurveClass& c) const {
  const std::int64_t phi = PhiDegree(gens_->lattice(), c);
  if (phi > cap_) {
    throw Error(ErrorCode::kCapExceeded,
                "phi degree " + std::to_string(phi) + " exceeds cap " +
                    std::to_string(cap_));
  }
}

void SemigroupSearch::ForEachDecomposition(
    const CurveClass& c,
    const std::function<bool(const Decomposition&)>& visit) const {
  const Lattice& lat = gens_->lattice();
  const std::int64_t phi = PhiDegree(lat, c);  // validates the shape
  if (phi < 0) return;
  CheckCap(c);
  const int r = lat.r();
  for (int i = 0; i < r; ++i) {
    if (c.l[i] < 0) return;
  }

  // Per axis: the generators of multidegree e_i, l~_i first.
  std::vector<std::vector<std::size_t>> slots(r);
  for (int i = 0; i < r; ++i) slots[i].push_back(gens_->LineIndex(i));
  for (std::size_t k = 0; k < gens_->size(); ++k) {
    const Generator& g = (*gens_)[k];
    if (g.kind == GeneratorKind::kGamma) slots[g.axis].push_back(k);
  }

  const std::size_t np = lat.delta_size();
  std::vector<std::int64_t> count(gens_->size(), 0);
  Coeffs acc(np, 0);
  bool stop = false;

  auto emit = [&]() {
    Decomposition d;
    for (std::size_t p = 0; p < np; ++p) {
      const std::int64_t g = CheckedSub(c.e[p], acc[p]);
      if (g < 0) return;
      count[gens_->ExceptionalIndex(p)] = g;
    }
    for (std::size_t k = 0; k < count.size(); ++k) {
      if (count[k] > 0) d.terms.push_back({k, count[k]});
    }
    for (std::size_t p = 0; p < np; ++p) count[gens_->ExceptionalIndex(p)] = 0;
    if (d.Sum(*gens_) != c) {
      throw std::logic_error("decomposition does not re-sum to its target");
    }
    if (!visit(d)) stop = true;
  };

  auto add = [&](std::size_t k, std::int64_t y) {
    const Coeffs& e = (*gens_)[k].cls.e;
    for (std::size_t p = 0; p < np; ++p) {
      if (e[p] != 0) acc[p] = CheckedAdd(acc[p], CheckedMul(y, e[p]));
    }
  };

  std::function<void(int, std::size_t, std::int64_t)> fill =
      [&](int axis, std::size_t slot, std::int64_t remaining) {
        if (stop) return;
        if (axis == r) {
          emit();
          return;
        }
        const auto& row = slots[axis];
        if (slot + 1 == row.size() || remaining == 0) {
          const std::size_t k = row[slot];
          count[k] = remaining;
          add(k, remaining);
          fill(axis + 1, 0, axis + 1 < r ? c.l[axis + 1] : 0);
          add(k, -remaining);
          count[k] = 0;
          return;
        }
        for (std::int64_t y = remaining; y >= 0 && !stop; --y) {
          const std::size_t k = row[slot];
          count[k] = y;
          add(k, y);
          fill(axis, slot + 1, remaining - y);
          add(k, -y);
          count[k] = 0;
        }
      };
  fill(0, 0, r > 0 ? c.l[0] : 0);
}

std::optional<Decomposition> SemigroupSearch::Member(const CurveClass& c) const {
  std::optional<Decomposition> found;
  ForEachDecomposition(c, [&found](const Decomposition& d) {
    found = d;
    return false;
  });
  return found;
}

std::vector<TwoPartSplit> SemigroupSearch::TwoPartDecompositions(
    const CurveClass& c, std::size_t max_splits) const {
  const Lattice& lat = gens_->lattice();
  std::map<std::pair<CurveClass, CurveClass>,
           std::pair<Decomposition, Decomposition>>
      found;
  bool member = false;
  ForEachDecomposition(c, [&](const Decomposition& d) {
    member = true;
    // Odometer over sub-multisets of d.
    std::vector<std::int64_t> pick(d.terms.size(), 0);
    while (true) {
      std::size_t t = 0;
      while (t < pick.size() && pick[t] == d.terms[t].multiplicity) {
        pick[t] = 0;
        ++t;
      }
      if (t == pick.size()) break;
      ++pick[t];

      Decomposition first;
      Decomposition second;
      for (std::size_t k = 0; k < pick.size(); ++k) {
        const auto& term = d.terms[k];
        if (pick[k] > 0) first.terms.push_back({term.generator, pick[k]});
        if (pick[k] < term.multiplicity) {
          second.terms.push_back(
              {term.generator, term.multiplicity - pick[k]});
        }
      }
      if (second.terms.empty()) continue;
      CurveClass a = first.Sum(*gens_);
      CurveClass b = lat.ZeroCurve();
      b += c;
      b -= a;
      if (b < a) {
        std::swap(a, b);
        std::swap(first, second);
      }
      found.try_emplace({std::move(a), std::move(b)}, std::move(first),
                        std::move(second));
      if (found.size() > max_splits) {
        throw Error(ErrorCode::kCapExceeded, "too many two-part splits");
      }
    }
    return true;
  });
  if (!member) {
    throw Error(ErrorCode::kNotEffective, "class is not in the semigroup");
  }
  std::vector<TwoPartSplit> out;
  out.reserve(found.size());
  for (auto& [classes, witnesses] : found) {
    out.push_back({classes.first, classes.second, witnesses.first,
                   witnesses.second});
  }
  return out;
}

bool SemigroupSearch::IsExtremal(const CurveClass& c) const {
  bool member = false;
  bool splits = false;
  ForEachDecomposition(c, [&](const Decomposition& d) {
    member = true;
    splits = d.Parts() != 1;
    return !splits;
  });
  if (!member) {
    throw Error(ErrorCode::kNotEffective, "class is not in the semigroup");
  }
  return !splits;
}

std::pair<CurveClass, CurveClass> Case3Sides(const Lattice& lattice,
                                             std::size_t q,
                                             const std::vector<std::int64_t>& a,
                                             std::int64_t eps_q) {
  if (q >= lattice.delta_size()) {
    throw Error(ErrorCode::kInvalidArgument, "point index out of range");
  }
  if (a.size() != static_cast<std::size_t>(lattice.r())) {
    throw Error(ErrorCode::kConfigMismatch, "multidegree length");
  }
  const int j = lattice.axis_of(q);
  if (a[j] != 0) {
    throw Error(ErrorCode::kInvalidArgument, "a must vanish on the axis of q");
  }
  Coeffs eps(lattice.delta_size(), 0);
  eps[q] = eps_q;
  CurveClass lhs = lattice.ExpandInBasis(a, eps);

  std::int64_t total = 0;
  CurveClass rhs = lattice.ZeroCurve();
  for (int i = 0; i < lattice.r(); ++i) {
    if (i == j) continue;
    total = CheckedAdd(total, a[i]);
    rhs += lattice.GammaTilde(q, i).Scaled(a[i]);
  }
  rhs += lattice.ExceptionalLine(q).Scaled(CheckedSub(total, eps_q));
  return {std::move(lhs), std::move(rhs)};
}

bool Case3IdentityCheck(const Lattice& lattice, std::size_t q,
                        const std::vector<std::int64_t>& a,
                        std::int64_t eps_q) {
  const auto [lhs, rhs] = Case3Sides(lattice, q, a, eps_q);
  return lhs == rhs;
}

ExtremalityRow ExtremalityRowFor(const SemigroupSearch& search, std::size_t k) {
  const GeneratorSet& gens = search.generators();
  const CurveClass& c = gens[k].cls;
  ExtremalityRow row;
  row.generator = k;
  row.extremal = search.IsExtremal(c);
  row.splits = search.TwoPartDecompositions(c).size();
  try {
    row.probe_splits =
        search
            .TwoPartDecompositions(c + gens[(k + 1) % gens.size()].cls,
                                   kProbeSplitLimit)
            .size();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kCapExceeded) throw;
  }
  return row;
}

std::vector<ExtremalityRow> ExtremalityTable(const SemigroupSearch& search) {
  const std::size_t count = search.generators().size();
  std::vector<ExtremalityRow> rows(count);
  std::string error;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < count; ++k) {
    try {
      rows[k] = ExtremalityRowFor(search, k);
    } catch (const std::exception& e) {
#pragma omp critical(blowup_extremality_error)
      if (error.empty()) error = e.what();
    }
  }
  if (!error.empty()) throw std::runtime_error(error);
  return rows;
}

ReportFragment VerifyCone(const fieldgeom::Config& config, int draws,
                          std::uint64_t seed, std::int64_t cap_factor) {
  const Lattice lat(config);
  const GeneratorSet gens(lat);
  const SemigroupSearch search(gens, cap_factor);
  const int r = lat.r();
  const std::size_t np = lat.delta_size();
  Draws rng(seed);
  ReportFragment out;

  {
    CheckRecord rec{"cone.generator_count", Anchor::kGeneratorSet};
    const std::size_t want = GeneratorSet::ExpectedCount(lat);
    std::size_t distinct = 0;
    {
      std::vector<CurveClass> classes;
      for (const Generator& g : gens.all()) classes.push_back(g.cls);
      std::sort(classes.begin(), classes.end());
      distinct = std::unique(classes.begin(), classes.end()) - classes.begin();
    }
    rec.computed = {{"count", gens.size()}, {"distinct", distinct}};
    rec.expected = {{"count", want}, {"distinct", want}};
    rec.status = gens.size() == want && distinct == want ? Status::kPass
                                                          : Status::kFail;
    out.checks.push_back(std::move(rec));
  }
  {
    CheckRecord rec{"cone.diamond_identity", Anchor::kDiamondIdentity};
    std::size_t mismatches = 0;
    int done = 0;
    for (int t = 0; t < draws && np > 0; ++t, ++done) {
      const auto q = static_cast<std::size_t>(
          rng.Uniform(0, static_cast<std::int64_t>(np) - 1));
      std::vector<std::int64_t> a(r);
      for (int i = 0; i < r; ++i) {
        a[i] = i == lat.axis_of(q) ? 0 : rng.Uniform(0, 20);
      }
      const std::int64_t eps_q = rng.Uniform(-20, 20);
      if (!Case3IdentityCheck(lat, q, a, eps_q)) ++mismatches;
    }
    rec.computed = {{"draws", done}, {"mismatches", mismatches}};
    rec.expected = {{"mismatches", 0}};
    rec.status = mismatches == 0 ? Status::kPass : Status::kFail;
    out.checks.push_back(std::move(rec));
  }
  {
    // Nonnegative (a, eps) with eps_p <= a_axis(p): the class is a member
    // and the search returns sum a_i l~_i + sum (a_axis(p) - eps_p) e_p.
    CheckRecord rec{"cone.spade_membership", Anchor::kSpadeIdentity};
    const int samples = std::min(draws, 200);
    std::size_t mismatches = 0;
    for (int t = 0; t < samples; ++t) {
      Coeffs a(r);
      for (auto& x : a) x = rng.Uniform(0, 2);
      Coeffs eps(np);
      for (std::size_t p = 0; p < np; ++p) {
        eps[p] = rng.Uniform(0, a[lat.axis_of(p)]);
      }
      Decomposition want;
      for (int i = 0; i < r; ++i) {
        if (a[i] > 0) want.terms.push_back({gens.LineIndex(i), a[i]});
      }
      for (std::size_t p = 0; p < np; ++p) {
        const std::int64_t mu = a[lat.axis_of(p)] - eps[p];
        if (mu > 0) want.terms.push_back({gens.ExceptionalIndex(p), mu});
      }
      const auto got = search.Member(lat.ExpandInBasis(a, eps));
      if (!got || *got != want) ++mismatches;
    }
    rec.computed = {{"draws", samples}, {"mismatches", mismatches}};
    rec.expected = {{"mismatches", 0}};
    rec.status = mismatches == 0 ? Status::kPass : Status::kFail;
    out.checks.push_back(std::move(rec));
  }
  {
    CheckRecord rec{"cone.extremality", Anchor::kExtremality};
    const auto rows = ExtremalityTable(search);
    std::size_t extremal = 0;
    nlohmann::json failing = nlohmann::json::array();
    for (const ExtremalityRow& row : rows) {
      if (row.extremal && row.splits == 0) {
        ++extremal;
      } else {
        failing.push_back(gens[row.generator].label);
      }
    }
    nlohmann::json probes = nlohmann::json::object();
    bool probes_ok = true;
    auto probe = [&](const std::string& name, const CurveClass& c) {
      const bool ext = search.IsExtremal(c);
      probes[name] = {{"extremal", ext},
                      {"splits", search.TwoPartDecompositions(c).size()}};
      probes_ok = probes_ok && !ext;
    };
    if (np > 0) {
      probe("l1+e_first", lat.Line(0) + lat.ExceptionalLine(0));
      probe("2e_first", lat.ExceptionalLine(0).Scaled(2));
    }
    if (r >= 2) probe("l1+l2", lat.Line(0) + lat.Line(1));
    rec.computed = {{"generators", gens.size()},
                    {"extremal", extremal},
                    {"not_extremal", failing},
                    {"probes", probes}};
    rec.expected = {{"generators", gens.size()}, {"extremal", gens.size()}};
    rec.status = extremal == gens.size() && probes_ok ? Status::kPass
                                                      : Status::kFail;
    out.checks.push_back(std::move(rec));
  }
  return out;
}

}  // namespace blowup::cone
