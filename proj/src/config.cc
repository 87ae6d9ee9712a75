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

#include "blowup/config.h"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

#include "blowup/draws.h"
#include "blowup/error.h"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace blowup::fieldgeom {

namespace {

using Problem = std::pair<ErrorCode, std::string>;

std::string Str(std::int64_t x) { return std::to_string(x); }

// Smallest residue in the mu_n-orbit of z.
std::uint32_t OrbitRep(const FieldElement& z, const FieldElement& zeta, int n) {
  std::uint32_t best = z.value();
  FieldElement w = z;
  for (int k = 1; k < n; ++k) {
    w = w * zeta;
    best = std::min(best, w.value());
  }
  return best;
}

// Problems with n, q and base that make Delta impossible to build.
std::vector<Problem> FieldProblems(const ConfigParams& p) {
  std::vector<Problem> out;
  if (p.n < 2) {
    out.emplace_back(ErrorCode::kInvalidArgument, "n = " + Str(p.n) + " < 2");
    return out;
  }
  if (!IsPrime(p.q) || p.q > kMaxModulus) {
    out.emplace_back(ErrorCode::kNotPrime, "q = " + Str(p.q) + " is not prime");
    return out;
  }
  if ((p.q - 1) % p.n != 0) {
    out.emplace_back(ErrorCode::kNDoesNotDivide,
                     "n = " + Str(p.n) + " does not divide q - 1 = " +
                         Str(p.q - 1));
    return out;
  }
  const std::int64_t orbits = (p.q - 1) / p.n;
  for (std::size_t i = 0; i < p.s.size(); ++i) {
    if (p.s[i] > orbits) {
      out.emplace_back(ErrorCode::kTooSmallField,
                       "axis " + Str(i + 1) + " needs " + Str(p.s[i]) +
                           " mu_n-orbits but F_" + Str(p.q) + "^* has " +
                           Str(orbits));
    }
  }
  if (!p.base) return out;
  const auto& base = *p.base;
  if (base.size() != p.s.size()) {
    out.emplace_back(ErrorCode::kInvalidArgument,
                     "base has " + Str(base.size()) + " axes, expected " +
                         Str(p.s.size()));
    return out;
  }
  PrimeField field(p.q);
  const FieldElement zeta = PrimitiveNthRoot(p.q, p.n);
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (base[i].size() != static_cast<std::size_t>(std::max(p.s[i], 0))) {
      out.emplace_back(ErrorCode::kInvalidArgument,
                       "axis " + Str(i + 1) + " has " + Str(base[i].size()) +
                           " base coordinates, expected s_" + Str(i + 1) +
                           " = " + Str(p.s[i]));
      continue;
    }
    std::set<std::uint32_t> reps;
    for (std::int64_t b : base[i]) {
      const FieldElement z = field(b);
      if (z.is_zero()) {
        out.emplace_back(ErrorCode::kZeroBase,
                         "axis " + Str(i + 1) + " has base coordinate 0");
        continue;
      }
      if (!reps.insert(OrbitRep(z, zeta, p.n)).second) {
        out.emplace_back(ErrorCode::kOrbitCollision,
                         "axis " + Str(i + 1) + ": base coordinate " +
                             Str(z.value()) +
                             " lies in an orbit already used");
      }
    }
  }
  return out;
}

// Shape preconditions on n, r, s.
std::vector<Problem> ShapeProblems(const ConfigParams& p) {
  std::vector<Problem> out;
  if (p.r < 2) {
    out.emplace_back(ErrorCode::kInvalidArgument, "r = " + Str(p.r) + " < 2");
  }
  if (static_cast<int>(p.s.size()) != p.r) {
    out.emplace_back(ErrorCode::kInvalidArgument,
                     "s has " + Str(p.s.size()) + " entries, expected r = " +
                         Str(p.r));
  }
  for (std::size_t i = 0; i < p.s.size(); ++i) {
    if (p.s[i] < 1) {
      out.emplace_back(ErrorCode::kInvalidArgument,
                       "s_" + Str(i + 1) + " = " + Str(p.s[i]) + " < 1");
    }
  }
  std::set<int> distinct(p.s.begin(), p.s.end());
  if (distinct.size() != p.s.size()) {
    out.emplace_back(ErrorCode::kInvalidArgument, "s_i not distinct");
  }
  if (p.r == 2) {
    for (std::size_t i = 0; i < p.s.size(); ++i) {
      if (static_cast<std::int64_t>(p.n) * p.s[i] < 3) {
        out.emplace_back(ErrorCode::kInvalidArgument,
                         "n*s_" + Str(i + 1) + " = " + Str(p.n * p.s[i]) +
                             " < 3");
      }
    }
  }
  return out;
}

std::vector<Problem> AllProblems(const ConfigParams& p) {
  std::vector<Problem> out = ShapeProblems(p);
  for (Problem& x : FieldProblems(p)) out.push_back(std::move(x));
  return out;
}

void ThrowFirst(const std::vector<Problem>& problems) {
  if (!problems.empty()) {
    throw Error(problems.front().first, problems.front().second);
  }
}

}  // namespace

std::string DeltaPoint::Label() const {
  std::ostringstream os;
  os << "p(" << axis + 1 << ',' << orbit + 1 << ',' << torsion << ')';
  return os.str();
}

ConfigParams ParamsFromJson(const nlohmann::json& j) {
  try {
    ConfigParams p;
    p.n = j.at("n").get<int>();
    p.r = j.at("r").get<int>();
    p.s = j.at("s").get<std::vector<int>>();
    p.q = j.at("q").get<std::int64_t>();
    if (j.contains("seed") && !j.at("seed").is_null()) {
      p.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("base") && !j.at("base").is_null()) {
      p.base = j.at("base").get<std::vector<std::vector<std::int64_t>>>();
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("config: ") + e.what());
  }
}

nlohmann::json ParamsToJson(const ConfigParams& p) {
  nlohmann::json j;
  j["n"] = p.n;
  j["r"] = p.r;
  j["s"] = p.s;
  j["q"] = p.q;
  if (p.seed) j["seed"] = *p.seed;
  if (p.base) j["base"] = *p.base;
  return j;
}

std::vector<std::string> StructuralProblems(const ConfigParams& params) {
  std::vector<std::string> out;
  for (const Problem& p : AllProblems(params)) out.push_back(p.second);
  return out;
}

std::vector<DeltaPoint> BuildDelta(
    const FieldElement& zeta, int n,
    const std::vector<std::vector<FieldElement>>& base) {
  std::vector<DeltaPoint> delta;
  for (std::size_t i = 0; i < base.size(); ++i) {
    std::set<std::uint32_t> reps;
    for (std::size_t o = 0; o < base[i].size(); ++o) {
      const FieldElement& b = base[i][o];
      if (b.is_zero()) {
        throw Error(ErrorCode::kZeroBase,
                    "axis " + Str(i + 1) + " orbit " + Str(o + 1));
      }
      if (!reps.insert(OrbitRep(b, zeta, n)).second) {
        throw Error(ErrorCode::kOrbitCollision,
                    "axis " + Str(i + 1) + ": base coordinate " +
                        Str(b.value()) + " repeats an orbit");
      }
      FieldElement z = b;
      for (int t = 0; t < n; ++t) {
        delta.push_back(DeltaPoint{static_cast<int>(i), static_cast<int>(o), t,
                                   ProjPoint::Affine(z)});
        z = z * zeta;
      }
    }
  }
  return delta;
}

Config::Config(const ConfigParams& params, bool checked)
    : n_(params.n),
      r_(params.r),
      s_(params.s),
      field_(params.q),
      zeta_(PrimitiveNthRoot(params.q, params.n)),
      seed_(params.seed) {
  if (!params.base) {
    throw Error(ErrorCode::kInvalidArgument, "config has no base coordinates");
  }
  if (checked) {
    ThrowFirst(AllProblems(params));
  } else {
    if (params.base->size() != s_.size() ||
        static_cast<int>(s_.size()) != r_) {
      throw Error(ErrorCode::kInvalidArgument, "base/s/r sizes disagree");
    }
    for (std::size_t i = 0; i < s_.size(); ++i) {
      if (s_[i] < 0 ||
          (*params.base)[i].size() != static_cast<std::size_t>(s_[i])) {
        throw Error(ErrorCode::kInvalidArgument, "base/s sizes disagree");
      }
    }
  }
  for (const auto& axis : *params.base) {
    std::vector<FieldElement> row;
    for (std::int64_t b : axis) row.push_back(field_(b));
    base_.push_back(std::move(row));
  }
  delta_ = BuildDelta(zeta_, n_, base_);
  offsets_.assign(r_ + 1, 0);
  for (const DeltaPoint& p : delta_) ++offsets_[p.axis + 1];
  for (int i = 0; i < r_; ++i) offsets_[i + 1] += offsets_[i];
}

Config Config::Create(const ConfigParams& params) {
  return Config(params, true);
}

Config Config::Unchecked(const ConfigParams& params) {
  return Config(params, false);
}

std::size_t Config::IndexOf(int axis, int orbit, int torsion) const {
  if (axis < 0 || axis >= r_ || orbit < 0 || orbit >= s_[axis] ||
      torsion < 0 || torsion >= n_) {
    throw Error(ErrorCode::kAxisOutOfRange, "Delta index out of range");
  }
  return axis_begin(axis) + static_cast<std::size_t>(orbit) * n_ + torsion;
}

std::optional<std::size_t> Config::Find(int axis,
                                        const ProjPoint& coord) const {
  for (std::size_t k = axis_begin(axis); k < axis_end(axis); ++k) {
    if (delta_[k].coord == coord) return k;
  }
  return std::nullopt;
}

ConfigParams Config::params() const {
  ConfigParams p;
  p.n = n_;
  p.r = r_;
  p.s = s_;
  p.q = q();
  p.seed = seed_;
  std::vector<std::vector<std::int64_t>> base;
  for (const auto& axis : base_) {
    std::vector<std::int64_t> row;
    for (const FieldElement& b : axis) row.push_back(b.value());
    base.push_back(std::move(row));
  }
  p.base = std::move(base);
  return p;
}

nlohmann::json Config::ToJson() const {
  nlohmann::json j = ParamsToJson(params());
  j["zeta"] = zeta_.value();
  return j;
}

DeltaPoint GAction(const Config& config, std::span<const int> g,
                   const DeltaPoint& p) {
  if (static_cast<int>(g.size()) != config.r()) {
    throw Error(ErrorCode::kInvalidArgument, "group element has wrong length");
  }
  const int n = config.n();
  const int t = ((p.torsion + g[p.axis]) % n + n) % n;
  return config.delta()[config.IndexOf(p.axis, p.orbit, t)];
}

std::vector<std::size_t> GActionPermutation(const Config& config,
                                            std::span<const int> g) {
  std::vector<std::size_t> perm;
  perm.reserve(config.delta().size());
  for (const DeltaPoint& p : config.delta()) {
    const DeltaPoint image = GAction(config, g, p);
    perm.push_back(config.IndexOf(image.axis, image.orbit, image.torsion));
  }
  return perm;
}

std::vector<ProjPoint> AxisCoordinates(const Config& config, int axis) {
  if (axis < 0 || axis >= config.r()) {
    throw Error(ErrorCode::kAxisOutOfRange, "axis " + Str(axis + 1));
  }
  std::vector<ProjPoint> out;
  for (std::size_t k = config.axis_begin(axis); k < config.axis_end(axis); ++k) {
    out.push_back(config.delta()[k].coord);
  }
  return out;
}

std::vector<MoebiusMap> StabilizerOfPointSet(
    const PrimeField& field, std::span<const ProjPoint> points) {
  if (points.size() < 2) {
    throw Error(ErrorCode::kTooFewPoints,
                "need at least two points besides [0:1]");
  }
  const ProjPoint fixed = ProjPoint::ZeroOne(field);
  std::vector<char> member(field.modulus() + 1, 0);
  for (const ProjPoint& p : points) member[p.key()] = 1;

  const std::array<ProjPoint, 3> src = {fixed, points[0], points[1]};
  std::set<MoebiusMap> found;
  for (const ProjPoint& a : points) {
    for (const ProjPoint& b : points) {
      if (a == b) continue;
      const std::array<ProjPoint, 3> dst = {fixed, a, b};
      const MoebiusMap m = MoebiusMap::FromThreePoints(src, dst);
      bool stable = true;
      for (const ProjPoint& p : points) {
        if (!member[m.Apply(p).key()]) {
          stable = false;
          break;
        }
      }
      if (stable) found.insert(m);
    }
  }
  return {found.begin(), found.end()};
}

std::vector<MoebiusMap> StabilizerOfAxis(const Config& config, int axis) {
  const std::vector<ProjPoint> coords = AxisCoordinates(config, axis);
  return StabilizerOfPointSet(config.field(), coords);
}

std::vector<MoebiusMap> EnumerateStabilizerPgl2(
    const PrimeField& field, std::span<const ProjPoint> points) {
  const std::int64_t q = field.modulus();
  std::vector<char> member(q + 1, 0);
  for (const ProjPoint& p : points) member[p.key()] = 1;
  const ProjPoint fixed = ProjPoint::ZeroOne(field);

  // Canonical representatives: [[1,b],[c,d]] (q^3 index slots) followed by
  // [[0,1],[c,d]] (q^2 slots).
  const std::int64_t total = q * q * q + q * q;
  std::vector<MoebiusMap> found;
#pragma omp parallel
  {
    std::vector<MoebiusMap> local;
#pragma omp for schedule(static)
    for (std::int64_t t = 0; t < total; ++t) {
      std::int64_t a, b, c, d;
      if (t < q * q * q) {
        a = 1;
        b = t / (q * q);
        c = (t / q) % q;
        d = t % q;
      } else {
        const std::int64_t u = t - q * q * q;
        a = 0;
        b = 1;
        c = u / q;
        d = u % q;
      }
      if ((a * d - b * c) % q == 0) continue;
      const MoebiusMap m(field(a), field(b), field(c), field(d));
      if (m.Apply(fixed) != fixed) continue;
      bool stable = true;
      for (const ProjPoint& p : points) {
        if (!member[m.Apply(p).key()]) {
          stable = false;
          break;
        }
      }
      if (stable) local.push_back(m);
    }
#pragma omp critical
    found.insert(found.end(), local.begin(), local.end());
  }
  std::sort(found.begin(), found.end());
  return found;
}

ValidationResult ValidateConfig(const ConfigParams& params) {
  ValidationResult result;
  const std::vector<std::string> problems = StructuralProblems(params);
  result.reasons = problems;

  CheckRecord structure{"config.structure", Anchor::kConfigStructure};
  structure.computed = problems;
  structure.expected = nlohmann::json::array();
  if (!params.base) {
    result.reasons.push_back("no base coordinates");
  }
  result.structural_ok = result.reasons.empty();
  structure.status = result.structural_ok ? Status::kPass : Status::kFail;
  structure.note = result.structural_ok ? "VALID structure" : "INVALID";
  result.fragment.checks.push_back(std::move(structure));
  if (!result.structural_ok) return result;

  Config config = Config::Create(params);
  CheckRecord generic{"config.genericity", Anchor::kGenericity};
  nlohmann::json orders = nlohmann::json::array();
  result.generic = true;
  std::set<MoebiusMap> scalings;
  for (int k = 0; k < config.n(); ++k) {
    scalings.insert(MoebiusMap::Scaling(config.zeta().pow(k)));
  }
  for (int i = 0; i < config.r(); ++i) {
    const std::vector<MoebiusMap> stab = StabilizerOfAxis(config, i);
    orders.push_back(stab.size());
    const std::set<MoebiusMap> got(stab.begin(), stab.end());
    if (got != scalings) {
      result.generic = false;
      std::string msg = "stabilizer of axis " + Str(i + 1) + " has order " +
                        Str(stab.size()) + " != " + Str(config.n());
      for (const MoebiusMap& m : stab) {
        if (!scalings.count(m)) {
          msg += "; extra map " + m.ToString();
          break;
        }
      }
      result.reasons.push_back(msg);
    }
  }
  generic.computed = orders;
  generic.expected = std::vector<int>(config.r(), config.n());
  generic.status = result.generic ? Status::kPass : Status::kFail;
  generic.note = result.generic ? "VALID" : "INVALID: not generic";
  result.fragment.checks.push_back(std::move(generic));
  result.config = std::move(config);
  return result;
}

Config GenerateConfig(int n, int r, const std::vector<int>& s, std::int64_t q,
                      std::uint64_t seed, int max_retries) {
  ConfigParams params;
  params.n = n;
  params.r = r;
  params.s = s;
  params.q = q;
  params.seed = seed;
  std::vector<Problem> problems = ShapeProblems(params);
  for (Problem& p : FieldProblems(params)) problems.push_back(std::move(p));
  for (const Problem& p : problems) {
    if (p.first == ErrorCode::kTooSmallField) {
      throw Error(p.first, p.second);
    }
  }
  ThrowFirst(problems);

  PrimeField field(q);
  const FieldElement zeta = PrimitiveNthRoot(q, n);
  Draws engine(seed);
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    std::vector<std::vector<std::int64_t>> base(r);
    for (int i = 0; i < r; ++i) {
      std::set<std::uint32_t> used;
      while (static_cast<int>(base[i].size()) < s[i]) {
        const std::int64_t z = engine.Uniform(1, q - 1);
        if (used.insert(OrbitRep(field(z), zeta, n)).second) {
          base[i].push_back(z);
        }
      }
    }
    params.base = base;
    Config config = Config::Create(params);
    bool generic = true;
    for (int i = 0; i < r && generic; ++i) {
      generic = StabilizerOfAxis(config, i).size() ==
                static_cast<std::size_t>(n);
    }
    if (generic) return config;
  }
  throw Error(ErrorCode::kExhaustedRetries,
              "no generic configuration after " + Str(max_retries) + " draws");
}

Config ResolveConfig(const ConfigParams& params) {
  if (params.base) return Config::Create(params);
  return GenerateConfig(params.n, params.r, params.s, params.q,
                        params.seed.value_or(0));
}

}  // namespace blowup::fieldgeom
