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

#include "blowup/lattice.h"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "blowup/checked.h"
#include "blowup/draws.h"
#include "blowup/error.h"

namespace blowup::lattice {

namespace {

// Exact rational with checked int64 parts, kept in lowest terms.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational Make(std::int64_t n, std::int64_t d) {
    if (d < 0) {
      n = CheckedSub(0, n);
      d = CheckedSub(0, d);
    }
    const std::int64_t g = std::gcd(n, d);
    return g > 1 ? Rational{n / g, d / g} : Rational{n, d};
  }
  Rational operator-(const Rational& o) const {
    return Make(CheckedSub(CheckedMul(num, o.den), CheckedMul(o.num, den)),
                CheckedMul(den, o.den));
  }
  Rational operator*(const Rational& o) const {
    return Make(CheckedMul(num, o.num), CheckedMul(den, o.den));
  }
  Rational operator/(const Rational& o) const {
    return Make(CheckedMul(num, o.den), CheckedMul(den, o.num));
  }
  bool IsZero() const { return num == 0; }
};

void AddInto(Coeffs& x, const Coeffs& y, std::int64_t sign) {
  for (std::size_t k = 0; k < x.size(); ++k) {
    x[k] = CheckedAdd(x[k], CheckedMul(sign, y[k]));
  }
}

}  // namespace

CurveClass& CurveClass::operator+=(const CurveClass& other) {
  if (l.size() != other.l.size() || e.size() != other.e.size()) {
    throw Error(ErrorCode::kConfigMismatch, "curve classes of different shape");
  }
  AddInto(l, other.l, 1);
  AddInto(e, other.e, 1);
  return *this;
}

CurveClass& CurveClass::operator-=(const CurveClass& other) {
  if (l.size() != other.l.size() || e.size() != other.e.size()) {
    throw Error(ErrorCode::kConfigMismatch, "curve classes of different shape");
  }
  AddInto(l, other.l, -1);
  AddInto(e, other.e, -1);
  return *this;
}

CurveClass CurveClass::operator+(const CurveClass& other) const {
  CurveClass out = *this;
  out += other;
  return out;
}

CurveClass CurveClass::operator-(const CurveClass& other) const {
  CurveClass out = *this;
  out -= other;
  return out;
}

CurveClass CurveClass::Scaled(std::int64_t k) const {
  CurveClass out = *this;
  for (auto& x : out.l) x = CheckedMul(x, k);
  for (auto& x : out.e) x = CheckedMul(x, k);
  return out;
}

bool CurveClass::IsZero() const {
  return std::all_of(l.begin(), l.end(), [](auto x) { return x == 0; }) &&
         std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
}

Lattice::Lattice(const fieldgeom::Config& config) : r_(config.r()) {
  for (const fieldgeom::DeltaPoint& p : config.delta()) {
    point_axes_.push_back(p.axis);
    point_labels_.push_back(p.Label());
  }
}

Lattice::Lattice(int r, std::vector<int> point_axes)
    : r_(r), point_axes_(std::move(point_axes)) {
  for (std::size_t k = 0; k < point_axes_.size(); ++k) {
    RequireAxis(point_axes_[k]);
    point_labels_.push_back("p" + std::to_string(k));
  }
}

std::size_t Lattice::axis_count(int axis) const {
  RequireAxis(axis);
  return static_cast<std::size_t>(
      std::count(point_axes_.begin(), point_axes_.end(), axis));
}

void Lattice::RequireAxis(int axis) const {
  if (axis < 0 || axis >= r_) {
    throw Error(ErrorCode::kAxisOutOfRange,
                "axis " + std::to_string(axis + 1) + " not in 1.." +
                    std::to_string(r_));
  }
}

void Lattice::RequireShape(const CurveClass& c) const {
  if (c.l.size() != static_cast<std::size_t>(r_) ||
      c.e.size() != point_axes_.size()) {
    throw Error(ErrorCode::kConfigMismatch, "curve class basis mismatch");
  }
}

void Lattice::RequireShape(const DivisorClass& d) const {
  if (d.h.size() != static_cast<std::size_t>(r_) ||
      d.m.size() != point_axes_.size()) {
    throw Error(ErrorCode::kConfigMismatch, "divisor class basis mismatch");
  }
}

CurveClass Lattice::ZeroCurve() const {
  return CurveClass{Coeffs(r_, 0), Coeffs(point_axes_.size(), 0)};
}

CurveClass Lattice::Line(int axis) const {
  RequireAxis(axis);
  CurveClass c = ZeroCurve();
  c.l[axis] = 1;
  return c;
}

CurveClass Lattice::ExceptionalLine(std::size_t p) const {
  CurveClass c = ZeroCurve();
  c.e.at(p) = 1;
  return c;
}

DivisorClass Lattice::ZeroDivisor() const {
  return DivisorClass{Coeffs(r_, 0), Coeffs(point_axes_.size(), 0)};
}

DivisorClass Lattice::PullbackH(int axis) const {
  RequireAxis(axis);
  DivisorClass d = ZeroDivisor();
  d.h[axis] = 1;
  return d;
}

DivisorClass Lattice::Exceptional(std::size_t p) const {
  DivisorClass d = ZeroDivisor();
  d.m.at(p) = 1;
  return d;
}

std::int64_t Lattice::Intersect(const CurveClass& c,
                                const DivisorClass& d) const {
  RequireShape(c);
  RequireShape(d);
  std::int64_t total = 0;
  // pi*H_j . l~_i = delta_ij; pi*H_j . e_p = 0.
  for (int i = 0; i < r_; ++i) total = CheckedAdd(total, CheckedMul(c.l[i], d.h[i]));
  for (std::size_t p = 0; p < point_axes_.size(); ++p) {
    // E_p . e_p = -1; E_p . l~_i = [p in Delta_i].
    total = CheckedSub(total, CheckedMul(c.e[p], d.m[p]));
    total = CheckedAdd(total, CheckedMul(c.l[point_axes_[p]], d.m[p]));
  }
  return total;
}

DivisorClass Lattice::StrictTransformH(int axis) const {
  DivisorClass d = PullbackH(axis);
  for (std::size_t p = 0; p < point_axes_.size(); ++p) {
    if (point_axes_[p] != axis) d.m[p] = -1;
  }
  return d;
}

DivisorClass Lattice::StrictTransformHp(std::size_t p) const {
  DivisorClass d = PullbackH(axis_of(p));
  d.m[p] = -1;
  return d;
}

CurveClass Lattice::GammaTilde(std::size_t p, int axis) const {
  RequireAxis(axis);
  if (axis_of(p) == axis) {
    throw Error(ErrorCode::kSameAxis, point_labels_[p] + " lies on axis " +
                                          std::to_string(axis + 1));
  }
  CurveClass c = Line(axis);
  for (std::size_t q = 0; q < point_axes_.size(); ++q) {
    if (point_axes_[q] == axis) c.e[q] = 1;
  }
  c.e[p] = -1;
  return c;
}

Coeffs Lattice::Pushforward(const CurveClass& c) const {
  RequireShape(c);
  Coeffs a(r_);
  for (int i = 0; i < r_; ++i) a[i] = Intersect(c, PullbackH(i));
  return a;
}

CurveClass Lattice::ExpandInBasis(std::span<const std::int64_t> a,
                                  std::span<const std::int64_t> eps) const {
  if (a.size() != static_cast<std::size_t>(r_) ||
      eps.size() != point_axes_.size()) {
    throw Error(ErrorCode::kConfigMismatch, "multidegree/multiplicity shape");
  }
  CurveClass c = ZeroCurve();
  for (int i = 0; i < r_; ++i) c.l[i] = a[i];
  for (std::size_t p = 0; p < point_axes_.size(); ++p) {
    c.e[p] = CheckedSub(a[point_axes_[p]], eps[p]);
  }
  return c;
}

DivisorClass Lattice::CanonicalPullback() const {
  DivisorClass d = ZeroDivisor();
  std::fill(d.h.begin(), d.h.end(), -2);
  return d;
}

std::int64_t Lattice::CanonicalPullbackCheck(int axis) const {
  return Intersect(Line(axis), CanonicalPullback());
}

DivisorClass Lattice::BlowupCanonicalClass() const {
  DivisorClass d = CanonicalPullback();
  std::fill(d.m.begin(), d.m.end(), r_ - 1);
  return d;
}

CurveClass Lattice::ClassFromIntersections(
    std::span<const std::int64_t> numbers) const {
  return PairingSolver(*this).Solve(numbers);
}

PairingSolver::PairingSolver(const Lattice& lattice)
    : r_(lattice.r()),
      dim_(static_cast<std::size_t>(lattice.r()) + lattice.delta_size()) {
  // Unknown x over the curve basis; equation k reads
  // sum_c x_c * table[c][k] = numbers[k]. Invert that system.
  const auto table = lattice.PairingTable();
  const std::size_t n = dim_;
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t c = 0; c < n; ++c) a[k][c] = Rational{table[c][k], 1};
    a[k][n + k] = Rational{1, 1};
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].IsZero()) ++pivot;
    if (pivot == n) {
      throw Error(ErrorCode::kInvalidArgument, "pairing table is singular");
    }
    std::swap(a[pivot], a[col]);
    const Rational lead = a[col][col];
    for (std::size_t k = 0; k < 2 * n; ++k) a[col][k] = a[col][k] / lead;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col].IsZero()) continue;
      const Rational factor = a[row][col];
      for (std::size_t k = 0; k < 2 * n; ++k) {
        if (!a[col][k].IsZero()) a[row][k] = a[row][k] - factor * a[col][k];
      }
    }
  }
  inverse_.assign(n, Coeffs(n));
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t k = 0; k < n; ++k) {
      const Rational x = a[row][n + k];
      if (x.den != 1) {
        throw Error(ErrorCode::kInvalidArgument, "pairing is not unimodular");
      }
      inverse_[row][k] = x.num;
    }
  }
}

CurveClass PairingSolver::Solve(std::span<const std::int64_t> numbers) const {
  if (numbers.size() != dim_) {
    throw Error(ErrorCode::kConfigMismatch, "intersection vector length");
  }
  CurveClass out{Coeffs(r_, 0), Coeffs(dim_ - r_, 0)};
  for (std::size_t row = 0; row < dim_; ++row) {
    std::int64_t x = 0;
    for (std::size_t k = 0; k < dim_; ++k) {
      if (inverse_[row][k] != 0) {
        x = CheckedAdd(x, CheckedMul(inverse_[row][k], numbers[k]));
      }
    }
    if (row < static_cast<std::size_t>(r_)) {
      out.l[row] = x;
    } else {
      out.e[row - r_] = x;
    }
  }
  return out;
}

std::vector<std::string> Lattice::CurveBasisLabels() const {
  std::vector<std::string> out;
  for (int i = 0; i < r_; ++i) out.push_back("l" + std::to_string(i + 1));
  for (const auto& p : point_labels_) out.push_back("e_" + p);
  return out;
}

std::vector<std::string> Lattice::DivisorBasisLabels() const {
  std::vector<std::string> out;
  for (int i = 0; i < r_; ++i) out.push_back("H" + std::to_string(i + 1));
  for (const auto& p : point_labels_) out.push_back("E_" + p);
  return out;
}

std::vector<Coeffs> Lattice::PairingTable() const {
  std::vector<CurveClass> curves;
  for (int i = 0; i < r_; ++i) curves.push_back(Line(i));
  for (std::size_t p = 0; p < delta_size(); ++p) {
    curves.push_back(ExceptionalLine(p));
  }
  std::vector<DivisorClass> divisors;
  for (int i = 0; i < r_; ++i) divisors.push_back(PullbackH(i));
  for (std::size_t p = 0; p < delta_size(); ++p) {
    divisors.push_back(Exceptional(p));
  }
  std::vector<Coeffs> table;
  for (const CurveClass& c : curves) {
    Coeffs row;
    for (const DivisorClass& d : divisors) row.push_back(Intersect(c, d));
    table.push_back(std::move(row));
  }
  return table;
}

std::string Lattice::PairingTableCsv() const {
  std::ostringstream os;
  os << "curve";
  for (const auto& label : DivisorBasisLabels()) os << ',' << label;
  os << '\n';
  const auto rows = CurveBasisLabels();
  const auto table = PairingTable();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    os << rows[k];
    for (std::int64_t x : table[k]) os << ',' << x;
    os << '\n';
  }
  return os.str();
}

nlohmann::json Lattice::ToJson(const CurveClass& c) const {
  RequireShape(c);
  nlohmann::json j = c.l;
  for (std::int64_t x : c.e) j.push_back(x);
  return j;
}

nlohmann::json Lattice::ToJson(const DivisorClass& d) const {
  RequireShape(d);
  nlohmann::json j = d.h;
  for (std::int64_t x : d.m) j.push_back(x);
  return j;
}

CurveClass Lattice::CurveFromJson(const nlohmann::json& j) const {
  if (!j.is_array() || j.size() != r_ + point_axes_.size()) {
    throw Error(ErrorCode::kParse, "curve class array has wrong length");
  }
  const auto flat = j.get<Coeffs>();
  return CurveClass{Coeffs(flat.begin(), flat.begin() + r_),
                    Coeffs(flat.begin() + r_, flat.end())};
}

DivisorClass Lattice::DivisorFromJson(const nlohmann::json& j) const {
  if (!j.is_array() || j.size() != r_ + point_axes_.size()) {
    throw Error(ErrorCode::kParse, "divisor class array has wrong length");
  }
  const auto flat = j.get<Coeffs>();
  return DivisorClass{Coeffs(flat.begin(), flat.begin() + r_),
                      Coeffs(flat.begin() + r_, flat.end())};
}

ReportFragment VerifyIdentities(const fieldgeom::Config& config, int draws,
                                std::uint64_t seed) {
  const Lattice lat(config);
  const int r = config.r();
  const std::size_t np = lat.delta_size();
  ReportFragment out;

  {
    CheckRecord rec{"lattice.canonical_degree", Anchor::kCanonicalDegree};
    nlohmann::json got = nlohmann::json::array();
    bool ok = true;
    for (int i = 0; i < r; ++i) {
      const std::int64_t v = lat.CanonicalPullbackCheck(i);
      got.push_back(v);
      ok = ok && v == -2;
    }
    rec.computed = got;
    rec.expected = std::vector<int>(r, -2);
    rec.status = ok ? Status::kPass : Status::kFail;
    out.checks.push_back(std::move(rec));
  }
  {
    // H~_i . e_p = 1 off axis i, 0 on it; compared with the expansion.
    CheckRecord rec{"lattice.strict_transform_hyperplane",
                    Anchor::kStrictHyperplane};
    bool ok = true;
    std::size_t mismatches = 0;
    for (int i = 0; i < r; ++i) {
      const DivisorClass h = lat.StrictTransformH(i);
      ok = ok && h.h == lat.PullbackH(i).h;
      for (std::size_t p = 0; p < np; ++p) {
        const std::int64_t want = lat.axis_of(p) == i ? 0 : 1;
        if (lat.Intersect(lat.ExceptionalLine(p), h) != want ||
            h.m[p] != -want) {
          ok = false;
          ++mismatches;
        }
      }
    }
    rec.computed = {{"mismatches", mismatches}};
    rec.expected = {{"mismatches", 0}};
    rec.status = ok ? Status::kPass : Status::kFail;
    out.checks.push_back(std::move(rec));
  }
  {
    CheckRecord rec{"lattice.line_exceptional", Anchor::kLineExceptional};
    std::size_t mismatches = 0;
    for (int i = 0; i < r; ++i) {
      for (std::size_t p = 0; p < np; ++p) {
        const std::int64_t want = lat.axis_of(p) == i ? 1 : 0;
        if (lat.Intersect(lat.Line(i), lat.Exceptional(p)) != want) {
          ++mismatches;
        }
      }
    }
    rec.computed = {{"mismatches", mismatches}};
    rec.expected = {{"mismatches", 0}};
    rec.status = mismatches == 0 ? Status::kPass : Status::kFail;
    out.checks.push_back(std::move(rec));
  }
  {
    CheckRecord diag{"lattice.hyperplane_line_diagonal",
                     Anchor::kHyperplaneLineDiagonal};
    CheckRecord off{"lattice.hyperplane_line_offdiagonal",
                    Anchor::kHyperplaneLineOffDiagonal};
    nlohmann::json diag_got = nlohmann::json::array();
    nlohmann::json off_got = nlohmann::json::array();
    nlohmann::json off_want = nlohmann::json::array();
    bool diag_ok = true;
    bool off_ok = true;
    for (int i = 0; i < r; ++i) {
      const DivisorClass h = lat.StrictTransformH(i);
      const std::int64_t d = lat.Intersect(lat.Line(i), h);
      diag_got.push_back(d);
      diag_ok = diag_ok && d == 1;
      nlohmann::json row = nlohmann::json::array();
      nlohmann::json want_row = nlohmann::json::array();
      for (int j = 0; j < r; ++j) {
        if (j == i) {
          row.push_back(nullptr);
          want_row.push_back(nullptr);
          continue;
        }
        const std::int64_t v = lat.Intersect(lat.Line(j), h);
        const std::int64_t want =
            -static_cast<std::int64_t>(config.n()) * config.s()[j];
        row.push_back(v);
        want_row.push_back(want);
        off_ok = off_ok && v == want;
      }
      off_got.push_back(row);
      off_want.push_back(want_row);
    }
    diag.computed = diag_got;
    diag.expected = std::vector<int>(r, 1);
    diag.status = diag_ok ? Status::kPass : Status::kFail;
    off.computed = off_got;
    off.expected = off_want;
    off.status = off_ok ? Status::kPass : Status::kFail;
    out.checks.push_back(std::move(diag));
    out.checks.push_back(std::move(off));
  }
  {
    CheckRecord rec{"lattice.gamma_class", Anchor::kGammaClass};
    std::size_t count = 0;
    std::size_t mismatches = 0;
    for (std::size_t p = 0; p < np; ++p) {
      for (int i = 0; i < r; ++i) {
        if (lat.axis_of(p) == i) continue;
        ++count;
        const CurveClass g = lat.GammaTilde(p, i);
        bool ok = lat.Pushforward(g) == lat.Pushforward(lat.Line(i));
        for (std::size_t q = 0; q < np; ++q) {
          ok = ok && lat.Intersect(g, lat.Exceptional(q)) == (q == p ? 1 : 0);
        }
        if (!ok) ++mismatches;
      }
    }
    rec.computed = {{"pairs", count}, {"mismatches", mismatches}};
    rec.expected = {{"mismatches", 0}};
    rec.status = mismatches == 0 ? Status::kPass : Status::kFail;
    out.checks.push_back(std::move(rec));
  }
  {
    CheckRecord rec{"lattice.spade_identity", Anchor::kSpadeIdentity};
    Draws draws_rng(seed);
    const PairingSolver solver(lat);
    std::size_t mismatches = 0;
    for (int t = 0; t < draws; ++t) {
      Coeffs a(r);
      Coeffs eps(np);
      for (auto& x : a) x = draws_rng.Uniform(-20, 20);
      for (auto& x : eps) x = draws_rng.Uniform(-20, 20);
      const CurveClass lhs = lat.ExpandInBasis(a, eps);
      Coeffs numbers = a;
      numbers.insert(numbers.end(), eps.begin(), eps.end());
      if (lhs != solver.Solve(numbers)) ++mismatches;
    }
    rec.computed = {{"draws", draws}, {"mismatches", mismatches}};
    rec.expected = {{"mismatches", 0}};
    rec.status = mismatches == 0 ? Status::kPass : Status::kFail;
    out.checks.push_back(std::move(rec));
  }
  return out;
}

}  // namespace blowup::lattice
