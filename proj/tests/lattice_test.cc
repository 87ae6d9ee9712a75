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

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "blowup/error.h"
#include "gtest/gtest.h"
#include "test_configs.h"

namespace blowup::lattice {
namespace {

using testing::C0;
using testing::C1AtQ13;
using testing::ExpectError;

// Pairing entries written out from the intersection rules, row by row over
// the curve basis, column by column over the divisor basis.
std::vector<Coeffs> ExpectedPairing(const Lattice& lat) {
  const std::size_t r = lat.r();
  const std::size_t d = lat.delta_size();
  std::vector<Coeffs> table(r + d, Coeffs(r + d, 0));
  for (std::size_t i = 0; i < r; ++i) {
    table[i][i] = 1;
    for (std::size_t p = 0; p < d; ++p) {
      table[i][r + p] = lat.axis_of(p) == static_cast<int>(i) ? 1 : 0;
    }
  }
  for (std::size_t p = 0; p < d; ++p) table[r + p][r + p] = -1;
  return table;
}

// Exact determinant by fraction-free Bareiss elimination.
std::int64_t Determinant(std::vector<Coeffs> m) {
  const std::size_t n = m.size();
  std::int64_t sign = 1;
  std::int64_t prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

std::vector<std::int64_t> Intersections(const Lattice& lat, const CurveClass& c) {
  std::vector<std::int64_t> out;
  for (int i = 0; i < lat.r(); ++i) out.push_back(lat.Intersect(c, lat.PullbackH(i)));
  for (std::size_t p = 0; p < lat.delta_size(); ++p) {
    out.push_back(lat.Intersect(c, lat.Exceptional(p)));
  }
  return out;
}

TEST(LatticeTest, IntersectExamples) {
  const fieldgeom::Config c0 = C0();
  const Lattice lat(c0);
  for (std::size_t p = 0; p < lat.delta_size(); ++p) {
    EXPECT_EQ(lat.Intersect(lat.ExceptionalLine(p), lat.Exceptional(p)), -1);
  }
  EXPECT_EQ(lat.Intersect(lat.Line(0), lat.StrictTransformH(0)), 1);
  EXPECT_EQ(lat.Intersect(lat.Line(1), lat.StrictTransformH(0)), -6);
  EXPECT_EQ(lat.Intersect(lat.Line(0), lat.StrictTransformH(1)), -4);
  EXPECT_EQ(lat.Intersect(lat.ZeroCurve(), lat.StrictTransformH(1)), 0);
}

TEST(LatticeTest, StrictTransformOfHyperplane) {
  const Lattice lat(C0());
  const DivisorClass h1 = lat.StrictTransformH(0);
  EXPECT_EQ(h1.h, (Coeffs{1, 0}));
  EXPECT_EQ(h1.m, (Coeffs{0, 0, 0, 0, -1, -1, -1, -1, -1, -1}));

  const Lattice empty_second(2, {0, 0, 0});
  EXPECT_EQ(empty_second.StrictTransformH(0), empty_second.PullbackH(0));
}

TEST(LatticeTest, GammaTildeIntersections) {
  const fieldgeom::Config c1 = C1AtQ13();
  const Lattice lat(c1);
  for (std::size_t p = 0; p < lat.delta_size(); ++p) {
    for (int i = 0; i < lat.r(); ++i) {
      if (lat.axis_of(p) == i) {
        ExpectError([&] { lat.GammaTilde(p, i); }, ErrorCode::kSameAxis);
        continue;
      }
      const CurveClass g = lat.GammaTilde(p, i);
      EXPECT_EQ(lat.Intersect(g, lat.Exceptional(p)), 1);
      for (std::size_t q = 0; q < lat.delta_size(); ++q) {
        if (q != p && lat.axis_of(q) != i) {
          EXPECT_EQ(lat.Intersect(g, lat.Exceptional(q)), 0);
        }
      }
      Coeffs unit(lat.r(), 0);
      unit[i] = 1;
      EXPECT_EQ(lat.Pushforward(g), unit);
    }
  }
}

TEST(LatticeTest, PushforwardExamples) {
  const Lattice lat(C0());
  EXPECT_EQ(lat.Pushforward(lat.Line(1)), (Coeffs{0, 1}));
  EXPECT_EQ(lat.Pushforward(lat.ExceptionalLine(3)), (Coeffs{0, 0}));
  const CurveClass c =
      lat.Line(0) + lat.Line(1).Scaled(2) - lat.ExceptionalLine(5).Scaled(5);
  EXPECT_EQ(lat.Pushforward(c), (Coeffs{1, 2}));
}

TEST(LatticeTest, ExpandInBasisExamples) {
  const Lattice lat(C0());
  const Coeffs zero_eps(10, 0);
  EXPECT_TRUE(lat.ExpandInBasis(Coeffs{0, 0}, zero_eps).IsZero());

  Coeffs eps(10, 0);
  eps[2] = 1;
  CurveClass expected = lat.Line(0);
  for (std::size_t q : {0u, 1u, 3u}) expected += lat.ExceptionalLine(q);
  EXPECT_EQ(lat.ExpandInBasis(Coeffs{1, 0}, eps), expected);
}

TEST(LatticeTest, CanonicalPullback) {
  const Lattice lat(C1AtQ13());
  for (int i = 0; i < lat.r(); ++i) EXPECT_EQ(lat.CanonicalPullbackCheck(i), -2);
}

TEST(LatticeTest, PairingTableIsUnimodularAndTriangular) {
  for (const Lattice& lat : {Lattice(C0()), Lattice(C1AtQ13()), Lattice(3, {0, 2, 2, 1})}) {
    const auto table = lat.PairingTable();
    EXPECT_EQ(table, ExpectedPairing(lat));
    const std::int64_t sign = lat.delta_size() % 2 == 0 ? 1 : -1;
    EXPECT_EQ(Determinant(table), sign);
  }
}

TEST(LatticeTest, ClassFromIntersectionsInvertsPairing) {
  const Lattice lat(C1AtQ13());
  const PairingSolver solver(lat);
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::int64_t> coeff(-50, 50);
  for (int trial = 0; trial < 200; ++trial) {
    CurveClass c = lat.ZeroCurve();
    for (auto& x : c.l) x = coeff(rng);
    for (auto& x : c.e) x = coeff(rng);
    const auto numbers = Intersections(lat, c);
    EXPECT_EQ(solver.Solve(numbers), c);
    EXPECT_EQ(lat.ClassFromIntersections(numbers), c);
  }
}

TEST(LatticeTest, IntersectionIsBilinear) {
  const Lattice lat(C0());
  std::mt19937 rng(11);
  std::uniform_int_distribution<std::int64_t> coeff(-9, 9);
  auto random_curve = [&] {
    CurveClass c = lat.ZeroCurve();
    for (auto& x : c.l) x = coeff(rng);
    for (auto& x : c.e) x = coeff(rng);
    return c;
  };
  const DivisorClass d = lat.StrictTransformH(1);
  for (int trial = 0; trial < 100; ++trial) {
    const CurveClass a = random_curve();
    const CurveClass b = random_curve();
    EXPECT_EQ(lat.Intersect(a + b.Scaled(3), d),
              lat.Intersect(a, d) + 3 * lat.Intersect(b, d));
  }
}

TEST(LatticeTest, ShapeAndOverflowErrors) {
  const Lattice c0(C0());
  const Lattice other(2, {0, 1});
  ExpectError([&] { c0.Intersect(other.Line(0), c0.PullbackH(0)); },
              ErrorCode::kConfigMismatch);
  ExpectError([&] { c0.Line(2); }, ErrorCode::kAxisOutOfRange);
  CurveClass big = c0.Line(0).Scaled(std::numeric_limits<std::int64_t>::max());
  const DivisorClass twice{Coeffs{2, 0}, Coeffs(10, 0)};
  ExpectError([&] { c0.Intersect(big, twice); }, ErrorCode::kOverflow);
}

TEST(LatticeTest, LabelsAndJson) {
  const Lattice lat(C0());
  const auto curves = lat.CurveBasisLabels();
  EXPECT_EQ(curves.front(), "l1");
  EXPECT_EQ(curves[2], "e_p(1,1,0)");
  EXPECT_EQ(lat.DivisorBasisLabels()[0], "H1");
  const CurveClass g = lat.GammaTilde(0, 1);
  EXPECT_EQ(lat.CurveFromJson(lat.ToJson(g)), g);
  EXPECT_EQ(lat.DivisorFromJson(lat.ToJson(lat.StrictTransformH(0))),
            lat.StrictTransformH(0));
  const std::string csv = lat.PairingTableCsv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')).rfind("curve,H1,H2,", 0), 0u);
}

TEST(VerifyIdentitiesTest, AllPassOnC0AndC1) {
  for (const auto& config : {C0(), C1AtQ13()}) {
    const ReportFragment fragment = VerifyIdentities(config, 200, 3);
    EXPECT_FALSE(fragment.HasFailure());
    for (const CheckRecord& rec : fragment.checks) {
      EXPECT_EQ(rec.status, Status::kPass) << rec.id;
    }
  }
}

}  // namespace
}  // namespace blowup::lattice
