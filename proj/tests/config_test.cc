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
#include <vector>

#include "blowup/error.h"
#include "blowup/reference.h"
#include "gtest/gtest.h"
#include "test_configs.h"

namespace blowup::fieldgeom {
namespace {

using testing::C0;
using testing::C1AtQ13;
using testing::ExpectError;
using testing::Params;

std::vector<std::uint32_t> AxisValues(const Config& config, int axis) {
  std::vector<std::uint32_t> out;
  for (std::size_t k = config.axis_begin(axis); k < config.axis_end(axis); ++k) {
    out.push_back(config.delta()[k].coord.v().value());
  }
  return out;
}

TEST(BuildDeltaTest, C0Coordinates) {
  const Config c0 = C0();
  EXPECT_EQ(c0.zeta().value(), 12u);
  EXPECT_EQ(c0.delta().size(), 10u);
  EXPECT_EQ(AxisValues(c0, 0), (std::vector<std::uint32_t>{1, 12, 2, 11}));
  EXPECT_EQ(AxisValues(c0, 1),
            (std::vector<std::uint32_t>{3, 10, 4, 9, 5, 8}));
  EXPECT_EQ(c0.delta()[c0.IndexOf(1, 2, 1)].Label(), "p(2,3,1)");
}

TEST(BuildDeltaTest, OrbitCollisionAndZeroBase) {
  ExpectError([] { Config::Create(Params(2, 2, {2, 3}, 13, {{1, 12}, {3, 4, 5}})); },
              ErrorCode::kOrbitCollision);
  ExpectError([] { Config::Create(Params(2, 2, {2, 3}, 13, {{0, 2}, {3, 4, 5}})); },
              ErrorCode::kZeroBase);
  ExpectError([] { Config::Create(Params(2, 2, {2, 3}, 15, {{1, 2}, {3, 4, 5}})); },
              ErrorCode::kNotPrime);
  ExpectError([] { Config::Create(Params(4, 2, {1, 2}, 7, {{1}, {3, 4}})); },
              ErrorCode::kNDoesNotDivide);
}

TEST(GActionTest, IdentityAndGenerator) {
  const Config c0 = C0();
  const std::vector<int> zero{0, 0};
  for (const DeltaPoint& p : c0.delta()) EXPECT_EQ(GAction(c0, zero, p), p);
  const std::vector<int> g{1, 0};
  const DeltaPoint& p = c0.delta()[c0.IndexOf(0, 0, 0)];
  const DeltaPoint image = GAction(c0, g, p);
  EXPECT_EQ(image.axis, 0);
  EXPECT_EQ(image.orbit, 0);
  EXPECT_EQ(image.torsion, 1);
}

TEST(GActionTest, PermutationIsAHomomorphism) {
  const Config c1 = C1AtQ13();
  const std::vector<int> g{1, 2, 0};
  const std::vector<int> h{2, 2, 1};
  const std::vector<int> gh{0, 1, 1};
  const auto pg = GActionPermutation(c1, g);
  const auto ph = GActionPermutation(c1, h);
  const auto pgh = GActionPermutation(c1, gh);
  for (std::size_t k = 0; k < pg.size(); ++k) EXPECT_EQ(pg[ph[k]], pgh[k]);
}

TEST(StabilizerTest, C0AxisOneHasOrderTwo) {
  const Config c0 = C0();
  const auto stab = StabilizerOfAxis(c0, 0);
  const PrimeField& f = c0.field();
  const std::vector<MoebiusMap> expected{MoebiusMap::Identity(f),
                                         MoebiusMap::Scaling(f(-1))};
  std::vector<MoebiusMap> sorted = expected;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(stab, sorted);
}

TEST(StabilizerTest, FullMultiplicativeGroupGivesAllScalings) {
  const PrimeField f(7);
  std::vector<ProjPoint> pts;
  for (int z = 1; z < 7; ++z) pts.push_back(ProjPoint::Affine(f(z)));
  const auto stab = StabilizerOfPointSet(f, pts);
  EXPECT_EQ(stab.size(), 6u);
  for (const MoebiusMap& m : stab) {
    EXPECT_TRUE(m.entries()[1].is_zero());
    EXPECT_TRUE(m.entries()[2].is_zero());
  }
  ExpectError([&] { StabilizerOfPointSet(f, std::span(pts).first(1)); },
              ErrorCode::kTooFewPoints);
}

// Every generic config with q <= 31 reachable from a handful of seeds: the
// three-point method, the OpenMP enumeration and the serial enumeration agree.
TEST(StabilizerTest, MatchesPgl2EnumerationForSmallFields) {
  int checked = 0;
  for (std::int64_t q : {7, 11, 13, 17, 19, 23, 29, 31}) {
    for (int n = 2; n <= 5; ++n) {
      if ((q - 1) % n != 0) continue;
      for (const std::vector<int>& s :
           {std::vector<int>{1, 2}, std::vector<int>{2, 3},
            std::vector<int>{1, 2, 3}}) {
        if (n * s[0] < 3 && s.size() == 2) continue;
        for (std::uint64_t seed : {0u}) {
          std::optional<Config> config;
          try {
            config = GenerateConfig(n, static_cast<int>(s.size()), s, q, seed);
          } catch (const Error&) {
            continue;
          }
          for (int i = 0; i < config->r(); ++i) {
            const auto pts = AxisCoordinates(*config, i);
            const auto fast = StabilizerOfAxis(*config, i);
            EXPECT_EQ(fast, EnumerateStabilizerPgl2(config->field(), pts));
            EXPECT_EQ(fast, reference::StabilizerPgl2Serial(config->field(), pts));
            EXPECT_EQ(fast.size(), static_cast<std::size_t>(n));
          }
          ++checked;
        }
      }
    }
  }
  EXPECT_GE(checked, 20);
}

TEST(StabilizerTest, NonGenericAxisHasExtraMaps) {
  const Config bad = Config::Create(testing::NonGenericC0Params());
  const auto pts = AxisCoordinates(bad, 1);
  const auto stab = StabilizerOfAxis(bad, 1);
  EXPECT_EQ(stab.size(), 6u);
  EXPECT_EQ(stab, reference::StabilizerPgl2Serial(bad.field(), pts));
}

TEST(ValidateConfigTest, C0IsValid) {
  const auto result = ValidateConfig(C0().params());
  EXPECT_TRUE(result.valid());
  ASSERT_EQ(result.fragment.checks.size(), 2u);
  EXPECT_EQ(result.fragment.checks[1].computed, nlohmann::json({2, 2}));
}

TEST(ValidateConfigTest, StructuralReasons) {
  auto repeated = ValidateConfig(Params(2, 2, {2, 2}, 13, {{1, 2}, {3, 4}}));
  EXPECT_FALSE(repeated.structural_ok);
  EXPECT_NE(std::find(repeated.reasons.begin(), repeated.reasons.end(),
                      "s_i not distinct"),
            repeated.reasons.end());
  EXPECT_EQ(repeated.fragment.checks.size(), 1u);

  auto thin = ValidateConfig(Params(2, 2, {1, 3}, 13, {{1}, {3, 4, 5}}));
  EXPECT_FALSE(thin.structural_ok);
  EXPECT_NE(std::find(thin.reasons.begin(), thin.reasons.end(), "n*s_1 = 2 < 3"),
            thin.reasons.end());
}

TEST(ValidateConfigTest, NonGenericIsRecordedNotThrown) {
  const auto result = ValidateConfig(testing::NonGenericC0Params());
  EXPECT_TRUE(result.structural_ok);
  EXPECT_FALSE(result.generic);
  EXPECT_EQ(result.fragment.checks[1].status, Status::kFail);
  EXPECT_EQ(result.fragment.checks[1].computed, nlohmann::json({2, 6}));
}

TEST(GenerateConfigTest, DeterministicAndValid) {
  const Config a = GenerateConfig(2, 2, {2, 3}, 13, 1);
  const Config b = GenerateConfig(2, 2, {2, 3}, 13, 1);
  EXPECT_EQ(a.ToJson(), b.ToJson());
  EXPECT_TRUE(ValidateConfig(a.params()).valid());
}

TEST(GenerateConfigTest, TooSmallField) {
  ExpectError([] { GenerateConfig(2, 2, {2, 3}, 5, 0); },
              ErrorCode::kTooSmallField);
  // F_7^* has two mu_3-orbits, so s_3 = 3 cannot be met at q = 7.
  ExpectError([] { GenerateConfig(3, 3, {1, 2, 3}, 7, 0); },
              ErrorCode::kTooSmallField);
}

TEST(GenerateConfigTest, C1ShapeAtThirteen) {
  const Config c1 = GenerateConfig(3, 3, {1, 2, 3}, 13, 0);
  EXPECT_EQ(c1.base(), C1AtQ13().base());
  EXPECT_EQ(c1.zeta().value(), 3u);
  EXPECT_EQ(c1.base().size(), 3u);
  EXPECT_EQ(c1.delta().size(), 18u);
  EXPECT_TRUE(ValidateConfig(c1.params()).valid());
}

TEST(ConfigJsonTest, RoundTrip) {
  const Config c0 = C0();
  const ConfigParams p = ParamsFromJson(ParamsToJson(c0.params()));
  EXPECT_EQ(Config::Create(p).ToJson(), c0.ToJson());
  ExpectError([] { ParamsFromJson(nlohmann::json{{"n", 2}}); }, ErrorCode::kParse);
}

}  // namespace
}  // namespace blowup::fieldgeom
