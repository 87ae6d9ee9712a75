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

#include "blowup/report.h"

#include <cstdlib>
#include <set>
#include <string>

#include "blowup/check.h"
#include "gtest/gtest.h"
#include "test_configs.h"

namespace blowup::report {
namespace {

using testing::C0;
using testing::C1AtQ13;
using testing::Params;

TEST(AnchorTest, RegistryIsComplete) {
  std::set<std::string_view> ids;
  for (Anchor a : AllAnchors()) {
    const AnchorInfo& info = Describe(a);
    EXPECT_FALSE(info.id.empty());
    EXPECT_FALSE(info.statement.empty());
    ids.insert(info.id);
  }
  EXPECT_EQ(ids.size(), AllAnchors().size());
}

TEST(RunAllTest, C0PassesWithOneWarning) {
  const Report report = RunAll(C0().params());
  EXPECT_EQ(report.Count(Status::kFail), 0u);
  EXPECT_EQ(report.Count(Status::kWarn), 1u);
  EXPECT_EQ(report.Overall(), Status::kWarn);
  EXPECT_EQ(report.ExitCode(), 0);
  std::set<std::string> ids;
  for (const CheckRecord& rec : report.checks) ids.insert(rec.id);
  EXPECT_EQ(ids.size(), report.checks.size());
  EXPECT_TRUE(ids.contains("cone.extremality"));
  EXPECT_TRUE(ids.contains("vector_fields.kernel"));
}

TEST(RunAllTest, C1PassesWithOneWarning) {
  RunOptions options;
  options.q_extra = 19;
  const Report report = RunAll(C1AtQ13().params(), options);
  EXPECT_EQ(report.Count(Status::kFail), 0u);
  EXPECT_EQ(report.Count(Status::kWarn), 1u);
}

TEST(RunAllTest, RepeatedSStopsAfterValidation) {
  const Report report = RunAll(Params(2, 2, {2, 2}, 13, {{1, 2}, {3, 4}}));
  ASSERT_EQ(report.checks.size(), 1u);
  EXPECT_EQ(report.checks[0].id, "config.structure");
  EXPECT_EQ(report.ExitCode(), 1);
}

TEST(RunAllTest, NonGenericRunsDownstreamAndFails) {
  const Report report = RunAll(testing::NonGenericC0Params());
  EXPECT_EQ(report.ExitCode(), 1);
  EXPECT_GT(report.checks.size(), 2u);
}

TEST(RunAllTest, GeneratesBaseFromSeed) {
  fieldgeom::ConfigParams p;
  p.n = 2;
  p.r = 2;
  p.s = {2, 3};
  p.q = 13;
  p.seed = 4;
  const Report report = RunAll(p);
  EXPECT_EQ(report.ExitCode(), 0);
  EXPECT_TRUE(report.config.contains("base"));
}

TEST(SerializeTest, DeterministicBytes) {
  const std::string a = Serialize(RunAll(C0().params()).ToJson());
  const std::string b = Serialize(RunAll(C0().params()).ToJson());
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.back(), '\n');
  EXPECT_EQ(a.find("elapsed_ms"), std::string::npos);
  RunOptions timed;
  timed.timings = true;
  EXPECT_NE(Serialize(RunAll(C0().params(), timed).ToJson()).find("elapsed_ms"),
            std::string::npos);
}

TEST(MarkdownTest, OneRowPerCheck) {
  const Report report = RunAll(C0().params());
  const std::string md = report.ToMarkdown();
  for (const CheckRecord& rec : report.checks) {
    EXPECT_NE(md.find(rec.id), std::string::npos) << rec.id;
  }
}

TEST(SweepTest, CanonicalShapesAndFields) {
  EXPECT_EQ(CanonicalS(2, 2), (std::vector<int>{2, 3}));
  EXPECT_EQ(CanonicalS(3, 2), (std::vector<int>{1, 2}));
  EXPECT_EQ(CanonicalS(5, 4), (std::vector<int>{1, 2, 3, 4}));
  EXPECT_EQ(ValidQ(2, 2, {2, 3}, 1, 7), 11);
  EXPECT_EQ(ValidQ(3, 3, {1, 2, 3}, 0, 7), 13);
}

TEST(SweepTest, SmallGridAllRigidityPass) {
  SweepSpec spec;
  spec.n_values = {2, 3};
  spec.r_values = {2, 3};
  spec.draws = 100;
  const SweepResult result = Sweep(spec, 2);
  ASSERT_EQ(result.rows.size(), 4u);
  for (const SweepRow& row : result.rows) {
    ASSERT_TRUE(row.report.has_value()) << row.error;
    EXPECT_NE(row.Overall(), Status::kFail) << row.label;
  }
  const auto summary = result.Summary();
  EXPECT_EQ(summary.at("rigidity.automorphism_group").at("PASS"), 4u);
  EXPECT_EQ(result.ExitCode(), 0);
}

TEST(SweepTest, EmptyRange) {
  const SweepResult result = Sweep(SweepSpec{}, 1);
  EXPECT_TRUE(result.rows.empty());
  EXPECT_TRUE(result.Summary().empty());
  EXPECT_EQ(result.ExitCode(), 0);
}

TEST(SweepTest, NonGenericRowFailsAlone) {
  SweepSpec spec;
  spec.n_values = {2};
  spec.r_values = {2};
  spec.draws = 50;
  spec.configs = {C0().params(), testing::NonGenericC0Params()};
  const SweepResult result = Sweep(spec, 1);
  ASSERT_EQ(result.rows.size(), 3u);
  EXPECT_NE(result.rows[0].Overall(), Status::kFail);
  EXPECT_NE(result.rows[1].Overall(), Status::kFail);
  EXPECT_EQ(result.rows[2].Overall(), Status::kFail);
  EXPECT_EQ(result.ExitCode(), 1);
}

TEST(SweepTest, RowOrderIndependentOfJobs) {
  SweepSpec spec;
  spec.n_values = {2, 3, 4};
  spec.r_values = {2, 3};
  spec.draws = 50;
  EXPECT_EQ(Serialize(Sweep(spec, 1).ToJson()), Serialize(Sweep(spec, 3).ToJson()));
}

TEST(SweepTest, SpecFromJson) {
  const SweepSpec spec = SweepSpecFromJson(
      nlohmann::json{{"n", {2, 3}}, {"r", {2}}, {"seeds", {1, 2}}, {"q_min", 11}});
  EXPECT_EQ(spec.n_values, (std::vector<int>{2, 3}));
  EXPECT_EQ(spec.seeds, (std::vector<std::uint64_t>{1, 2}));
  EXPECT_EQ(spec.q_min, 11);
  EXPECT_TRUE(spec.q_extra);
}

TEST(DefaultJobsTest, ReadsEnvironment) {
  setenv("BLOWUP_JOBS", "3", 1);
  EXPECT_EQ(DefaultJobs(), 3);
  setenv("BLOWUP_JOBS", "zero", 1);
  EXPECT_EQ(DefaultJobs(), 1);
  unsetenv("BLOWUP_JOBS");
  EXPECT_EQ(DefaultJobs(), 1);
}

}  // namespace
}  // namespace blowup::report
