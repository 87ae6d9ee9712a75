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

#ifndef BLOWUP_REPORT_H_
#define BLOWUP_REPORT_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "blowup/check.h"
#include "blowup/config.h"
#include "json.hpp"

namespace blowup::report {

struct RunOptions {
  std::optional<std::int64_t> q_extra;  // second field for the vector fields
  bool timings = false;                 // emit per-stage elapsed_ms
  std::int64_t cap_factor = 10;
  int draws = 1000;
};

struct Report {
  nlohmann::json config;
  std::vector<CheckRecord> checks;
  bool timings = false;

  std::size_t Count(Status status) const;
  Status Overall() const;
  int ExitCode() const { return Overall() == Status::kFail ? 1 : 0; }

  nlohmann::json ToJson() const;
  std::string ToMarkdown() const;
};

// Canonical text form: sorted keys, two-space indent, trailing newline.
std::string Serialize(const nlohmann::json& j);

// Validation, lattice identities, cone, rigidity and vector fields, in that
// order. Structural failures skip everything downstream; mathematical
// failures become FAIL records. Missing base coordinates are generated from
// the seed first.
Report RunAll(const fieldgeom::ConfigParams& params,
              const RunOptions& options = {});

// s for a sweep point: r = 2 gives (s_1, s_1 + 1) with s_1 = ceil(3 / n);
// r >= 3 gives (1, 2, ..., r).
std::vector<int> CanonicalS(int n, int r);

// The k-th (0-based) prime q >= q_min with q = 1 mod n and (q - 1) / n > max s
// for which GenerateConfig succeeds with `seed`. nullopt if none below
// q_limit.
std::optional<std::int64_t> ValidQ(int n, int r, const std::vector<int>& s,
                                   std::uint64_t seed, std::int64_t q_min,
                                   int k = 0, std::int64_t q_limit = 20000);

struct SweepSpec {
  std::vector<int> n_values;
  std::vector<int> r_values;
  std::vector<std::uint64_t> seeds{0};
  std::int64_t q_min = 7;
  bool q_extra = true;  // also check vector fields at the next valid q
  int draws = 1000;
  std::int64_t cap_factor = 10;
  std::vector<fieldgeom::ConfigParams> configs;  // explicit extra rows
};

// Keys: n, r (arrays), seeds, q_min, q_extra, draws, cap_factor, configs.
SweepSpec SweepSpecFromJson(const nlohmann::json& j);

struct SweepRow {
  std::string label;
  nlohmann::json params;
  std::optional<Report> report;
  std::string error;  // set when no report could be produced

  Status Overall() const;
};

struct SweepResult {
  std::vector<SweepRow> rows;

  // check id -> status name -> count.
  std::map<std::string, std::map<std::string, std::size_t>> Summary() const;
  int ExitCode() const;
  nlohmann::json ToJson() const;
  std::string ToMarkdown() const;
};

// Grid points in (n, r, seed) order, then explicit configs. Rows run
// concurrently on up to `jobs` threads; row order does not depend on jobs.
SweepResult Sweep(const SweepSpec& spec, int jobs);

// BLOWUP_JOBS if set to a positive integer, else 1.
int DefaultJobs();

}  // namespace blowup::report

#endif  // BLOWUP_REPORT_H_
