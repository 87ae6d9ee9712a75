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

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "blowup/cone.h"
#include "blowup/error.h"
#include "blowup/lattice.h"
#include "blowup/rigidity.h"
#include "blowup/vector_fields.h"

namespace blowup::report {

using fieldgeom::Config;
using fieldgeom::ConfigParams;

namespace {

// Runs `stage`, appends its records to `report` and stamps the stage's wall
// time on each of them.
template <typename Fn>
void RunStage(Report& report, Fn&& stage) {
  const auto start = std::chrono::steady_clock::now();
  ReportFragment fragment = stage();
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  for (CheckRecord& rec : fragment.checks) {
    rec.elapsed_ms = ms;
    report.checks.push_back(std::move(rec));
  }
}

CheckRecord ErrorRecord(std::string id, Anchor anchor, const std::exception& e) {
  CheckRecord rec{std::move(id), anchor};
  rec.status = Status::kFail;
  rec.computed = {{"error", e.what()}};
  return rec;
}

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\|";
    else if (c == '\n') out += ' ';
    else out += c;
  }
  return out;
}

std::string ParamsLabel(const nlohmann::json& p) {
  std::ostringstream out;
  out << "n=" << p.value("n", 0) << " r=" << p.value("r", 0) << " s=";
  out << (p.contains("s") ? p.at("s").dump() : "[]");
  out << " q=" << p.value("q", std::int64_t{0});
  if (p.contains("seed")) out << " seed=" << p.at("seed").dump();
  return out.str();
}

}  // namespace

std::size_t Report::Count(Status status) const {
  return static_cast<std::size_t>(std::count_if(
      checks.begin(), checks.end(),
      [status](const CheckRecord& c) { return c.status == status; }));
}

Status Report::Overall() const {
  if (Count(Status::kFail) > 0) return Status::kFail;
  if (Count(Status::kWarn) > 0) return Status::kWarn;
  return Status::kPass;
}

nlohmann::json Report::ToJson() const {
  nlohmann::json list = nlohmann::json::array();
  for (const CheckRecord& c : checks) {
    const AnchorInfo& anchor = Describe(c.anchor);
    nlohmann::json j = {
        {"id", c.id},
        {"anchor",
         {{"id", std::string(anchor.id)},
          {"statement", std::string(anchor.statement)}}},
        {"status", std::string(StatusName(c.status))},
        {"computed", c.computed},
        {"expected", c.expected}};
    if (!c.note.empty()) j["note"] = c.note;
    if (timings) j["elapsed_ms"] = c.elapsed_ms;
    list.push_back(std::move(j));
  }
  return {{"config", config},
          {"checks", list},
          {"summary",
           {{"pass", Count(Status::kPass)},
            {"warn", Count(Status::kWarn)},
            {"fail", Count(Status::kFail)}}},
          {"status", std::string(StatusName(Overall()))}};
}

std::string Report::ToMarkdown() const {
  std::ostringstream out;
  out << "# Verification report\n\n";
  out << "Config: `" << ParamsLabel(config) << "`\n\n";
  out << "Status: **" << StatusName(Overall()) << "** (" << Count(Status::kPass)
      << " pass, " << Count(Status::kWarn) << " warn, "
      << Count(Status::kFail) << " fail)\n\n";
  out << "| check | anchor | status | note |\n|---|---|---|---|\n";
  for (const CheckRecord& c : checks) {
    out << "| " << c.id << " | " << Describe(c.anchor).id << " | "
        << StatusName(c.status) << " | " << Escape(c.note) << " |\n";
  }
  return out.str();
}

std::string Serialize(const nlohmann::json& j) { return j.dump(2) + "\n"; }

Report RunAll(const ConfigParams& input, const RunOptions& options) {
  Report report;
  report.timings = options.timings;
  ConfigParams params = input;
  report.config = fieldgeom::ParamsToJson(params);

  if (!params.base) {
    try {
      params.base = fieldgeom::ResolveConfig(params).params().base;
    } catch (const Error& e) {
      CheckRecord rec = ErrorRecord("config.structure", Anchor::kConfigStructure, e);
      rec.expected = nlohmann::json::array();
      report.checks.push_back(std::move(rec));
      return report;
    }
  }

  fieldgeom::ValidationResult validation;
  RunStage(report, [&] {
    validation = fieldgeom::ValidateConfig(params);
    return std::move(validation.fragment);
  });
  if (!validation.structural_ok || !validation.config) {
    return report;
  }
  const Config& config = *validation.config;
  report.config = config.ToJson();
  const std::uint64_t seed = config.seed().value_or(0);

  RunStage(report, [&] {
    return lattice::VerifyIdentities(config, options.draws, seed);
  });
  RunStage(report, [&] {
    return cone::VerifyCone(config, options.draws, seed + 1, options.cap_factor);
  });
  RunStage(report, [&] { return rigidity::VerifyRigidity(config); });
  RunStage(report, [&] { return vectorfields::VerifyVanishing(config); });

  if (options.q_extra) {
    RunStage(report, [&] {
      ReportFragment fragment;
      try {
        const Config other = fieldgeom::GenerateConfig(
            config.n(), config.r(), config.s(), *options.q_extra, seed);
        fragment = vectorfields::VerifyVanishing(other);
        fragment.checks.at(0).computed["base"] = other.ToJson().at("base");
      } catch (const Error& e) {
        fragment.checks.push_back(
            ErrorRecord("vector_fields.kernel", Anchor::kVectorFields, e));
      }
      fragment.checks.at(0).id = "vector_fields.kernel_extra_q";
      return fragment;
    });
  }

  std::set<std::string> ids;
  for (const CheckRecord& c : report.checks) {
    if (!ids.insert(c.id).second) {
      throw std::logic_error("duplicate check id " + c.id);
    }
  }
  return report;
}

std::vector<int> CanonicalS(int n, int r) {
  if (n < 2 || r < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need n >= 2 and r >= 2");
  }
  if (r == 2) {
    const int s1 = (3 + n - 1) / n;
    return {s1, s1 + 1};
  }
  std::vector<int> s(r);
  for (int i = 0; i < r; ++i) s[i] = i + 1;
  return s;
}

std::optional<std::int64_t> ValidQ(int n, int r, const std::vector<int>& s,
                                   std::uint64_t seed, std::int64_t q_min,
                                   int k, std::int64_t q_limit) {
  const int max_s = s.empty() ? 0 : *std::max_element(s.begin(), s.end());
  int found = 0;
  for (std::int64_t q = std::max<std::int64_t>(q_min, 2); q < q_limit; ++q) {
    if ((q - 1) % n != 0 || (q - 1) / n <= max_s || !fieldgeom::IsPrime(q)) {
      continue;
    }
    try {
      fieldgeom::GenerateConfig(n, r, s, q, seed);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kExhaustedRetries ||
          e.code() == ErrorCode::kTooSmallField) {
        continue;
      }
      throw;
    }
    if (found++ == k) return q;
  }
  return std::nullopt;
}

SweepSpec SweepSpecFromJson(const nlohmann::json& j) {
  try {
    SweepSpec spec;
    spec.n_values = j.value("n", std::vector<int>{});
    spec.r_values = j.value("r", std::vector<int>{});
    if (j.contains("seeds")) spec.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    spec.q_min = j.value("q_min", spec.q_min);
    spec.q_extra = j.value("q_extra", spec.q_extra);
    spec.draws = j.value("draws", spec.draws);
    spec.cap_factor = j.value("cap_factor", spec.cap_factor);
    if (j.contains("configs")) {
      for (const auto& c : j.at("configs")) {
        spec.configs.push_back(fieldgeom::ParamsFromJson(c));
      }
    }
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("sweep spec: ") + e.what());
  }
}

Status SweepRow::Overall() const {
  return report ? report->Overall() : Status::kFail;
}

std::map<std::string, std::map<std::string, std::size_t>> SweepResult::Summary()
    const {
  std::map<std::string, std::map<std::string, std::size_t>> out;
  for (const SweepRow& row : rows) {
    if (!row.report) {
      ++out["sweep.setup"]["FAIL"];
      continue;
    }
    for (const CheckRecord& c : row.report->checks) {
      ++out[c.id][std::string(StatusName(c.status))];
    }
  }
  return out;
}

int SweepResult::ExitCode() const {
  for (const SweepRow& row : rows) {
    if (row.Overall() == Status::kFail) return 1;
  }
  return 0;
}

nlohmann::json SweepResult::ToJson() const {
  nlohmann::json list = nlohmann::json::array();
  for (const SweepRow& row : rows) {
    nlohmann::json j = {{"label", row.label},
                        {"params", row.params},
                        {"status", std::string(StatusName(row.Overall()))}};
    if (row.report) {
      nlohmann::json statuses = nlohmann::json::object();
      nlohmann::json failures = nlohmann::json::object();
      for (const CheckRecord& c : row.report->checks) {
        statuses[c.id] = std::string(StatusName(c.status));
        if (c.status == Status::kFail) failures[c.id] = c.computed;
      }
      j["config"] = row.report->config;
      j["checks"] = statuses;
      if (!failures.empty()) j["failures"] = failures;
    } else {
      j["error"] = row.error;
    }
    list.push_back(std::move(j));
  }
  return {{"rows", list}, {"summary", Summary()}, {"configs", rows.size()}};
}

std::string SweepResult::ToMarkdown() const {
  std::ostringstream out;
  out << "# Sweep summary\n\n| config | status |\n|---|---|\n";
  for (const SweepRow& row : rows) {
    out << "| " << row.label << " | " << StatusName(row.Overall()) << " |\n";
  }
  out << "\n| check | PASS | WARN | FAIL |\n|---|---|---|---|\n";
  for (const auto& [id, counts] : Summary()) {
    auto get = [&counts](const char* k) {
      const auto it = counts.find(k);
      return it == counts.end() ? std::size_t{0} : it->second;
    };
    out << "| " << id << " | " << get("PASS") << " | " << get("WARN") << " | "
        << get("FAIL") << " |\n";
  }
  return out.str();
}

SweepResult Sweep(const SweepSpec& spec, int jobs) {
  struct Item {
    ConfigParams params;
    bool grid = false;
  };
  std::vector<Item> items;
  for (int n : spec.n_values) {
    for (int r : spec.r_values) {
      for (std::uint64_t seed : spec.seeds) {
        ConfigParams p;
        p.n = n;
        p.r = r;
        p.seed = seed;
        items.push_back({p, true});
      }
    }
  }
  for (const ConfigParams& p : spec.configs) items.push_back({p, false});

  SweepResult result;
  result.rows.resize(items.size());
  const int threads = std::max(1, jobs);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::size_t k = 0; k < items.size(); ++k) {
    SweepRow& row = result.rows[k];
    ConfigParams params = items[k].params;
    RunOptions options;
    options.draws = spec.draws;
    options.cap_factor = spec.cap_factor;
    try {
      if (items[k].grid) {
        params.s = CanonicalS(params.n, params.r);
        const std::uint64_t seed = params.seed.value_or(0);
        const auto q = ValidQ(params.n, params.r, params.s, seed, spec.q_min);
        if (!q) throw Error(ErrorCode::kTooSmallField, "no valid q below limit");
        params.q = *q;
        if (spec.q_extra) {
          options.q_extra =
              ValidQ(params.n, params.r, params.s, seed, spec.q_min, 1);
        }
      }
      row.params = fieldgeom::ParamsToJson(params);
      row.label = ParamsLabel(row.params);
      row.report = RunAll(params, options);
    } catch (const std::exception& e) {
      row.params = fieldgeom::ParamsToJson(params);
      row.label = ParamsLabel(row.params);
      row.error = e.what();
    }
  }
  return result;
}

int DefaultJobs() {
  if (const char* env = std::getenv("BLOWUP_JOBS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

}  // namespace blowup::report
