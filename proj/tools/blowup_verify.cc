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

// blowup_verify: command-line front end for the verification engine.
//
// Exit codes: 0 all checks pass (warnings allowed), 1 some check fails or
// the configuration is mathematically rejected, 2 usage or I/O error.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "blowup/cone.h"
#include "blowup/config.h"
#include "blowup/error.h"
#include "blowup/lattice.h"
#include "blowup/report.h"
#include "blowup/rigidity.h"
#include "blowup/vector_fields.h"
#include "json.hpp"

namespace {

using blowup::Error;
using blowup::ErrorCode;
namespace fg = blowup::fieldgeom;

constexpr int kUsageOrIo = 2;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParse, path + ": " + e.what());
  }
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << text;
}

fg::Config LoadConfig(const std::string& path) {
  return fg::ResolveConfig(fg::ParamsFromJson(ReadJsonFile(path)));
}

std::string Matrix2(const blowup::vectorfields::Vector& v, std::size_t block) {
  std::ostringstream out;
  const std::size_t b = 4 * block;
  out << "[[" << v[b].value() << "," << v[b + 1].value() << "],["
      << v[b + 2].value() << "," << v[b + 3].value() << "]]";
  return out.str();
}

int RunVerify(const std::string& path, std::optional<std::int64_t> q_extra,
              const std::string& format, bool timings, int draws,
              const std::string& out_path) {
  blowup::report::RunOptions options;
  options.q_extra = q_extra;
  options.timings = timings;
  options.draws = draws;
  const auto report =
      blowup::report::RunAll(fg::ParamsFromJson(ReadJsonFile(path)), options);
  const std::string text = format == "md"
                               ? report.ToMarkdown()
                               : blowup::report::Serialize(report.ToJson());
  if (out_path.empty()) {
    std::cout << text;
  } else {
    WriteFile(out_path, text);
  }
  return report.ExitCode();
}

int RunGenConfig(int n, int r, const std::vector<int>& s, std::int64_t q,
                 std::uint64_t seed) {
  const fg::Config config = fg::GenerateConfig(n, r, s, q, seed);
  std::cout << blowup::report::Serialize(config.ToJson());
  return 0;
}

int RunPairingTable(const std::string& path) {
  const fg::Config config = LoadConfig(path);
  std::cout << blowup::lattice::Lattice(config).PairingTableCsv();
  return 0;
}

int RunExtremal(const std::string& path, std::int64_t cap, bool json) {
  const fg::Config config = LoadConfig(path);
  const blowup::lattice::Lattice lat(config);
  const blowup::cone::GeneratorSet gens(lat);
  const blowup::cone::SemigroupSearch search(gens, cap);
  const auto rows = blowup::cone::ExtremalityTable(search);
  bool all = true;
  if (json) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& row : rows) {
      const auto& g = gens[row.generator];
      out.push_back({{"label", g.label},
                     {"class", lat.ToJson(g.cls)},
                     {"extremal", row.extremal},
                     {"probe", gens[(row.generator + 1) % gens.size()].label},
                     {"probe_splits", row.probe_splits
                                          ? nlohmann::json(*row.probe_splits)
                                          : nlohmann::json(nullptr)}});
      all = all && row.extremal;
    }
    std::cout << blowup::report::Serialize(
        {{"cap", search.cap()}, {"generators", out}});
  } else {
    std::cout << std::left << std::setw(24) << "generator" << std::setw(8)
              << "extremal" << std::setw(14) << "probe_splits"
              << "class\n";
    for (const auto& row : rows) {
      const auto& g = gens[row.generator];
      std::cout << std::setw(24) << g.label << std::setw(8)
                << (row.extremal ? "yes" : "no") << std::setw(14)
                << (row.probe_splits ? std::to_string(*row.probe_splits)
                                     : ">" + std::to_string(
                                                 blowup::cone::kProbeSplitLimit))
                << lat.ToJson(g.cls).dump() << "\n";
      all = all && row.extremal;
    }
  }
  return all ? 0 : 1;
}

int RunGraph(const std::string& path, const std::string& dot_path) {
  const fg::Config config = LoadConfig(path);
  const auto graph = blowup::rigidity::BuildGraph(config);
  std::cout << blowup::report::Serialize(graph.ToJson(config));
  if (!dot_path.empty()) WriteFile(dot_path, graph.ToDot(config));
  return 0;
}

nlohmann::json FragmentJson(const blowup::ReportFragment& fragment) {
  blowup::report::Report report;
  report.checks = fragment.checks;
  return report.ToJson().at("checks");
}

int RunRigidity(const std::string& path) {
  const fg::Config config = LoadConfig(path);
  const auto fragment = blowup::rigidity::VerifyRigidity(config);
  std::cout << blowup::report::Serialize(
      {{"config", config.ToJson()}, {"checks", FragmentJson(fragment)}});
  return fragment.HasFailure() ? 1 : 0;
}

int RunVectorFields(const std::string& path, bool json) {
  namespace vf = blowup::vectorfields;
  const fg::Config config = LoadConfig(path);
  const auto rows = vf::AssembleSystem(config);
  const auto kernel = vf::DerivationKernel(
      config.field(), rows, 4 * static_cast<std::size_t>(config.r()));
  const bool scalar = vf::KernelIsScalar(kernel, config.r());
  if (json) {
    nlohmann::json basis = nlohmann::json::array();
    for (const auto& v : kernel.basis) basis.push_back(vf::VectorToJson(v));
    std::cout << blowup::report::Serialize({{"q", config.q()},
                                            {"columns", kernel.columns},
                                            {"rank", kernel.rank},
                                            {"pivots", kernel.pivots},
                                            {"kernel_basis", basis},
                                            {"scalar", scalar},
                                            {"rows", vf::SystemToJson(rows)}});
  } else {
    std::cout << "system: " << rows.size() << " x " << kernel.columns
              << " over F_" << config.q() << "\n";
    std::cout << "rank: " << kernel.rank << "\n";
    std::cout << "kernel dimension: " << kernel.dimension() << " (expected "
              << config.r() << ")\n";
    for (std::size_t k = 0; k < kernel.basis.size(); ++k) {
      std::cout << "  v" << k + 1 << ":";
      for (int i = 0; i < config.r(); ++i) {
        std::cout << " A" << i + 1 << "=" << Matrix2(kernel.basis[k], i);
      }
      std::cout << "\n";
    }
    std::cout << (scalar ? "kernel = scalar tuples\n"
                         : "kernel contains non-scalar tuples\n");
  }
  return scalar ? 0 : 1;
}

int RunSweep(const std::string& path, int jobs, const std::string& format,
             const std::string& out_path) {
  const auto spec = blowup::report::SweepSpecFromJson(ReadJsonFile(path));
  const auto result = blowup::report::Sweep(spec, jobs);
  const std::string text = format == "md"
                               ? result.ToMarkdown()
                               : blowup::report::Serialize(result.ToJson());
  if (out_path.empty()) {
    std::cout << text;
  } else {
    WriteFile(out_path, text);
  }
  return result.ExitCode();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification engine for blow-ups of (P^1)^r"};
  app.require_subcommand(1);

  std::string config_path;
  std::string format = "json";
  std::string out_path;

  auto* verify = app.add_subcommand("verify", "Run every check on a config");
  std::optional<std::int64_t> q_extra;
  bool timings = false;
  int draws = 1000;
  verify->add_option("--config", config_path, "Config JSON")->required();
  verify->add_option("--q-extra", q_extra, "Second prime for vector fields");
  verify->add_option("--format", format)->check(CLI::IsMember({"json", "md"}));
  verify->add_flag("--timings", timings, "Include per-stage elapsed_ms");
  verify->add_option("--draws", draws, "Random identity draws")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--out", out_path, "Write the report here");

  auto* gen = app.add_subcommand("gen-config", "Generate a generic config");
  int n = 0;
  int r = 0;
  std::vector<int> s;
  std::int64_t q = 0;
  std::uint64_t seed = 0;
  gen->add_option("--n", n)->required();
  gen->add_option("--r", r)->required();
  gen->add_option("--s", s, "Orbit counts, e.g. --s 2,3")
      ->required()
      ->delimiter(',');
  gen->add_option("--q", q)->required();
  gen->add_option("--seed", seed);

  auto* pairing = app.add_subcommand("pairing-table", "Pairing table as CSV");
  pairing->add_option("--config", config_path)->required();

  auto* extremal = app.add_subcommand("extremal", "Extremality table");
  std::int64_t cap = blowup::cone::SemigroupSearch::kDefaultCapFactor;
  bool extremal_json = false;
  extremal->add_option("--config", config_path)->required();
  extremal->add_option("--cap", cap, "Cap factor K: phi <= K * N")
      ->check(CLI::PositiveNumber);
  extremal->add_flag("--json", extremal_json, "JSON instead of a table");

  auto* graph = app.add_subcommand("graph", "Incidence graph");
  std::string dot_path;
  graph->add_option("--config", config_path)->required();
  graph->add_option("--dot", dot_path, "Also write DOT here");

  auto* rigidity = app.add_subcommand("rigidity", "Census, pinning, group");
  rigidity->add_option("--config", config_path)->required();

  auto* vfields = app.add_subcommand("vector-fields", "Derivation kernel");
  bool vf_json = false;
  vfields->add_option("--config", config_path)->required();
  vfields->add_flag("--json", vf_json, "Export the constraint matrix");

  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  std::string spec_path;
  int jobs = blowup::report::DefaultJobs();
  sweep->add_option("--spec", spec_path)->required();
  sweep->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
  sweep->add_option("--format", format)->check(CLI::IsMember({"json", "md"}));
  sweep->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageOrIo;
  }

  try {
    if (*verify) return RunVerify(config_path, q_extra, format, timings, draws, out_path);
    if (*gen) return RunGenConfig(n, r, s, q, seed);
    if (*pairing) return RunPairingTable(config_path);
    if (*extremal) return RunExtremal(config_path, cap, extremal_json);
    if (*graph) return RunGraph(config_path, dot_path);
    if (*rigidity) return RunRigidity(config_path);
    if (*vfields) return RunVectorFields(config_path, vf_json);
    if (*sweep) return RunSweep(spec_path, jobs, format, out_path);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageOrIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::kParse ? kUsageOrIo : 1;
  }
  return kUsageOrIo;
}
