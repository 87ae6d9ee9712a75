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

// Acceptance runner: one PASS/FAIL line per criterion.
//
//   acceptance            run every criterion
//   acceptance 4 6b       run only the named criteria
//
// Exit status is 1 when any selected criterion fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "blowup/cone.h"
#include "blowup/config.h"
#include "blowup/draws.h"
#include "blowup/error.h"
#include "blowup/lattice.h"
#include "blowup/reference.h"
#include "blowup/report.h"
#include "blowup/rigidity.h"
#include "blowup/vector_fields.h"

namespace {

namespace fg = blowup::fieldgeom;
namespace lat = blowup::lattice;
using blowup::Error;

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct SweepPoint {
  fg::Config config;
  std::optional<std::int64_t> q_second;
  std::string label;
};

std::string Label(const fg::Config& c) {
  std::ostringstream out;
  out << "n=" << c.n() << " r=" << c.r() << " q=" << c.q();
  if (c.seed()) out << " seed=" << *c.seed();
  return out.str();
}

// n in {2,3,4,5}, r in {2,3,4}, seeds {1,2}, canonical distinct s, smallest
// valid q >= 7.
const std::vector<SweepPoint>& SweepConfigs() {
  static const std::vector<SweepPoint> points = [] {
    std::vector<SweepPoint> out;
    for (int n : {2, 3, 4, 5}) {
      for (int r : {2, 3, 4}) {
        for (std::uint64_t seed : {1u, 2u}) {
          const auto s = blowup::report::CanonicalS(n, r);
          const auto q = blowup::report::ValidQ(n, r, s, seed, 7);
          if (!q) continue;
          fg::Config config = fg::GenerateConfig(n, r, s, *q, seed);
          const std::string label = Label(config);
          out.push_back({std::move(config),
                         blowup::report::ValidQ(n, r, s, seed, 7, 1), label});
        }
      }
    }
    return out;
  }();
  return points;
}

fg::Config C0() {
  fg::ConfigParams p;
  p.n = 2;
  p.r = 2;
  p.s = {2, 3};
  p.q = 13;
  p.base = std::vector<std::vector<std::int64_t>>{{1, 2}, {3, 4, 5}};
  return fg::Config::Create(p);
}

// C1 is (n=3, r=3, s=(1,2,3)); `q` = 7 is the literal criterion field.
fg::Config C1(std::int64_t q) { return fg::GenerateConfig(3, 3, {1, 2, 3}, q, 0); }

std::string Fmt(double seconds) {
  std::ostringstream out;
  out.precision(3);
  out << std::fixed << seconds << " s";
  return out.str();
}

Outcome Criterion1() {
  const auto start = Clock::now();
  std::size_t mismatches = 0;
  std::size_t checked = 0;
  for (const SweepPoint& pt : SweepConfigs()) {
    const fg::Config& c = pt.config;
    const lat::Lattice lattice(c);
    for (int i = 0; i < c.r(); ++i) {
      const lat::DivisorClass h = lattice.StrictTransformH(i);
      for (int j = 0; j < c.r(); ++j) {
        const std::int64_t got = lattice.Intersect(lattice.Line(j), h);
        const std::int64_t want = i == j ? 1 : -c.n() * c.s()[j];
        ++checked;
        if (got != want) ++mismatches;
      }
    }
  }
  const double t = SecondsSince(start);
  Outcome out;
  out.pass = SweepConfigs().size() >= 20 && mismatches == 0 && t < 1.0;
  out.detail = std::to_string(SweepConfigs().size()) + " configs, " +
               std::to_string(checked) + " pairings, " +
               std::to_string(mismatches) + " mismatches, " + Fmt(t) +
               " (limit 1 s)";
  return out;
}

Outcome Criterion2() {
  std::size_t checked = 0;
  std::size_t mismatches = 0;
  for (const SweepPoint& pt : SweepConfigs()) {
    const lat::Lattice lattice(pt.config);
    for (std::size_t p = 0; p < lattice.delta_size(); ++p) {
      for (int i = 0; i < lattice.r(); ++i) {
        if (lattice.axis_of(p) == i) continue;
        const lat::CurveClass g = lattice.GammaTilde(p, i);
        for (std::size_t q = 0; q < lattice.delta_size(); ++q) {
          const std::int64_t want = q == p ? 1 : 0;
          ++checked;
          if (lattice.Intersect(g, lattice.Exceptional(q)) != want) ++mismatches;
        }
      }
    }
  }
  return {SweepConfigs().size() >= 20 && mismatches == 0,
          std::to_string(checked) + " (gamma, E) pairs over " +
              std::to_string(SweepConfigs().size()) + " configs, " +
              std::to_string(mismatches) + " mismatches"};
}

Outcome Criterion3() {
  constexpr int kDraws = 1000;
  std::size_t spade_bad = 0;
  std::size_t diamond_bad = 0;
  std::uint64_t seed = 1;
  for (const SweepPoint& pt : SweepConfigs()) {
    const lat::Lattice lattice(pt.config);
    const lat::PairingSolver solver(lattice);
    const std::size_t r = lattice.r();
    const std::size_t d = lattice.delta_size();
    blowup::Draws draws(seed++);
    for (int k = 0; k < kDraws; ++k) {
      // Expansion in the curve basis against the class with intersection
      // numbers (a, eps), solved from the pairing table.
      std::vector<std::int64_t> a(r);
      std::vector<std::int64_t> eps(d);
      for (auto& x : a) x = draws.Uniform(-20, 20);
      for (auto& x : eps) x = draws.Uniform(-20, 20);
      std::vector<std::int64_t> numbers(a);
      numbers.insert(numbers.end(), eps.begin(), eps.end());
      if (lattice.ExpandInBasis(a, eps) != solver.Solve(numbers)) ++spade_bad;

      const std::size_t q = static_cast<std::size_t>(
          draws.Uniform(0, static_cast<std::int64_t>(d) - 1));
      std::vector<std::int64_t> b(r);
      for (auto& x : b) x = draws.Uniform(0, 20);
      b[lattice.axis_of(q)] = 0;
      const auto [lhs, rhs] =
          blowup::cone::Case3Sides(lattice, q, b, draws.Uniform(-20, 20));
      if (lhs != rhs) ++diamond_bad;
    }
  }
  return {spade_bad == 0 && diamond_bad == 0,
          std::to_string(kDraws) + " draws x " +
              std::to_string(SweepConfigs().size()) + " configs; spade " +
              std::to_string(spade_bad) + " mismatches, diamond " +
              std::to_string(diamond_bad) + " mismatches"};
}

Outcome Criterion4() {
  const auto start = Clock::now();
  const fg::Config c0 = C0();
  const lat::Lattice lattice(c0);
  const blowup::cone::GeneratorSet gens(lattice);
  const blowup::cone::SemigroupSearch search(gens);
  std::size_t extremal = 0;
  for (const auto& g : gens.all()) {
    if (search.IsExtremal(g.cls) && blowup::reference::NaiveIsExtremal(gens, g.cls)) {
      ++extremal;
    }
  }
  const lat::CurveClass e = lattice.ExceptionalLine(0);
  const std::array<lat::CurveClass, 3> probes{
      lattice.Line(0) + e, e.Scaled(2), lattice.Line(0) + lattice.Line(1)};
  std::size_t split = 0;
  for (const auto& c : probes) {
    if (!search.IsExtremal(c) && !blowup::reference::NaiveIsExtremal(gens, c)) {
      ++split;
    }
  }
  const double t = SecondsSince(start);
  return {gens.size() == 22 && extremal == 22 && split == 3 && t < 60.0,
          "C0: " + std::to_string(extremal) + "/" + std::to_string(gens.size()) +
              " generators extremal, " + std::to_string(split) +
              "/3 probes split, " + Fmt(t) + " (limit 60 s)"};
}

Outcome Criterion5() {
  std::size_t bad = 0;
  std::size_t line_divergences = 0;
  std::size_t warn_records = 0;
  for (const SweepPoint& pt : SweepConfigs()) {
    const fg::Config& c = pt.config;
    const auto graph = blowup::rigidity::BuildGraph(c);
    const auto census = blowup::rigidity::Census(graph);
    for (std::size_t v = 0; v < graph.vertices.size(); ++v) {
      const auto& id = graph.vertices[v];
      const std::size_t ns =
          id.axis >= 0 ? static_cast<std::size_t>(c.n() * c.s()[id.axis]) : 0;
      blowup::rigidity::Profile want;
      switch (id.kind) {
        case blowup::rigidity::ComponentKind::kExceptional:
          want = {0, static_cast<std::size_t>(c.r())};
          break;
        case blowup::rigidity::ComponentKind::kGamma:
          want = {1, ns};
          break;
        case blowup::rigidity::ComponentKind::kLine:
          want = {ns, static_cast<std::size_t>(c.r() - 1)};
          if (census[v].Total() != ns) ++line_divergences;
          break;
      }
      if (!(census[v] == want)) ++bad;
    }
    for (const auto& rec : blowup::rigidity::VerifyRigidity(c).checks) {
      if (rec.id == "rigidity.census_line" && rec.status == blowup::Status::kWarn) {
        ++warn_records;
      }
    }
  }
  const std::size_t configs = SweepConfigs().size();
  return {bad == 0 && warn_records == configs,
          std::to_string(configs) + " configs, " + std::to_string(bad) +
              " profile mismatches, line WARN recorded in " +
              std::to_string(warn_records) + " (" +
              std::to_string(line_divergences) +
              " lines exceed the stated total by r - 1)"};
}

// Order n^r, exponent n, and the induced permutations of Delta are exactly
// the G-action.
Outcome RigidityOf(const fg::Config& c) {
  const auto start = Clock::now();
  const auto group = blowup::rigidity::GeometricAutomorphisms(c);
  std::size_t order = 1;
  for (int i = 0; i < c.r(); ++i) order *= c.n();

  std::set<std::vector<std::size_t>> perms;
  std::size_t exponent = 1;
  for (const auto& g : group) {
    perms.insert(g.permutation);
    std::vector<std::size_t> x(g.permutation);
    std::size_t k = 1;
    std::vector<std::size_t> id(x.size());
    for (std::size_t p = 0; p < id.size(); ++p) id[p] = p;
    while (x != id) {
      for (std::size_t p = 0; p < x.size(); ++p) x[p] = g.permutation[x[p]];
      ++k;
    }
    exponent = std::max(exponent, k);
  }
  std::set<std::vector<std::size_t>> g_action;
  std::vector<int> exps(c.r(), 0);
  for (std::size_t idx = 0; idx < order; ++idx) {
    std::size_t rest = idx;
    for (int i = 0; i < c.r(); ++i) {
      exps[i] = static_cast<int>(rest % c.n());
      rest /= c.n();
    }
    g_action.insert(fg::GActionPermutation(c, exps));
  }
  const double t = SecondsSince(start);
  const bool pass = group.size() == order && perms.size() == order &&
                    exponent == static_cast<std::size_t>(c.n()) &&
                    perms == g_action && t < 10.0;
  return {pass, Label(c) + ": order " + std::to_string(group.size()) + "/" +
                    std::to_string(order) + ", exponent " +
                    std::to_string(exponent) + ", action " +
                    (perms == g_action ? "= G" : "!= G") + ", " + Fmt(t)};
}

Outcome Combine(const std::vector<Outcome>& parts) {
  Outcome out;
  for (const Outcome& p : parts) {
    out.pass = out.pass && p.pass;
    if (!out.detail.empty()) out.detail += "; ";
    out.detail += p.detail;
  }
  return out;
}

Outcome Infeasible(const std::string& what, const Error& e) {
  return {false, what + " cannot be built: " + e.what()};
}

Outcome Criterion6() {
  std::vector<Outcome> parts{RigidityOf(C0())};
  try {
    parts.push_back(RigidityOf(C1(7)));
  } catch (const Error& e) {
    parts.push_back(Infeasible("C1 at q=7", e));
  }
  return Combine(parts);
}

Outcome Criterion6b() { return RigidityOf(C1(13)); }

Outcome Criterion7() {
  namespace vf = blowup::vectorfields;
  std::size_t runs = 0;
  std::size_t bad = 0;
  std::size_t single_q = 0;
  double worst = 0;
  for (const SweepPoint& pt : SweepConfigs()) {
    std::vector<fg::Config> fields{pt.config};
    if (pt.q_second) {
      const fg::Config& c = pt.config;
      fields.push_back(fg::GenerateConfig(c.n(), c.r(), c.s(), *pt.q_second,
                                          c.seed().value_or(0)));
    } else {
      ++single_q;
    }
    const auto start = Clock::now();
    for (const fg::Config& c : fields) {
      const auto kernel = vf::DerivationKernel(c);
      ++runs;
      if (!vf::KernelIsScalar(kernel, c.r())) ++bad;
    }
    worst = std::max(worst, SecondsSince(start));
  }
  return {bad == 0 && worst < 1.0,
          std::to_string(runs) + " kernels over " +
              std::to_string(SweepConfigs().size()) + " configs (" +
              std::to_string(single_q) + " with one q), " +
              std::to_string(bad) + " non-scalar, slowest config " +
              Fmt(worst) + " (limit 1 s)"};
}

Outcome StabilizerOracle(const std::vector<fg::Config>& configs) {
  std::size_t axes = 0;
  std::size_t bad = 0;
  for (const fg::Config& c : configs) {
    if (c.q() > 31) continue;
    for (int i = 0; i < c.r(); ++i) {
      const auto pts = fg::AxisCoordinates(c, i);
      ++axes;
      if (fg::StabilizerOfAxis(c, i) !=
          blowup::reference::StabilizerPgl2Serial(c.field(), pts)) {
        ++bad;
      }
    }
  }
  return {bad == 0, "stabilizer vs PGL2 enumeration on " +
                        std::to_string(axes) + " axes, " +
                        std::to_string(bad) + " mismatches"};
}

Outcome IncidenceOracle(const fg::Config& c) {
  const auto comps = blowup::rigidity::Components(c);
  std::size_t pairs = 0;
  std::size_t bad = 0;
  for (std::size_t a = 0; a < comps.size(); ++a) {
    for (std::size_t b = a + 1; b < comps.size(); ++b) {
      ++pairs;
      if (blowup::rigidity::Incident(c, comps[a], comps[b]) !=
          blowup::reference::PointLevelIncident(c, comps[a], comps[b])) {
        ++bad;
      }
    }
  }
  return {bad == 0, Label(c) + " incidence on " + std::to_string(pairs) +
                        " pairs, " + std::to_string(bad) + " mismatches"};
}

Outcome Criterion8() {
  std::vector<fg::Config> configs{C0()};
  for (const SweepPoint& pt : SweepConfigs()) configs.push_back(pt.config);
  std::vector<Outcome> parts{StabilizerOracle(configs), IncidenceOracle(C0())};
  try {
    parts.push_back(IncidenceOracle(C1(7)));
  } catch (const Error& e) {
    parts.push_back(Infeasible("C1 at q=7", e));
  }
  return Combine(parts);
}

Outcome Criterion8b() {
  const fg::Config c1 = C1(13);
  return Combine({StabilizerOracle({c1}), IncidenceOracle(c1)});
}

std::optional<std::string> Capture(const std::string& command) {
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(command.c_str(), "r"), pclose);
  if (!pipe) return std::nullopt;
  std::string out;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) {
    out.append(buf.data(), got);
  }
  return out;
}

Outcome Criterion9() {
  const std::string command = std::string("\"") + BLOWUP_VERIFY_BIN +
                              "\" verify --config \"" + BLOWUP_DATA_DIR +
                              "/c0.json\"";
  const auto first = Capture(command);
  const auto second = Capture(command);
  if (!first || !second || first->empty()) {
    return {false, "could not run " + command};
  }
  return {*first == *second, "two runs of verify on C0: " +
                                 std::to_string(first->size()) + " bytes, " +
                                 (*first == *second ? "identical" : "differ")};
}

struct Criterion {
  std::string id;
  std::string title;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& Criteria() {
  static const std::vector<Criterion> all{
      {"1", "hyperplane-line pairings on the sweep", Criterion1},
      {"2", "gamma-exceptional pairings on the sweep", Criterion2},
      {"3", "spade and diamond identities, random draws", Criterion3},
      {"4", "extremality on C0", Criterion4},
      {"5", "census profiles on the sweep", Criterion5},
      {"6", "geometric automorphisms on C0 and C1 (q=7)", Criterion6},
      {"6b", "geometric automorphisms on C1 at q=13 (supplementary)", Criterion6b},
      {"7", "vector-field kernels on the sweep, two fields", Criterion7},
      {"8", "oracle equivalences on C0, C1 (q=7) and the sweep", Criterion8},
      {"8b", "oracle equivalences on C1 at q=13 (supplementary)", Criterion8b},
      {"9", "byte-identical reports", Criterion9},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<std::string> wanted(argv + 1, argv + argc);
  bool all_pass = true;
  std::size_t ran = 0;
  for (const Criterion& c : Criteria()) {
    if (!wanted.empty() && !wanted.contains(c.id)) continue;
    ++ran;
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("error: ") + e.what()};
    }
    all_pass = all_pass && out.pass;
    std::cout << (out.pass ? "PASS" : "FAIL") << "  criterion " << c.id << "  "
              << c.title << ": " << out.detail << std::endl;
  }
  if (ran == 0) {
    std::cerr << "no such criterion\n";
    return 2;
  }
  return all_pass ? 0 : 1;
}
