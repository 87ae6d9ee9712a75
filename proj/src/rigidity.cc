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

#include "blowup/rigidity.h"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

#include "blowup/error.h"

namespace blowup::rigidity {

using fieldgeom::Config;


namespace {

int AxisOfPoint(const Config& config, std::size_t p) {
  return config.delta().at(p).axis;
}

std::size_t NsOf(const Config& config, int axis) {
  return config.axis_size(axis);
}

}  // namespace

std::string ComponentId::Label(const Config& config) const {
  switch (kind) {
    case ComponentKind::kExceptional:
      return "E_" + config.delta().at(point).Label();
    case ComponentKind::kLine:
      return "l" + std::to_string(axis + 1);
    case ComponentKind::kGamma:
      return "g_" + config.delta().at(point).Label() + "_" +
             std::to_string(axis + 1);
  }
  return "?";
}

std::vector<ComponentId> Components(const Config& config) {
  const std::size_t np = config.delta().size();
  std::vector<ComponentId> out;
  for (std::size_t p = 0; p < np; ++p) {
    out.push_back({ComponentKind::kExceptional, p, -1});
  }
  for (int i = 0; i < config.r(); ++i) {
    out.push_back({ComponentKind::kLine, 0, i});
  }
  for (std::size_t p = 0; p < np; ++p) {
    for (int i = 0; i < config.r(); ++i) {
      if (AxisOfPoint(config, p) != i) {
        out.push_back({ComponentKind::kGamma, p, i});
      }
    }
  }
  return out;
}

std::size_t ExpectedComponentCount(const Config& config) {
  const std::size_t np = config.delta().size();
  std::size_t total = np + static_cast<std::size_t>(config.r());
  for (int i = 0; i < config.r(); ++i) total += np - NsOf(config, i);
  return total;
}

bool Incident(const Config& config, const ComponentId& a,
              const ComponentId& b) {
  if (a == b) {
    throw Error(ErrorCode::kInvalidArgument, "incidence of a component with itself");
  }
  // Order the pair as E < line < gamma to halve the case analysis.
  if (b.kind < a.kind) return Incident(config, b, a);
  using K = ComponentKind;
  if (a.kind == K::kExceptional) {
    switch (b.kind) {
      case K::kExceptional: return false;
      case K::kLine: return AxisOfPoint(config, a.point) == b.axis;
      case K::kGamma: return a.point == b.point;
    }
  }
  if (a.kind == K::kLine) {
    // Lines all pass through the origin, which is not blown up.
    return b.kind == K::kLine;
  }
  // Two gammas: gamma~_{p,i} and gamma~_{q,m} meet off Delta exactly when
  // each varies along the other's point axis.
  return AxisOfPoint(config, a.point) == b.axis &&
         AxisOfPoint(config, b.point) == a.axis &&
         a.axis != AxisOfPoint(config, a.point);
}

std::size_t IncidenceGraph::EdgeCount() const {
  std::size_t total = 0;
  for (const auto& row : adjacency) total += row.size();
  return total / 2;
}

bool IncidenceGraph::HasEdge(std::size_t a, std::size_t b) const {
  const auto& row = adjacency.at(a);
  return std::binary_search(row.begin(), row.end(), b);
}

nlohmann::json IncidenceGraph::ToJson(const Config& config) const {
  nlohmann::json vs = nlohmann::json::array();
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    nlohmann::json nbrs = nlohmann::json::array();
    for (std::size_t w : adjacency[v]) nbrs.push_back(vertices[w].Label(config));
    vs.push_back({{"id", vertices[v].Label(config)},
                  {"dim", vertices[v].Dim(config.r())},
                  {"neighbors", nbrs}});
  }
  return {{"vertices", vs}, {"edges", EdgeCount()}};
}

std::string IncidenceGraph::ToDot(const Config& config) const {
  std::ostringstream out;
  out << "graph F {\n";
  for (const ComponentId& v : vertices) {
    out << "  \"" << v.Label(config) << "\""
        << (v.kind == ComponentKind::kExceptional ? " [shape=box]" : "")
        << ";\n";
  }
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    for (std::size_t w : adjacency[v]) {
      if (w <= v) continue;
      out << "  \"" << vertices[v].Label(config) << "\" -- \""
          << vertices[w].Label(config) << "\";\n";
    }
  }
  out << "}\n";
  return out.str();
}

IncidenceGraph BuildGraph(const Config& config) {
  IncidenceGraph g;
  g.vertices = Components(config);
  const std::size_t count = g.vertices.size();
  g.adjacency.assign(count, {});
  // Row v holds the neighbors w of v; each row is computed independently.
#pragma omp parallel for schedule(dynamic, 8)
  for (std::size_t v = 0; v < count; ++v) {
    for (std::size_t w = 0; w < count; ++w) {
      if (w != v && Incident(config, g.vertices[v], g.vertices[w])) {
        g.adjacency[v].push_back(w);
      }
    }
  }
  return g;
}

std::vector<Profile> Census(const IncidenceGraph& graph) {
  std::vector<Profile> out(graph.vertices.size());
  for (std::size_t v = 0; v < graph.vertices.size(); ++v) {
    for (std::size_t w : graph.adjacency[v]) {
      if (graph.vertices[w].kind == ComponentKind::kExceptional) {
        ++out[v].divisor_neighbors;
      } else {
        ++out[v].curve_neighbors;
      }
    }
  }
  return out;
}

Profile ExpectedProfile(const Config& config, const ComponentId& c) {
  const auto r = static_cast<std::size_t>(config.r());
  switch (c.kind) {
    case ComponentKind::kExceptional: return {0, r};
    case ComponentKind::kGamma: return {1, NsOf(config, c.axis)};
    case ComponentKind::kLine: return {NsOf(config, c.axis), r - 1};
  }
  return {};
}

std::size_t StatedTotal(const Config& config, const ComponentId& c) {
  switch (c.kind) {
    case ComponentKind::kExceptional: return static_cast<std::size_t>(config.r());
    case ComponentKind::kGamma: return NsOf(config, c.axis) + 1;
    case ComponentKind::kLine: return NsOf(config, c.axis);
  }
  return 0;
}

nlohmann::json PinningCertificate::ToJson() const {
  return {{"exceptional_rule", exceptional_rule},
          {"exceptional_degrees", exceptional_degrees},
          {"line_divisor_degrees", line_divisor_degrees}};
}

PinningCertificate PinComponents(const Config& config,
                                 const IncidenceGraph& graph,
                                 const std::vector<Profile>& census) {
  const int r = config.r();
  const auto& vs = graph.vertices;
  auto ambiguous = [&](const std::vector<std::size_t>& offenders,
                       const std::string& why) {
    std::string msg = why + ":";
    for (std::size_t v : offenders) msg += " " + vs[v].Label(config);
    throw Error(ErrorCode::kAmbiguousProfile, msg);
  };

  PinningCertificate cert;
  std::set<std::size_t> e_degrees;
  for (std::size_t v = 0; v < vs.size(); ++v) {
    if (vs[v].kind == ComponentKind::kExceptional) {
      e_degrees.insert(census[v].Total());
    }
  }
  cert.exceptional_degrees.assign(e_degrees.begin(), e_degrees.end());
  if (r >= 3) {
    cert.exceptional_rule = "dimension";
  } else {
    // Surfaces: the E_p must be exactly the vertices of total degree 2.
    cert.exceptional_rule = "degree";
    std::vector<std::size_t> offenders;
    for (std::size_t v = 0; v < vs.size(); ++v) {
      const bool is_e = vs[v].kind == ComponentKind::kExceptional;
      if (is_e != (census[v].Total() == 2)) offenders.push_back(v);
    }
    if (!offenders.empty()) {
      ambiguous(offenders, "exceptional divisors not singled out by degree 2");
    }
  }

  std::map<std::size_t, std::vector<std::size_t>> by_divisor_count;
  for (std::size_t v = 0; v < vs.size(); ++v) {
    if (vs[v].kind != ComponentKind::kExceptional) {
      by_divisor_count[census[v].divisor_neighbors].push_back(v);
    }
  }
  cert.line_divisor_degrees.assign(r, 0);
  for (std::size_t v = 0; v < vs.size(); ++v) {
    if (vs[v].kind != ComponentKind::kLine) continue;
    const std::size_t d = census[v].divisor_neighbors;
    const auto& same = by_divisor_count[d];
    if (same.size() != 1) {
      ambiguous(same, "curve vertices share divisor-neighbor count " +
                          std::to_string(d));
    }
    cert.line_divisor_degrees[vs[v].axis] = d;
  }
  return cert;
}

nlohmann::json GeometricAut::ToJson() const {
  nlohmann::json ms = nlohmann::json::array();
  for (const MoebiusMap& m : maps) ms.push_back(m.ToString());
  return {{"maps", ms}, {"exponents", exponents}, {"permutation", permutation}};
}

std::optional<std::pair<int, MoebiusMap>> ExtraStabilizerElement(
    const Config& config) {
  std::set<MoebiusMap> scalings;
  for (int k = 0; k < config.n(); ++k) {
    scalings.insert(MoebiusMap::Scaling(config.zeta().pow(k)));
  }
  for (int i = 0; i < config.r(); ++i) {
    for (const MoebiusMap& m : fieldgeom::StabilizerOfAxis(config, i)) {
      if (!scalings.contains(m)) return std::make_pair(i, m);
    }
  }
  return std::nullopt;
}

std::vector<GeometricAut> GeometricAutomorphisms(const Config& config) {
  const int r = config.r();
  const int n = config.n();
  std::map<MoebiusMap, int> exponent_of;
  for (int k = 0; k < n; ++k) {
    exponent_of.emplace(MoebiusMap::Scaling(config.zeta().pow(k)), k);
  }
  std::vector<std::vector<MoebiusMap>> factors(r);
  for (int i = 0; i < r; ++i) {
    factors[i] = fieldgeom::StabilizerOfAxis(config, i);
    for (const MoebiusMap& m : factors[i]) {
      if (!exponent_of.contains(m)) {
        throw Error(ErrorCode::kNonGeneric,
                    "axis " + std::to_string(i + 1) + " is stabilized by " +
                        m.ToString());
      }
    }
  }

  const auto& delta = config.delta();
  std::vector<GeometricAut> out;
  std::vector<std::size_t> pick(r, 0);
  while (true) {
    GeometricAut g;
    for (int i = 0; i < r; ++i) {
      g.maps.push_back(factors[i][pick[i]]);
      g.exponents.push_back(exponent_of.at(factors[i][pick[i]]));
    }
    g.permutation.resize(delta.size());
    for (std::size_t p = 0; p < delta.size(); ++p) {
      const int axis = delta[p].axis;
      const auto image = config.Find(axis, g.maps[axis].Apply(delta[p].coord));
      if (!image) {
        throw std::logic_error("stabilizer element moves a point off Delta");
      }
      g.permutation[p] = *image;
    }
    out.push_back(std::move(g));
    int i = r - 1;
    while (i >= 0 && ++pick[i] == factors[i].size()) pick[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

std::optional<std::uint64_t> AbstractAutomorphismCount(
    const IncidenceGraph& graph, std::size_t max_vertices) {
  const std::size_t count = graph.vertices.size();
  if (count > max_vertices) return std::nullopt;
  std::vector<std::vector<char>> adj(count, std::vector<char>(count, 0));
  for (std::size_t v = 0; v < count; ++v) {
    for (std::size_t w : graph.adjacency[v]) adj[v][w] = 1;
  }
  std::vector<std::size_t> image(count);
  std::vector<char> used(count, 0);
  std::uint64_t total = 0;
  std::function<void(std::size_t)> extend = [&](std::size_t v) {
    if (v == count) {
      ++total;
      return;
    }
    for (std::size_t w = 0; w < count; ++w) {
      if (used[w] || graph.adjacency[w].size() != graph.adjacency[v].size()) {
        continue;
      }
      bool ok = true;
      for (std::size_t u = 0; u < v && ok; ++u) {
        ok = adj[u][v] == adj[image[u]][w];
      }
      if (!ok) continue;
      image[v] = w;
      used[w] = 1;
      extend(v + 1);
      used[w] = 0;
    }
  };
  extend(0);
  return total;
}

namespace {

std::vector<std::size_t> ComposePerm(const std::vector<std::size_t>& a,
                                     const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[b[k]];
  return out;
}

bool IsIdentityPerm(const std::vector<std::size_t>& a) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] != k) return false;
  }
  return true;
}

}  // namespace

ReportFragment VerifyRigidity(const Config& config) {
  ReportFragment out;
  const IncidenceGraph graph = BuildGraph(config);
  const std::vector<Profile> census = Census(graph);
  const auto& vs = graph.vertices;

  {
    CheckRecord rec{"rigidity.incidence_graph", Anchor::kIncidenceGraph};
    bool symmetric = true;
    for (std::size_t v = 0; v < vs.size(); ++v) {
      for (std::size_t w : graph.adjacency[v]) {
        symmetric = symmetric && w != v && graph.HasEdge(w, v);
      }
    }
    std::size_t divisor_side = 0;
    std::size_t exceptional_side = 0;
    for (std::size_t v = 0; v < vs.size(); ++v) {
      divisor_side += census[v].divisor_neighbors;
      if (vs[v].kind == ComponentKind::kExceptional) {
        exceptional_side += census[v].curve_neighbors;
      }
    }
    rec.computed = {{"vertices", vs.size()},
                    {"edges", graph.EdgeCount()},
                    {"symmetric_irreflexive", symmetric},
                    {"handshake", {divisor_side, exceptional_side}}};
    rec.expected = {{"vertices", ExpectedComponentCount(config)},
                    {"symmetric_irreflexive", true}};
    if (const auto autos = AbstractAutomorphismCount(graph)) {
      rec.computed["abstract_automorphisms"] = *autos;
      rec.note =
          "the uncolored graph has more automorphisms than the geometric group";
    }
    rec.status = vs.size() == ExpectedComponentCount(config) && symmetric &&
                         divisor_side == exceptional_side
                     ? Status::kPass
                     : Status::kFail;
    out.checks.push_back(std::move(rec));
  }

  auto census_check = [&](const std::string& id, Anchor anchor,
                          ComponentKind kind) {
    CheckRecord rec{id, anchor};
    std::set<std::pair<std::size_t, std::size_t>> seen;
    nlohmann::json divergences = nlohmann::json::array();
    std::size_t mismatches = 0;
    for (std::size_t v = 0; v < vs.size(); ++v) {
      if (vs[v].kind != kind) continue;
      const Profile want = ExpectedProfile(config, vs[v]);
      seen.insert({census[v].divisor_neighbors, census[v].curve_neighbors});
      if (census[v] != want) ++mismatches;
      if (census[v].Total() != StatedTotal(config, vs[v])) {
        divergences.push_back({{"vertex", vs[v].Label(config)},
                               {"computed_total", census[v].Total()},
                               {"stated_total", StatedTotal(config, vs[v])}});
      }
    }
    nlohmann::json profiles = nlohmann::json::array();
    for (const auto& [d, c] : seen) profiles.push_back({d, c});
    rec.computed = {{"profiles", profiles}, {"mismatches", mismatches}};
    rec.expected = {{"mismatches", 0}};
    if (mismatches > 0) {
      rec.status = Status::kFail;
    } else if (!divergences.empty()) {
      rec.status = Status::kWarn;
      rec.computed["stated_total_divergence"] = divergences;
      rec.note =
          "each l~_i also meets the other r - 1 lines at the origin, which is "
          "not blown up; the stated count n s_i omits them";
    } else {
      rec.status = Status::kPass;
    }
    out.checks.push_back(std::move(rec));
  };
  census_check("rigidity.census_exceptional", Anchor::kCensusExceptional,
               ComponentKind::kExceptional);
  census_check("rigidity.census_gamma", Anchor::kCensusGamma,
               ComponentKind::kGamma);
  census_check("rigidity.census_line", Anchor::kCensusLine,
               ComponentKind::kLine);

  {
    CheckRecord rec{"rigidity.pinning", Anchor::kPinning};
    try {
      rec.computed = PinComponents(config, graph, census).ToJson();
      rec.status = Status::kPass;
    } catch (const Error& e) {
      rec.computed = {{"error", e.what()}};
      rec.status = Status::kFail;
    }
    out.checks.push_back(std::move(rec));
  }

  {
    CheckRecord rec{"rigidity.automorphism_group", Anchor::kAutomorphismGroup};
    const int r = config.r();
    const int n = config.n();
    std::size_t want_order = 1;
    for (int i = 0; i < r; ++i) want_order *= static_cast<std::size_t>(n);
    rec.expected = {{"order", want_order},
                    {"exponent", n},
                    {"equals_g_action", true}};
    try {
      const auto group = GeometricAutomorphisms(config);
      std::set<std::vector<std::size_t>> perms;
      std::set<std::vector<std::size_t>> g_image;
      bool matches_g = true;
      for (const GeometricAut& g : group) {
        perms.insert(g.permutation);
        matches_g = matches_g &&
                    g.permutation ==
                        fieldgeom::GActionPermutation(config, g.exponents);
      }
      std::vector<int> exps(r, 0);
      while (true) {
        g_image.insert(fieldgeom::GActionPermutation(config, exps));
        int i = r - 1;
        while (i >= 0 && ++exps[i] == n) exps[i--] = 0;
        if (i < 0) break;
      }
      // Exponent of the permutation group, closure and commutativity.
      std::size_t exponent = 1;
      bool closed = true;
      bool abelian = true;
      for (const auto& a : perms) {
        std::vector<std::size_t> power = a;
        std::size_t order = 1;
        while (!IsIdentityPerm(power) && order <= want_order) {
          power = ComposePerm(power, a);
          ++order;
        }
        exponent = std::lcm(exponent, order);
        for (const auto& b : perms) {
          const auto ab = ComposePerm(a, b);
          closed = closed && perms.contains(ab);
          abelian = abelian && ab == ComposePerm(b, a);
        }
      }
      const bool identity_present = [&] {
        for (const GeometricAut& g : group) {
          bool id = true;
          for (const MoebiusMap& m : g.maps) id = id && m.IsIdentity();
          if (id) return IsIdentityPerm(g.permutation);
        }
        return false;
      }();
      nlohmann::json elements = nlohmann::json::array();
      for (const GeometricAut& g : group) elements.push_back(g.ToJson());
      rec.computed = {{"order", group.size()},
                      {"distinct_permutations", perms.size()},
                      {"exponent", exponent},
                      {"closed", closed},
                      {"abelian", abelian},
                      {"identity_present", identity_present},
                      {"equals_g_action", matches_g && perms == g_image},
                      {"elements", elements}};
      const bool ok = group.size() == want_order && perms.size() == want_order &&
                      exponent == static_cast<std::size_t>(n) && closed &&
                      abelian && identity_present && matches_g &&
                      perms == g_image;
      rec.status = ok ? Status::kPass : Status::kFail;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNonGeneric) throw;
      rec.computed = {{"error", e.what()}};
      if (const auto extra = ExtraStabilizerElement(config)) {
        rec.computed["extra_map"] = {{"axis", extra->first + 1},
                                     {"map", extra->second.ToString()}};
      }
      rec.status = Status::kFail;
    }
    out.checks.push_back(std::move(rec));
  }
  return out;
}

}  // namespace blowup::rigidity
