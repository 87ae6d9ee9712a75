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

#include "blowup/vector_fields.h"

#include <set>
#include <utility>

#include "blowup/error.h"

namespace blowup::vectorfields {

using fieldgeom::Config;
using fieldgeom::FieldElement;
using fieldgeom::PrimeField;
using fieldgeom::ProjPoint;

ConstraintRow EigenConstraintRow(const ProjPoint& v, int block, int r,
                                 std::string source) {
  if (block < 0 || block >= r) {
    throw Error(ErrorCode::kAxisOutOfRange, "block " + std::to_string(block));
  }
  const FieldElement& x = v.u();
  const FieldElement& y = v.v();
  const FieldElement zero = x - x;
  ConstraintRow row;
  row.block = block;
  row.source = std::move(source);
  row.coeffs.assign(4 * static_cast<std::size_t>(r), zero);
  const std::size_t base = 4 * static_cast<std::size_t>(block);
  row.coeffs[base + 0] = x * y;
  row.coeffs[base + 1] = y * y;
  row.coeffs[base + 2] = -(x * x);
  row.coeffs[base + 3] = -(x * y);
  return row;
}

std::vector<ConstraintRow> AssembleSystem(const Config& config) {
  const int r = config.r();
  const ProjPoint origin = ProjPoint::ZeroOne(config.field());
  std::vector<ConstraintRow> rows;
  rows.reserve(config.delta().size() * static_cast<std::size_t>(r));
  for (const auto& p : config.delta()) {
    for (int i = 0; i < r; ++i) {
      rows.push_back(EigenConstraintRow(i == p.axis ? p.coord : origin, i, r,
                                        p.Label() + "/" + std::to_string(i + 1)));
    }
  }
  return rows;
}

KernelResult DerivationKernel(const PrimeField& field,
                              const std::vector<ConstraintRow>& rows,
                              std::size_t columns) {
  std::vector<Vector> m;
  m.reserve(rows.size());
  for (const ConstraintRow& row : rows) {
    if (row.coeffs.size() != columns) {
      throw Error(ErrorCode::kConfigMismatch, "constraint row length");
    }
    m.push_back(row.coeffs);
  }
  KernelResult out;
  out.columns = columns;
  std::vector<char> is_pivot(columns, 0);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < columns && rank < m.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][col].is_zero()) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    const FieldElement inv = m[rank][col].inverse();
    for (auto& x : m[rank]) x = x * inv;
    for (std::size_t row = 0; row < m.size(); ++row) {
      if (row == rank || m[row][col].is_zero()) continue;
      const FieldElement factor = m[row][col];
      for (std::size_t k = col; k < columns; ++k) {
        m[row][k] = m[row][k] - factor * m[rank][k];
      }
    }
    out.pivots.push_back(col);
    is_pivot[col] = 1;
    ++rank;
  }
  out.rank = rank;
  for (std::size_t free = 0; free < columns; ++free) {
    if (is_pivot[free]) continue;
    Vector v(columns, field.zero());
    v[free] = field.one();
    for (std::size_t k = 0; k < rank; ++k) v[out.pivots[k]] = -m[k][free];
    out.basis.push_back(std::move(v));
  }
  return out;
}

KernelResult DerivationKernel(const Config& config) {
  return DerivationKernel(config.field(), AssembleSystem(config),
                          4 * static_cast<std::size_t>(config.r()));
}

bool IsScalarTuple(const Vector& v) {
  for (std::size_t base = 0; base + 3 < v.size(); base += 4) {
    if (!v[base + 1].is_zero() || !v[base + 2].is_zero() ||
        v[base] != v[base + 3]) {
      return false;
    }
  }
  return true;
}

bool KernelIsScalar(const KernelResult& kernel, int r) {
  if (kernel.dimension() != static_cast<std::size_t>(r)) return false;
  for (const Vector& v : kernel.basis) {
    if (!IsScalarTuple(v)) return false;
  }
  return true;
}

std::vector<std::size_t> DirectionsPerBlock(const Config& config) {
  std::vector<std::set<ProjPoint>> dirs(config.r());
  const ProjPoint origin = ProjPoint::ZeroOne(config.field());
  for (const auto& p : config.delta()) {
    for (int i = 0; i < config.r(); ++i) {
      dirs[i].insert(i == p.axis ? p.coord : origin);
    }
  }
  std::vector<std::size_t> out;
  for (const auto& d : dirs) out.push_back(d.size());
  return out;
}

nlohmann::json VectorToJson(const Vector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const FieldElement& x : v) out.push_back(x.value());
  return out;
}

nlohmann::json SystemToJson(const std::vector<ConstraintRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const ConstraintRow& row : rows) {
    out.push_back({{"source", row.source},
                   {"block", row.block + 1},
                   {"coeffs", VectorToJson(row.coeffs)}});
  }
  return out;
}

ReportFragment VerifyVanishing(const Config& config) {
  ReportFragment out;
  CheckRecord rec{"vector_fields.kernel", Anchor::kVectorFields};
  const auto rows = AssembleSystem(config);
  const KernelResult kernel = DerivationKernel(
      config.field(), rows, 4 * static_cast<std::size_t>(config.r()));
  const auto directions = DirectionsPerBlock(config);
  bool enough_directions = true;
  for (std::size_t d : directions) enough_directions = enough_directions && d >= 3;

  rec.computed = {{"q", config.q()},
                  {"rows", rows.size()},
                  {"columns", kernel.columns},
                  {"rank", kernel.rank},
                  {"kernel_dimension", kernel.dimension()},
                  {"pivots", kernel.pivots},
                  {"directions_per_block", directions}};
  rec.expected = {{"kernel_dimension", config.r()}, {"kernel", "scalar"}};
  const bool scalar = KernelIsScalar(kernel, config.r());
  if (!scalar) {
    for (const Vector& v : kernel.basis) {
      if (!IsScalarTuple(v)) {
        rec.computed["nonscalar_kernel_vector"] = VectorToJson(v);
        break;
      }
    }
  }
  if (!enough_directions) {
    rec.note = "some block has fewer than 3 eigenvector directions";
  }
  rec.status = scalar ? Status::kPass : Status::kFail;
  out.checks.push_back(std::move(rec));
  return out;
}

}  // namespace blowup::vectorfields
