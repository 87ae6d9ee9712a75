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

#ifndef BLOWUP_VECTOR_FIELDS_H_
#define BLOWUP_VECTOR_FIELDS_H_

#include <cstddef>
#include <string>
#include <vector>

#include "blowup/check.h"
#include "blowup/config.h"
#include "blowup/field.h"
#include "json.hpp"

namespace blowup::vectorfields {

// Coordinates on (M_2)^r: block i holds the entries (a, b, c, d) of A_i at
// columns 4i .. 4i + 3.
using Vector = std::vector<fieldgeom::FieldElement>;

struct ConstraintRow {
  Vector coeffs;
  int block = 0;
  std::string source;
};

// det[A v | v] = 0 for v = (x, y) on the given block:
// a xy + b y^2 - c x^2 - d xy = 0.
ConstraintRow EigenConstraintRow(const fieldgeom::ProjPoint& v, int block,
                                 int r, std::string source = "");

// For every p in Delta and every axis i, the row of the i-th coordinate of
// p on block i: [1 : z_p] on the axis of p, [0:1] elsewhere.
std::vector<ConstraintRow> AssembleSystem(const fieldgeom::Config& config);

struct KernelResult {
  std::size_t columns = 0;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;  // pivot column per RREF row
  std::vector<Vector> basis;        // one vector per free column

  std::size_t dimension() const { return basis.size(); }
};

// Exact reduced row echelon form over F_q.
KernelResult DerivationKernel(const fieldgeom::PrimeField& field,
                              const std::vector<ConstraintRow>& rows,
                              std::size_t columns);
KernelResult DerivationKernel(const fieldgeom::Config& config);

// A_i = lambda_i I on every block.
bool IsScalarTuple(const Vector& v);
// Kernel has dimension r and consists of scalar tuples.
bool KernelIsScalar(const KernelResult& kernel, int r);

// Distinct eigenvector directions imposed on each block.
std::vector<std::size_t> DirectionsPerBlock(const fieldgeom::Config& config);

nlohmann::json VectorToJson(const Vector& v);
nlohmann::json SystemToJson(const std::vector<ConstraintRow>& rows);

ReportFragment VerifyVanishing(const fieldgeom::Config& config);

}  // namespace blowup::vectorfields

#endif  // BLOWUP_VECTOR_FIELDS_H_
