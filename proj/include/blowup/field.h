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

#ifndef BLOWUP_FIELD_H_
#define BLOWUP_FIELD_H_

#include <compare>
#include <cstdint>
#include <string>

namespace blowup::fieldgeom {

class FieldElement;

// Largest modulus accepted; keeps products of two residues inside 64 bits.
inline constexpr std::int64_t kMaxModulus = (std::int64_t{1} << 31) - 1;

bool IsPrime(std::int64_t q);

// The prime field F_q. Primality is verified once, at construction; every
// FieldElement is minted by a PrimeField and so carries a prime modulus.
class PrimeField {
 public:
  explicit PrimeField(std::int64_t q);

  std::uint32_t modulus() const { return q_; }

  // Reduces any integer (negative included) into [0, q).
  FieldElement operator()(std::int64_t value) const;
  FieldElement zero() const;
  FieldElement one() const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t q_;
};

class FieldElement {
 public:
  std::uint32_t value() const { return value_; }
  std::uint32_t modulus() const { return modulus_; }
  bool is_zero() const { return value_ == 0; }

  FieldElement operator+(const FieldElement& other) const;
  FieldElement operator-(const FieldElement& other) const;
  FieldElement operator*(const FieldElement& other) const;
  FieldElement operator-() const;
  FieldElement inverse() const;
  FieldElement pow(std::uint64_t exponent) const;

  // Multiplicative order; the element must be nonzero.
  std::uint64_t order() const;

  friend bool operator==(const FieldElement&, const FieldElement&) = default;
  friend auto operator<=>(const FieldElement&, const FieldElement&) = default;

 private:
  friend class PrimeField;
  FieldElement(std::uint32_t value, std::uint32_t modulus)
      : value_(value), modulus_(modulus) {}

  void RequireSameField(const FieldElement& other) const;

  std::uint32_t value_;
  std::uint32_t modulus_;
};

// Smallest-valued element of exact multiplicative order n in F_q^*.
FieldElement PrimitiveNthRoot(std::int64_t q, std::int64_t n);

// A point [u:v] of P^1(F_q), stored in the normal form [1:z] or [0:1].
class ProjPoint {
 public:
  ProjPoint(const FieldElement& u, const FieldElement& v);

  static ProjPoint Affine(const FieldElement& z);  // [1:z]
  static ProjPoint ZeroOne(const PrimeField& field);  // [0:1]
  static ProjPoint OneZero(const PrimeField& field);  // [1:0]

  const FieldElement& u() const { return u_; }
  const FieldElement& v() const { return v_; }
  std::uint32_t modulus() const { return u_.modulus(); }

  // Dense key in [0, q]: z for [1:z], q for [0:1].
  std::uint32_t key() const;

  std::string ToString() const;

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
  friend auto operator<=>(const ProjPoint&, const ProjPoint&) = default;

 private:
  FieldElement u_;
  FieldElement v_;
};

}  // namespace blowup::fieldgeom

#endif  // BLOWUP_FIELD_H_
