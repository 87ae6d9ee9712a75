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

#include "blowup/field.h"

#include <sstream>
#include <vector>

#include "blowup/error.h"

namespace blowup::fieldgeom {

bool IsPrime(std::int64_t q) {
  if (q < 2) return false;
  if (q % 2 == 0) return q == 2;
  for (std::int64_t d = 3; d * d <= q; d += 2) {
    if (q % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::int64_t q) {
  if (q > kMaxModulus) {
    throw Error(ErrorCode::kInvalidArgument,
                "modulus " + std::to_string(q) + " exceeds 2^31 - 1");
  }
  if (!IsPrime(q)) {
    throw Error(ErrorCode::kNotPrime, std::to_string(q) + " is not prime");
  }
  q_ = static_cast<std::uint32_t>(q);
}

FieldElement PrimeField::operator()(std::int64_t value) const {
  std::int64_t r = value % static_cast<std::int64_t>(q_);
  if (r < 0) r += q_;
  return FieldElement(static_cast<std::uint32_t>(r), q_);
}

FieldElement PrimeField::zero() const { return FieldElement(0, q_); }
FieldElement PrimeField::one() const { return FieldElement(1, q_); }

void FieldElement::RequireSameField(const FieldElement& other) const {
  if (modulus_ != other.modulus_) {
    throw Error(ErrorCode::kModulusMismatch,
                "F_" + std::to_string(modulus_) + " vs F_" +
                    std::to_string(other.modulus_));
  }
}

FieldElement FieldElement::operator+(const FieldElement& other) const {
  RequireSameField(other);
  std::uint64_t s = std::uint64_t{value_} + other.value_;
  if (s >= modulus_) s -= modulus_;
  return FieldElement(static_cast<std::uint32_t>(s), modulus_);
}

FieldElement FieldElement::operator-(const FieldElement& other) const {
  RequireSameField(other);
  std::uint64_t s = std::uint64_t{value_} + modulus_ - other.value_;
  if (s >= modulus_) s -= modulus_;
  return FieldElement(static_cast<std::uint32_t>(s), modulus_);
}

FieldElement FieldElement::operator*(const FieldElement& other) const {
  RequireSameField(other);
  std::uint64_t p = std::uint64_t{value_} * other.value_ % modulus_;
  return FieldElement(static_cast<std::uint32_t>(p), modulus_);
}

FieldElement FieldElement::operator-() const {
  return FieldElement(value_ == 0 ? 0 : modulus_ - value_, modulus_);
}

FieldElement FieldElement::pow(std::uint64_t exponent) const {
  FieldElement result(1 % modulus_, modulus_);
  FieldElement base = *this;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    base = base * base;
    exponent >>= 1;
  }
  return result;
}

FieldElement FieldElement::inverse() const {
  if (value_ == 0) {
    throw Error(ErrorCode::kInvalidArgument, "inverse of zero");
  }
  return pow(modulus_ - 2);
}

std::uint64_t FieldElement::order() const {
  if (value_ == 0) {
    throw Error(ErrorCode::kInvalidArgument, "order of zero");
  }
  // The order divides q - 1; test divisors in increasing order.
  const std::uint64_t group = modulus_ - 1;
  std::vector<std::uint64_t> large;
  for (std::uint64_t d = 1; d * d <= group; ++d) {
    if (group % d != 0) continue;
    if (pow(d).value_ == 1) return d;
    if (d * d != group) large.push_back(group / d);
  }
  for (auto it = large.rbegin(); it != large.rend(); ++it) {
    if (pow(*it).value_ == 1) return *it;
  }
  return group;
}

FieldElement PrimitiveNthRoot(std::int64_t q, std::int64_t n) {
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument, "n must be at least 2");
  }
  PrimeField field(q);
  if ((q - 1) % n != 0) {
    throw Error(ErrorCode::kNDoesNotDivide,
                std::to_string(n) + " does not divide " + std::to_string(q - 1));
  }
  for (std::int64_t z = 2; z < q; ++z) {
    FieldElement x = field(z);
    if (x.order() == static_cast<std::uint64_t>(n)) return x;
  }
  throw Error(ErrorCode::kInvalidArgument, "no element of order n");
}

ProjPoint::ProjPoint(const FieldElement& u, const FieldElement& v)
    : u_(u), v_(v) {
  if (u.modulus() != v.modulus()) {
    throw Error(ErrorCode::kModulusMismatch, "projective point coordinates");
  }
  if (u.is_zero() && v.is_zero()) {
    throw Error(ErrorCode::kInvalidArgument, "[0:0] is not a point");
  }
  if (!u.is_zero()) {
    v_ = v * u.inverse();
    u_ = u * u.inverse();
  } else {
    v_ = v * v.inverse();
  }
}

ProjPoint ProjPoint::Affine(const FieldElement& z) {
  return ProjPoint(z.pow(0), z);
}

ProjPoint ProjPoint::ZeroOne(const PrimeField& field) {
  return ProjPoint(field.zero(), field.one());
}

ProjPoint ProjPoint::OneZero(const PrimeField& field) {
  return ProjPoint(field.one(), field.zero());
}

std::uint32_t ProjPoint::key() const {
  return u_.is_zero() ? u_.modulus() : v_.value();
}

std::string ProjPoint::ToString() const {
  std::ostringstream os;
  os << '[' << u_.value() << ':' << v_.value() << ']';
  return os.str();
}

}  // namespace blowup::fieldgeom
