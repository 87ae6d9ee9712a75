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

#ifndef BLOWUP_DRAWS_H_
#define BLOWUP_DRAWS_H_

#include <cstdint>
#include <random>

namespace blowup {

// Reproducible integer draws: std::minstd_rand (x <- 48271 x mod 2^31 - 1)
// reduced by plain modulo, so results do not depend on the standard
// library's distribution implementations.
class Draws {
 public:
  explicit Draws(std::uint64_t seed)
      : engine_(static_cast<std::minstd_rand::result_type>(
            seed % std::minstd_rand::modulus)) {}

  std::uint64_t Raw() { return engine_(); }

  // Uniform-ish integer in [lo, hi].
  std::int64_t Uniform(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::minstd_rand engine_;
};

}  // namespace blowup

#endif  // BLOWUP_DRAWS_H_
