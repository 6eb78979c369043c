// Copyright 2026 The bpir Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef BPIR_PARAMS_HPP_
#define BPIR_PARAMS_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "bpir/field.hpp"

namespace bpir {

enum class Regime { kFull, kTrivial, kInfeasible };

std::string_view regime_name(Regime r);

// System parameters: N databases, M messages, T-collusion, B Byzantine and
// U unresponsive databases, field modulus q and experiment seed.
struct Params {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t t = 1;
  std::size_t b = 0;
  std::size_t u = 0;
  std::uint32_t q = kDefaultModulus;
  std::uint64_t seed = 0;

  // Throws ParameterError unless N, M, T >= 1.
  void check() const;

  // N - 2B - U; the number of databases the scheme can count on to answer
  // honestly. Only meaningful in the FULL regime.
  std::size_t honest_span() const { return n - 2 * b - u; }

  std::string to_string() const;

  friend bool operator==(const Params&, const Params&) = default;
};

// FULL: 2B + T + U < N.  TRIVIAL: 2B + 1 <= N - U <= 2B + T.
// INFEASIBLE: everything else.
Regime classify_regime(const Params& p);

// Overflow-checked helpers for the combinatorial counts.
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_pow(std::uint64_t base, std::size_t exp);
std::uint64_t binomial(std::size_t n, std::size_t k);

}  // namespace bpir

#endif  // BPIR_PARAMS_HPP_
