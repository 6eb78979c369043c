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


#include "bpir/params.hpp"

#include <limits>
#include <sstream>

namespace bpir {

std::string_view regime_name(Regime r) {
  switch (r) {
    case Regime::kFull:
      return "FULL";
    case Regime::kTrivial:
      return "TRIVIAL";
    case Regime::kInfeasible:
      return "INFEASIBLE";
  }
  return "?";
}

void Params::check() const {
  if (n < 1) throw ParameterError("N must be >= 1");
  if (m < 1) throw ParameterError("M must be >= 1");
  if (t < 1) throw ParameterError("T must be >= 1");
}

std::string Params::to_string() const {
  std::ostringstream os;
  os << "N=" << n << " M=" << m << " T=" << t << " B=" << b << " U=" << u
     << " q=" << q << " seed=" << seed;
  return os.str();
}

Regime classify_regime(const Params& p) {
  p.check();
  if (2 * p.b + p.t + p.u < p.n) return Regime::kFull;
  if (p.u < p.n) {
    const std::size_t responsive = p.n - p.u;
    if (2 * p.b + 1 <= responsive && responsive <= 2 * p.b + p.t) {
      return Regime::kTrivial;
    }
  }
  return Regime::kInfeasible;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    throw ParameterError("parameter set too large: count overflows 64 bits");
  }
  return a * b;
}

std::uint64_t checked_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = checked_mul(r, n - k + i) / i;
  }
  return r;
}

}  // namespace bpir
