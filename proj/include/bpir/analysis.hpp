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


#ifndef BPIR_ANALYSIS_HPP_
#define BPIR_ANALYSIS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bpir/params.hpp"
#include "bpir/scheme.hpp"

namespace bpir {

// Exact, always normalized, denominator > 0.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

Rational make_rational(std::int64_t num, std::int64_t den = 1);
std::string to_fraction(const Rational& r);   // "9/25", "0", "1"
std::string to_decimal(const Rational& r, int digits = 6);
double to_double(const Rational& r);

struct Capacity {
  Regime regime = Regime::kFull;
  Rational value;
};

// Closed form over the three regimes (U = 0).
Capacity capacity(std::size_t n, std::size_t m, std::size_t t, std::size_t b);

// Same with U unresponsive databases; reduces to capacity() at U = 0.
Capacity capacity(const Params& p);

// B = 0 formula, (1 - T/N) / (1 - (T/N)^M). Requires T < N.
Rational tpir_capacity(std::size_t n, std::size_t m, std::size_t t);

// (N-2B-U)/(N-U) (1 - T/(N-2B-U)) / (1 - (T/(N-2B-U))^M); RegimeError unless
// 2B + T + U < N.
Rational capacity_unresponsive(std::size_t n, std::size_t m, std::size_t t,
                               std::size_t b, std::size_t u);

// Rate after B~ identified Byzantine databases are dropped from the system:
// (N+B~-2B)/(N-B~) (1 - T/(N+B~-2B)) / (1 - (T/(N+B~-2B))^M).
Rational post_expurgation_rate(std::size_t n, std::size_t m, std::size_t t,
                               std::size_t b, std::size_t b_tilde);

// 1 - 2 gamma for gamma < 1/2, else 0. ParameterError for gamma < 0.
Rational asymptotic_capacity(const Rational& gamma);

struct RateReport {
  Regime regime = Regime::kFull;
  std::uint64_t message_length = 0;  // L
  std::uint64_t download = 0;        // D
  Rational rate;
  Rational capacity;
  bool match = false;

  std::string to_json() const;
  static std::string csv_header();
  std::string to_csv() const;
};

// D counts one symbol per query spec, summed over all databases except the
// U busiest ones (the worst case for which databases go missing).
RateReport measure_rate(const QueryLayout& layout);
RateReport measure_rate(const QueryPlan& plan);

struct PrivacyAudit {
  std::vector<std::size_t> databases;      // the colluding set, 0-based
  std::vector<std::size_t> observed;       // per message: rows seen
  std::vector<std::size_t> rank;           // per message
  std::size_t expected = 0;                // T (N-2B-U)^{M-1}
  bool pass = false;
};

// Stacks every coefficient row hitting message m in the specs sent to
// `databases`; passes when all messages show the same row count and rank,
// equal to T (N-2B-U)^{M-1} in the FULL regime.
PrivacyAudit privacy_rank_audit(const QueryPlan& plan,
                                const std::vector<std::size_t>& databases);

// Every T-subset of databases.
std::vector<PrivacyAudit> privacy_audit_all(const QueryPlan& plan);

struct MonteCarloReport {
  std::size_t trials = 0;
  std::size_t database = 0;
  std::size_t outcomes = 0;  // size of one message's observation space
  // tv[m]: largest TV distance, over pairs of desired indices, between the
  // empirical distributions of message m's observed values.
  std::vector<double> tv;
  double max_tv = 0.0;
  bool empty() const { return trials == 0; }
};

// Fixed nonzero random messages; per trial and per desired index a fresh
// plan (layout and mixing matrices). The observation of message m is the
// tuple of values <coeff, W_m> over the specs of `database` that touch m.
// InstanceTooLargeError when q^{tuple length} > 1e4.
MonteCarloReport privacy_monte_carlo(const Params& p, std::size_t trials,
                                     std::size_t database = 0);

struct ProbeReport {
  std::size_t pairs = 0;
  std::size_t collisions = 0;
  std::size_t honest_quorum = 0;  // N - 2B - U
};

// Random distinct message sets W, W~ under one plan; a collision is a pair
// whose honest answers agree on some N - 2B - U databases. With
// `only_message` set, W~ differs from W in that message only, by a
// difference some query actually sees.
ProbeReport confusability_probe(const Params& p, std::size_t desired,
                                std::size_t pairs,
                                std::optional<std::size_t> only_message = {});

}  // namespace bpir

#endif  // BPIR_ANALYSIS_HPP_
