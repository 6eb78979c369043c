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


#include "bpir/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "bpir/network.hpp"
#include "json.hpp"

namespace bpir {
namespace {

Rational frac(std::uint64_t num, std::uint64_t den) {
  return Rational(BigInt(num), BigInt(den));
}

Rational rpow(const Rational& base, std::size_t exp) {
  Rational out = 1;
  for (std::size_t i = 0; i < exp; ++i) out *= base;
  return out;
}

// h/(N-U) (1 - T/h) / (1 - (T/h)^M) with h = N - 2B - U.
Rational full_formula(std::size_t n, std::size_t m, std::size_t t,
                      std::size_t b, std::size_t u) {
  const std::uint64_t h = n - 2 * b - u;
  const Rational ratio = frac(t, h);
  return frac(h, n - u) * (1 - ratio) / (1 - rpow(ratio, m));
}

void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ParameterError("zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

std::string to_fraction(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string to_decimal(const Rational& r, int digits) {
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  const bool negative = num < 0;
  const BigInt a = negative ? BigInt(-num) : num;
  // Round half up on the magnitude.
  const BigInt scaled = (2 * a * scale + den) / (2 * den);
  const BigInt whole = scaled / scale;
  std::string out = (negative && scaled != 0 ? "-" : "") + whole.str();
  if (digits > 0) {
    std::string fraction = BigInt(scaled % scale).str();
    fraction.insert(0, static_cast<std::size_t>(digits) - fraction.size(), '0');
    out += "." + fraction;
  }
  return out;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Capacity capacity(std::size_t n, std::size_t m, std::size_t t, std::size_t b) {
  Params p;
  p.n = n;
  p.m = m;
  p.t = t;
  p.b = b;
  return capacity(p);
}

Capacity capacity(const Params& p) {
  p.check();
  Capacity c;
  c.regime = classify_regime(p);
  switch (c.regime) {
    case Regime::kFull:
      c.value = full_formula(p.n, p.m, p.t, p.b, p.u);
      break;
    case Regime::kTrivial:
      c.value = frac(1, (2 * p.b + 1) * p.m);
      break;
    case Regime::kInfeasible:
      c.value = 0;
      break;
  }
  return c;
}

Rational tpir_capacity(std::size_t n, std::size_t m, std::size_t t) {
  if (t == 0 || m == 0 || t >= n) {
    throw ParameterError("TPIR formula needs 1 <= T < N and M >= 1");
  }
  const Rational ratio = frac(t, n);
  return (1 - ratio) / (1 - rpow(ratio, m));
}

Rational capacity_unresponsive(std::size_t n, std::size_t m, std::size_t t,
                               std::size_t b, std::size_t u) {
  if (!(2 * b + t + u < n) || t == 0 || m == 0) {
    throw RegimeError("unresponsive capacity needs 2B + T + U < N");
  }
  return full_formula(n, m, t, b, u);
}

Rational post_expurgation_rate(std::size_t n, std::size_t m, std::size_t t,
                               std::size_t b, std::size_t b_tilde) {
  if (b_tilde > b) throw ParameterError("cannot remove more than B databases");
  // Dropping B~ identified databases leaves N - B~ databases with B - B~
  // Byzantine ones among them.
  if (!(2 * (b - b_tilde) + t < n - b_tilde) || t == 0 || m == 0) {
    throw RegimeError("post-expurgation system is not in the FULL regime");
  }
  const std::uint64_t h = n + b_tilde - 2 * b;
  const Rational ratio = frac(t, h);
  return frac(h, n - b_tilde) * (1 - ratio) / (1 - rpow(ratio, m));
}

Rational asymptotic_capacity(const Rational& gamma) {
  if (gamma < 0) throw ParameterError("gamma must be nonnegative");
  if (gamma >= frac(1, 2)) return 0;
  return 1 - 2 * gamma;
}

std::string RateReport::to_json() const {
  nlohmann::ordered_json j;
  j["regime"] = std::string(regime_name(regime));
  j["L"] = message_length;
  j["D"] = download;
  j["R_num"] = boost::multiprecision::numerator(rate).str();
  j["R_den"] = boost::multiprecision::denominator(rate).str();
  j["C_num"] = boost::multiprecision::numerator(capacity).str();
  j["C_den"] = boost::multiprecision::denominator(capacity).str();
  j["match"] = match;
  return j.dump();
}

std::string RateReport::csv_header() {
  return "regime,L,D,R_num,R_den,C_num,C_den,match";
}

std::string RateReport::to_csv() const {
  std::ostringstream os;
  os << regime_name(regime) << ',' << message_length << ',' << download << ','
     << boost::multiprecision::numerator(rate) << ','
     << boost::multiprecision::denominator(rate) << ','
     << boost::multiprecision::numerator(capacity) << ','
     << boost::multiprecision::denominator(capacity) << ','
     << (match ? "true" : "false");
  return os.str();
}

RateReport measure_rate(const QueryLayout& layout) {
  const Params& p = layout.params;
  std::vector<std::uint64_t> counts;
  for (const auto& slots : layout.slots) counts.push_back(slots.size());
  if (p.u > counts.size()) throw ParameterError("U exceeds the database count");
  std::sort(counts.begin(), counts.end());
  RateReport r;
  r.regime = layout.regime;
  r.message_length = layout.dims.message_length;
  for (std::size_t i = 0; i + p.u < counts.size(); ++i) r.download += counts[i];
  r.rate = r.download == 0 ? Rational(0) : frac(r.message_length, r.download);
  r.capacity = capacity(p).value;
  r.match = r.rate == r.capacity;
  return r;
}

RateReport measure_rate(const QueryPlan& plan) {
  // Counted from the specs actually sent, not from the layout.
  QueryLayout shadow;
  shadow.params = plan.params();
  shadow.regime = plan.layout.regime;
  shadow.dims.message_length = plan.message_length();
  shadow.slots.resize(plan.queries.size());
  for (std::size_t db = 0; db < plan.queries.size(); ++db) {
    shadow.slots[db].resize(plan.queries[db].size());
  }
  return measure_rate(shadow);
}

PrivacyAudit privacy_rank_audit(const QueryPlan& plan,
                                const std::vector<std::size_t>& databases) {
  const Params& p = plan.params();
  const std::size_t len = plan.message_length();
  PrivacyAudit a;
  a.databases = databases;
  std::vector<std::vector<FieldElement>> stacked(p.m);
  for (std::size_t db : databases) {
    for (const QuerySpec& spec : plan.queries.at(db)) {
      for (const CoefficientRow& term : spec.terms) {
        auto& rows = stacked.at(term.message);
        rows.insert(rows.end(), term.coefficients.begin(), term.coefficients.end());
      }
    }
  }
  for (std::size_t m = 0; m < p.m; ++m) {
    const std::size_t count = stacked[m].size() / len;
    a.observed.push_back(count);
    a.rank.push_back(mat_rank(plan.field, FieldMatrix(count, len, std::move(stacked[m]))));
  }
  const bool same_counts =
      std::adjacent_find(a.observed.begin(), a.observed.end(),
                         std::not_equal_to<>()) == a.observed.end();
  const bool same_ranks = std::adjacent_find(a.rank.begin(), a.rank.end(),
                                             std::not_equal_to<>()) == a.rank.end();
  if (plan.layout.regime == Regime::kFull) {
    a.expected = checked_mul(p.t, checked_pow(p.honest_span(), p.m - 1));
    a.pass = same_counts && same_ranks &&
             std::all_of(a.rank.begin(), a.rank.end(),
                         [&](std::size_t r) { return r == a.expected; }) &&
             std::all_of(a.observed.begin(), a.observed.end(),
                         [&](std::size_t c) { return c == a.expected; });
  } else {
    a.expected = a.rank.empty() ? 0 : a.rank.front();
    a.pass = same_counts && same_ranks;
  }
  return a;
}

std::vector<PrivacyAudit> privacy_audit_all(const QueryPlan& plan) {
  const Params& p = plan.params();
  std::vector<PrivacyAudit> out;
  for_each_subset(p.n, std::min(p.t, p.n), [&](const std::vector<std::size_t>& s) {
    out.push_back(privacy_rank_audit(plan, s));
  });
  return out;
}

MonteCarloReport privacy_monte_carlo(const Params& p, std::size_t trials,
                                     std::size_t database) {
  MonteCarloReport report;
  report.database = database;
  if (trials == 0) return report;
  if (database >= p.n) throw ParameterError("database index out of range");

  const PrimeField f(p.q);
  SeededRng master(p.seed);
  MessageSet w;
  w.messages.assign(p.m, {});
  {
    SeededRng msg_rng = master.derive(0);
    const std::size_t len = checked_pow(p.honest_span(), p.m);
    for (auto& v : w.messages) {
      v.resize(len);
      for (auto& x : v) x = f.random_nonzero(msg_rng);
    }
  }

  // The number of specs touching each message at a database is fixed by
  // the structure, so one probe plan sizes the histograms.
  std::size_t width = 0;
  {
    SeededRng probe = master.derive(1);
    const QueryLayout layout = build_layout(p, 0, probe);
    std::vector<std::size_t> touching(p.m, 0);
    for (const Slot& s : layout.slots[database]) {
      for (std::size_t m : s.subset) ++touching[m];
    }
    width = *std::max_element(touching.begin(), touching.end());
  }
  std::uint64_t outcomes = 1;
  for (std::size_t i = 0; i < width; ++i) {
    outcomes *= p.q;
    if (outcomes > 10000) {
      throw InstanceTooLargeError("observation space q^" + std::to_string(width) +
                                  " exceeds 1e4");
    }
  }
  report.trials = trials;
  report.outcomes = outcomes;

  // hist[desired][m][outcome]
  std::vector<std::vector<std::vector<std::uint32_t>>> hist(
      p.m, std::vector<std::vector<std::uint32_t>>(
               p.m, std::vector<std::uint32_t>(outcomes, 0)));
  for (std::size_t desired = 0; desired < p.m; ++desired) {
    const SeededRng stream = master.derive(2 + desired);
    for (std::size_t trial = 0; trial < trials; ++trial) {
      SeededRng rng = stream.derive(trial);
      const QueryPlan plan = build_plan(p, desired, rng);
      std::vector<std::uint64_t> code(p.m, 0);
      for (const QuerySpec& spec : plan.queries[database]) {
        for (const CoefficientRow& term : spec.terms) {
          code[term.message] = code[term.message] * p.q +
                               f.dot(term.coefficients, w.messages[term.message]);
        }
      }
      for (std::size_t m = 0; m < p.m; ++m) ++hist[desired][m][code[m]];
    }
  }

  report.tv.assign(p.m, 0.0);
  for (std::size_t m = 0; m < p.m; ++m) {
    for (std::size_t a = 0; a < p.m; ++a) {
      for (std::size_t b = a + 1; b < p.m; ++b) {
        double tv = 0.0;
        for (std::size_t o = 0; o < outcomes; ++o) {
          tv += std::abs(static_cast<double>(hist[a][m][o]) -
                         static_cast<double>(hist[b][m][o]));
        }
        tv /= 2.0 * static_cast<double>(trials);
        report.tv[m] = std::max(report.tv[m], tv);
      }
    }
    report.max_tv = std::max(report.max_tv, report.tv[m]);
  }
  return report;
}

ProbeReport confusability_probe(const Params& p, std::size_t desired,
                                std::size_t pairs,
                                std::optional<std::size_t> only_message) {
  if (only_message && *only_message >= p.m) {
    throw ParameterError("message index out of range");
  }
  SeededRng rng(p.seed);
  const QueryPlan plan = build_plan(p, desired, rng);
  const PrimeField& f = plan.field;
  const std::size_t len = plan.message_length();

  auto answers = [&](const MessageSet& w) {
    std::vector<std::vector<FieldElement>> out;
    for (const auto& specs : plan.queries) out.push_back(honest_answer(f, w, specs));
    return out;
  };

  ProbeReport report;
  report.pairs = pairs;
  report.honest_quorum = p.honest_span();
  for (std::size_t i = 0; i < pairs; ++i) {
    const MessageSet w = MessageSet::random(f, p.m, len, rng);
    const auto base = answers(w);
    MessageSet other;
    std::vector<std::vector<FieldElement>> seen;
    for (std::size_t attempt = 0;; ++attempt) {
      if (attempt == 1000) throw InternalError("could not sample a distinct pair");
      if (only_message) {
        other = w;
        for (auto& x : other.messages[*only_message]) x = f.random(rng);
      } else {
        other = MessageSet::random(f, p.m, len, rng);
      }
      if (other == w) continue;
      seen = answers(other);
      // A difference no query sees cannot be told apart by any scheme.
      if (only_message && seen == base) continue;
      break;
    }
    std::size_t agreeing = 0;
    for (std::size_t db = 0; db < p.n; ++db) agreeing += seen[db] == base[db];
    if (agreeing >= report.honest_quorum) ++report.collisions;
  }
  return report;
}

}  // namespace bpir
