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


#include "bpir/mds.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

namespace bpir {
namespace {

using Poly = std::vector<FieldElement>;  // ascending coefficients

FieldElement eval_poly(const PrimeField& f, std::span<const FieldElement> p,
                       FieldElement x) {
  FieldElement acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = f.mul_add(p[i], acc, x);
  return acc;
}

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// numerator = quotient * divisor + remainder; divisor must be nonzero.
std::pair<Poly, Poly> divide(const PrimeField& f, Poly numerator,
                             Poly divisor) {
  trim(numerator);
  trim(divisor);
  if (divisor.empty()) throw InternalError("polynomial division by zero");
  if (numerator.size() < divisor.size()) return {Poly{}, numerator};
  const FieldElement lead_inv = f.inverse(divisor.back());
  Poly quotient(numerator.size() - divisor.size() + 1, 0);
  for (std::size_t i = quotient.size(); i-- > 0;) {
    const FieldElement c = f.mul(numerator[i + divisor.size() - 1], lead_inv);
    quotient[i] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < divisor.size(); ++j) {
      numerator[i + j] = f.sub(numerator[i + j], f.mul(c, divisor[j]));
    }
  }
  trim(numerator);
  return {quotient, numerator};
}

DecodeOutcome finish(const MdsGenerator& gen, const ReceivedWord& received,
                     Poly message) {
  message.resize(gen.k(), 0);
  DecodeOutcome out;
  out.corrected_codeword = gen.encode(message);
  out.message = std::move(message);
  for (std::size_t i = 0; i < received.size(); ++i) {
    const auto& s = received.symbols[i];
    if (s && *s != out.corrected_codeword[i]) out.error_positions.push_back(i);
  }
  return out;
}

// One Berlekamp-Welch attempt assuming at most `errors` errors among the
// listed (non-erased) positions.
std::optional<Poly> welch_berlekamp(const MdsGenerator& gen,
                                    const ReceivedWord& received,
                                    std::span<const std::size_t> positions,
                                    std::size_t errors) {
  const PrimeField& f = gen.field();
  const std::size_t k = gen.k();
  // Unknowns: E_0..E_{e-1} (E monic of degree e), then Q_0..Q_{e+k-1}.
  const std::size_t unknowns = 2 * errors + k;
  FieldMatrix system(positions.size(), unknowns);
  std::vector<FieldElement> rhs(positions.size());
  for (std::size_t r = 0; r < positions.size(); ++r) {
    const FieldElement x = gen.eval_points()[positions[r]];
    const FieldElement y = *received.symbols[positions[r]];
    FieldElement power = 1;
    for (std::size_t t = 0; t < errors + k; ++t) {
      if (t < errors) system(r, t) = f.neg(f.mul(y, power));
      system(r, errors + t) = power;
      power = f.mul(power, x);
    }
    rhs[r] = f.mul(y, f.pow(x, errors));
  }
  auto solution = mat_solve(f, std::move(system), std::move(rhs));
  if (!solution) return std::nullopt;
  Poly locator(solution->begin(), solution->begin() + errors);
  locator.push_back(1);
  Poly q(solution->begin() + errors, solution->end());
  auto [quotient, remainder] = divide(f, std::move(q), std::move(locator));
  if (!remainder.empty()) return std::nullopt;
  if (quotient.size() > k) return std::nullopt;
  return quotient;
}

}  // namespace

MdsGenerator::MdsGenerator(PrimeField field, std::size_t k,
                           std::vector<FieldElement> eval_points)
    : field_(field), k_(k), points_(std::move(eval_points)) {
  if (k_ == 0) throw ParameterError("MDS generator dimension must be >= 1");
  if (k_ > points_.size()) {
    throw ParameterError("MDS generator needs k <= n, got k=" +
                         std::to_string(k_) + " n=" +
                         std::to_string(points_.size()));
  }
  std::set<FieldElement> seen;
  for (FieldElement x : points_) {
    if (x >= field_.modulus()) {
      throw ParameterError("evaluation point outside the field");
    }
    if (!seen.insert(x).second) {
      throw ParameterError("evaluation points must be distinct");
    }
  }
}

std::vector<FieldElement> MdsGenerator::row(std::size_t i) const {
  std::vector<FieldElement> r(k_);
  FieldElement power = 1;
  for (std::size_t t = 0; t < k_; ++t) {
    r[t] = power;
    power = field_.mul(power, points_.at(i));
  }
  return r;
}

FieldMatrix MdsGenerator::matrix() const {
  FieldMatrix m(n(), k_);
  for (std::size_t i = 0; i < n(); ++i) {
    auto r = row(i);
    std::copy(r.begin(), r.end(), m.row(i).begin());
  }
  return m;
}

MdsGenerator MdsGenerator::restrict_to(
    std::span<const std::size_t> positions) const {
  std::vector<FieldElement> pts;
  pts.reserve(positions.size());
  for (std::size_t p : positions) {
    if (p >= n()) throw ParameterError("restrict_to: position out of range");
    pts.push_back(points_[p]);
  }
  return MdsGenerator(field_, k_, std::move(pts));
}

std::vector<FieldElement> MdsGenerator::encode(
    std::span<const FieldElement> message) const {
  if (message.size() != k_) {
    throw DimensionError("encode: message length " +
                         std::to_string(message.size()) + " != k=" +
                         std::to_string(k_));
  }
  std::vector<FieldElement> out(n());
  for (std::size_t i = 0; i < n(); ++i) {
    out[i] = eval_poly(field_, message, points_[i]);
  }
  return out;
}

MdsGenerator make_generator(std::size_t n, std::size_t k,
                            const PrimeField& field) {
  if (n > field.modulus()) {
    throw ParameterError("code length " + std::to_string(n) +
                         " exceeds field size " +
                         std::to_string(field.modulus()));
  }
  std::vector<FieldElement> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i] = static_cast<FieldElement>((i + 1) % field.modulus());
  }
  return MdsGenerator(field, k, std::move(pts));
}

MdsGenerator puncture(const MdsGenerator& gen, const PuncturePattern& pattern) {
  std::set<std::size_t> deleted(pattern.deleted_positions.begin(),
                                pattern.deleted_positions.end());
  if (deleted.size() != pattern.size()) {
    throw ParameterError("puncture pattern repeats a position");
  }
  if (!deleted.empty() && *deleted.rbegin() >= gen.n()) {
    throw ParameterError("puncture position out of range");
  }
  if (deleted.size() >= gen.n() - gen.k()) {
    throw PunctureTooDeepError(
        "puncturing " + std::to_string(deleted.size()) +
        " coordinates of an (" + std::to_string(gen.n()) + "," +
        std::to_string(gen.k()) + ") code needs z < n - k");
  }
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < gen.n(); ++i) {
    if (!deleted.contains(i)) keep.push_back(i);
  }
  return gen.restrict_to(keep);
}

ReceivedWord ReceivedWord::from_codeword(
    std::span<const FieldElement> codeword) {
  ReceivedWord w;
  w.symbols.assign(codeword.begin(), codeword.end());
  return w;
}

std::vector<std::size_t> ReceivedWord::erasure_positions() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (!symbols[i]) out.push_back(i);
  }
  return out;
}

std::size_t ReceivedWord::erasure_count() const {
  return static_cast<std::size_t>(
      std::count(symbols.begin(), symbols.end(), std::nullopt));
}

std::size_t error_radius(const MdsGenerator& gen, std::size_t erasures) {
  const std::size_t slack = gen.n() - gen.k();
  return erasures > slack ? 0 : (slack - erasures) / 2;
}

DecodeOutcome decode(const MdsGenerator& gen, const ReceivedWord& received) {
  if (received.size() != gen.n()) {
    throw DimensionError("decode: received length " +
                         std::to_string(received.size()) + " != n=" +
                         std::to_string(gen.n()));
  }
  std::vector<std::size_t> present;
  for (std::size_t i = 0; i < received.size(); ++i) {
    if (received.symbols[i]) present.push_back(i);
  }
  if (present.size() < gen.k()) {
    throw DecodeFailure("decode: " + std::to_string(received.size() -
                                                    present.size()) +
                        " erasures leave fewer than k=" +
                        std::to_string(gen.k()) + " symbols");
  }
  const std::size_t radius = (present.size() - gen.k()) / 2;
  // Retry smaller radii if the key equation at the full radius yields no
  // usable solution.
  for (std::size_t e = radius + 1; e-- > 0;) {
    auto poly = welch_berlekamp(gen, received, present, e);
    if (!poly) continue;
    DecodeOutcome out = finish(gen, received, std::move(*poly));
    if (out.error_positions.size() <= e) return out;
  }
  throw DecodeFailure("decode: no codeword of the (" + std::to_string(gen.n()) +
                      "," + std::to_string(gen.k()) + ") code within " +
                      std::to_string(radius) + " errors (" +
                      std::to_string(received.size() - present.size()) +
                      " erasures)");
}

OracleOutcome oracle_decode(const MdsGenerator& gen,
                            const ReceivedWord& received) {
  if (received.size() != gen.n()) {
    throw DimensionError("oracle_decode: received length != n");
  }
  constexpr double kLimit = 1e7;
  const PrimeField& f = gen.field();
  const std::size_t k = gen.k();
  std::vector<std::size_t> present;
  for (std::size_t i = 0; i < received.size(); ++i) {
    if (received.symbols[i]) present.push_back(i);
  }

  auto distance_of = [&](const std::vector<FieldElement>& codeword) {
    std::size_t d = 0;
    for (std::size_t i : present) d += *received.symbols[i] != codeword[i];
    return d;
  };

  std::optional<OracleOutcome> best;
  auto consider = [&](const std::vector<FieldElement>& message) {
    auto codeword = gen.encode(message);
    const std::size_t d = distance_of(codeword);
    if (!best || d < best->distance) {
      best = OracleOutcome{{message, std::move(codeword), {}}, d, false};
    } else if (d == best->distance && message != best->nearest.message) {
      best->ambiguous = true;
      if (message < best->nearest.message) {
        best->nearest = {message, std::move(codeword), {}};
      }
    }
  };

  double message_space = 1;
  for (std::size_t i = 0; i < k && message_space <= kLimit; ++i) {
    message_space *= f.modulus();
  }
  double subsets = present.size() >= k ? 1 : 0;
  for (std::size_t i = 0; i < k && subsets > 0; ++i) {
    subsets = subsets * static_cast<double>(present.size() - i) /
              static_cast<double>(i + 1);
  }
  const bool subsets_ok = gen.n() <= 20 && subsets > 0 && subsets <= kLimit;
  if (message_space > kLimit && !subsets_ok) {
    throw InstanceTooLargeError("oracle_decode: instance too large");
  }

  // Both enumerations are complete; take the shorter one.
  if (!subsets_ok || message_space <= subsets) {
    std::vector<FieldElement> message(k, 0);
    while (true) {
      consider(message);
      std::size_t i = k;
      while (i > 0 && message[i - 1] + 1 == f.modulus()) message[--i] = 0;
      if (i == 0) break;
      ++message[i - 1];
    }
  } else {
    std::set<std::vector<FieldElement>> tried;
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    while (true) {
      std::vector<std::size_t> rows(k);
      std::vector<FieldElement> values(k);
      for (std::size_t i = 0; i < k; ++i) {
        rows[i] = present[pick[i]];
        values[i] = *received.symbols[rows[i]];
      }
      FieldMatrix sub = gen.restrict_to(rows).matrix();
      auto message = mat_vec(f, mat_invert(f, sub), values);
      if (tried.insert(message).second) consider(message);
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == present.size() - k + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  for (std::size_t i : present) {
    if (*received.symbols[i] != best->nearest.corrected_codeword[i]) {
      best->nearest.error_positions.push_back(i);
    }
  }
  return *best;
}

}  // namespace bpir
