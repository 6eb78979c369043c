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

#ifndef BPIR_MDS_HPP_
#define BPIR_MDS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "bpir/field.hpp"

namespace bpir {

// (n, k) Reed-Solomon style generator: row i is (1, x_i, x_i^2, ...,
// x_i^{k-1}) for distinct evaluation points x_i. A message is the coefficient
// vector of a polynomial of degree < k and its codeword is that polynomial
// evaluated at the points, so any k rows form an invertible Vandermonde
// matrix and d = n - k + 1.
class MdsGenerator {
 public:
  MdsGenerator(PrimeField field, std::size_t k,
               std::vector<FieldElement> eval_points);

  const PrimeField& field() const { return field_; }
  std::size_t n() const { return points_.size(); }
  std::size_t k() const { return k_; }
  std::size_t distance() const { return n() - k_ + 1; }
  const std::vector<FieldElement>& eval_points() const { return points_; }

  std::vector<FieldElement> row(std::size_t i) const;
  FieldMatrix matrix() const;

  // Sub-generator on the listed coordinates, in the listed order. Unlike
  // puncture() this does not enforce the z < n - k bound.
  MdsGenerator restrict_to(std::span<const std::size_t> positions) const;

  std::vector<FieldElement> encode(std::span<const FieldElement> message) const;

  friend bool operator==(const MdsGenerator&, const MdsGenerator&) = default;

 private:
  PrimeField field_;
  std::size_t k_;
  std::vector<FieldElement> points_;
};

// Evaluation points 1, 2, ..., n (reduced mod q, so n == q uses 0 last).
MdsGenerator make_generator(std::size_t n, std::size_t k,
                            const PrimeField& field);

inline std::vector<FieldElement> encode(const MdsGenerator& gen,
                                        std::span<const FieldElement> message) {
  return gen.encode(message);
}

struct PuncturePattern {
  std::vector<std::size_t> deleted_positions;

  std::size_t size() const { return deleted_positions.size(); }
};

// Deletes the pattern's coordinates. The surviving code is (n - z, k) MDS
// as long as z < n - k; deeper patterns throw PunctureTooDeepError.
MdsGenerator puncture(const MdsGenerator& gen, const PuncturePattern& pattern);

// Word off the channel. nullopt marks an erasure.
struct ReceivedWord {
  std::vector<std::optional<FieldElement>> symbols;

  static ReceivedWord from_codeword(std::span<const FieldElement> codeword);

  std::size_t size() const { return symbols.size(); }
  std::vector<std::size_t> erasure_positions() const;
  std::size_t erasure_count() const;
};

struct DecodeOutcome {
  std::vector<FieldElement> message;
  std::vector<FieldElement> corrected_codeword;
  // Non-erased positions where the received symbol differs from the
  // corrected codeword, ascending.
  std::vector<std::size_t> error_positions;
};

// Largest error count guaranteed correctable with rho erasures:
// floor((d - 1 - rho) / 2).
std::size_t error_radius(const MdsGenerator& gen, std::size_t erasures);

// Berlekamp-Welch decoding with erased coordinates left out of the key
// equation. Corrects up to error_radius() errors; throws DecodeFailure if no
// codeword lies within that radius of the received word.
DecodeOutcome decode(const MdsGenerator& gen, const ReceivedWord& received);

struct OracleOutcome {
  DecodeOutcome nearest;
  // Number of non-erased disagreements between the received word and
  // `nearest`.
  std::size_t distance = 0;
  // Several codewords share the minimal distance; `nearest` holds the one
  // with the lexicographically smallest message.
  bool ambiguous = false;
};

// Exhaustive nearest-codeword search, for tests. Enumerates all q^k messages
// (allowed when q^k <= 1e7) or all k-subsets of the non-erased coordinates
// (allowed when n <= 20 and there are at most 1e7 subsets), whichever is
// shorter. The subset route is complete: interpolating any k present
// coordinates already gives a codeword within p - k of the word (p present
// coordinates), so the nearest one agrees with it on at least k of them.
// Larger instances throw InstanceTooLargeError.
OracleOutcome oracle_decode(const MdsGenerator& gen,
                            const ReceivedWord& received);

}  // namespace bpir

#endif  // BPIR_MDS_HPP_
