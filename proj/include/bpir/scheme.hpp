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


#ifndef BPIR_SCHEME_HPP_
#define BPIR_SCHEME_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bpir/field.hpp"
#include "bpir/mds.hpp"
#include "bpir/params.hpp"
#include "bpir/rng.hpp"

namespace bpir {

// Sorted, 0-based message indices.
using Subset = std::vector<std::size_t>;

// The subsets the scheme queries, relative to a desired message.
//
// l_sets: every subset containing the desired message (2^{M-1} of them).
// k_sets: every nonempty subset of the other messages (2^{M-1} - 1).
// Both are sorted by size, ties broken lexicographically, so l_sets[0] is
// {desired} and the sets of round r come before those of round r + 1.
struct SetSystem {
  std::size_t desired = 0;
  std::vector<Subset> l_sets;
  std::vector<Subset> k_sets;

  // Index into l_sets of K ∪ {desired} for k_sets[i].
  std::size_t l_set_of_k_set(std::size_t i) const;
  // Index into k_sets of L \ {desired} for l_sets[j]; nullopt for j == 0.
  std::optional<std::size_t> k_set_of_l_set(std::size_t j) const;
  // Indices into k_sets of the sets containing `message`, in k_sets order.
  std::vector<std::size_t> k_sets_containing(std::size_t message) const;
};

// `desired` is 0-based here; throws ParameterError when out of range.
SetSystem enumerate_sets(std::size_t m, std::size_t desired);

// Sizes of every piece of the scheme. With H = N - 2B - U and s = |K|:
//   alpha(K)      = H (H-T)^{s-1} T^{M-s}
//   u_length(K)   = N (H-T)^{s-1} T^{M-s}      (pure undesired queries)
//   sigma_length  = N (H-T)^{s}   T^{M-s-1}    (side information)
//   code_length   = u_length + sigma_length = N alpha / T
//   x_length(L)   = N (H-T)^{|L|-1} T^{M-|L|}  (desired-layer segment)
// Codeword lengths keep the full N even when U > 0: the U missing answers
// become erasures on those coordinates.
struct SchemeDims {
  struct KSetDims {
    std::uint64_t alpha = 0;
    std::uint64_t u_length = 0;
    std::uint64_t sigma_length = 0;
    std::uint64_t code_length = 0;
  };

  std::uint64_t message_length = 0;  // H^M
  std::uint64_t outer_length = 0;    // N H^{M-1}
  std::vector<KSetDims> k_sets;
  std::vector<std::uint64_t> x_length;
  std::vector<std::uint64_t> x_offset;
  // band_offset[k][i]: first row of S_k feeding k_sets[i] (only meaningful
  // when message k belongs to k_sets[i]).
  std::vector<std::vector<std::uint64_t>> band_offset;
  // Index r - 1 holds the round-r download per database.
  std::vector<std::uint64_t> round_per_database;
  std::uint64_t per_database = 0;
  // Download counted over the N - U databases that answer.
  std::uint64_t total_download = 0;
};

// Throws RegimeError outside the FULL regime and InternalError if any of
// the counting identities fails.
SchemeDims compute_dims(const Params& p, const SetSystem& sets);

// Field must exceed the longest codeword, N (N-2B-U)^{M-1}.
void check_field_size(const Params& p);

enum class SlotKind {
  kDesired,     // x_{L_1}: pure desired-message symbol
  kUndesired,   // aligned sum of u symbols of one K-set
  kMixed,       // x_{L_j} plus the aligned side information of L_j \ {l}
  kFullCopy,    // trivial regime: one whole message
};

// One query slot at one database, described structurally.
struct Slot {
  SlotKind kind = SlotKind::kDesired;
  Subset subset;
  // kDesired / kMixed: index into l_sets; kUndesired: index into k_sets;
  // kFullCopy: message index.
  std::size_t segment = 0;
  // Coordinate within x_{L_j} or u_{K_i}; the side-information coordinate
  // of a mixed slot equals its x coordinate.
  std::size_t coordinate = 0;
  std::size_t round = 1;
};

struct SlotRef {
  std::size_t database = 0;
  std::size_t slot = 0;
  friend bool operator==(const SlotRef&, const SlotRef&) = default;
};

// Everything about a plan except field values: which slot every database
// gets and where every codeword coordinate is served from. Enough for
// download accounting and the query table; cheap even when the mixing
// matrices would be huge.
struct QueryLayout {
  Params params;
  Regime regime = Regime::kFull;
  std::size_t desired = 0;
  SetSystem sets;
  SchemeDims dims;
  std::vector<std::vector<Slot>> slots;  // per database, in query order
  // Outer codeword coordinate g (x_offset[j] + t) -> serving slot.
  std::vector<SlotRef> x_location;
  // Per K-set, u coordinate -> serving slot.
  std::vector<std::vector<SlotRef>> u_location;
  // Trivial regime: databases asked for a full copy.
  std::vector<std::size_t> copies;

  std::size_t database_count() const { return slots.size(); }
};

// FULL regime. Each query subset's coordinates are shuffled with `rng` and
// dealt round-robin to the N databases; every database lists its slots by
// round, then subset, then coordinate.
QueryLayout build_layout(const Params& p, std::size_t desired, SeededRng& rng);

struct CoefficientRow {
  std::size_t message = 0;
  std::vector<FieldElement> coefficients;
  friend bool operator==(const CoefficientRow&, const CoefficientRow&) =
      default;
};

// What a database receives: answer with sum over terms of
// <coefficients, W_message>.
struct QuerySpec {
  Subset subset;
  std::vector<CoefficientRow> terms;  // ascending message index
  friend bool operator==(const QuerySpec&, const QuerySpec&) = default;
};

struct QueryPlan {
  QueryLayout layout;
  PrimeField field;
  std::vector<FieldMatrix> mixing;         // S_1..S_M, each L' x L'
  std::optional<MdsGenerator> outer;       // desired-message code
  std::vector<MdsGenerator> k_generators;  // one per K-set, shared by members
  std::vector<std::vector<QuerySpec>> queries;  // per database

  const Params& params() const { return layout.params; }
  std::size_t message_length() const { return layout.dims.message_length; }
};

// Full FULL-regime plan: layout first, then S_1..S_M, all from `rng`.
// Throws RegimeError / FieldSizeError.
QueryPlan build_plan(const Params& p, std::size_t desired, SeededRng& rng);

// TRIVIAL regime: 2B + 1 + U databases (a seeded random subset) each return
// every message; messages have length 1. The query does not depend on the
// desired index.
QueryPlan build_trivial_plan(const Params& p, SeededRng& rng);

// Symbolic grid of a FULL-regime layout: one column per database, one row
// per slot position, a dashed rule between rounds. Message letters are a
// for the desired message, then b, c, ... for the others in index order;
// the subscript is the 1-based coordinate in that message's codeword.
std::string dump_query_table(const QueryLayout& layout);

}  // namespace bpir

#endif  // BPIR_SCHEME_HPP_
