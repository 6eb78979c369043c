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


#ifndef BPIR_DECODER_HPP_
#define BPIR_DECODER_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bpir/field.hpp"
#include "bpir/mds.hpp"
#include "bpir/network.hpp"
#include "bpir/scheme.hpp"

namespace bpir {

// Received symbols of one layer in codeword-coordinate order.
struct LayerView {
  std::optional<std::size_t> k_set;  // nullopt: the desired layer
  ReceivedWord received;
  std::vector<std::size_t> database;  // serving database per coordinate
};

// Pure undesired answers of K-set i (the aligned u sums).
LayerView k_layer_view(const QueryPlan& plan, const AnswerSet& answers,
                       std::size_t i);

struct LayerTally {
  std::string layer;        // "K{2,3}" style, or "desired"
  std::size_t errors = 0;   // corrected positions
  std::size_t erasures = 0;
  std::size_t budget = 0;   // most errors B databases can cause here
};

struct KLayerCorrection {
  std::size_t k_set = 0;
  // sum over k in K_i of S_k(J_i^{[k]}, :) W_k
  std::vector<FieldElement> band_message;
  std::vector<FieldElement> u;      // corrected aligned u sums
  std::vector<FieldElement> sigma;  // regenerated aligned side information
  std::vector<std::size_t> error_positions;  // u coordinates
  std::vector<std::size_t> accused;          // databases behind them
  LayerTally tally;
};

// Decodes the aligned u sums of K-set i on the (u_length, alpha) punctured
// code and regenerates sigma from the unpunctured generator. Throws
// DecodeFailure when the errors exceed the radius.
KLayerCorrection correct_k_layer(const QueryPlan& plan,
                                 const AnswerSet& answers, std::size_t i);

struct RetrievalResult {
  std::vector<FieldElement> message;
  std::vector<std::size_t> identified_byzantine;  // ascending, 0-based
  std::vector<LayerTally> tallies;                // K-layers, then desired
  std::uint64_t download = 0;                     // symbols received

  bool within_budget() const;
};

// Cancels the corrected side information from the mixed answers, decodes
// the outer code and solves for W_desired from the first L' coordinates.
// `corrections` holds one entry per K-set, in K-set order.
RetrievalResult cancel_and_decode(
    const QueryPlan& plan, const AnswerSet& answers,
    const std::vector<KLayerCorrection>& corrections);

// Databases owning a non-erased coordinate whose received symbol differs
// from the corrected one, over the given K-layers plus the desired layer
// errors in `desired_accused`.
std::vector<std::size_t> identify_byzantine(
    const std::vector<KLayerCorrection>& corrections,
    const std::vector<std::size_t>& desired_accused);

// Trivial regime: per-symbol majority over the full copies. The decoded
// message is the desired one; identification covers every message.
RetrievalResult majority_decode(const QueryPlan& plan, const AnswerSet& answers,
                                std::size_t desired);

// Full pipeline for either regime. `desired` is only read in the trivial
// regime, where the plan does not record it.
RetrievalResult retrieve(const QueryPlan& plan, const AnswerSet& answers,
                         std::size_t desired);

}  // namespace bpir

#endif  // BPIR_DECODER_HPP_
