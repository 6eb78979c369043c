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


#ifndef BPIR_NETWORK_HPP_
#define BPIR_NETWORK_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bpir/field.hpp"
#include "bpir/params.hpp"
#include "bpir/rng.hpp"
#include "bpir/scheme.hpp"

namespace bpir {

// W_1..W_M, all of the same length.
struct MessageSet {
  std::vector<std::vector<FieldElement>> messages;

  static MessageSet random(const PrimeField& f, std::size_t count,
                           std::size_t length, SeededRng& rng);
  static MessageSet zeros(std::size_t count, std::size_t length);

  std::size_t count() const { return messages.size(); }
  std::size_t length() const {
    return messages.empty() ? 0 : messages.front().size();
  }

  friend bool operator==(const MessageSet&, const MessageSet&) = default;
};

enum class Behavior {
  kHonest,
  kContentSwap,   // answers truthfully, but from altered contents
  kAnswerRandom,  // corrupts each answer symbol with some probability
  kAnswerWorst,   // corrupts every answer symbol
  kUnresponsive,
};

struct DatabaseNode {
  std::size_t index = 0;
  MessageSet contents;
  Behavior behavior = Behavior::kHonest;
};

// Strategy shared by every Byzantine database.
enum class Strategy { kNone, kContentSwap, kAnswerRandom, kAnswerWorst };

std::string strategy_name(Strategy s);

// 0-based database indices throughout.
struct AdversaryConfig {
  std::vector<std::size_t> byzantine;
  std::vector<std::size_t> unresponsive;
  Strategy strategy = Strategy::kNone;
  double rate = 1.0;  // kAnswerRandom only
  // kContentSwap: Byzantine contents. When unset, the listed messages (all
  // of them if the list is empty) are replaced by fresh random vectors.
  std::optional<MessageSet> alternate;
  std::vector<std::size_t> swap_messages;
  std::uint64_t seed = 0;  // coordination seed of the Byzantine databases

  // |B| <= p.b, |U| <= p.u, indices inside [0, N); ParameterError otherwise.
  void check(const Params& p) const;

  // Disjoint seeded random sets of sizes p.b and p.u.
  static AdversaryConfig random_sets(const Params& p, Strategy strategy,
                                     SeededRng& rng);
};

// Ordered answers of one database, or nullopt when it never answered.
struct AnswerSet {
  std::vector<std::optional<std::vector<FieldElement>>> per_database;

  std::size_t database_count() const { return per_database.size(); }
  bool missing(std::size_t db) const { return !per_database.at(db); }
  // Received symbols, present databases only.
  std::uint64_t symbol_count() const;
  // JSON array of integer arrays, null for a missing database.
  std::string to_json() const;

  friend bool operator==(const AnswerSet&, const AnswerSet&) = default;
};

// answer[j] = sum over the terms of spec j of <coefficients, W_message>.
std::vector<FieldElement> honest_answer(const PrimeField& f,
                                        const MessageSet& contents,
                                        std::span<const QuerySpec> specs);

inline std::vector<FieldElement> honest_answer(
    const PrimeField& f, const DatabaseNode& node,
    std::span<const QuerySpec> specs) {
  return honest_answer(f, node.contents, specs);
}

// One node per database. Honest nodes store the truth; Byzantine nodes under
// kContentSwap store the alternate contents.
std::vector<DatabaseNode> make_nodes(const PrimeField& f, const Params& p,
                                     const MessageSet& truth,
                                     const AdversaryConfig& cfg);

// Post-hoc answer-stage corruption of the Byzantine databases, then removal
// of the unresponsive ones. Databases are visited in index order with one
// coordination stream seeded by cfg.seed.
AnswerSet apply_adversary(const AdversaryConfig& cfg, const PrimeField& f,
                          AnswerSet answers);

// Single round: every node answers its own queries from its own contents,
// then the adversary acts.
AnswerSet collect(const QueryPlan& plan, std::span<const DatabaseNode> nodes,
                  const AdversaryConfig& cfg);

}  // namespace bpir

#endif  // BPIR_NETWORK_HPP_
