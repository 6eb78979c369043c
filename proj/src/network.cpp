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


#include "bpir/network.hpp"

#include <algorithm>
#include <numeric>

#include "json.hpp"

namespace bpir {

MessageSet MessageSet::random(const PrimeField& f, std::size_t count,
                              std::size_t length, SeededRng& rng) {
  MessageSet s;
  s.messages.assign(count, std::vector<FieldElement>(length));
  for (auto& w : s.messages) {
    for (auto& x : w) x = f.random(rng);
  }
  return s;
}

MessageSet MessageSet::zeros(std::size_t count, std::size_t length) {
  MessageSet s;
  s.messages.assign(count, std::vector<FieldElement>(length, 0));
  return s;
}

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kNone: return "none";
    case Strategy::kContentSwap: return "content";
    case Strategy::kAnswerRandom: return "random";
    case Strategy::kAnswerWorst: return "worst";
  }
  return "?";
}

void AdversaryConfig::check(const Params& p) const {
  auto in_range = [&](const std::vector<std::size_t>& set, const char* name) {
    for (std::size_t db : set) {
      if (db >= p.n) {
        throw ParameterError(std::string(name) + " set names database " +
                             std::to_string(db + 1) + " outside [1, " +
                             std::to_string(p.n) + "]");
      }
    }
    std::vector<std::size_t> sorted = set;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ParameterError(std::string(name) + " set lists a database twice");
    }
  };
  in_range(byzantine, "byzantine");
  in_range(unresponsive, "unresponsive");
  if (byzantine.size() > p.b) {
    throw ParameterError("byzantine set larger than B = " + std::to_string(p.b));
  }
  if (unresponsive.size() > p.u) {
    throw ParameterError("unresponsive set larger than U = " +
                         std::to_string(p.u));
  }
  if (strategy == Strategy::kAnswerRandom && !(rate >= 0.0 && rate <= 1.0)) {
    throw ParameterError("corruption rate must lie in [0, 1]");
  }
}

AdversaryConfig AdversaryConfig::random_sets(const Params& p,
                                             Strategy strategy,
                                             SeededRng& rng) {
  if (p.b + p.u > p.n) {
    throw ParameterError("B + U exceeds N");
  }
  std::vector<std::size_t> order(p.n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(std::span<std::size_t>(order));
  AdversaryConfig cfg;
  cfg.strategy = strategy;
  cfg.byzantine.assign(order.begin(), order.begin() + p.b);
  cfg.unresponsive.assign(order.begin() + p.b, order.begin() + p.b + p.u);
  std::sort(cfg.byzantine.begin(), cfg.byzantine.end());
  std::sort(cfg.unresponsive.begin(), cfg.unresponsive.end());
  cfg.seed = rng.next_u64();
  return cfg;
}

std::uint64_t AnswerSet::symbol_count() const {
  std::uint64_t total = 0;
  for (const auto& a : per_database) {
    if (a) total += a->size();
  }
  return total;
}

std::string AnswerSet::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& a : per_database) {
    if (a) {
      j.push_back(*a);
    } else {
      j.push_back(nullptr);
    }
  }
  return j.dump();
}

std::vector<FieldElement> honest_answer(const PrimeField& f,
                                        const MessageSet& contents,
                                        std::span<const QuerySpec> specs) {
  std::vector<FieldElement> out;
  out.reserve(specs.size());
  for (const QuerySpec& spec : specs) {
    FieldElement acc = 0;
    for (const CoefficientRow& term : spec.terms) {
      if (term.message >= contents.count() ||
          term.coefficients.size() != contents.messages[term.message].size()) {
        throw DimensionError("query coefficients do not match stored message");
      }
      acc = f.add(acc, f.dot(term.coefficients, contents.messages[term.message]));
    }
    out.push_back(acc);
  }
  return out;
}

std::vector<DatabaseNode> make_nodes(const PrimeField& f, const Params& p,
                                     const MessageSet& truth,
                                     const AdversaryConfig& cfg) {
  cfg.check(p);
  std::vector<DatabaseNode> nodes(p.n);
  for (std::size_t db = 0; db < p.n; ++db) {
    nodes[db].index = db;
    nodes[db].contents = truth;
  }
  Behavior byzantine_behavior = Behavior::kHonest;
  switch (cfg.strategy) {
    case Strategy::kNone: break;
    case Strategy::kContentSwap: byzantine_behavior = Behavior::kContentSwap; break;
    case Strategy::kAnswerRandom: byzantine_behavior = Behavior::kAnswerRandom; break;
    case Strategy::kAnswerWorst: byzantine_behavior = Behavior::kAnswerWorst; break;
  }
  // One shared alternate: the Byzantine databases act in concert.
  MessageSet alternate = truth;
  if (cfg.strategy == Strategy::kContentSwap) {
    if (cfg.alternate) {
      if (cfg.alternate->count() != truth.count() ||
          cfg.alternate->length() != truth.length()) {
        throw DimensionError("alternate contents do not match the messages");
      }
      alternate = *cfg.alternate;
    } else {
      SeededRng swap_rng(cfg.seed);
      for (std::size_t m = 0; m < truth.count(); ++m) {
        const bool swap = cfg.swap_messages.empty() ||
                          std::find(cfg.swap_messages.begin(),
                                    cfg.swap_messages.end(),
                                    m) != cfg.swap_messages.end();
        if (!swap) continue;
        for (auto& x : alternate.messages[m]) x = f.random(swap_rng);
      }
    }
  }
  for (std::size_t db : cfg.byzantine) {
    nodes[db].behavior = byzantine_behavior;
    if (cfg.strategy == Strategy::kContentSwap) nodes[db].contents = alternate;
  }
  for (std::size_t db : cfg.unresponsive) {
    nodes[db].behavior = Behavior::kUnresponsive;
  }
  return nodes;
}

AnswerSet apply_adversary(const AdversaryConfig& cfg, const PrimeField& f,
                          AnswerSet answers) {
  std::vector<std::size_t> byzantine = cfg.byzantine;
  std::sort(byzantine.begin(), byzantine.end());
  SeededRng rng(cfg.seed);
  for (std::size_t db : byzantine) {
    auto& a = answers.per_database.at(db);
    if (!a) continue;
    if (cfg.strategy == Strategy::kAnswerWorst) {
      for (auto& x : *a) x = f.add(x, 1);
    } else if (cfg.strategy == Strategy::kAnswerRandom) {
      for (auto& x : *a) {
        if (rng.uniform_real() < cfg.rate) x = f.random(rng);
      }
    }
  }
  for (std::size_t db : cfg.unresponsive) {
    answers.per_database.at(db).reset();
  }
  return answers;
}

AnswerSet collect(const QueryPlan& plan, std::span<const DatabaseNode> nodes,
                  const AdversaryConfig& cfg) {
  const std::size_t n = plan.queries.size();
  if (nodes.size() != n) {
    throw ParameterError("need exactly one node per database");
  }
  AnswerSet answers;
  answers.per_database.resize(n);
  for (std::size_t db = 0; db < n; ++db) {
    if (nodes[db].index != db) {
      throw ParameterError("nodes must be listed in database order");
    }
    answers.per_database[db] =
        honest_answer(plan.field, nodes[db], plan.queries[db]);
  }
  return apply_adversary(cfg, plan.field, std::move(answers));
}

}  // namespace bpir
