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


#include "bpir/decoder.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace bpir {
namespace {

std::optional<FieldElement> answer_at(const AnswerSet& answers, SlotRef ref) {
  const auto& a = answers.per_database.at(ref.database);
  if (!a) return std::nullopt;
  if (ref.slot >= a->size()) {
    throw DimensionError("answer list shorter than the query list");
  }
  return (*a)[ref.slot];
}

std::string set_label(const Subset& s) {
  std::string out = "K{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i] + 1);
  }
  return out + "}";
}

std::vector<std::size_t> owners(const std::vector<std::size_t>& positions,
                                const std::vector<std::size_t>& database) {
  std::set<std::size_t> dbs;
  for (std::size_t pos : positions) dbs.insert(database[pos]);
  return {dbs.begin(), dbs.end()};
}

}  // namespace

bool RetrievalResult::within_budget() const {
  return std::all_of(tallies.begin(), tallies.end(), [](const LayerTally& t) {
    return t.errors <= t.budget;
  });
}

LayerView k_layer_view(const QueryPlan& plan, const AnswerSet& answers,
                       std::size_t i) {
  const auto& locations = plan.layout.u_location.at(i);
  LayerView view;
  view.k_set = i;
  view.received.symbols.reserve(locations.size());
  for (const SlotRef& ref : locations) {
    view.received.symbols.push_back(answer_at(answers, ref));
    view.database.push_back(ref.database);
  }
  return view;
}

KLayerCorrection correct_k_layer(const QueryPlan& plan,
                                 const AnswerSet& answers, std::size_t i) {
  const auto& kd = plan.layout.dims.k_sets.at(i);
  const MdsGenerator& full = plan.k_generators.at(i);
  const LayerView view = k_layer_view(plan, answers, i);

  // The u coordinates are the first u_length rows; the sigma rows are
  // never downloaded on their own, which punctures them away.
  std::vector<std::size_t> kept(kd.u_length);
  std::iota(kept.begin(), kept.end(), 0);
  const MdsGenerator punctured = full.restrict_to(kept);

  const Subset& subset = plan.layout.sets.k_sets[i];
  DecodeOutcome out;
  try {
    out = decode(punctured, view.received);
  } catch (const DecodeFailure& e) {
    throw DecodeFailure("layer " + set_label(subset) + " (" +
                        std::to_string(kd.u_length) + "," +
                        std::to_string(kd.alpha) + "), " +
                        std::to_string(view.received.erasure_count()) +
                        " erasures: " + e.what());
  }

  KLayerCorrection c;
  c.k_set = i;
  c.band_message = std::move(out.message);
  c.u = std::move(out.corrected_codeword);
  c.sigma.reserve(kd.sigma_length);
  for (std::size_t t = 0; t < kd.sigma_length; ++t) {
    c.sigma.push_back(plan.field.dot(full.row(kd.u_length + t), c.band_message));
  }
  c.accused = owners(out.error_positions, view.database);
  c.error_positions = std::move(out.error_positions);

  const Params& p = plan.params();
  c.tally.layer = set_label(subset);
  c.tally.errors = c.error_positions.size();
  c.tally.erasures = view.received.erasure_count();
  c.tally.budget = p.b * (kd.u_length / p.n);
  return c;
}

std::vector<std::size_t> identify_byzantine(
    const std::vector<KLayerCorrection>& corrections,
    const std::vector<std::size_t>& desired_accused) {
  std::set<std::size_t> dbs(desired_accused.begin(), desired_accused.end());
  for (const auto& c : corrections) dbs.insert(c.accused.begin(), c.accused.end());
  return {dbs.begin(), dbs.end()};
}

RetrievalResult cancel_and_decode(
    const QueryPlan& plan, const AnswerSet& answers,
    const std::vector<KLayerCorrection>& corrections) {
  const QueryLayout& layout = plan.layout;
  const SchemeDims& dims = layout.dims;
  const PrimeField& f = plan.field;
  if (corrections.size() != layout.sets.k_sets.size()) {
    throw ParameterError("need one K-layer correction per K-set");
  }

  // x~ = mixed answers with the aligned side information removed.
  LayerView view;
  view.received.symbols.reserve(dims.outer_length);
  for (std::size_t j = 0; j < layout.sets.l_sets.size(); ++j) {
    const auto i = layout.sets.k_set_of_l_set(j);
    for (std::size_t t = 0; t < dims.x_length[j]; ++t) {
      const SlotRef ref = layout.x_location[dims.x_offset[j] + t];
      auto symbol = answer_at(answers, ref);
      if (symbol && i) symbol = f.sub(*symbol, corrections[*i].sigma.at(t));
      view.received.symbols.push_back(symbol);
      view.database.push_back(ref.database);
    }
  }

  DecodeOutcome out;
  try {
    out = decode(*plan.outer, view.received);
  } catch (const DecodeFailure& e) {
    throw DecodeFailure("desired layer (" + std::to_string(dims.outer_length) +
                        "," + std::to_string(dims.message_length) + "), " +
                        std::to_string(view.received.erasure_count()) +
                        " erasures: " + e.what());
  }

  // W = (G(I_x, :) S_desired)^{-1} x*(I_x) with I_x the first L' coordinates.
  const std::size_t len = dims.message_length;
  const FieldMatrix head =
      mat_mul(f, plan.outer->matrix().row_band(0, len), plan.mixing[layout.desired]);
  std::vector<FieldElement> x_head(out.corrected_codeword.begin(),
                                   out.corrected_codeword.begin() + len);

  RetrievalResult r;
  r.message = mat_vec(f, mat_invert(f, head), x_head);
  for (const auto& c : corrections) r.tallies.push_back(c.tally);
  const Params& p = plan.params();
  r.tallies.push_back({"desired", out.error_positions.size(),
                       view.received.erasure_count(),
                       p.b * (dims.outer_length / p.n)});
  r.identified_byzantine =
      identify_byzantine(corrections, owners(out.error_positions, view.database));
  r.download = answers.symbol_count();
  return r;
}

RetrievalResult majority_decode(const QueryPlan& plan, const AnswerSet& answers,
                                std::size_t desired) {
  const QueryLayout& layout = plan.layout;
  const Params& p = layout.params;
  if (layout.regime != Regime::kTrivial) {
    throw RegimeError("majority decoding needs a TRIVIAL-regime plan");
  }
  if (desired >= p.m) {
    throw ParameterError("desired index outside the message range");
  }
  std::vector<std::size_t> present;
  for (std::size_t db : layout.copies) {
    if (!answers.missing(db)) present.push_back(db);
  }

  RetrievalResult r;
  std::set<std::size_t> accused;
  for (std::size_t m = 0; m < p.m; ++m) {
    std::map<FieldElement, std::size_t> votes;
    for (std::size_t db : present) ++votes[answers.per_database[db]->at(m)];
    auto best = std::max_element(
        votes.begin(), votes.end(),
        [](const auto& a, const auto& b) { return a.second < b.second; });
    if (best == votes.end() || best->second < p.b + 1) {
      throw DecodeFailure("no value reaches B + 1 = " + std::to_string(p.b + 1) +
                          " votes for message " + std::to_string(m + 1));
    }
    std::size_t wrong = 0;
    for (std::size_t db : present) {
      if (answers.per_database[db]->at(m) != best->first) {
        accused.insert(db);
        ++wrong;
      }
    }
    if (m == desired) {
      r.message = {best->first};
      r.tallies.push_back({"majority", wrong, layout.copies.size() - present.size(),
                           p.b});
    }
  }
  r.identified_byzantine.assign(accused.begin(), accused.end());
  r.download = answers.symbol_count();
  return r;
}

RetrievalResult retrieve(const QueryPlan& plan, const AnswerSet& answers,
                         std::size_t desired) {
  if (plan.layout.regime == Regime::kTrivial) {
    return majority_decode(plan, answers, desired);
  }
  // K-sets are stored by ascending size, so this is round order.
  std::vector<KLayerCorrection> corrections;
  for (std::size_t i = 0; i < plan.layout.sets.k_sets.size(); ++i) {
    corrections.push_back(correct_k_layer(plan, answers, i));
  }
  return cancel_and_decode(plan, answers, corrections);
}

}  // namespace bpir
