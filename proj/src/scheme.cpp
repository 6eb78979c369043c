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


#include "bpir/scheme.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>

namespace bpir {
namespace {

constexpr std::size_t kMaxMessages = 20;

bool size_then_lex(const Subset& a, const Subset& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// Display rank of a message: the desired one is 0 ("a"), the rest follow in
// index order.
std::size_t label_rank(std::size_t message, std::size_t desired) {
  if (message == desired) return 0;
  return message < desired ? message + 1 : message;
}

std::vector<std::size_t> ranks_of(const Subset& s, std::size_t desired) {
  std::vector<std::size_t> r;
  for (std::size_t m : s) r.push_back(label_rank(m, desired));
  std::sort(r.begin(), r.end());
  return r;
}

void require_full(const Params& p, const char* what) {
  const Regime r = classify_regime(p);
  if (r != Regime::kFull) {
    throw RegimeError(std::string(what) + " needs the FULL regime (2B+T+U < N); " +
                      p.to_string() + " is " + std::string(regime_name(r)));
  }
}

// sum_t row[t] * S(offset + t, :)
std::vector<FieldElement> band_combination(const PrimeField& f,
                                           std::span<const FieldElement> row,
                                           const FieldMatrix& s,
                                           std::size_t offset) {
  std::vector<FieldElement> out(s.cols(), 0);
  for (std::size_t t = 0; t < row.size(); ++t) {
    if (row[t] == 0) continue;
    auto src = s.row(offset + t);
    for (std::size_t j = 0; j < out.size(); ++j) {
      out[j] = f.mul_add(out[j], row[t], src[j]);
    }
  }
  return out;
}

}  // namespace

std::size_t SetSystem::l_set_of_k_set(std::size_t i) const {
  Subset l = k_sets.at(i);
  l.insert(std::upper_bound(l.begin(), l.end(), desired), desired);
  auto it = std::find(l_sets.begin(), l_sets.end(), l);
  return static_cast<std::size_t>(it - l_sets.begin());
}

std::optional<std::size_t> SetSystem::k_set_of_l_set(std::size_t j) const {
  Subset k = l_sets.at(j);
  k.erase(std::find(k.begin(), k.end(), desired));
  if (k.empty()) return std::nullopt;
  auto it = std::find(k_sets.begin(), k_sets.end(), k);
  return static_cast<std::size_t>(it - k_sets.begin());
}

std::vector<std::size_t> SetSystem::k_sets_containing(
    std::size_t message) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < k_sets.size(); ++i) {
    if (std::binary_search(k_sets[i].begin(), k_sets[i].end(), message)) {
      out.push_back(i);
    }
  }
  return out;
}

SetSystem enumerate_sets(std::size_t m, std::size_t desired) {
  if (m < 1 || m > kMaxMessages) {
    throw ParameterError("message count must be in [1, 20]");
  }
  if (desired >= m) {
    throw ParameterError("desired index " + std::to_string(desired + 1) +
                         " outside [1, " + std::to_string(m) + "]");
  }
  SetSystem s;
  s.desired = desired;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    Subset sub;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (1u << i)) sub.push_back(i);
    }
    if (mask & (1u << desired)) {
      s.l_sets.push_back(std::move(sub));
    } else {
      s.k_sets.push_back(std::move(sub));
    }
  }
  std::sort(s.l_sets.begin(), s.l_sets.end(), size_then_lex);
  std::sort(s.k_sets.begin(), s.k_sets.end(), size_then_lex);
  return s;
}

void check_field_size(const Params& p) {
  require_full(p, "field-size check");
  const std::uint64_t longest =
      checked_mul(p.n, checked_pow(p.honest_span(), p.m - 1));
  if (p.q <= longest) {
    throw FieldSizeError("field too small: need q > N(N-2B-U)^(M-1) = " +
                         std::to_string(longest) + ", got q = " +
                         std::to_string(p.q));
  }
}

SchemeDims compute_dims(const Params& p, const SetSystem& sets) {
  require_full(p, "compute_dims");
  const std::uint64_t n = p.n, m = p.m, t = p.t;
  const std::uint64_t h = p.honest_span();
  const std::uint64_t gap = h - t;  // H - T >= 1 in the FULL regime

  SchemeDims d;
  d.message_length = checked_pow(h, m);
  d.outer_length = checked_mul(n, checked_pow(h, m - 1));

  for (const Subset& k : sets.k_sets) {
    const std::size_t s = k.size();
    SchemeDims::KSetDims kd;
    const std::uint64_t base =
        checked_mul(checked_pow(gap, s - 1), checked_pow(t, m - s));
    kd.alpha = checked_mul(h, base);
    kd.u_length = checked_mul(n, base);
    kd.sigma_length =
        checked_mul(n, checked_mul(checked_pow(gap, s), checked_pow(t, m - s - 1)));
    kd.code_length = kd.u_length + kd.sigma_length;
    if (kd.code_length * t != n * kd.alpha) {
      throw InternalError("K-set code length != N alpha / T");
    }
    d.k_sets.push_back(kd);
  }

  std::uint64_t offset = 0;
  for (const Subset& l : sets.l_sets) {
    const std::size_t s = l.size();
    const std::uint64_t len = checked_mul(
        n, checked_mul(checked_pow(gap, s - 1), checked_pow(t, m - s)));
    d.x_offset.push_back(offset);
    d.x_length.push_back(len);
    offset += len;
  }
  if (offset != d.outer_length) {
    throw InternalError("desired segments do not tile the outer codeword");
  }

  const std::uint64_t rows_used = checked_mul(t, checked_pow(h, m - 1));
  d.band_offset.assign(m, std::vector<std::uint64_t>(sets.k_sets.size(), 0));
  for (std::size_t k = 0; k < m; ++k) {
    if (k == sets.desired) continue;
    std::uint64_t band = 0, coded = 0;
    for (std::size_t i : sets.k_sets_containing(k)) {
      d.band_offset[k][i] = band;
      band += d.k_sets[i].alpha;
      coded += d.k_sets[i].code_length;
    }
    if (band != rows_used || band > d.message_length) {
      throw InternalError("row bands do not cover T(N-2B-U)^(M-1) rows");
    }
    if (coded != d.outer_length) {
      throw InternalError("undesired codeword length != N(N-2B-U)^(M-1)");
    }
  }

  for (std::uint64_t r = 1; r <= m; ++r) {
    const std::uint64_t c = checked_mul(
        binomial(m, r), checked_mul(checked_pow(gap, r - 1), checked_pow(t, m - r)));
    d.round_per_database.push_back(c);
    d.per_database += c;
  }
  std::uint64_t from_layers = 0;
  for (auto len : d.x_length) from_layers += len / n;
  for (const auto& kd : d.k_sets) from_layers += kd.u_length / n;
  if (from_layers != d.per_database) {
    throw InternalError("per-database download does not match layer sizes");
  }
  d.total_download = checked_mul(n - p.u, d.per_database);
  return d;
}

QueryLayout build_layout(const Params& p, std::size_t desired, SeededRng& rng) {
  require_full(p, "build_layout");
  QueryLayout layout;
  layout.params = p;
  layout.regime = Regime::kFull;
  layout.desired = desired;
  layout.sets = enumerate_sets(p.m, desired);
  layout.dims = compute_dims(p, layout.sets);
  const SetSystem& sets = layout.sets;
  const SchemeDims& dims = layout.dims;
  const std::size_t n = p.n;

  layout.slots.resize(n);
  layout.x_location.resize(dims.outer_length);
  layout.u_location.resize(sets.k_sets.size());
  for (std::size_t i = 0; i < sets.k_sets.size(); ++i) {
    layout.u_location[i].resize(dims.k_sets[i].u_length);
  }

  struct Group {
    SlotKind kind;
    std::size_t segment;
    const Subset* subset;
    std::vector<std::size_t> rank_key;
  };

  for (std::size_t round = 1; round <= p.m; ++round) {
    std::vector<Group> groups;
    for (std::size_t j = 0; j < sets.l_sets.size(); ++j) {
      if (sets.l_sets[j].size() != round) continue;
      groups.push_back({j == 0 ? SlotKind::kDesired : SlotKind::kMixed, j,
                        &sets.l_sets[j], ranks_of(sets.l_sets[j], desired)});
    }
    for (std::size_t i = 0; i < sets.k_sets.size(); ++i) {
      if (sets.k_sets[i].size() != round) continue;
      groups.push_back({SlotKind::kUndesired, i, &sets.k_sets[i],
                        ranks_of(sets.k_sets[i], desired)});
    }
    std::sort(groups.begin(), groups.end(),
              [](const Group& a, const Group& b) { return a.rank_key < b.rank_key; });

    for (const Group& g : groups) {
      const std::size_t count = g.kind == SlotKind::kUndesired
                                    ? dims.k_sets[g.segment].u_length
                                    : dims.x_length[g.segment];
      std::vector<std::size_t> order(count);
      std::iota(order.begin(), order.end(), 0);
      rng.shuffle(std::span<std::size_t>(order));
      std::vector<std::vector<std::size_t>> dealt(n);
      for (std::size_t pos = 0; pos < count; ++pos) {
        dealt[pos % n].push_back(order[pos]);
      }
      for (std::size_t db = 0; db < n; ++db) {
        std::sort(dealt[db].begin(), dealt[db].end());
        for (std::size_t coord : dealt[db]) {
          const SlotRef ref{db, layout.slots[db].size()};
          layout.slots[db].push_back({g.kind, *g.subset, g.segment, coord, round});
          if (g.kind == SlotKind::kUndesired) {
            layout.u_location[g.segment][coord] = ref;
          } else {
            layout.x_location[dims.x_offset[g.segment] + coord] = ref;
          }
        }
      }
    }
  }
  for (const auto& s : layout.slots) {
    if (s.size() != dims.per_database) {
      throw InternalError("uneven per-database query counts");
    }
  }
  return layout;
}

QueryPlan build_plan(const Params& p, std::size_t desired, SeededRng& rng) {
  require_full(p, "build_plan");
  check_field_size(p);
  QueryPlan plan{build_layout(p, desired, rng), PrimeField(p.q), {}, {}, {}, {}};
  const PrimeField& f = plan.field;
  const QueryLayout& layout = plan.layout;
  const SchemeDims& dims = layout.dims;
  const SetSystem& sets = layout.sets;
  const std::size_t len = dims.message_length;

  for (std::size_t m = 0; m < p.m; ++m) {
    plan.mixing.push_back(sample_full_rank(f, len, rng));
  }
  plan.outer = make_generator(dims.outer_length, len, f);
  for (const auto& kd : dims.k_sets) {
    plan.k_generators.push_back(make_generator(kd.code_length, kd.alpha, f));
  }

  auto undesired_terms = [&](std::size_t i, std::size_t codeword_row,
                             std::vector<CoefficientRow>& terms) {
    const auto row = plan.k_generators[i].row(codeword_row);
    for (std::size_t k : sets.k_sets[i]) {
      terms.push_back({k, band_combination(f, row, plan.mixing[k],
                                           dims.band_offset[k][i])});
    }
  };

  plan.queries.resize(p.n);
  for (std::size_t db = 0; db < p.n; ++db) {
    for (const Slot& slot : layout.slots[db]) {
      QuerySpec spec{slot.subset, {}};
      if (slot.kind == SlotKind::kUndesired) {
        undesired_terms(slot.segment, slot.coordinate, spec.terms);
      } else {
        const auto g = dims.x_offset[slot.segment] + slot.coordinate;
        spec.terms.push_back(
            {desired, vec_mat(f, plan.outer->row(g), plan.mixing[desired])});
        if (auto i = sets.k_set_of_l_set(slot.segment)) {
          undesired_terms(*i, dims.k_sets[*i].u_length + slot.coordinate,
                          spec.terms);
        }
      }
      std::sort(spec.terms.begin(), spec.terms.end(),
                [](const CoefficientRow& a, const CoefficientRow& b) {
                  return a.message < b.message;
                });
      plan.queries[db].push_back(std::move(spec));
    }
  }
  return plan;
}

QueryPlan build_trivial_plan(const Params& p, SeededRng& rng) {
  const Regime r = classify_regime(p);
  if (r != Regime::kTrivial) {
    throw RegimeError("build_trivial_plan needs the TRIVIAL regime "
                      "(2B+1 <= N-U <= 2B+T); " + p.to_string() + " is " +
                      std::string(regime_name(r)));
  }
  QueryLayout layout;
  layout.params = p;
  layout.regime = r;
  layout.dims.message_length = 1;
  layout.dims.per_database = p.m;

  std::vector<std::size_t> order(p.n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(std::span<std::size_t>(order));
  const std::size_t copies = 2 * p.b + 1 + p.u;
  layout.copies.assign(order.begin(), order.begin() + copies);
  std::sort(layout.copies.begin(), layout.copies.end());
  layout.dims.total_download = checked_mul(copies - p.u, p.m);

  QueryPlan plan{std::move(layout), PrimeField(p.q), {}, {}, {}, {}};
  plan.layout.slots.resize(p.n);
  plan.queries.resize(p.n);
  for (std::size_t db : plan.layout.copies) {
    for (std::size_t m = 0; m < p.m; ++m) {
      plan.layout.slots[db].push_back({SlotKind::kFullCopy, {m}, m, 0, 1});
      plan.queries[db].push_back({{m}, {{m, {1}}}});
    }
  }
  return plan;
}

std::string dump_query_table(const QueryLayout& layout) {
  if (layout.regime != Regime::kFull) {
    throw RegimeError("query tables exist only for FULL-regime plans");
  }
  const SetSystem& sets = layout.sets;
  const SchemeDims& dims = layout.dims;
  const std::size_t desired = layout.desired;

  auto letter = [&](std::size_t message) {
    const std::size_t r = label_rank(message, desired);
    return r < 26 ? std::string(1, static_cast<char>('a' + r))
                  : "w" + std::to_string(r + 1);
  };
  // 1-based index of an undesired coordinate inside X^{[k]}.
  auto undesired_index = [&](std::size_t k, std::size_t i, std::size_t within) {
    std::uint64_t offset = 0;
    for (std::size_t other : sets.k_sets_containing(k)) {
      if (other == i) break;
      offset += dims.k_sets[other].code_length;
    }
    return offset + within + 1;
  };
  auto undesired_label = [&](std::size_t i, std::size_t within) {
    std::vector<std::pair<std::size_t, std::string>> parts;
    for (std::size_t k : sets.k_sets[i]) {
      parts.emplace_back(label_rank(k, desired),
                         letter(k) + "_" +
                             std::to_string(undesired_index(k, i, within)));
    }
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (const auto& [rank, text] : parts) {
      if (!out.empty()) out += "+";
      out += text;
    }
    return out;
  };

  const std::size_t n = layout.database_count();
  std::vector<std::vector<std::string>> cells(n);
  for (std::size_t db = 0; db < n; ++db) {
    for (const Slot& slot : layout.slots[db]) {
      std::string label;
      if (slot.kind == SlotKind::kUndesired) {
        label = undesired_label(slot.segment, slot.coordinate);
      } else {
        label = letter(desired) + "_" +
                std::to_string(dims.x_offset[slot.segment] + slot.coordinate + 1);
        if (auto i = sets.k_set_of_l_set(slot.segment)) {
          label += "+" + undesired_label(
                             *i, dims.k_sets[*i].u_length + slot.coordinate);
        }
      }
      cells[db].push_back(std::move(label));
    }
  }

  std::vector<std::size_t> width(n);
  for (std::size_t db = 0; db < n; ++db) {
    width[db] = ("DB " + std::to_string(db + 1)).size();
    for (const auto& c : cells[db]) width[db] = std::max(width[db], c.size());
  }
  auto emit_row = [&](std::ostringstream& os, auto cell_of) {
    for (std::size_t db = 0; db < n; ++db) {
      std::string c = cell_of(db);
      if (db + 1 < n) c.resize(width[db], ' ');
      os << c << (db + 1 < n ? " | " : "\n");
    }
  };
  std::size_t total_width = 3 * (n - 1);
  for (auto w : width) total_width += w;
  const std::string rule(total_width, '-');

  std::ostringstream os;
  emit_row(os, [](std::size_t db) { return "DB " + std::to_string(db + 1); });
  std::size_t row = 0;
  for (std::uint64_t count : dims.round_per_database) {
    os << rule << "\n";
    for (std::uint64_t i = 0; i < count; ++i, ++row) {
      emit_row(os, [&](std::size_t db) { return cells[db][row]; });
    }
  }
  return os.str();
}

}  // namespace bpir
