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


#ifndef BPIR_EXPERIMENT_HPP_
#define BPIR_EXPERIMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bpir/analysis.hpp"
#include "bpir/decoder.hpp"
#include "bpir/network.hpp"
#include "bpir/params.hpp"

namespace bpir {

// Rejected configuration; the message names the violated condition.
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class OutputFormat { kTable, kJson, kCsv };

OutputFormat parse_format(const std::string& s);
std::string format_name(OutputFormat f);

// "none", "content", "worst", "random:<rate>" (bare "random" means rate 1).
void parse_adversary(const std::string& s, Strategy& strategy, double& rate);
std::string adversary_name(Strategy strategy, double rate);

// "0,1,2" -> {0, 1, 2}.
std::vector<std::size_t> parse_count_list(const std::string& s);
// "1,3,4" (1-based) -> {0, 2, 3}.
std::vector<std::size_t> parse_index_list(const std::string& s);

struct ExperimentConfig {
  Params params;
  std::optional<std::size_t> desired = 0;  // 0-based; nullopt sweeps all
  Strategy strategy = Strategy::kNone;
  double rate = 1.0;
  // 0-based; unset means a seeded random set per trial.
  std::optional<std::vector<std::size_t>> byzantine_set;
  std::optional<std::vector<std::size_t>> unresponsive_set;
  std::size_t trials = 1;
  OutputFormat emit = OutputFormat::kTable;
  bool dump_queries = false;
  bool audit_privacy = false;
  bool probe_confusability = false;
  std::size_t probe_pairs = 1000;
  bool trivial = false;
  bool timing = false;  // wall clock is the only nondeterministic output
};

// Throws ConfigError before anything runs.
void validate(const ExperimentConfig& config);

// Flat JSON object whose keys are the CLI flag names with underscores:
// n, m, t, b, u, q, seed, desired (1-based or "all"), adversary,
// byzantine_set / unresponsive_set (1-based arrays), trials, emit,
// dump_queries, audit_privacy, probe_confusability, probe_pairs, trivial.
// Missing keys keep the values already in `base`.
ExperimentConfig load_config(const std::string& path,
                             ExperimentConfig base = {});
ExperimentConfig config_from_json(const std::string& text,
                                  ExperimentConfig base = {});

struct LayerSummary {
  std::string layer;
  std::size_t max_errors = 0;
  std::size_t max_erasures = 0;
  std::size_t budget = 0;
};

struct RunReport {
  ExperimentConfig config;
  RateReport rate;
  std::size_t trials = 0;
  std::size_t successes = 0;
  std::size_t identified_exact = 0;  // identified set == B
  std::size_t identified_sound = 0;  // identified set within B
  bool within_budget = true;
  std::vector<LayerSummary> layers;
  std::vector<std::uint64_t> trial_seeds;
  std::optional<std::string> failure;  // first decode failure, with context
  std::optional<std::string> query_table;
  std::size_t audits = 0;
  std::size_t audits_passed = 0;
  std::optional<ProbeReport> probe;
  double wall_clock_ms = 0.0;

  bool decode_ok() const { return !failure && successes == trials; }
  bool audit_ok() const {
    return audits_passed == audits && (!probe || probe->collisions == 0);
  }
};

// Seed of trial t: SeededRng(config seed).derive(t).
RunReport run(const ExperimentConfig& config);

std::string render(const RunReport& report, OutputFormat format);

struct SweepRow {
  std::size_t b = 0;
  std::size_t n = 0;
  Regime regime = Regime::kFull;
  Rational capacity;
};

std::vector<SweepRow> sweep_capacity(std::size_t t, std::size_t m,
                                     const std::vector<std::size_t>& b_list,
                                     std::size_t n_min, std::size_t n_max);
std::string sweep_csv(const std::vector<SweepRow>& rows);

struct GammaRow {
  Rational gamma;
  std::size_t n = 0;
  std::size_t b = 0;  // floor(gamma N)
  Regime regime = Regime::kFull;
  Rational capacity;
  Rational limit;  // 1 - 2 gamma
};

std::vector<GammaRow> gamma_sweep(std::size_t n, std::size_t m, std::size_t t,
                                  const std::vector<Rational>& gammas);
std::string gamma_csv(const std::vector<GammaRow>& rows);

}  // namespace bpir

#endif  // BPIR_EXPERIMENT_HPP_
