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


// Command-line driver: single runs, adversary experiments, query tables,
// privacy audits and capacity sweeps.
//
// Exit codes: 0 success, 2 bad configuration or regime, 3 decode failure,
// 4 audit failure.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bpir/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDecode = 3;
constexpr int kExitAudit = 4;

std::vector<bpir::Rational> default_gammas() {
  std::vector<bpir::Rational> g;
  for (int i = 0; i <= 9; ++i) g.push_back(bpir::make_rational(i, 20));
  return g;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Byzantine and colluding private information retrieval"};

  bpir::ExperimentConfig flags;
  std::string config_path, desired = "1", adversary = "none";
  std::string byzantine_set, unresponsive_set, emit = "table";
  std::string b_list = "0,1,2";
  std::size_t n_min = 5, n_max = 20, gamma_n = 1000;
  bool sweep = false, gamma = false;

  app.add_option("--config", config_path, "flat JSON config; flags override it");
  app.add_option("--n", flags.params.n, "databases N");
  app.add_option("--m", flags.params.m, "messages M");
  app.add_option("--t", flags.params.t, "collusion threshold T");
  app.add_option("--b", flags.params.b, "Byzantine databases B");
  app.add_option("--u", flags.params.u, "unresponsive databases U");
  app.add_option("--q", flags.params.q, "prime field modulus");
  app.add_option("--seed", flags.params.seed, "master seed");
  app.add_option("--desired", desired, "1-based message index, or 'all'");
  app.add_option("--adversary", adversary, "none | content | random:<rate> | worst");
  app.add_option("--byzantine-set", byzantine_set, "1-based, comma separated");
  app.add_option("--unresponsive-set", unresponsive_set, "1-based, comma separated");
  app.add_option("--trials", flags.trials, "number of retrievals");
  app.add_option("--emit", emit, "table | json | csv");
  app.add_flag("--dump-queries", flags.dump_queries, "print the query table");
  app.add_flag("--audit-privacy", flags.audit_privacy, "rank audit of every T-subset");
  app.add_flag("--probe-confusability", flags.probe_confusability,
               "sample message-set pairs for answer collisions");
  app.add_option("--probe-pairs", flags.probe_pairs, "pairs for the probe");
  app.add_flag("--trivial", flags.trivial, "download 2B+1+U full copies");
  app.add_flag("--timing", flags.timing, "report wall clock (not reproducible)");
  app.add_flag("--sweep-capacity", sweep, "CSV of C over B-list x N-range");
  app.add_option("--b-list", b_list, "B values for --sweep-capacity");
  app.add_option("--n-min", n_min, "first N for --sweep-capacity");
  app.add_option("--n-max", n_max, "last N for --sweep-capacity");
  app.add_flag("--gamma-sweep", gamma, "CSV of C at B = floor(gamma N)");
  app.add_option("--gamma-n", gamma_n, "N for --gamma-sweep");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (sweep || gamma) {
      const std::size_t m = app.count("--m") ? flags.params.m : 3;
      const std::size_t t = app.count("--t") ? flags.params.t : 2;
      if (m == 0 || t == 0) throw bpir::ConfigError("M and T must be at least 1");
      if (sweep) {
        const auto bs = bpir::parse_count_list(b_list);
        std::cout << bpir::sweep_csv(bpir::sweep_capacity(t, m, bs, n_min, n_max));
      }
      if (gamma) {
        std::cout << bpir::gamma_csv(bpir::gamma_sweep(gamma_n, m, t, default_gammas()));
      }
      return kExitOk;
    }

    bpir::ExperimentConfig config;
    if (!config_path.empty()) config = bpir::load_config(config_path);
    auto given = [&](const char* flag) { return app.count(flag) > 0; };
    if (given("--n")) config.params.n = flags.params.n;
    if (given("--m")) config.params.m = flags.params.m;
    if (given("--t")) config.params.t = flags.params.t;
    if (given("--b")) config.params.b = flags.params.b;
    if (given("--u")) config.params.u = flags.params.u;
    if (given("--q")) config.params.q = flags.params.q;
    if (given("--seed")) config.params.seed = flags.params.seed;
    if (given("--desired")) {
      if (desired == "all") {
        config.desired.reset();
      } else {
        const auto idx = bpir::parse_index_list(desired);
        if (idx.size() != 1) throw bpir::ConfigError("--desired takes one index");
        config.desired = idx.front();
      }
    }
    if (given("--adversary")) bpir::parse_adversary(adversary, config.strategy, config.rate);
    if (given("--byzantine-set")) config.byzantine_set = bpir::parse_index_list(byzantine_set);
    if (given("--unresponsive-set")) {
      config.unresponsive_set = bpir::parse_index_list(unresponsive_set);
    }
    if (given("--trials")) config.trials = flags.trials;
    if (given("--emit")) config.emit = bpir::parse_format(emit);
    if (given("--probe-pairs")) config.probe_pairs = flags.probe_pairs;
    config.dump_queries = config.dump_queries || flags.dump_queries;
    config.audit_privacy = config.audit_privacy || flags.audit_privacy;
    config.probe_confusability = config.probe_confusability || flags.probe_confusability;
    config.trivial = config.trivial || flags.trivial;
    config.timing = flags.timing;

    const bpir::RunReport report = bpir::run(config);
    std::cout << bpir::render(report, config.emit);
    if (!report.decode_ok()) {
      if (report.failure) std::cerr << "decode failure: " << *report.failure << "\n";
      return kExitDecode;
    }
    if (!report.audit_ok()) return kExitAudit;
    return kExitOk;
  } catch (const bpir::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const bpir::RegimeError& e) {
    std::cerr << "regime error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const bpir::FieldSizeError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const bpir::ParameterError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const bpir::DecodeFailure& e) {
    std::cerr << "decode failure: " << e.what() << "\n";
    return kExitDecode;
  }
}
