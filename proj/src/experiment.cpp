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


#include "bpir/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace bpir {
namespace {

std::string join_one_based(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i] + 1);
  }
  return out;
}

std::string fraction_and_decimal(const Rational& r) {
  return to_fraction(r) + " (" + to_decimal(r) + ")";
}

std::vector<std::size_t> json_index_list(const nlohmann::json& j,
                                         const char* key) {
  std::vector<std::size_t> out;
  if (!j.is_array()) throw ConfigError(std::string(key) + " must be an array");
  for (const auto& e : j) {
    if (!e.is_number_unsigned() || e.get<std::size_t>() == 0) {
      throw ConfigError(std::string(key) + " entries are 1-based database indices");
    }
    out.push_back(e.get<std::size_t>() - 1);
  }
  return out;
}

}  // namespace

OutputFormat parse_format(const std::string& s) {
  if (s == "table") return OutputFormat::kTable;
  if (s == "json") return OutputFormat::kJson;
  if (s == "csv") return OutputFormat::kCsv;
  throw ConfigError("unknown output format '" + s + "' (table, json, csv)");
}

std::string format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::kTable: return "table";
    case OutputFormat::kJson: return "json";
    case OutputFormat::kCsv: return "csv";
  }
  return "?";
}

void parse_adversary(const std::string& s, Strategy& strategy, double& rate) {
  rate = 1.0;
  if (s == "none") {
    strategy = Strategy::kNone;
  } else if (s == "content") {
    strategy = Strategy::kContentSwap;
  } else if (s == "worst") {
    strategy = Strategy::kAnswerWorst;
  } else if (s == "random" || s.rfind("random:", 0) == 0) {
    strategy = Strategy::kAnswerRandom;
    if (s.size() > 7) {
      std::size_t used = 0;
      try {
        rate = std::stod(s.substr(7), &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != s.size() - 7 || !(rate >= 0.0 && rate <= 1.0)) {
        throw ConfigError("random:<rate> needs a rate in [0, 1], got '" +
                          s.substr(7) + "'");
      }
    }
  } else {
    throw ConfigError("unknown adversary '" + s +
                      "' (none, content, random:<rate>, worst)");
  }
}

std::string adversary_name(Strategy strategy, double rate) {
  if (strategy != Strategy::kAnswerRandom) return strategy_name(strategy);
  std::ostringstream os;
  os << "random:" << rate;
  return os.str();
}

std::vector<std::size_t> parse_count_list(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item[0] == '-') {
      throw ConfigError("'" + item + "' is not a nonnegative integer");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<std::size_t> parse_index_list(const std::string& s) {
  std::vector<std::size_t> out = parse_count_list(s);
  for (auto& v : out) {
    if (v == 0) throw ConfigError("database and message indices are 1-based");
    --v;
  }
  return out;
}

void validate(const ExperimentConfig& c) {
  const Params& p = c.params;
  if (p.n < 1 || p.m < 1 || p.t < 1) {
    throw ConfigError("N, M and T must all be at least 1");
  }
  try {
    PrimeField f(p.q);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  const std::size_t n = p.n, b2 = 2 * p.b;
  switch (classify_regime(p)) {
    case Regime::kInfeasible:
      if (p.u > n) {
        throw ConfigError("U = " + std::to_string(p.u) + " > N = " +
                          std::to_string(n) + ": infeasible");
      }
      throw ConfigError("N - U = " + std::to_string(n - p.u) + " < 2B + 1 = " +
                        std::to_string(b2 + 1) +
                        ": infeasible, Byzantine databases can always confuse "
                        "the user (capacity 0)");
    case Regime::kTrivial:
      if (!c.trivial) {
        throw ConfigError("2B + T + U = " + std::to_string(b2 + p.t + p.u) +
                          " >= N = " + std::to_string(n) +
                          ": trivial regime; use --trivial");
      }
      if (c.dump_queries || c.probe_confusability) {
        throw ConfigError("--dump-queries and --probe-confusability need "
                          "2B + T + U < N");
      }
      break;
    case Regime::kFull:
      if (c.trivial) {
        throw ConfigError("--trivial needs 2B + 1 <= N - U <= 2B + T, but 2B + T "
                          "+ U = " + std::to_string(b2 + p.t + p.u) +
                          " < N = " + std::to_string(n));
      }
      try {
        check_field_size(p);
        checked_mul(p.n, checked_pow(p.honest_span(), p.m));
      } catch (const Error& e) {
        throw ConfigError(e.what());
      }
      break;
  }
  if (c.desired && *c.desired >= p.m) {
    throw ConfigError("desired index " + std::to_string(*c.desired + 1) +
                      " outside [1, M = " + std::to_string(p.m) + "]");
  }
  AdversaryConfig probe;
  probe.strategy = c.strategy;
  probe.rate = c.rate;
  if (c.byzantine_set) probe.byzantine = *c.byzantine_set;
  if (c.unresponsive_set) probe.unresponsive = *c.unresponsive_set;
  try {
    probe.check(p);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (c.byzantine_set && c.unresponsive_set) {
    for (std::size_t db : *c.byzantine_set) {
      if (std::count(c.unresponsive_set->begin(), c.unresponsive_set->end(), db)) {
        throw ConfigError("database " + std::to_string(db + 1) +
                          " is listed as both Byzantine and unresponsive");
      }
    }
  }
  if (p.b + p.u > p.n) throw ConfigError("B + U exceeds N");
}

ExperimentConfig config_from_json(const std::string& text,
                                  ExperimentConfig base) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a flat JSON object");
  ExperimentConfig c = std::move(base);
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "n") c.params.n = value.get<std::size_t>();
      else if (key == "m") c.params.m = value.get<std::size_t>();
      else if (key == "t") c.params.t = value.get<std::size_t>();
      else if (key == "b") c.params.b = value.get<std::size_t>();
      else if (key == "u") c.params.u = value.get<std::size_t>();
      else if (key == "q") c.params.q = value.get<std::uint32_t>();
      else if (key == "seed") c.params.seed = value.get<std::uint64_t>();
      else if (key == "desired") {
        if (value.is_string() && value.get<std::string>() == "all") {
          c.desired.reset();
        } else if (value.is_number_unsigned() && value.get<std::size_t>() > 0) {
          c.desired = value.get<std::size_t>() - 1;
        } else {
          throw ConfigError("desired must be a 1-based index or \"all\"");
        }
      } else if (key == "adversary") {
        parse_adversary(value.get<std::string>(), c.strategy, c.rate);
      } else if (key == "byzantine_set") {
        c.byzantine_set = json_index_list(value, "byzantine_set");
      } else if (key == "unresponsive_set") {
        c.unresponsive_set = json_index_list(value, "unresponsive_set");
      } else if (key == "trials") c.trials = value.get<std::size_t>();
      else if (key == "emit") c.emit = parse_format(value.get<std::string>());
      else if (key == "dump_queries") c.dump_queries = value.get<bool>();
      else if (key == "audit_privacy") c.audit_privacy = value.get<bool>();
      else if (key == "probe_confusability") c.probe_confusability = value.get<bool>();
      else if (key == "probe_pairs") c.probe_pairs = value.get<std::size_t>();
      else if (key == "trivial") c.trivial = value.get<bool>();
      else throw ConfigError("unknown config key '" + key + "'");
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config key '" + key + "': " + e.what());
    }
  }
  return c;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str(), std::move(base));
}

RunReport run(const ExperimentConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  const Params& p = config.params;
  const bool trivial = classify_regime(p) == Regime::kTrivial;
  const SeededRng master(p.seed);

  RunReport report;
  report.config = config;
  report.trials = config.trials;
  std::map<std::string, std::size_t> layer_index;

  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    SeededRng rng = master.derive(trial);
    report.trial_seeds.push_back(rng.seed());
    const std::size_t desired = config.desired ? *config.desired : trial % p.m;

    const QueryPlan plan =
        trivial ? build_trivial_plan(p, rng) : build_plan(p, desired, rng);
    if (trial == 0) {
      report.rate = measure_rate(plan);
      if (config.dump_queries) report.query_table = dump_query_table(plan.layout);
      if (config.audit_privacy) {
        for (const PrivacyAudit& a : privacy_audit_all(plan)) {
          ++report.audits;
          report.audits_passed += a.pass;
        }
      }
    }

    const MessageSet truth =
        MessageSet::random(plan.field, p.m, plan.message_length(), rng);
    AdversaryConfig adv = AdversaryConfig::random_sets(p, config.strategy, rng);
    adv.rate = config.rate;
    // No strategy means every database behaves; nobody should be accused.
    if (config.strategy == Strategy::kNone) adv.byzantine.clear();
    if (config.byzantine_set) adv.byzantine = *config.byzantine_set;
    if (config.unresponsive_set) adv.unresponsive = *config.unresponsive_set;

    const auto nodes = make_nodes(plan.field, p, truth, adv);
    const AnswerSet answers = collect(plan, nodes, adv);
    RetrievalResult result;
    try {
      result = retrieve(plan, answers, desired);
    } catch (const DecodeFailure& e) {
      if (!report.failure) {
        report.failure = "trial " + std::to_string(trial) + " (seed " +
                         std::to_string(rng.seed()) + ", desired " +
                         std::to_string(desired + 1) + ", byzantine {" +
                         join_one_based(adv.byzantine) + "}, unresponsive {" +
                         join_one_based(adv.unresponsive) + "}): " + e.what();
      }
      continue;
    }

    report.successes += result.message == truth.messages[desired];
    std::vector<std::size_t> byz = adv.byzantine;
    std::sort(byz.begin(), byz.end());
    report.identified_exact += result.identified_byzantine == byz;
    report.identified_sound +=
        std::includes(byz.begin(), byz.end(), result.identified_byzantine.begin(),
                      result.identified_byzantine.end());
    report.within_budget = report.within_budget && result.within_budget();
    for (const LayerTally& t : result.tallies) {
      auto [it, added] = layer_index.emplace(t.layer, report.layers.size());
      if (added) report.layers.push_back({t.layer, 0, 0, t.budget});
      LayerSummary& s = report.layers[it->second];
      s.max_errors = std::max(s.max_errors, t.errors);
      s.max_erasures = std::max(s.max_erasures, t.erasures);
    }
  }

  if (config.probe_confusability) {
    report.probe = confusability_probe(p, config.desired.value_or(0),
                                       config.probe_pairs);
  }
  report.wall_clock_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  return report;
}

std::string render(const RunReport& r, OutputFormat format) {
  const ExperimentConfig& c = r.config;
  const Params& p = c.params;
  const std::string desired =
      c.desired ? std::to_string(*c.desired + 1) : std::string("all");
  const std::string adversary = adversary_name(c.strategy, c.rate);
  std::ostringstream os;

  if (format == OutputFormat::kJson) {
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(r.rate.to_json());
    j["R"] = to_fraction(r.rate.rate);
    j["R_float"] = to_decimal(r.rate.rate);
    j["C"] = to_fraction(r.rate.capacity);
    j["C_float"] = to_decimal(r.rate.capacity);
    j["params"] = {{"N", p.n}, {"M", p.m}, {"T", p.t}, {"B", p.b},
                   {"U", p.u}, {"q", p.q}, {"seed", p.seed}};
    j["desired"] = desired;
    j["adversary"] = adversary;
    j["trials"] = r.trials;
    j["successes"] = r.successes;
    j["identified_exact"] = r.identified_exact;
    j["identified_sound"] = r.identified_sound;
    j["within_budget"] = r.within_budget;
    j["layers"] = nlohmann::ordered_json::array();
    for (const auto& l : r.layers) {
      j["layers"].push_back({{"layer", l.layer},
                             {"max_errors", l.max_errors},
                             {"max_erasures", l.max_erasures},
                             {"budget", l.budget}});
    }
    j["trial_seeds"] = r.trial_seeds;
    if (r.failure) j["failure"] = *r.failure;
    if (c.audit_privacy) {
      j["privacy_audits"] = r.audits;
      j["privacy_audits_passed"] = r.audits_passed;
    }
    if (r.probe) {
      j["probe_pairs"] = r.probe->pairs;
      j["probe_collisions"] = r.probe->collisions;
    }
    if (r.query_table) j["query_table"] = *r.query_table;
    if (c.timing) j["wall_clock_ms"] = r.wall_clock_ms;
    os << j.dump(2) << "\n";
    return os.str();
  }

  if (format == OutputFormat::kCsv) {
    os << "N,M,T,B,U,q,seed,desired,adversary," << RateReport::csv_header()
       << ",R,R_float,C,C_float,trials,successes,identified_exact,"
          "identified_sound,within_budget";
    if (c.timing) os << ",wall_clock_ms";
    os << "\n"
       << p.n << ',' << p.m << ',' << p.t << ',' << p.b << ',' << p.u << ','
       << p.q << ',' << p.seed << ',' << desired << ',' << adversary << ','
       << r.rate.to_csv() << ',' << to_fraction(r.rate.rate) << ','
       << to_decimal(r.rate.rate) << ',' << to_fraction(r.rate.capacity) << ','
       << to_decimal(r.rate.capacity) << ',' << r.trials << ',' << r.successes
       << ',' << r.identified_exact << ',' << r.identified_sound << ','
       << (r.within_budget ? "true" : "false");
    if (c.timing) os << ',' << r.wall_clock_ms;
    os << "\n";
    return os.str();
  }

  auto line = [&](const std::string& key, const std::string& value) {
    std::string k = key;
    k.resize(12, ' ');
    os << k << value << "\n";
  };
  line("params", p.to_string());
  line("regime", std::string(regime_name(r.rate.regime)));
  line("desired", desired);
  line("adversary", adversary);
  line("L", std::to_string(r.rate.message_length));
  line("D", std::to_string(r.rate.download));
  line("R", fraction_and_decimal(r.rate.rate));
  line("C", fraction_and_decimal(r.rate.capacity));
  line("match", r.rate.match ? "yes" : "no");
  line("decoded", std::to_string(r.successes) + "/" + std::to_string(r.trials));
  line("identified", std::to_string(r.identified_exact) + "/" +
                         std::to_string(r.trials) + " exact, " +
                         std::to_string(r.identified_sound) + "/" +
                         std::to_string(r.trials) + " sound");
  for (const auto& l : r.layers) {
    line("layer", l.layer + ": max errors " + std::to_string(l.max_errors) +
                      " (budget " + std::to_string(l.budget) + "), max erasures " +
                      std::to_string(l.max_erasures));
  }
  line("budget", r.within_budget ? "respected" : "EXCEEDED");
  if (c.audit_privacy) {
    line("privacy", std::to_string(r.audits_passed) + "/" +
                        std::to_string(r.audits) + " T-subsets pass");
  }
  if (r.probe) {
    line("probe", std::to_string(r.probe->collisions) + " collisions in " +
                      std::to_string(r.probe->pairs) + " pairs");
  }
  line("seeds", "trial t uses derive(t) of seed " + std::to_string(p.seed));
  if (r.failure) line("failure", *r.failure);
  if (c.timing) line("wall clock", to_decimal(Rational(static_cast<long long>(r.wall_clock_ms * 1000), 1000), 3) + " ms");
  if (r.query_table) os << "\n" << *r.query_table;
  return os.str();
}

std::vector<SweepRow> sweep_capacity(std::size_t t, std::size_t m,
                                     const std::vector<std::size_t>& b_list,
                                     std::size_t n_min, std::size_t n_max) {
  std::vector<SweepRow> rows;
  for (std::size_t b : b_list) {
    for (std::size_t n = n_min; n <= n_max; ++n) {
      const Capacity c = capacity(n, m, t, b);
      rows.push_back({b, n, c.regime, c.value});
    }
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "B,N,regime,C,C_fraction\n";
  for (const auto& r : rows) {
    os << r.b << ',' << r.n << ',' << regime_name(r.regime) << ','
       << to_decimal(r.capacity) << ',' << to_fraction(r.capacity) << "\n";
  }
  return os.str();
}

std::vector<GammaRow> gamma_sweep(std::size_t n, std::size_t m, std::size_t t,
                                  const std::vector<Rational>& gammas) {
  std::vector<GammaRow> rows;
  for (const Rational& g : gammas) {
    const Rational scaled = g * n;
    const BigInt b = boost::multiprecision::numerator(scaled) /
                     boost::multiprecision::denominator(scaled);
    GammaRow row;
    row.gamma = g;
    row.n = n;
    row.b = b.convert_to<std::size_t>();
    const Capacity c = capacity(n, m, t, row.b);
    row.regime = c.regime;
    row.capacity = c.value;
    row.limit = asymptotic_capacity(g);
    rows.push_back(row);
  }
  return rows;
}

std::string gamma_csv(const std::vector<GammaRow>& rows) {
  std::ostringstream os;
  os << "gamma,N,B,regime,C,C_fraction,limit\n";
  for (const auto& r : rows) {
    os << to_decimal(r.gamma, 2) << ',' << r.n << ',' << r.b << ','
       << regime_name(r.regime) << ',' << to_decimal(r.capacity) << ','
       << to_fraction(r.capacity) << ',' << to_decimal(r.limit) << "\n";
  }
  return os.str();
}

}  // namespace bpir
