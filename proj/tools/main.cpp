//
// Copyright 2026 The puffercal Authors
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
//

// Command-line front end: noise-scale calibration, dataset privatization and
// indistinguishability audits.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "puffercal/audit.hpp"
#include "puffercal/calibrate.hpp"
#include "puffercal/dataset.hpp"
#include "puffercal/errors.hpp"
#include "puffercal/json_io.hpp"
#include "puffercal/mechanism.hpp"
#include "puffercal/specfun.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace puffercal;

namespace {

// All flags can come from an optional JSON config file (keys mirror the long
// flag names, e.g. {"epsilon":1.0,"tau-method":"lambert-fp"}). Explicit flags
// win; that falls out of binding defaults from the config before parsing.
json prescan_config(int argc, char** argv) {
  std::string path;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) {
      path = argv[i + 1];
    } else if (arg.rfind("--config=", 0) == 0) {
      path = arg.substr(9);
    }
  }
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) {
    throw CLI::ValidationError("--config", "cannot open config file: " + path);
  }
  try {
    json cfg;
    in >> cfg;
    if (!cfg.is_object()) {
      throw CLI::ValidationError("--config", "config must be a JSON object");
    }
    return cfg;
  } catch (const json::exception& e) {
    throw CLI::ValidationError("--config",
                               "bad JSON in " + path + ": " + e.what());
  }
}

template <typename T>
void config_default(const json& cfg, const std::string& key, T& var) {
  if (cfg.contains(key)) var = cfg.at(key).get<T>();
}

std::string sanitize(const std::string& name) {
  std::string out;
  for (char c : name) {
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
                          c == '_'
                      ? c
                      : '_');
  }
  return out.empty() ? "_" : out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path);
  out << content;
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << j.dump(2) << '\n';
  } else {
    write_file(out_path, j.dump(2) + "\n");
  }
}

DiscriminativePair parse_pair(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == spec.size()) {
    throw DomainError("bad pair '" + spec + "', expected SECRET_A:SECRET_B");
  }
  DiscriminativePair pair{spec.substr(0, colon), spec.substr(colon + 1)};
  if (pair.secret_i == pair.secret_j) {
    throw DomainError("pair '" + spec + "' must name two distinct secrets");
  }
  return pair;
}

// ---------------------------------------------------------------------------
// tau

struct TauOpts {
  double delta = 0.0;
  std::string method = "lambert-fp";
};

void run_tau(const TauOpts& opts) {
  const TauMethod method = parse_tau_method(opts.method);
  const double tau = tau_star(opts.delta, method);
  emit(json{{"delta", opts.delta},
            {"method", tau_method_name(method)},
            {"tau", tau}},
       "-");
}

// ---------------------------------------------------------------------------
// fig2

struct Fig2Opts {
  double mu = 1.0;
  std::vector<double> sigma_sq = {1.0, 4.0, 9.0, 16.0, 25.0};
  double epsilon = 1.0;
  double delta = 0.3;
  std::string method = "lambert-fp";
  int k_max = 50;
  std::string out = "-";
};

void run_fig2(const Fig2Opts& opts) {
  PrivacyBudget budget{opts.epsilon, opts.delta, parse_tau_method(opts.method)};
  std::string csv = "K";
  for (double s2 : opts.sigma_sq) {
    if (s2 < 0.0) throw DomainError("fig2: sigma^2 must be >= 0");
    csv += ",sigma_sq_" + format_double(s2);
  }
  csv += '\n';
  std::vector<std::vector<std::pair<int, double>>> curves;
  for (double s2 : opts.sigma_sq) {
    curves.push_back(sum_bound_curve(opts.mu, std::sqrt(s2), budget, opts.k_max));
  }
  for (int k = 0; k < opts.k_max; ++k) {
    csv += std::to_string(k + 1);
    for (const auto& curve : curves) {
      csv += ',' + format_double(curve[k].second);
    }
    csv += '\n';
  }
  if (opts.out.empty() || opts.out == "-") {
    std::cout << csv;
  } else {
    write_file(opts.out, csv);
  }
}

// ---------------------------------------------------------------------------
// fit

struct FitOpts {
  std::string data;
  std::string value_column;
  int components = 3;
  std::uint64_t seed = 42;
  int restarts = 5;
  std::string out = "-";
};

void run_fit(const FitOpts& opts) {
  CsvTable table = read_csv(opts.data);
  std::string column = opts.value_column;
  if (column.empty()) {
    if (table.columns.size() != 1) {
      throw DomainError(
          "fit: --value-column is required when the CSV has several columns");
    }
    column = table.columns[0];
  }
  const int idx = table.column_index(column);
  std::vector<double> values;
  values.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(table.rows[r][idx], &pos);
      if (pos != table.rows[r][idx].size() || !std::isfinite(v)) {
        throw std::invalid_argument("trailing characters");
      }
      values.push_back(v);
    } catch (const std::exception&) {
      throw DataError(opts.data + ": row " + std::to_string(r + 2) +
                      ": value '" + table.rows[r][idx] + "' in column '" +
                      column + "' does not parse as a real number");
    }
  }
  const Gmm1D model = fit_em(values, opts.components, opts.seed, opts.restarts);
  emit(gmm_to_json(model), opts.out);
}

// ---------------------------------------------------------------------------
// audit

struct AuditOpts {
  std::string model_i;
  std::string model_j;
  double b = 0.0;  // 0: derive from the models and the budget
  double epsilon = 1.0;
  double delta = 0.0;
  std::string method = "lambert-fp";
  std::string out = "-";
};

void run_audit(const AuditOpts& opts) {
  const Gmm1D prior_i = load_gmm(opts.model_i);
  const Gmm1D prior_j = load_gmm(opts.model_j);
  json output;
  double scale = opts.b;
  if (scale <= 0.0) {
    PrivacyBudget budget{opts.epsilon, opts.delta, parse_tau_method(opts.method)};
    std::vector<PriorBelief> beliefs(1);
    beliefs[0].label = "models";
    beliefs[0].priors["i"] = prior_i;
    beliefs[0].priors["j"] = prior_j;
    const std::vector<DiscriminativePair> pairs = {{"i", "j"}};
    const CalibrationResult cal = calibrate_gmm(beliefs, pairs, budget);
    scale = cal.b;
    output["calibration"] = calibration_to_json(cal);
  }
  if (scale <= 0.0) {
    throw DataError(
        "audit: calibrated scale is 0 (identical models); nothing to audit");
  }
  const AuditReport report =
      audit_analytic(prior_i, prior_j, LaplaceNoise(scale), opts.epsilon,
                     opts.delta > 0.0 ? opts.delta
                                      : std::numeric_limits<double>::quiet_NaN());
  output["b"] = scale;
  output["audit"] = audit_to_json(report);
  emit(output, opts.out);
}

// ---------------------------------------------------------------------------
// sum-calibrate

struct SumOpts {
  std::string population;
  std::string mode = "presence";
  double a = 0.0;
  double a_prime = 0.0;
  bool has_a = false, has_a_prime = false;
  double epsilon = 1.0;
  double delta = 0.0;
  std::string method = "lambert-fp";
  std::string out = "-";
};

UserPopulation load_population(const std::string& path) {
  CsvTable table = read_csv(path);
  const int id_idx = table.column_index("user_id");
  const int mu_idx = table.column_index("mu");
  const int sigma_idx = table.column_index("sigma");
  if (table.rows.empty()) throw DataError(path + ": no users");
  UserPopulation population;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    try {
      population.users.push_back(PopulationUser{
          row[id_idx], std::stod(row[mu_idx]), std::stod(row[sigma_idx])});
    } catch (const std::exception&) {
      throw DataError(path + ": row " + std::to_string(r + 2) +
                      ": mu/sigma do not parse as real numbers");
    }
  }
  return population;
}

void run_sum_calibrate(const SumOpts& opts) {
  CalibrationResult result;
  if (opts.mode == "presence") {
    if (opts.population.empty()) {
      throw DomainError("sum-calibrate: presence mode needs --population");
    }
    PrivacyBudget budget{opts.epsilon, opts.delta, parse_tau_method(opts.method)};
    result = calibrate_sum_presence(load_population(opts.population), budget);
  } else if (opts.mode == "value") {
    if (!opts.has_a || !opts.has_a_prime) {
      throw DomainError("sum-calibrate: value mode needs --a and --a-prime");
    }
    result = calibrate_sum_value(opts.a, opts.a_prime, opts.epsilon);
  } else {
    throw DomainError("sum-calibrate: --mode must be presence or value");
  }
  emit(calibration_to_json(result), opts.out);
}

// ---------------------------------------------------------------------------
// privatize

struct PrivatizeOpts {
  std::string data;
  std::string secret_column;
  std::string value_column;
  std::vector<std::string> pair_specs;
  std::vector<std::string> secret_values;
  std::vector<std::string> model_specs;  // SECRET=FILE
  double epsilon = 1.0;
  double delta = 0.3;
  std::string method = "lambert-fp";
  int components = 3;
  std::uint64_t seed = 42;
  int restarts = 5;
  std::string out;
};

void run_privatize(const PrivatizeOpts& opts) {
  if (opts.out.empty()) throw DomainError("privatize: --out DIR is required");

  DatasetSpec spec;
  spec.path = opts.data;
  spec.secret_column = opts.secret_column;
  spec.value_column = opts.value_column;
  spec.secret_values = opts.secret_values;
  for (const auto& p : opts.pair_specs) spec.pairs.push_back(parse_pair(p));

  GroupedDataset data = load_dataset(spec);
  if (spec.pairs.empty()) {
    // Default: every unordered pair of observed secrets.
    std::vector<std::string> secrets;
    for (const auto& [secret, _] : data.groups) secrets.push_back(secret);
    for (std::size_t i = 0; i < secrets.size(); ++i) {
      for (std::size_t j = i + 1; j < secrets.size(); ++j) {
        spec.pairs.push_back(DiscriminativePair{secrets[i], secrets[j]});
      }
    }
    if (spec.pairs.empty()) {
      throw DataError("privatize: fewer than two secrets in the data");
    }
  }

  PrivacyBudget budget{opts.epsilon, opts.delta, parse_tau_method(opts.method)};
  budget.validate();

  std::map<std::string, std::string> pre_fitted;
  for (const auto& ms : opts.model_specs) {
    const auto eq = ms.find('=');
    if (eq == std::string::npos) {
      throw DomainError("bad --model '" + ms + "', expected SECRET=FILE");
    }
    pre_fitted[ms.substr(0, eq)] = ms.substr(eq + 1);
  }

  // The secrets that actually need a prior.
  std::vector<std::string> pair_secrets;
  for (const auto& pair : spec.pairs) {
    for (const std::string* s : {&pair.secret_i, &pair.secret_j}) {
      if (std::find(pair_secrets.begin(), pair_secrets.end(), *s) ==
          pair_secrets.end()) {
        pair_secrets.push_back(*s);
      }
    }
  }

  fs::create_directories(fs::path(opts.out) / "models");

  PriorBelief belief;
  belief.label = "fitted";
  for (const auto& secret : pair_secrets) {
    const auto& samples = data.groups.at(secret);
    Gmm1D model;
    if (const auto it = pre_fitted.find(secret); it != pre_fitted.end()) {
      model = load_gmm(it->second);
    } else {
      if (static_cast<int>(samples.size()) < 2 * opts.components) {
        throw DataError("secret '" + secret + "' has only " +
                        std::to_string(samples.size()) +
                        " samples; need at least 2k = " +
                        std::to_string(2 * opts.components));
      }
      model = fit_em(samples, opts.components, opts.seed, opts.restarts);
    }
    save_gmm(model,
             (fs::path(opts.out) / "models" / (sanitize(secret) + ".json"))
                 .string());
    belief.priors[secret] = std::move(model);
  }

  const std::vector<PriorBelief> beliefs = {belief};
  const CalibrationResult cal = calibrate_gmm(beliefs, spec.pairs, budget);

  // Privatize every row.
  std::vector<double> noise;
  if (cal.b > 0.0) {
    noise = laplace_sample(LaplaceNoise(cal.b), opts.seed,
                           data.values.size());
  } else {
    noise.assign(data.values.size(), 0.0);
  }
  std::vector<double> noised(data.values.size());
  std::map<std::string, std::vector<double>> noised_groups;
  for (std::size_t r = 0; r < data.values.size(); ++r) {
    noised[r] = data.values[r] + noise[r];
    const std::string& secret = data.table.rows[r][data.secret_index];
    if (belief.priors.count(secret) > 0) {
      noised_groups[secret].push_back(noised[r]);
    }
  }
  write_file((fs::path(opts.out) / "noised.csv").string(),
             table_with_values_csv(data.table, data.value_index, noised));

  // Audits per pair: analytic on the fitted models; empirical between the
  // secrets' noised samples, plus the pre-noise baseline.
  json audits = json::array();
  for (const auto& pair : spec.pairs) {
    json entry{{"secret_i", pair.secret_i}, {"secret_j", pair.secret_j}};
    if (cal.b > 0.0) {
      const LaplaceNoise lap(cal.b);
      entry["analytic"] = audit_to_json(
          audit_analytic(belief.priors.at(pair.secret_i),
                         belief.priors.at(pair.secret_j), lap, opts.epsilon,
                         opts.delta));
      entry["empirical_noised"] = audit_to_json(audit_empirical(
          noised_groups.at(pair.secret_i), noised_groups.at(pair.secret_j),
          opts.epsilon, {}, opts.delta));
    }
    entry["empirical_original"] = audit_to_json(
        audit_empirical(data.groups.at(pair.secret_i),
                        data.groups.at(pair.secret_j), opts.epsilon, {},
                        opts.delta));
    audits.push_back(std::move(entry));
  }

  // Original-vs-noised histogram per secret, plot-ready.
  for (const auto& secret : pair_secrets) {
    const PairedHistogram hist =
        paired_histogram(data.groups.at(secret), noised_groups.at(secret));
    write_file(
        (fs::path(opts.out) / ("hist_" + sanitize(secret) + ".csv")).string(),
        histogram_to_csv(hist));
  }

  write_file((fs::path(opts.out) / "calibration.json").string(),
             calibration_to_json(cal).dump(2) + "\n");
  write_file((fs::path(opts.out) / "audits.json").string(),
             audits.dump(2) + "\n");

  json run{{"data", opts.data},
           {"secret_column", opts.secret_column},
           {"value_column", opts.value_column},
           {"epsilon", opts.epsilon},
           {"delta", opts.delta},
           {"tau-method", tau_method_name(budget.tau_method)},
           {"components", opts.components},
           {"seed", opts.seed},
           {"restarts", opts.restarts},
           {"b", cal.b},
           {"rows", data.values.size()}};
  write_file((fs::path(opts.out) / "run.json").string(), run.dump(2) + "\n");

  std::cout << "b = " << format_double(cal.b) << " (rule "
            << calibration_rule_name(cal.rule) << "), outputs in " << opts.out
            << '\n';
}

// Builds the CLI, parses, and dispatches. Throws; main translates exceptions
// into exit codes, so a config value of the wrong JSON type surfaces as a
// usage error like any other bad flag.
int run_main(int argc, char** argv) {
  CLI::App app{
      "Laplace noise calibration and indistinguishability auditing for "
      "Gaussian and Gaussian-mixture adversary priors"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path,
                 "JSON config file mirroring the flags (flags win)");

  const json cfg = prescan_config(argc, argv);

  TauOpts tau_opts;
  config_default(cfg, "delta", tau_opts.delta);
  config_default(cfg, "tau-method", tau_opts.method);
  auto* tau_cmd = app.add_subcommand("tau", "Evaluate tau*(delta)");
  tau_cmd->add_option("--delta", tau_opts.delta, "delta in (0,1)")
      ->required(!cfg.contains("delta"));
  tau_cmd->add_option("--tau-method", tau_opts.method,
                      "exact|lambert-fp|lambert-cf");
  tau_cmd->add_option("--config", config_path, "JSON config file");
  tau_cmd->callback([&] { run_tau(tau_opts); });

  Fig2Opts fig2_opts;
  config_default(cfg, "mu", fig2_opts.mu);
  config_default(cfg, "sigma-sq", fig2_opts.sigma_sq);
  config_default(cfg, "epsilon", fig2_opts.epsilon);
  config_default(cfg, "delta", fig2_opts.delta);
  config_default(cfg, "tau-method", fig2_opts.method);
  config_default(cfg, "k-max", fig2_opts.k_max);
  config_default(cfg, "out", fig2_opts.out);
  auto* fig2_cmd = app.add_subcommand(
      "fig2",
      "Identical-user summation bound as a curve over the population size, "
      "one CSV column per sigma^2");
  fig2_cmd->add_option("--mu", fig2_opts.mu, "per-user mean");
  fig2_cmd->add_option("--sigma-sq", fig2_opts.sigma_sq,
                       "per-user variances (one curve each)");
  fig2_cmd->add_option("--epsilon", fig2_opts.epsilon, "privacy budget");
  fig2_cmd->add_option("--delta", fig2_opts.delta, "approximation level");
  fig2_cmd->add_option("--tau-method", fig2_opts.method,
                       "exact|lambert-fp|lambert-cf");
  fig2_cmd->add_option("--k-max", fig2_opts.k_max, "largest population size");
  fig2_cmd->add_option("--out", fig2_opts.out, "output CSV path (- = stdout)");
  fig2_cmd->add_option("--config", config_path, "JSON config file");
  fig2_cmd->callback([&] { run_fig2(fig2_opts); });

  FitOpts fit_opts;
  config_default(cfg, "components", fit_opts.components);
  config_default(cfg, "seed", fit_opts.seed);
  config_default(cfg, "restarts", fit_opts.restarts);
  config_default(cfg, "out", fit_opts.out);
  auto* fit_cmd =
      app.add_subcommand("fit", "Fit a mixture model to a CSV column");
  fit_cmd->add_option("--data", fit_opts.data, "input CSV")->required();
  fit_cmd->add_option("--value-column", fit_opts.value_column,
                      "numeric column to fit");
  fit_cmd->add_option("--components", fit_opts.components, "mixture size k");
  fit_cmd->add_option("--seed", fit_opts.seed, "RNG seed");
  fit_cmd->add_option("--restarts", fit_opts.restarts, "EM restarts");
  fit_cmd->add_option("--out", fit_opts.out, "model JSON path (- = stdout)");
  fit_cmd->add_option("--config", config_path, "JSON config file");
  fit_cmd->callback([&] { run_fit(fit_opts); });

  AuditOpts audit_opts;
  config_default(cfg, "epsilon", audit_opts.epsilon);
  config_default(cfg, "delta", audit_opts.delta);
  config_default(cfg, "tau-method", audit_opts.method);
  config_default(cfg, "out", audit_opts.out);
  auto* audit_cmd = app.add_subcommand(
      "audit", "Analytic audit of two model JSON files under Laplace noise");
  audit_cmd->add_option("--model-i", audit_opts.model_i, "model JSON")
      ->required();
  audit_cmd->add_option("--model-j", audit_opts.model_j, "model JSON")
      ->required();
  audit_cmd
      ->add_option("--b", audit_opts.b,
                   "Laplace scale (default: calibrate from the models)")
      ->check(CLI::PositiveNumber);
  audit_cmd->add_option("--epsilon", audit_opts.epsilon, "privacy budget");
  audit_cmd->add_option("--delta", audit_opts.delta,
                        "target delta (for calibration/reporting)");
  audit_cmd->add_option("--tau-method", audit_opts.method,
                        "exact|lambert-fp|lambert-cf");
  audit_cmd->add_option("--out", audit_opts.out, "output path (- = stdout)");
  audit_cmd->add_option("--config", config_path, "JSON config file");
  audit_cmd->callback([&] { run_audit(audit_opts); });

  SumOpts sum_opts;
  config_default(cfg, "epsilon", sum_opts.epsilon);
  config_default(cfg, "delta", sum_opts.delta);
  config_default(cfg, "tau-method", sum_opts.method);
  config_default(cfg, "out", sum_opts.out);
  auto* sum_cmd = app.add_subcommand(
      "sum-calibrate", "Noise scale for a summation query over independent "
                       "users (presence or value secrets)");
  sum_cmd->add_option("--population", sum_opts.population,
                      "CSV with columns user_id,mu,sigma");
  sum_cmd->add_option("--mode", sum_opts.mode, "presence|value");
  auto* a_opt = sum_cmd->add_option("--a", sum_opts.a, "reported value");
  auto* ap_opt =
      sum_cmd->add_option("--a-prime", sum_opts.a_prime, "alternative value");
  sum_cmd->add_option("--epsilon", sum_opts.epsilon, "privacy budget");
  sum_cmd->add_option("--delta", sum_opts.delta, "approximation level");
  sum_cmd->add_option("--tau-method", sum_opts.method,
                      "exact|lambert-fp|lambert-cf");
  sum_cmd->add_option("--out", sum_opts.out, "output path (- = stdout)");
  sum_cmd->add_option("--config", config_path, "JSON config file");
  sum_cmd->callback([&] {
    sum_opts.has_a = a_opt->count() > 0 || cfg.contains("a");
    sum_opts.has_a_prime = ap_opt->count() > 0 || cfg.contains("a-prime");
    config_default(cfg, "a", sum_opts.a);
    config_default(cfg, "a-prime", sum_opts.a_prime);
    run_sum_calibrate(sum_opts);
  });

  PrivatizeOpts priv_opts;
  config_default(cfg, "epsilon", priv_opts.epsilon);
  config_default(cfg, "delta", priv_opts.delta);
  config_default(cfg, "tau-method", priv_opts.method);
  config_default(cfg, "components", priv_opts.components);
  config_default(cfg, "seed", priv_opts.seed);
  config_default(cfg, "restarts", priv_opts.restarts);
  config_default(cfg, "out", priv_opts.out);
  auto* priv_cmd = app.add_subcommand(
      "privatize", "Fit per-secret priors, calibrate, add noise, audit");
  priv_cmd->add_option("--data", priv_opts.data, "input CSV")->required();
  priv_cmd->add_option("--secret-column", priv_opts.secret_column,
                       "secret column name")
      ->required();
  priv_cmd->add_option("--value-column", priv_opts.value_column,
                       "numeric column to privatize")
      ->required();
  priv_cmd->add_option("--pair", priv_opts.pair_specs,
                       "discriminative pair SECRET_A:SECRET_B (repeatable; "
                       "default: all pairs of observed secrets)");
  priv_cmd->add_option("--secret-values", priv_opts.secret_values,
                       "allow-list of secret values");
  priv_cmd->add_option("--model", priv_opts.model_specs,
                       "pre-fitted prior SECRET=FILE (skips fitting)");
  priv_cmd->add_option("--epsilon", priv_opts.epsilon, "privacy budget");
  priv_cmd->add_option("--delta", priv_opts.delta, "approximation level");
  priv_cmd->add_option("--tau-method", priv_opts.method,
                       "exact|lambert-fp|lambert-cf");
  priv_cmd->add_option("--components", priv_opts.components, "mixture size k");
  priv_cmd->add_option("--seed", priv_opts.seed, "RNG seed");
  priv_cmd->add_option("--restarts", priv_opts.restarts, "EM restarts");
  priv_cmd->add_option("--out", priv_opts.out, "output directory")
      ->required(!cfg.contains("out"));
  priv_cmd->add_option("--config", config_path, "JSON config file");
  priv_cmd->callback([&] { run_privatize(priv_opts); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_main(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "bad config value: " << e.what() << '\n';
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << '\n';
    return 3;
  }
}
