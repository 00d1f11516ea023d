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

#include "puffercal/json_io.hpp"

#include <cmath>
#include <fstream>

#include "puffercal/errors.hpp"

namespace puffercal {

using nlohmann::json;

json gmm_to_json(const Gmm1D& model) {
  json comps = json::array();
  for (const auto& c : model.components()) {
    comps.push_back({{"weight", c.weight},
                     {"mu", c.component.mu},
                     {"sigma", c.component.sigma}});
  }
  return json{{"components", comps}};
}

Gmm1D gmm_from_json(const json& j) {
  if (!j.is_object() || !j.contains("components") ||
      !j["components"].is_array()) {
    throw DataError("model JSON must be {\"components\":[...]}");
  }
  std::vector<GmmComponent> comps;
  for (const auto& c : j["components"]) {
    if (!c.contains("weight") || !c.contains("mu") || !c.contains("sigma")) {
      throw DataError("model component needs weight, mu and sigma");
    }
    comps.push_back(GmmComponent{
        c["weight"].get<double>(),
        Gaussian1D(c["mu"].get<double>(), c["sigma"].get<double>())});
  }
  return Gmm1D(std::move(comps));
}

Gmm1D load_gmm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError("bad JSON in " + path + ": " + e.what());
  }
  return gmm_from_json(j);
}

void save_gmm(const Gmm1D& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write model file: " + path);
  out << gmm_to_json(model).dump(2) << '\n';
}

json plan_to_json(const TransportPlan& plan) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < plan.weights.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < plan.weights.cols(); ++j) {
      row.push_back(plan.weights(i, j));
    }
    rows.push_back(std::move(row));
  }
  json row_marg = json::array();
  for (Eigen::Index i = 0; i < plan.row_marginals.size(); ++i) {
    row_marg.push_back(plan.row_marginals[i]);
  }
  json col_marg = json::array();
  for (Eigen::Index j = 0; j < plan.col_marginals.size(); ++j) {
    col_marg.push_back(plan.col_marginals[j]);
  }
  return json{{"weights", rows},
              {"row_marginals", row_marg},
              {"col_marginals", col_marg},
              {"cost", plan.cost}};
}

json calibration_to_json(const CalibrationResult& result) {
  json breakdown = json::array();
  for (const auto& term : result.breakdown) {
    breakdown.push_back({{"adversary", term.adversary},
                         {"secret_i", term.pair.secret_i},
                         {"secret_j", term.pair.secret_j},
                         {"mean_term", term.mean_term},
                         {"sigma_term", term.sigma_term},
                         {"maximand", term.maximand}});
  }
  json j{{"b", result.b},
         {"rule", calibration_rule_name(result.rule)},
         {"epsilon", result.epsilon},
         {"delta", result.delta},
         {"tau_method", tau_method_name(result.tau_method)},
         {"tau", result.tau},
         {"maximand", result.maximand},
         {"argmax",
          {{"adversary", result.argmax_adversary},
           {"secret_i", result.argmax_pair.secret_i},
           {"secret_j", result.argmax_pair.secret_j}}},
         {"breakdown", breakdown}};
  if (result.argmax_plan) {
    j["transport_plan"] = plan_to_json(*result.argmax_plan);
  }
  return j;
}

json audit_to_json(const AuditReport& report) {
  json j{{"epsilon", report.epsilon},
         {"delta_achieved",
          {{"forward", report.delta_achieved_ij},
           {"reverse", report.delta_achieved_ji}}},
         {"method", audit_method_name(report.method)},
         {"domain", {report.domain_lo, report.domain_hi}},
         {"error_estimate", report.error_estimate}};
  if (std::isnan(report.delta_target)) {
    j["delta_target"] = nullptr;
  } else {
    j["delta_target"] = report.delta_target;
  }
  return j;
}

}  // namespace puffercal
