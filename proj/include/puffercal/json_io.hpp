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

#ifndef PUFFERCAL_JSON_IO_HPP
#define PUFFERCAL_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "puffercal/audit.hpp"
#include "puffercal/calibrate.hpp"
#include "puffercal/gmm.hpp"
#include "puffercal/transport.hpp"

namespace puffercal {

// Mixture model wire format used by the CLI to cache fitted priors:
//   {"components":[{"weight":w,"mu":m,"sigma":s}, ...]}
// Double round-trips are lossless (shortest-representation dump).
nlohmann::json gmm_to_json(const Gmm1D& model);
Gmm1D gmm_from_json(const nlohmann::json& j);
Gmm1D load_gmm(const std::string& path);
void save_gmm(const Gmm1D& model, const std::string& path);

nlohmann::json plan_to_json(const TransportPlan& plan);
nlohmann::json calibration_to_json(const CalibrationResult& result);
nlohmann::json audit_to_json(const AuditReport& report);

}  // namespace puffercal

#endif  // PUFFERCAL_JSON_IO_HPP
