// Copyright 2026 The entrolab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include <json.hpp>

#include "entrolab/classical.hpp"
#include "entrolab/harness.hpp"
#include "entrolab/squash.hpp"
#include "entrolab/state_io.hpp"

namespace entrolab {

/// x rounded to 12 significant digits (non-finite values pass through).
double round12(double x);
/// Copy of j with every floating-point number rounded by round12.
nlohmann::json rounded(const nlohmann::json& j);
/// True when j holds a non-finite number anywhere.
bool has_non_finite(const nlohmann::json& j);

nlohmann::json to_json(const OptimizerConfig& cfg);
nlohmann::json to_json(const ClassicalExtension& ext);
nlohmann::json to_json(const QuantumExtension& ext);
nlohmann::json to_json(const Witness& w);
/// {"value", "certified", "which", "witness", "config", "evals", "method", "restart_values"}
nlohmann::json to_json(const BoundReport& r);
nlohmann::json to_json(const ProbeReport& r);
nlohmann::json to_json(const IdentityReport& r);
nlohmann::json to_json(const LockRecord& r);
/// {"alphabets": [{"label", "dim"}...], "probs": [...]}
nlohmann::json to_json(const JointDistribution& p);

JointDistribution distribution_from_json(const nlohmann::json& j);
ClassicalExtension classical_extension_from_json(const nlohmann::json& j);

}  // namespace entrolab
