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

#include <variant>

#include <json.hpp>

#include "entrolab/qstate.hpp"

namespace entrolab {

// {"layout": [{"label": "A", "dim": 2}, ...], "matrix_re": [[...]], "matrix_im": [[...]]}
// Pure states carry "vector_re"/"vector_im" instead.

nlohmann::json to_json(const SystemLayout& layout);
nlohmann::json to_json(const DensityMatrix& rho);
nlohmann::json to_json(const PureState& psi);
nlohmann::json to_json(const KrausChannel& ch);
nlohmann::json matrix_to_json(const Matrix& m);

SystemLayout layout_from_json(const nlohmann::json& j);
/// Reads either form; throws ParseError on malformed documents.
std::variant<DensityMatrix, PureState> state_from_json(const nlohmann::json& j);
DensityMatrix density_from_json(const nlohmann::json& j);

}  // namespace entrolab
