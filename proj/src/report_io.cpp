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

#include "entrolab/report_io.hpp"

#include <cmath>
#include <cstdlib>

#include <fmt/format.h>

namespace entrolab {

using nlohmann::json;

double round12(double x) {
    if (!std::isfinite(x) || x == 0.0) return x;
    return std::strtod(fmt::format("{:.12g}", x).c_str(), nullptr);
}

json rounded(const json& j) {
    if (j.is_number_float()) {
        const double x = j.get<double>();
        // JSON has no infinity; non-finite values become strings.
        if (!std::isfinite(x)) return fmt::format("{}", x);
        return round12(x);
    }
    if (j.is_array()) {
        json out = json::array();
        for (const auto& v : j) out.push_back(rounded(v));
        return out;
    }
    if (j.is_object()) {
        json out = json::object();
        for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = rounded(it.value());
        return out;
    }
    return j;
}

bool has_non_finite(const json& j) {
    if (j.is_number_float()) return !std::isfinite(j.get<double>());
    if (j.is_array() || j.is_object())
        for (const auto& v : j)
            if (has_non_finite(v)) return true;
    return false;
}

json to_json(const OptimizerConfig& c) {
    return {{"restarts", c.restarts},           {"max_iters", c.max_iters},
            {"rel_tol", c.rel_tol},             {"window", c.window},
            {"ensemble_size", c.ensemble_size}, {"extension_dim", c.extension_dim},
            {"extension_env", c.extension_env}, {"eve_alphabet", c.eve_alphabet},
            {"seed", c.seed}};
}

json to_json(const ClassicalExtension& ext) {
    json members = json::array();
    for (const auto& m : ext.members) members.push_back(to_json(m));
    return {{"kind", "classical"}, {"weights", ext.weights}, {"members", members}};
}

json to_json(const QuantumExtension& ext) {
    json out{{"kind", ext.is_channel() ? "channel" : "explicit"}, {"label", ext.label()}};
    std::visit([&](const auto& f) { out["form"] = to_json(f); }, ext.form());
    return out;
}

json to_json(const Witness& w) {
    if (const auto* c = std::get_if<ClassicalExtension>(&w)) return to_json(*c);
    if (const auto* q = std::get_if<QuantumExtension>(&w)) return to_json(*q);
    if (const auto* m = std::get_if<Eigen::MatrixXd>(&w)) {
        json rows = json::array();
        for (Eigen::Index i = 0; i < m->rows(); ++i) {
            json row = json::array();
            for (Eigen::Index j = 0; j < m->cols(); ++j) row.push_back((*m)(i, j));
            rows.push_back(row);
        }
        return {{"kind", "stochastic"}, {"matrix", rows}};
    }
    return nullptr;
}

json to_json(const BoundReport& r) {
    return {{"value", r.value},
            {"certified", std::string(to_string(r.certified))},
            {"which", std::string(to_string(r.which))},
            {"witness", to_json(r.witness)},
            {"config", to_json(r.config)},
            {"evals", r.evals},
            {"method", r.method},
            {"restart_values", r.restart_values}};
}

json to_json(const ProbeReport& r) {
    json records = json::array();
    for (const auto& rec : r.records)
        records.push_back({{"input", rec.input},
                           {"lhs", rec.lhs},
                           {"rhs", rec.rhs},
                           {"residual", rec.residual},
                           {"violation", rec.violation}});
    json out{{"check", r.check},     {"function", r.function},           {"tol", r.tol},
             {"pass", r.pass},       {"max_violation", r.max_violation}, {"records", records}};
    if (r.max_ratio) out["max_ratio"] = *r.max_ratio;
    return out;
}

json to_json(const IdentityReport& r) {
    json records = json::array();
    for (const auto& rec : r.records)
        records.push_back({{"name", rec.name},
                           {"sample", rec.sample},
                           {"lhs", rec.lhs},
                           {"rhs", rec.rhs},
                           {"residual", rec.residual},
                           {"inequality", rec.inequality}});
    return {{"tol", r.tol}, {"pass", r.pass}, {"max_violation", r.max_violation}, {"records", records}};
}

json to_json(const LockRecord& r) {
    return {{"m", r.m},
            {"d", r.d},
            {"full_value_I", r.full_value_I},
            {"full_value_S", r.full_value_S},
            {"locked_value", r.locked_value}};
}

json to_json(const JointDistribution& p) {
    return {{"alphabets", to_json(p.alphabets())}, {"probs", p.probs()}};
}

JointDistribution distribution_from_json(const json& j) {
    if (!j.is_object() || !j.contains("alphabets") || !j.contains("probs") || !j["probs"].is_array())
        throw Error(ErrorCode::ParseError, "distribution needs alphabets and probs");
    std::vector<double> probs;
    for (const auto& x : j["probs"]) {
        if (!x.is_number()) throw Error(ErrorCode::ParseError, "probabilities must be numbers");
        probs.push_back(x.get<double>());
    }
    return JointDistribution(layout_from_json(j["alphabets"]), std::move(probs));
}

ClassicalExtension classical_extension_from_json(const json& j) {
    if (!j.is_object() || !j.contains("weights") || !j.contains("members"))
        throw Error(ErrorCode::ParseError, "classical extension needs weights and members");
    ClassicalExtension ext;
    for (const auto& w : j["weights"]) {
        if (!w.is_number()) throw Error(ErrorCode::ParseError, "weights must be numbers");
        ext.weights.push_back(w.get<double>());
    }
    for (const auto& m : j["members"]) ext.members.push_back(density_from_json(m));
    if (ext.weights.size() != ext.members.size()) throw Error(ErrorCode::ParseError, "weights and members differ in count");
    return ext;
}

}  // namespace entrolab
