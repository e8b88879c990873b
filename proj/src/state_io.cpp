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

#include "entrolab/state_io.hpp"

#include <cmath>

namespace entrolab {

using nlohmann::json;

json to_json(const SystemLayout& layout) {
    json out = json::array();
    for (const auto& s : layout.subsystems()) out.push_back({{"label", s.label}, {"dim", s.dim}});
    return out;
}

namespace {

json real_rows(const Matrix& m, bool imag) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(imag ? m(i, j).imag() : m(i, j).real());
        rows.push_back(std::move(row));
    }
    return rows;
}

double finite(const json& v) {
    if (!v.is_number()) throw Error(ErrorCode::ParseError, "expected a number, got " + v.dump());
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw Error(ErrorCode::ParseError, "non-finite number");
    return x;
}

Matrix read_matrix(const json& re, const json& im, Eigen::Index n) {
    if (!re.is_array() || static_cast<Eigen::Index>(re.size()) != n)
        throw Error(ErrorCode::ParseError, "matrix_re must have one row per basis state");
    const bool has_im = !im.is_null();
    if (has_im && (!im.is_array() || im.size() != re.size()))
        throw Error(ErrorCode::ParseError, "matrix_im shape differs from matrix_re");
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!re[i].is_array() || static_cast<Eigen::Index>(re[i].size()) != n)
            throw Error(ErrorCode::ParseError, "matrix rows must be square");
        if (has_im && (!im[i].is_array() || im[i].size() != re[i].size()))
            throw Error(ErrorCode::ParseError, "matrix_im row shape differs");
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = cplx(finite(re[i][j]), has_im ? finite(im[i][j]) : 0.0);
    }
    return m;
}

}  // namespace

json matrix_to_json(const Matrix& m) { return {{"re", real_rows(m, false)}, {"im", real_rows(m, true)}}; }

json to_json(const DensityMatrix& rho) {
    return {{"layout", to_json(rho.layout())},
            {"matrix_re", real_rows(rho.matrix(), false)},
            {"matrix_im", real_rows(rho.matrix(), true)}};
}

json to_json(const PureState& psi) {
    json re = json::array(), im = json::array();
    for (Eigen::Index i = 0; i < psi.dim(); ++i) {
        re.push_back(psi.vector()(i).real());
        im.push_back(psi.vector()(i).imag());
    }
    return {{"layout", to_json(psi.layout())}, {"vector_re", re}, {"vector_im", im}};
}

json to_json(const KrausChannel& ch) {
    json ops = json::array();
    for (const auto& k : ch.kraus()) ops.push_back(matrix_to_json(k));
    return {{"input_dim", ch.input_dim()}, {"output_dim", ch.output_dim()}, {"kraus", ops}};
}

SystemLayout layout_from_json(const json& j) {
    if (!j.is_array()) throw Error(ErrorCode::ParseError, "layout must be an array");
    std::vector<Subsystem> subs;
    for (const auto& s : j) {
        if (!s.is_object() || !s.contains("label") || !s.contains("dim") || !s["label"].is_string() ||
            !s["dim"].is_number_integer())
            throw Error(ErrorCode::ParseError, "layout entries need a string label and integer dim");
        subs.push_back({s["label"].get<std::string>(), s["dim"].get<int>()});
    }
    return SystemLayout(std::move(subs));
}

std::variant<DensityMatrix, PureState> state_from_json(const json& j) {
    if (!j.is_object() || !j.contains("layout")) throw Error(ErrorCode::ParseError, "state needs a layout");
    SystemLayout layout = layout_from_json(j["layout"]);
    const Eigen::Index n = layout.total_dim();
    if (j.contains("matrix_re")) {
        const json im = j.contains("matrix_im") ? j["matrix_im"] : json();
        return make_density(std::move(layout), read_matrix(j["matrix_re"], im, n));
    }
    if (j.contains("vector_re")) {
        const json& re = j["vector_re"];
        const json im = j.contains("vector_im") ? j["vector_im"] : json();
        if (!re.is_array() || static_cast<Eigen::Index>(re.size()) != n)
            throw Error(ErrorCode::ParseError, "vector_re length differs from layout dimension");
        if (!im.is_null() && (!im.is_array() || im.size() != re.size()))
            throw Error(ErrorCode::ParseError, "vector_im length differs");
        Vector v(n);
        for (Eigen::Index i = 0; i < n; ++i) v(i) = cplx(finite(re[i]), im.is_null() ? 0.0 : finite(im[i]));
        return make_pure(std::move(layout), v);
    }
    throw Error(ErrorCode::ParseError, "state needs matrix_re or vector_re");
}

DensityMatrix density_from_json(const json& j) {
    auto s = state_from_json(j);
    if (auto* p = std::get_if<PureState>(&s)) return p->density();
    return std::get<DensityMatrix>(std::move(s));
}

}  // namespace entrolab
