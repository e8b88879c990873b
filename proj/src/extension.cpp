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

#include "entrolab/extension.hpp"

#include <cmath>

#include <fmt/format.h>

namespace entrolab {

DensityMatrix ClassicalExtension::mixture() const {
    if (members.empty()) throw Error(ErrorCode::BadParams, "empty ensemble");
    Matrix m = Matrix::Zero(members.front().dim(), members.front().dim());
    for (std::size_t i = 0; i < members.size(); ++i) m += weights[i] * members[i].matrix();
    return DensityMatrix::assume_valid(members.front().layout(), m);
}

DensityMatrix ClassicalExtension::flagged(const std::string& label) const {
    if (members.empty()) throw Error(ErrorCode::BadParams, "empty ensemble");
    const auto k = static_cast<Eigen::Index>(members.size());
    const auto d = members.front().dim();
    SystemLayout layout = members.front().layout().concat(SystemLayout({{label, static_cast<int>(k)}}));
    Matrix m = Matrix::Zero(d * k, d * k);
    for (Eigen::Index i = 0; i < k; ++i) {
        const Matrix& r = members[i].matrix();
        for (Eigen::Index c = 0; c < d; ++c)
            for (Eigen::Index a = 0; a < d; ++a) m(a * k + i, c * k + i) = weights[i] * r(a, c);
    }
    return DensityMatrix::assume_valid(std::move(layout), std::move(m));
}

void ClassicalExtension::validate(const DensityMatrix& target, double tol) const {
    if (weights.size() != members.size() || weights.empty())
        throw Error(ErrorCode::BadParams, "ensemble needs one weight per member");
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw Error(ErrorCode::BadParams, "weights must be nonnegative");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-9) throw Error(ErrorCode::BadParams, fmt::format("weights sum to {:.12g}", total));
    for (const auto& m : members)
        if (!(m.layout() == target.layout()))
            throw Error(ErrorCode::ExtensionMismatch, "ensemble member layout differs from the target");
    const double dev = (mixture().matrix() - target.matrix()).cwiseAbs().maxCoeff();
    if (dev > tol) throw Error(ErrorCode::ExtensionMismatch, fmt::format("mixture deviates by {:.3e}", dev));
}

QuantumExtension QuantumExtension::explicit_state(DensityMatrix sigma, std::string label) {
    sigma.layout().index_of(label);
    return QuantumExtension(std::move(sigma), std::move(label));
}

QuantumExtension QuantumExtension::explicit_state(PureState sigma, std::string label) {
    sigma.layout().index_of(label);
    return QuantumExtension(std::move(sigma), std::move(label));
}

QuantumExtension QuantumExtension::channel(KrausChannel ch, std::string label) {
    return QuantumExtension(std::move(ch), std::move(label));
}

PureState channel_extension_state(const DensityMatrix& target, const KrausChannel& ch, const std::string& label) {
    const PureState psi = purify(target, kPurifierLabel);
    const int r = psi.layout().dim_of(kPurifierLabel);
    if (ch.input_dim() != r)
        throw Error(ErrorCode::DimensionMismatch,
                    fmt::format("channel input {} differs from the purifier dimension {}", ch.input_dim(), r));
    const Eigen::Index d = target.dim();
    const int e = ch.output_dim();
    const auto f = static_cast<Eigen::Index>(ch.kraus().size());
    // psi index s*r + x; output index (s*e + z)*f + t.
    Vector out = Vector::Zero(d * e * f);
    for (Eigen::Index t = 0; t < f; ++t) {
        const Matrix& k = ch.kraus()[t];
        for (Eigen::Index s = 0; s < d; ++s) {
            const Vector col = k * psi.vector().segment(s * r, r);
            for (Eigen::Index z = 0; z < e; ++z) out((s * e + z) * f + t) = col(z);
        }
    }
    SystemLayout layout = target.layout().concat(SystemLayout({{label, e}, {label + "~env", static_cast<int>(f)}}));
    return make_pure(std::move(layout), out);
}

std::variant<DensityMatrix, PureState> QuantumExtension::realize(const DensityMatrix& target) const {
    if (const auto* ch = std::get_if<KrausChannel>(&form_)) return channel_extension_state(target, *ch, label_);
    if (const auto* p = std::get_if<PureState>(&form_)) return *p;
    return std::get<DensityMatrix>(form_);
}

void QuantumExtension::validate(const DensityMatrix& target, double tol) const {
    const auto state = realize(target);
    DensityMatrix reduced = std::visit(
        [&](const auto& s) {
            LabelSet extra;
            for (const auto& l : s.layout().labels())
                if (!target.layout().contains(l)) extra.push_back(l);
            return partial_trace(s, extra);
        },
        state);
    if (!(reduced.layout() == target.layout()))
        throw Error(ErrorCode::ExtensionMismatch, "extension layout does not contain the target layout in order");
    const double dev = (reduced.matrix() - target.matrix()).cwiseAbs().maxCoeff();
    if (dev > tol) throw Error(ErrorCode::ExtensionMismatch, fmt::format("marginal deviates by {:.3e}", dev));
}

}  // namespace entrolab
