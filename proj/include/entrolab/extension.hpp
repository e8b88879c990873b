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
#include <variant>
#include <vector>

#include "entrolab/qstate.hpp"

namespace entrolab {

/// Ensemble decomposition {p_i, rho_i}. As an extension it stands for
/// sum_i p_i rho_i ⊗ |i><i|_E.
struct ClassicalExtension {
    std::vector<double> weights;
    std::vector<DensityMatrix> members;

    std::size_t size() const noexcept { return weights.size(); }
    /// sum_i p_i rho_i.
    DensityMatrix mixture() const;
    /// The flagged state sum_i p_i rho_i ⊗ |i><i| with the flag register last.
    DensityMatrix flagged(const std::string& label) const;
    /// Throws BadParams for malformed weights or members and
    /// ExtensionMismatch when the mixture deviates from `target` by more than
    /// `tol` entrywise.
    void validate(const DensityMatrix& target, double tol = 1e-8) const;
};

/// A quantum extension of a target state, either given explicitly (a state
/// containing the register `label`) or as a channel applied to the canonical
/// purifier of the target, whose output becomes the register `label`.
class QuantumExtension {
public:
    static QuantumExtension explicit_state(DensityMatrix sigma, std::string label);
    static QuantumExtension explicit_state(PureState sigma, std::string label);
    static QuantumExtension channel(KrausChannel ch, std::string label = "E");

    bool is_channel() const noexcept { return std::holds_alternative<KrausChannel>(form_); }
    const std::string& label() const noexcept { return label_; }
    const std::variant<DensityMatrix, PureState, KrausChannel>& form() const noexcept { return form_; }

    /// The extension state of `target`. Channel-form extensions are returned
    /// as a pure state that also carries the channel environment, labelled
    /// label + "~env"; tracing it out gives the extension proper.
    std::variant<DensityMatrix, PureState> realize(const DensityMatrix& target) const;
    /// Throws ExtensionMismatch when Tr_E differs from `target` by more than `tol`.
    void validate(const DensityMatrix& target, double tol = 1e-7) const;

private:
    QuantumExtension(std::variant<DensityMatrix, PureState, KrausChannel> form, std::string label)
        : form_(std::move(form)), label_(std::move(label)) {}

    std::variant<DensityMatrix, PureState, KrausChannel> form_;
    std::string label_;
};

/// Label of the purifying register used for channel-form extensions.
inline constexpr const char* kPurifierLabel = "~purifier";

/// Stinespring vector of a channel acting on the purifier: the global pure
/// state on target ⊗ label ⊗ label~env.
PureState channel_extension_state(const DensityMatrix& target, const KrausChannel& ch, const std::string& label);

}  // namespace entrolab
