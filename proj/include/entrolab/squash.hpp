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

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "entrolab/entropic.hpp"
#include "entrolab/extension.hpp"

namespace entrolab {

/// Largest state the optimizers accept.
inline constexpr Eigen::Index kOptimizerMaxDim = Eigen::Index{1} << 12;

/// Zero in a size field means "derive from the target's rank".
struct OptimizerConfig {
    int restarts = 16;
    int max_iters = 400;
    double rel_tol = 1e-7;
    int window = 50;
    int ensemble_size = 0;   // default rank^2, capped at 64
    int extension_dim = 0;   // default min(rank^2, 32)
    int extension_env = 0;   // Stinespring environment; default min(rank * extension_dim, 64)
    int eve_alphabet = 0;    // classical searches; default |E|
    std::uint64_t seed = 0;
};

enum class Certification { ExactAtKnownExtension, UpperBoundOnly };
std::string_view to_string(Certification c) noexcept;

using Witness = std::variant<std::monostate, ClassicalExtension, QuantumExtension, Eigen::MatrixXd>;

struct BoundReport {
    double value = 0.0;
    Which which = Which::I;
    Witness witness;
    Certification certified = Certification::UpperBoundOnly;
    OptimizerConfig config;            // effective values, sizes resolved
    int evals = 0;
    std::vector<double> restart_values;  // best value reached by each restart
    std::string method;                // which search produced the value
};

/// Conditional multipartite mutual information at an explicit extension. The
/// extension register is the conditioner; `part` must not carry one.
double cmi_at_extension(const DensityMatrix& rho, const Partition& part, const ClassicalExtension& ext, Which which);
double cmi_at_extension(const DensityMatrix& rho, const Partition& part, const QuantumExtension& ext, Which which);

/// Numerical rank of rho (eigenvalues above 1e-10).
int purifier_rank(const DensityMatrix& rho);

/// Ensemble obtained by measuring the canonical purifier with the k-outcome
/// instrument given by an isometry W (k*s rows, rank(rho) columns): member k
/// is proportional to Psi W_k^T where Psi = E Lambda^{1/2}.
ClassicalExtension ensemble_from_povm(const DensityMatrix& rho, const Matrix& isometry, int outcomes);
/// W = [1; 0]: the trivial ensemble {1, rho} in the first outcome.
Matrix trivial_povm(int rank, int outcomes, int block);
/// Outcome i reads eigenvector i: the spectral ensemble. Needs outcomes >= rank.
Matrix spectral_povm(int rank, int outcomes, int block);

/// Upper bound on the c-squashed quantity: minimum found over ensembles of rho.
BoundReport c_squashed_upper(const DensityMatrix& rho, const Partition& part, Which which,
                             const OptimizerConfig& cfg = {});
/// Upper bound on the q-squashed quantity: minimum over channels on the
/// purifier, never above the classical search run with the same config.
BoundReport q_squashed_upper(const DensityMatrix& rho, const Partition& part, Which which,
                             const OptimizerConfig& cfg = {});
/// inf sum_i p_i g(rho_i) over the same ensemble family as c_squashed_upper.
BoundReport mixed_convex_roof(const std::function<double(const DensityMatrix&)>& g, const DensityMatrix& rho,
                              const OptimizerConfig& cfg = {});
/// Half of the q-squashed I for two parties.
BoundReport bipartite_squashed_upper(const DensityMatrix& rho, const Partition& part, const OptimizerConfig& cfg = {});

/// Marks the report exact when it matches a known value within `tol`.
BoundReport certify_against(BoundReport report, double known, double tol = 1e-6);

/// Re-evaluates a report's witness on rho.
double evaluate_witness(const DensityMatrix& rho, const Partition& part, const BoundReport& report);

}  // namespace entrolab
