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
#include <optional>
#include <string>
#include <vector>

#include "entrolab/catalog.hpp"
#include "entrolab/entropic.hpp"
#include "entrolab/squash.hpp"

namespace entrolab {

/// A state functional under test. Optimizer-backed functionals carry the
/// budget they were built with so repeated evaluation is reproducible.
struct MonotoneFn {
    std::string name;
    std::function<double(const DensityMatrix&, const Partition&)> eval;
    std::optional<OptimizerConfig> budget;

    double operator()(const DensityMatrix& rho, const Partition& part) const { return eval(rho, part); }
};

/// Conditional multi-information; the partition may carry a conditioner.
MonotoneFn multi_info_fn(Which which);
MonotoneFn c_squashed_fn(Which which, const OptimizerConfig& cfg);
MonotoneFn q_squashed_fn(Which which, const OptimizerConfig& cfg);
/// Total von Neumann entropy; concave, so it fails the convexity check.
MonotoneFn entropy_fn();
/// Numerical rank; discontinuous, so it fails the continuity probe.
MonotoneFn rank_fn();
/// Trace of the state (always 1).
MonotoneFn trace_fn();

struct ProbeRecord {
    std::string input;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;   // lhs - rhs
    double violation = 0.0;  // amount by which the record breaks the check
};

struct ProbeReport {
    std::string check;
    std::string function;
    std::vector<ProbeRecord> records;
    double tol = 0.0;
    double max_violation = 0.0;
    bool pass = true;
    std::optional<double> max_ratio;  // continuity probe only

    void add(ProbeRecord r);
};

/// |f(U rho U^dagger) - f(rho)| for random local unitaries, one per party.
ProbeReport check_lui(const MonotoneFn& f, const DensityMatrix& rho, const Partition& part, int trials, double tol,
                      std::uint64_t seed = 0);

/// |f(sum p_i rho_i ⊗ |i><i|) - sum p_i f(rho_i)| with the flag register
/// `flag_label` (dimension flag_dim, 0 for the ensemble size) joined to party
/// `flag_party`. When `part` has a conditioner, a second copy of the flag is
/// added to it.
ProbeReport check_flags(const MonotoneFn& f, const ClassicalExtension& ensemble, const Partition& part,
                        const std::string& flag_label, double tol, std::size_t flag_party = 0, int flag_dim = 0);

/// f(p rho + (1-p) sigma) - p f(rho) - (1-p) f(sigma); passes when <= tol.
ProbeReport check_convexity(const MonotoneFn& f, const DensityMatrix& rho, const DensityMatrix& sigma,
                            const Partition& part, double p, double tol);

/// f(after) - f(before) for random channels on one subsystem of a random
/// party; passes when no value increases by more than tol.
ProbeReport check_local_channels(const MonotoneFn& f, const DensityMatrix& rho, const Partition& part, int trials,
                                 double tol, std::uint64_t seed = 0);

/// For each eps, `trials` states sigma with ||rho - sigma||_1 <= eps. Reports
/// max |f(rho) - f(sigma)| / (eps log2 d); passes when that stays <= ratio_bound.
ProbeReport continuity_probe(const MonotoneFn& f, const DensityMatrix& rho, const Partition& part,
                             const std::vector<double>& eps_list, int trials, double ratio_bound = 16.0,
                             std::uint64_t seed = 0);

/// min_{i>1} I(A_1:A_i) - I(A_1:E) on the canonical purification, where E is
/// the purifier together with every label outside the partition. key_labels
/// names one label of each party, in party order.
double dw_rate(const DensityMatrix& rho, const Partition& part, const LabelSet& key_labels);

/// Channel-form extensions of rho from Haar-random Stinespring isometries.
std::vector<QuantumExtension> random_channel_extensions(const DensityMatrix& rho, int count, int output_dim,
                                                        int kraus_count, std::uint64_t seed);

/// Every extension of the pdit must give an I value >= m log2 d - tol. The
/// per-party share value/m is recorded as the key upper bound.
ProbeReport pdit_normalization_check(const PditSpec& spec, const std::vector<QuantumExtension>& extensions,
                                     double tol);

struct LockRecord {
    int m = 0;
    int d = 0;
    double full_value_I = 0.0;  // purifying extension
    double full_value_S = 0.0;  // trivial extension
    double locked_value = 0.0;  // product extension after losing A'
};

LockRecord lockability_demo(int m, int d);

}  // namespace entrolab
