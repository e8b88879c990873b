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
#include <variant>

#include "entrolab/qstate.hpp"

namespace entrolab {

/// Deterministic random objects for tests and searches. Every draw comes
/// from the explicit seed.

PureState sample_pure(const SystemLayout& layout, std::uint64_t seed);
/// Partial trace of a pure state on layout ⊗ C^rank.
DensityMatrix sample_mixed(const SystemLayout& layout, int rank, std::uint64_t seed);
Matrix sample_unitary(int dim, std::uint64_t seed);
/// Channel from a Haar isometry C^in -> C^out ⊗ C^kraus_count.
KrausChannel sample_channel(int input_dim, int output_dim, int kraus_count, std::uint64_t seed);

enum class SampleKind { Pure, MixedRank, Unitary, Channel };

struct SampleParams {
    SystemLayout layout;     // Pure, MixedRank
    int rank = 1;            // MixedRank
    int dim = 2;             // Unitary
    int input_dim = 2;       // Channel
    int output_dim = 2;      // Channel
    int kraus_count = 1;     // Channel
};

using Sampled = std::variant<PureState, DensityMatrix, Matrix, KrausChannel>;

Sampled sample(SampleKind kind, const SampleParams& params, std::uint64_t seed);

/// Independent child seed (splitmix64 of seed and counter).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter) noexcept;

}  // namespace entrolab
