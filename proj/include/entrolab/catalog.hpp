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
#include <string>
#include <vector>

#include "entrolab/extension.hpp"
#include "entrolab/qstate.hpp"

namespace entrolab {

/// Largest total dimension any catalog constructor will build.
inline constexpr Eigen::Index kCatalogMaxDim = Eigen::Index{1} << 14;

/// Party labels A, B, C, D, F, G, ... (E and X are kept for the conditioning
/// register and the purifier).
std::string party_label(std::size_t i);
/// Shield or auxiliary label of party i: party_label(i) + "'".
std::string primed_label(std::size_t i);

/// d^{-1/2} sum_i |i...i> on parties A, B, ...
PureState ghz(int m, int d);

/// sum_i (1/d) |i...i><i...i|.
DensityMatrix ideal_key_state(int m, int d);

/// The m-party flower state: parties A_k A_k' with dims (d, 2) and purifier X
/// of dim d, |Phi> = (2d)^{-1/2} sum_{i,j} ⊗_k |i>|j> ⊗ U_j|i>_X with U_0 = 1
/// and U_1 the Fourier matrix d^{-1/2} exp(2 pi i jk/d).
struct FlowerBundle {
    DensityMatrix reduced;
    PureState purification;
    int m = 0;
    int d = 0;
};

FlowerBundle flower(int m, int d);
/// Partition string "A,A':B,B':..." grouping each party with its A' qubit.
std::string flower_partition(int m);
/// Ensemble from measuring X in the computational basis.
ClassicalExtension flower_measured_extension(const FlowerBundle& f);
/// The flower state after losing the first party's A' qubit. It is diagonal
/// in the computational basis.
DensityMatrix flower_locked_state(const FlowerBundle& f);
/// Its decomposition into 2d computational product states, weight 1/(2d).
ClassicalExtension flower_locked_ensemble(const FlowerBundle& f);

/// gamma = sum_{i,j} (1/d) |i..i><j..j| ⊗ U_i rho' U_j^dagger, with key
/// labels A, B, ... followed by the shield layout.
struct PditSpec {
    int m = 2;
    int d = 2;
    DensityMatrix shield;
    std::vector<Matrix> twists;
};

DensityMatrix pdit(const PditSpec& spec);
/// Shield labels A', B', ... with dimension `shield_dim` each, a random
/// shield of full rank and d Haar-random twists, all drawn from `seed`.
PditSpec random_pdit_spec(int m, int d, int shield_dim, std::uint64_t seed);
/// Same shield and dims with every twist equal to the identity.
PditSpec untwisted_pdit_spec(int m, int d, int shield_dim, std::uint64_t seed);

}  // namespace entrolab
