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

#include "entrolab/sample.hpp"

#include <random>

#include <fmt/format.h>

#include "detail/linalg.hpp"

namespace entrolab {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter) noexcept {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (counter + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

Vector gaussian_vector(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = cplx(normal(rng), normal(rng));
    return v;
}

}  // namespace

PureState sample_pure(const SystemLayout& layout, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Vector v = gaussian_vector(layout.total_dim(), rng);
    return make_pure(layout, v.normalized());
}

DensityMatrix sample_mixed(const SystemLayout& layout, int rank, std::uint64_t seed) {
    if (rank < 1 || rank > layout.total_dim())
        throw Error(ErrorCode::BadParams, fmt::format("rank {} for dimension {}", rank, layout.total_dim()));
    std::mt19937_64 rng(seed);
    const Vector v = gaussian_vector(layout.total_dim() * rank, rng).normalized();
    // v lives on layout ⊗ C^rank; the environment index is the fastest digit.
    const Eigen::Map<const Matrix> g(v.data(), rank, layout.total_dim());
    return DensityMatrix::assume_valid(layout, g.transpose() * g.transpose().adjoint());
}

Matrix sample_unitary(int dim, std::uint64_t seed) {
    if (dim < 1) throw Error(ErrorCode::BadParams, "unitary dimension must be positive");
    std::mt19937_64 rng(seed);
    return detail::haar_unitary(dim, rng);
}

KrausChannel sample_channel(int input_dim, int output_dim, int kraus_count, std::uint64_t seed) {
    if (input_dim < 1 || output_dim < 1 || kraus_count < 1 || output_dim * kraus_count < input_dim)
        throw Error(ErrorCode::BadParams,
                    fmt::format("channel {} -> {} with {} Kraus operators has no isometric dilation", input_dim,
                                output_dim, kraus_count));
    std::mt19937_64 rng(seed);
    const Matrix v = detail::haar_isometry(output_dim * kraus_count, input_dim, rng);
    std::vector<Matrix> kraus;
    kraus.reserve(kraus_count);
    for (int t = 0; t < kraus_count; ++t) {
        Matrix k(output_dim, input_dim);
        for (int z = 0; z < output_dim; ++z) k.row(z) = v.row(z * kraus_count + t);
        kraus.push_back(std::move(k));
    }
    return make_channel(std::move(kraus));
}

Sampled sample(SampleKind kind, const SampleParams& params, std::uint64_t seed) {
    switch (kind) {
        case SampleKind::Pure: return sample_pure(params.layout, seed);
        case SampleKind::MixedRank: return sample_mixed(params.layout, params.rank, seed);
        case SampleKind::Unitary: return sample_unitary(params.dim, seed);
        case SampleKind::Channel:
            return sample_channel(params.input_dim, params.output_dim, params.kraus_count, seed);
    }
    throw Error(ErrorCode::BadParams, "unknown sample kind");
}

}  // namespace entrolab
