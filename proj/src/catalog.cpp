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

#include "entrolab/catalog.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "entrolab/sample.hpp"

namespace entrolab {

namespace {

void require_size(double total, std::string_view what) {
    if (total > static_cast<double>(kCatalogMaxDim))
        throw Error(ErrorCode::TooLarge, fmt::format("{} would have dimension {:.0f} > {}", what, total, kCatalogMaxDim));
}

void require_md(int m, int d) {
    if (m < 2) throw Error(ErrorCode::BadParams, "at least two parties are required");
    if (d < 2) throw Error(ErrorCode::BadParams, "local dimension must be at least 2");
}

SystemLayout party_layout(int m, int d) {
    std::vector<Subsystem> subs;
    for (int k = 0; k < m; ++k) subs.push_back({party_label(k), d});
    return SystemLayout(std::move(subs));
}

// Index of |i...i> in a d^m register.
Eigen::Index repeated(int m, int d, int i) {
    Eigen::Index idx = 0;
    for (int k = 0; k < m; ++k) idx = idx * d + i;
    return idx;
}

Matrix fourier(int d) {
    Matrix u(d, d);
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
            u(j, k) = std::polar(1.0 / std::sqrt(static_cast<double>(d)), 2.0 * std::numbers::pi * j * k / d);
    return u;
}

}  // namespace

std::string party_label(std::size_t i) {
    static const std::string letters = "ABCDFGHIJKLMNOPQRSTUVWYZ";
    if (i < letters.size()) return std::string(1, letters[i]);
    return fmt::format("P{}", i);
}

std::string primed_label(std::size_t i) { return party_label(i) + "'"; }

PureState ghz(int m, int d) {
    require_md(m, d);
    require_size(std::pow(d, m), "GHZ state");
    SystemLayout layout = party_layout(m, d);
    Vector v = Vector::Zero(layout.total_dim());
    for (int i = 0; i < d; ++i) v(repeated(m, d, i)) = 1.0 / std::sqrt(static_cast<double>(d));
    return make_pure(std::move(layout), v);
}

DensityMatrix ideal_key_state(int m, int d) {
    require_md(m, d);
    require_size(std::pow(d, m), "ideal key state");
    SystemLayout layout = party_layout(m, d);
    Matrix rho = Matrix::Zero(layout.total_dim(), layout.total_dim());
    for (int i = 0; i < d; ++i) rho(repeated(m, d, i), repeated(m, d, i)) = 1.0 / d;
    return DensityMatrix::assume_valid(std::move(layout), std::move(rho));
}

FlowerBundle flower(int m, int d) {
    require_md(m, d);
    require_size(std::pow(2.0 * d, m) * d, "flower purification");
    std::vector<Subsystem> subs;
    for (int k = 0; k < m; ++k) {
        subs.push_back({party_label(k), d});
        subs.push_back({primed_label(k), 2});
    }
    subs.push_back({"X", d});
    SystemLayout layout(std::move(subs));

    const Matrix u1 = fourier(d);
    const double amp = 1.0 / std::sqrt(2.0 * d);
    Vector v = Vector::Zero(layout.total_dim());
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < 2; ++j) {
            Eigen::Index base = 0;
            for (int k = 0; k < m; ++k) base = base * (2 * d) + (2 * i + j);
            for (int x = 0; x < d; ++x) {
                const cplx ux = j == 0 ? cplx(x == i ? 1.0 : 0.0) : u1(x, i);
                v(base * d + x) += amp * ux;
            }
        }
    PureState psi = make_pure(std::move(layout), v);
    DensityMatrix reduced = partial_trace(psi, {"X"});
    return {std::move(reduced), std::move(psi), m, d};
}

std::string flower_partition(int m) {
    std::vector<std::string> parts;
    for (int k = 0; k < m; ++k) parts.push_back(party_label(k) + "," + primed_label(k));
    return fmt::format("{}", fmt::join(parts, ":"));
}

ClassicalExtension flower_measured_extension(const FlowerBundle& f) {
    const Eigen::Index d = f.d;
    const Eigen::Index rest = f.purification.dim() / d;
    ClassicalExtension ext;
    for (Eigen::Index x = 0; x < d; ++x) {
        Vector branch(rest);
        for (Eigen::Index s = 0; s < rest; ++s) branch(s) = f.purification.vector()(s * d + x);
        const double p = branch.squaredNorm();
        ext.weights.push_back(p);
        ext.members.push_back(make_pure(f.reduced.layout(), branch / std::sqrt(p)).density());
    }
    return ext;
}

DensityMatrix flower_locked_state(const FlowerBundle& f) {
    DensityMatrix locked = partial_trace(f.purification, {primed_label(0), "X"});
    const Matrix& m = locked.matrix();
    const double off = (m - Matrix(m.diagonal().asDiagonal())).cwiseAbs().sum();
    if (off > 1e-10) throw Error(ErrorCode::BadParams, fmt::format("locked flower state has off-diagonal mass {:.3e}", off));
    return DensityMatrix::assume_valid(locked.layout(), Matrix(m.diagonal().asDiagonal()));
}

ClassicalExtension flower_locked_ensemble(const FlowerBundle& f) {
    // Member (i, j): |i>_A ⊗ |i j>_{B B'} ⊗ ... .
    std::vector<Subsystem> subs{{party_label(0), f.d}};
    for (int k = 1; k < f.m; ++k) {
        subs.push_back({party_label(k), f.d});
        subs.push_back({primed_label(k), 2});
    }
    const SystemLayout layout(std::move(subs));
    ClassicalExtension ext;
    for (int i = 0; i < f.d; ++i)
        for (int j = 0; j < 2; ++j) {
            Eigen::Index idx = i;
            for (int k = 1; k < f.m; ++k) idx = idx * (2 * f.d) + (2 * i + j);
            ext.weights.push_back(1.0 / (2.0 * f.d));
            ext.members.push_back(basis_state(layout, idx).density());
        }
    return ext;
}

DensityMatrix pdit(const PditSpec& spec) {
    require_md(spec.m, spec.d);
    const Eigen::Index ds = spec.shield.dim();
    require_size(std::pow(spec.d, spec.m) * static_cast<double>(ds), "private dit");
    if (static_cast<int>(spec.twists.size()) != spec.d)
        throw Error(ErrorCode::DimensionMismatch, fmt::format("need {} twists, got {}", spec.d, spec.twists.size()));
    for (const auto& u : spec.twists) {
        if (u.rows() != ds || u.cols() != ds)
            throw Error(ErrorCode::DimensionMismatch, "twist does not act on the shield space");
        if ((u.adjoint() * u - Matrix::Identity(ds, ds)).cwiseAbs().maxCoeff() > 1e-9)
            throw Error(ErrorCode::BadParams, "twist is not unitary");
    }
    SystemLayout layout = party_layout(spec.m, spec.d).concat(spec.shield.layout());
    Matrix g = Matrix::Zero(layout.total_dim(), layout.total_dim());
    const Matrix& rho = spec.shield.matrix();
    for (int i = 0; i < spec.d; ++i)
        for (int j = 0; j < spec.d; ++j)
            g.block(repeated(spec.m, spec.d, i) * ds, repeated(spec.m, spec.d, j) * ds, ds, ds) =
                spec.twists[i] * rho * spec.twists[j].adjoint() / static_cast<double>(spec.d);
    return DensityMatrix::assume_valid(std::move(layout), std::move(g));
}

namespace {

SystemLayout shield_layout(int m, int shield_dim) {
    std::vector<Subsystem> subs;
    for (int k = 0; k < m; ++k) subs.push_back({primed_label(k), shield_dim});
    return SystemLayout(std::move(subs));
}

}  // namespace

PditSpec random_pdit_spec(int m, int d, int shield_dim, std::uint64_t seed) {
    require_md(m, d);
    if (shield_dim < 1) throw Error(ErrorCode::BadParams, "shield dimension must be positive");
    const SystemLayout shields = shield_layout(m, shield_dim);
    require_size(std::pow(d, m) * static_cast<double>(shields.total_dim()), "private dit");
    PditSpec spec{m, d, sample_mixed(shields, static_cast<int>(shields.total_dim()), derive_seed(seed, 0)), {}};
    for (int i = 0; i < d; ++i)
        spec.twists.push_back(sample_unitary(static_cast<int>(shields.total_dim()), derive_seed(seed, 1 + i)));
    return spec;
}

PditSpec untwisted_pdit_spec(int m, int d, int shield_dim, std::uint64_t seed) {
    PditSpec spec = random_pdit_spec(m, d, shield_dim, seed);
    for (auto& u : spec.twists) u = Matrix::Identity(u.rows(), u.cols());
    return spec;
}

}  // namespace entrolab
