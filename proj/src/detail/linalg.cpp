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

#include "detail/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace entrolab::detail {

Offsets offsets(const std::vector<int>& dims, const std::vector<int>& positions) {
    const int n = static_cast<int>(dims.size());
    std::vector<Eigen::Index> stride(n, 1);
    for (int k = n - 2; k >= 0; --k) stride[k] = stride[k + 1] * dims[k + 1];

    Offsets out{0};
    for (int pos : positions) {
        Offsets next;
        next.reserve(out.size() * dims[pos]);
        for (Eigen::Index base : out)
            for (int i = 0; i < dims[pos]; ++i) next.push_back(base + i * stride[pos]);
        out = std::move(next);
    }
    return out;
}

std::vector<int> complement(int n, const std::vector<int>& positions) {
    std::vector<int> out;
    for (int k = 0; k < n; ++k)
        if (std::find(positions.begin(), positions.end(), k) == positions.end()) out.push_back(k);
    return out;
}

Eigen::Index product(const std::vector<int>& dims, const std::vector<int>& positions) {
    Eigen::Index p = 1;
    for (int pos : positions) p *= dims[pos];
    return p;
}

Matrix reduce(const Matrix& m, const std::vector<int>& dims, const std::vector<int>& keep) {
    const auto rest = complement(static_cast<int>(dims.size()), keep);
    const Offsets ok = offsets(dims, keep);
    const Offsets orest = offsets(dims, rest);
    const auto dk = static_cast<Eigen::Index>(ok.size());
    Matrix out = Matrix::Zero(dk, dk);
    for (Eigen::Index b = 0; b < dk; ++b) {
        for (Eigen::Index a = 0; a < dk; ++a) {
            cplx acc = 0;
            for (Eigen::Index t : orest) acc += m(ok[a] + t, ok[b] + t);
            out(a, b) = acc;
        }
    }
    return out;
}

Matrix reshape_pure(const Vector& v, const std::vector<int>& dims, const std::vector<int>& keep) {
    const auto rest = complement(static_cast<int>(dims.size()), keep);
    const Offsets ok = offsets(dims, keep);
    const Offsets orest = offsets(dims, rest);
    Matrix out(static_cast<Eigen::Index>(ok.size()), static_cast<Eigen::Index>(orest.size()));
    for (std::size_t t = 0; t < orest.size(); ++t)
        for (std::size_t a = 0; a < ok.size(); ++a) out(a, t) = v(ok[a] + orest[t]);
    return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix permute(const Matrix& m, const std::vector<int>& dims, const std::vector<int>& perm) {
    const Offsets idx = offsets(dims, perm);
    const auto n = static_cast<Eigen::Index>(idx.size());
    Matrix out(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) out(i, j) = m(idx[i], idx[j]);
    return out;
}

namespace {

Eigen::Index find_root(std::vector<Eigen::Index>& parent, Eigen::Index x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

Eigen::VectorXd dense_eigenvalues(const Matrix& m) {
    if (m.rows() == 1) return Eigen::VectorXd::Constant(1, m(0, 0).real());
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

}  // namespace

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
    const Eigen::Index n = m.rows();
    if (n <= 16) return dense_eigenvalues(m);

    std::vector<Eigen::Index> parent(n);
    std::iota(parent.begin(), parent.end(), Eigen::Index{0});
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = j + 1; i < n; ++i)
            if (m(i, j) != cplx(0.0, 0.0)) {
                const Eigen::Index ri = find_root(parent, i), rj = find_root(parent, j);
                if (ri != rj) parent[ri] = rj;
            }

    std::map<Eigen::Index, std::vector<Eigen::Index>> blocks;
    for (Eigen::Index i = 0; i < n; ++i) blocks[find_root(parent, i)].push_back(i);
    if (blocks.size() == 1) return dense_eigenvalues(m);

    Eigen::VectorXd out(n);
    Eigen::Index filled = 0;
    for (const auto& [root, members] : blocks) {
        const auto k = static_cast<Eigen::Index>(members.size());
        Matrix sub(k, k);
        for (Eigen::Index b = 0; b < k; ++b)
            for (Eigen::Index a = 0; a < k; ++a) sub(a, b) = m(members[a], members[b]);
        out.segment(filled, k) = dense_eigenvalues(sub);
        filled += k;
    }
    return out;
}

double entropy_bits(const Eigen::VectorXd& eigenvalues) {
    double s = 0.0;
    for (double l : eigenvalues)
        if (l > tol::kEigFloor) s -= l * std::log2(l);
    return s;
}

double entropy_bits(const Matrix& m) { return entropy_bits(hermitian_eigenvalues(m)); }

double max_asymmetry(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

EntropyCache::EntropyCache(const Matrix& rho, std::vector<int> dims)
    : rho_(&rho), dims_(std::move(dims)) {}

EntropyCache::EntropyCache(const Vector& psi, std::vector<int> dims)
    : psi_(&psi), dims_(std::move(dims)) {}

double EntropyCache::operator()(const std::vector<int>& positions) {
    if (positions.empty()) return 0.0;
    if (auto it = memo_.find(positions); it != memo_.end()) return it->second;

    const int n = static_cast<int>(dims_.size());
    double s = 0.0;
    if (psi_ != nullptr) {
        if (static_cast<int>(positions.size()) == n) {
            s = 0.0;
        } else {
            // S(K) = S(complement) for a pure state; diagonalize the smaller Gram matrix.
            const Matrix block = reshape_pure(*psi_, dims_, positions);
            if (block.rows() <= block.cols())
                s = entropy_bits(Matrix(block * block.adjoint()));
            else
                s = entropy_bits(Matrix(block.adjoint() * block));
        }
    } else if (static_cast<int>(positions.size()) == n) {
        s = entropy_bits(*rho_);
    } else {
        s = entropy_bits(reduce(*rho_, dims_, positions));
    }
    memo_.emplace(positions, s);
    return s;
}

void apply_givens_rows(Matrix& v, Eigen::Index a, Eigen::Index b, double theta, double phi) {
    const double c = std::cos(theta), s = std::sin(theta);
    const cplx mix_ab = cplx(0.0, -s) * std::polar(1.0, phi);
    const cplx mix_ba = cplx(0.0, -s) * std::polar(1.0, -phi);
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
        const cplx va = v(a, j), vb = v(b, j);
        v(a, j) = c * va + mix_ab * vb;
        v(b, j) = mix_ba * va + c * vb;
    }
}

}  // namespace entrolab::detail
