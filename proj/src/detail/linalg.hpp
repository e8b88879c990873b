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

// Index arithmetic and spectral helpers on bare Eigen objects. Everything in
// here works on positions into a dims vector, never on labels.

#pragma once

#include <map>
#include <random>
#include <vector>

#include "entrolab/qstate.hpp"

namespace entrolab::detail {

using Offsets = std::vector<Eigen::Index>;

/// For every multi-index over `positions` (first position most significant),
/// its contribution to the full row-major index over `dims`.
Offsets offsets(const std::vector<int>& dims, const std::vector<int>& positions);

std::vector<int> complement(int n, const std::vector<int>& positions);
Eigen::Index product(const std::vector<int>& dims, const std::vector<int>& positions);

/// Reduced operator on `keep` (kept in the given order).
Matrix reduce(const Matrix& m, const std::vector<int>& dims, const std::vector<int>& keep);
/// Reshapes a vector into (keep x rest) so that the reduced state is M M^dagger.
Matrix reshape_pure(const Vector& v, const std::vector<int>& dims, const std::vector<int>& keep);
Matrix kron(const Matrix& a, const Matrix& b);
/// Reorders tensor factors: new factor k is old factor perm[k].
Matrix permute(const Matrix& m, const std::vector<int>& dims, const std::vector<int>& perm);

/// Eigenvalues of a Hermitian matrix, solving structurally disconnected
/// blocks separately.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& m);
double entropy_bits(const Eigen::VectorXd& eigenvalues);
double entropy_bits(const Matrix& m);

double max_asymmetry(const Matrix& m);

/// Subsystem entropies of one state (mixed or pure), memoized by position set.
class EntropyCache {
public:
    EntropyCache(const Matrix& rho, std::vector<int> dims);
    EntropyCache(const Vector& psi, std::vector<int> dims);

    /// S of the sorted, duplicate-free position set; the empty set gives 0.
    double operator()(const std::vector<int>& positions);
    const std::vector<int>& dims() const noexcept { return dims_; }

private:
    const Matrix* rho_ = nullptr;
    const Vector* psi_ = nullptr;
    std::vector<int> dims_;
    std::map<std::vector<int>, double> memo_;
};

/// Haar-distributed unitary via QR of a complex Ginibre matrix with phase fix.
template <class Rng>
Matrix haar_unitary(int n, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix g(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) g(i, j) = cplx(normal(rng), normal(rng));
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n; ++j) {
        const double mag = std::abs(r(j, j));
        if (mag > 0) q.col(j) *= r(j, j) / mag;
    }
    return q;
}

/// Isometry (rows >= cols) with orthonormal columns, Haar distributed.
template <class Rng>
Matrix haar_isometry(int rows, int cols, Rng& rng) {
    return haar_unitary(rows, rng).leftCols(cols);
}

/// Two-level unitary acting on rows a, b: exp(-i theta (e^{i phi}|a><b| + h.c.)).
void apply_givens_rows(Matrix& v, Eigen::Index a, Eigen::Index b, double theta, double phi);

}  // namespace entrolab::detail
