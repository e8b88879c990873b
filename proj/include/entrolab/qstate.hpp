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

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "entrolab/error.hpp"

namespace entrolab {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Ordered list of subsystem labels. Where a function treats it as a set,
/// duplicates are rejected and order is irrelevant.
using LabelSet = std::vector<std::string>;

namespace tol {
inline constexpr double kValidate = 1e-9;      // Hermiticity, trace, PSD, norm
inline constexpr double kInputAsym = 1e-7;     // accepted asymmetry before symmetrization
inline constexpr double kInputTrace = 1e-7;    // accepted trace deviation on input
inline constexpr double kEigFloor = 1e-12;     // 0 log 0 cutoff
inline constexpr double kRank = 1e-10;         // numerical rank threshold
}  // namespace tol

struct Subsystem {
    std::string label;
    int dim = 1;

    bool operator==(const Subsystem&) const = default;
};

/// Tensor-factor structure A_1 ⊗ … ⊗ A_n. Order is significant: the first
/// subsystem is the most significant digit of the computational index.
class SystemLayout {
public:
    SystemLayout() = default;
    explicit SystemLayout(std::vector<Subsystem> subsystems);

    std::size_t size() const noexcept { return subsystems_.size(); }
    bool empty() const noexcept { return subsystems_.empty(); }
    const Subsystem& operator[](std::size_t i) const { return subsystems_[i]; }
    const std::vector<Subsystem>& subsystems() const noexcept { return subsystems_; }

    Eigen::Index total_dim() const noexcept { return total_dim_; }
    std::vector<int> dims() const;
    LabelSet labels() const;

    bool contains(const std::string& label) const noexcept;
    /// Position of `label`; throws UnknownLabel.
    std::size_t index_of(const std::string& label) const;
    int dim_of(const std::string& label) const { return subsystems_[index_of(label)].dim; }
    /// Sorted positions of a label set; throws UnknownLabel or BadPartition on duplicates.
    std::vector<int> positions(const LabelSet& labels) const;
    /// Joint dimension of a label set.
    Eigen::Index dim_of(const LabelSet& labels) const;

    /// Concatenation; throws LabelClash when label sets intersect.
    SystemLayout concat(const SystemLayout& other) const;
    SystemLayout select(const std::vector<int>& positions) const;

    bool operator==(const SystemLayout& o) const { return subsystems_ == o.subsystems_; }

private:
    std::vector<Subsystem> subsystems_;
    Eigen::Index total_dim_ = 1;
};

/// A validated mixed state. Instances are immutable.
class DensityMatrix {
public:
    const SystemLayout& layout() const noexcept { return layout_; }
    const Matrix& matrix() const noexcept { return matrix_; }
    Eigen::Index dim() const noexcept { return matrix_.rows(); }

    /// Builds a state from a matrix the caller produced by a PSD-preserving
    /// construction. Hermiticity and trace are still checked; the spectrum is not.
    static DensityMatrix assume_valid(SystemLayout layout, Matrix matrix);

private:
    DensityMatrix(SystemLayout layout, Matrix matrix)
        : layout_(std::move(layout)), matrix_(std::move(matrix)) {}

    friend DensityMatrix make_density(SystemLayout layout, const Matrix& matrix);

    SystemLayout layout_;
    Matrix matrix_;
};

class PureState {
public:
    const SystemLayout& layout() const noexcept { return layout_; }
    const Vector& vector() const noexcept { return vector_; }
    Eigen::Index dim() const noexcept { return vector_.size(); }
    DensityMatrix density() const;

private:
    PureState(SystemLayout layout, Vector vector)
        : layout_(std::move(layout)), vector_(std::move(vector)) {}

    friend PureState make_pure(SystemLayout layout, const Vector& vector);

    SystemLayout layout_;
    Vector vector_;
};

/// Completely positive trace-preserving map in Kraus form, input -> output.
class KrausChannel {
public:
    int input_dim() const noexcept { return input_dim_; }
    int output_dim() const noexcept { return output_dim_; }
    const std::vector<Matrix>& kraus() const noexcept { return kraus_; }

    /// Applies the channel to a bare operator on the input space.
    Matrix apply(const Matrix& rho) const;

private:
    KrausChannel(int in, int out, std::vector<Matrix> kraus)
        : input_dim_(in), output_dim_(out), kraus_(std::move(kraus)) {}

    friend KrausChannel make_channel(std::vector<Matrix> kraus);

    int input_dim_ = 1;
    int output_dim_ = 1;
    std::vector<Matrix> kraus_;
};

/// Validates and normalizes a density matrix. The input is symmetrized,
/// eigenvalues in [-1e-9, 0) are clamped and the spectrum renormalized.
DensityMatrix make_density(SystemLayout layout, const Matrix& matrix);
PureState make_pure(SystemLayout layout, const Vector& vector);
KrausChannel make_channel(std::vector<Matrix> kraus);

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
PureState tensor(const PureState& a, const PureState& b);

DensityMatrix partial_trace(const DensityMatrix& rho, const LabelSet& discard);
DensityMatrix partial_trace(const PureState& psi, const LabelSet& discard);
/// Reduced state on `keep`, in layout order.
DensityMatrix marginal(const DensityMatrix& rho, const LabelSet& keep);

/// Von Neumann entropy in bits.
double entropy(const DensityMatrix& rho);
/// Relative entropy in bits; +infinity when supp(rho) is not inside supp(sigma).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);
/// Unnormalized trace norm ||rho - sigma||_1, in [0, 2].
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Canonical purification sum_i sqrt(l_i) |e_i>|i>, eigenvalues descending,
/// each eigenvector's first significant entry made real positive. The
/// ancilla dimension equals the numerical rank.
PureState purify(const DensityMatrix& rho, const std::string& ancilla_label);

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& ch,
                            const std::string& target, const std::string& new_label);
/// Conjugates by an operator acting jointly on `labels` (in the given order).
DensityMatrix apply_local_operator(const DensityMatrix& rho, const LabelSet& labels,
                                   const Matrix& op);
/// Removes all coherences in the computational basis of `target`.
DensityMatrix dephase(const DensityMatrix& rho, const std::string& target);

/// Maximally mixed state on a layout.
DensityMatrix maximally_mixed(SystemLayout layout);
/// Computational basis state |index>.
PureState basis_state(SystemLayout layout, Eigen::Index index);

}  // namespace entrolab
