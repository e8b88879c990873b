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

#include "entrolab/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include <fmt/format.h>

#include "detail/linalg.hpp"

namespace entrolab {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::NotPositive: return "NotPositive";
        case ErrorCode::TraceNotOne: return "TraceNotOne";
        case ErrorCode::NotNormalized: return "NotNormalized";
        case ErrorCode::NotTracePreserving: return "NotTracePreserving";
        case ErrorCode::LabelClash: return "LabelClash";
        case ErrorCode::UnknownLabel: return "UnknownLabel";
        case ErrorCode::EmptyRemainder: return "EmptyRemainder";
        case ErrorCode::BadPartition: return "BadPartition";
        case ErrorCode::BadBasis: return "BadBasis";
        case ErrorCode::BadParams: return "BadParams";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::ExtensionMismatch: return "ExtensionMismatch";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

// ---------------------------------------------------------------------------
// SystemLayout

SystemLayout::SystemLayout(std::vector<Subsystem> subsystems) : subsystems_(std::move(subsystems)) {
    std::set<std::string> seen;
    for (const auto& s : subsystems_) {
        if (s.label.empty()) throw Error(ErrorCode::BadParams, "empty subsystem label");
        if (s.dim < 1) throw Error(ErrorCode::BadParams, fmt::format("subsystem {} has dim {}", s.label, s.dim));
        if (!seen.insert(s.label).second) throw Error(ErrorCode::LabelClash, "duplicate label " + s.label);
        total_dim_ *= s.dim;
    }
}

std::vector<int> SystemLayout::dims() const {
    std::vector<int> out;
    out.reserve(subsystems_.size());
    for (const auto& s : subsystems_) out.push_back(s.dim);
    return out;
}

LabelSet SystemLayout::labels() const {
    LabelSet out;
    out.reserve(subsystems_.size());
    for (const auto& s : subsystems_) out.push_back(s.label);
    return out;
}

bool SystemLayout::contains(const std::string& label) const noexcept {
    return std::any_of(subsystems_.begin(), subsystems_.end(),
                       [&](const Subsystem& s) { return s.label == label; });
}

std::size_t SystemLayout::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < subsystems_.size(); ++i)
        if (subsystems_[i].label == label) return i;
    throw Error(ErrorCode::UnknownLabel, "no subsystem labelled '" + label + "'");
}

std::vector<int> SystemLayout::positions(const LabelSet& labels) const {
    std::vector<int> out;
    out.reserve(labels.size());
    for (const auto& l : labels) out.push_back(static_cast<int>(index_of(l)));
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end())
        throw Error(ErrorCode::BadPartition, "label listed twice");
    return out;
}

Eigen::Index SystemLayout::dim_of(const LabelSet& labels) const {
    Eigen::Index d = 1;
    for (int p : positions(labels)) d *= subsystems_[p].dim;
    return d;
}

SystemLayout SystemLayout::concat(const SystemLayout& other) const {
    for (const auto& s : other.subsystems_)
        if (contains(s.label)) throw Error(ErrorCode::LabelClash, "label '" + s.label + "' on both sides");
    std::vector<Subsystem> joined = subsystems_;
    joined.insert(joined.end(), other.subsystems_.begin(), other.subsystems_.end());
    return SystemLayout(std::move(joined));
}

SystemLayout SystemLayout::select(const std::vector<int>& positions) const {
    std::vector<Subsystem> out;
    out.reserve(positions.size());
    for (int p : positions) out.push_back(subsystems_.at(p));
    return SystemLayout(std::move(out));
}

// ---------------------------------------------------------------------------
// Constructors

namespace {

void require_square(const SystemLayout& layout, const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() != layout.total_dim())
        throw Error(ErrorCode::DimensionMismatch,
                    fmt::format("matrix is {}x{}, layout dimension is {}", m.rows(), m.cols(), layout.total_dim()));
    if (!m.allFinite()) throw Error(ErrorCode::BadParams, "matrix has non-finite entries");
}

}  // namespace

DensityMatrix make_density(SystemLayout layout, const Matrix& matrix) {
    require_square(layout, matrix);
    const double asym = detail::max_asymmetry(matrix);
    if (asym > tol::kInputAsym) throw Error(ErrorCode::NotHermitian, fmt::format("asymmetry {:.3e}", asym));
    Matrix sym = (matrix + matrix.adjoint()) / 2.0;

    const double tr = sym.trace().real();
    if (std::abs(tr - 1.0) > tol::kInputTrace) throw Error(ErrorCode::TraceNotOne, fmt::format("trace {:.12g}", tr));

    Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
    Eigen::VectorXd lambda = es.eigenvalues();
    if (lambda.minCoeff() < -tol::kValidate)
        throw Error(ErrorCode::NotPositive, fmt::format("eigenvalue {:.3e}", lambda.minCoeff()));
    if (lambda.minCoeff() < 0.0) {
        lambda = lambda.cwiseMax(0.0);
        lambda /= lambda.sum();
        sym = es.eigenvectors() * lambda.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
        sym = (sym + sym.adjoint()) / 2.0;
    } else {
        sym /= sym.trace().real();
    }
    return DensityMatrix(std::move(layout), std::move(sym));
}

DensityMatrix DensityMatrix::assume_valid(SystemLayout layout, Matrix matrix) {
    require_square(layout, matrix);
    const double asym = detail::max_asymmetry(matrix);
    if (asym > tol::kInputAsym) throw Error(ErrorCode::NotHermitian, fmt::format("asymmetry {:.3e}", asym));
    const double tr = matrix.trace().real();
    if (std::abs(tr - 1.0) > tol::kInputTrace) throw Error(ErrorCode::TraceNotOne, fmt::format("trace {:.12g}", tr));
    if (asym > 0.0) matrix = ((matrix + matrix.adjoint()) / 2.0).eval();
    matrix /= tr;
    return DensityMatrix(std::move(layout), std::move(matrix));
}

PureState make_pure(SystemLayout layout, const Vector& vector) {
    if (vector.size() != layout.total_dim())
        throw Error(ErrorCode::DimensionMismatch,
                    fmt::format("vector length {}, layout dimension {}", vector.size(), layout.total_dim()));
    if (!vector.allFinite()) throw Error(ErrorCode::BadParams, "vector has non-finite entries");
    const double norm = vector.norm();
    if (std::abs(norm - 1.0) > tol::kInputTrace) throw Error(ErrorCode::NotNormalized, fmt::format("norm {:.12g}", norm));
    return PureState(std::move(layout), vector / norm);
}

DensityMatrix PureState::density() const {
    return DensityMatrix::assume_valid(layout_, vector_ * vector_.adjoint());
}

KrausChannel make_channel(std::vector<Matrix> kraus) {
    if (kraus.empty()) throw Error(ErrorCode::BadParams, "channel needs at least one Kraus operator");
    const auto out = kraus.front().rows(), in = kraus.front().cols();
    Matrix completeness = Matrix::Zero(in, in);
    for (const auto& k : kraus) {
        if (k.rows() != out || k.cols() != in) throw Error(ErrorCode::DimensionMismatch, "Kraus operators differ in shape");
        completeness += k.adjoint() * k;
    }
    const double dev = (completeness - Matrix::Identity(in, in)).cwiseAbs().maxCoeff();
    if (dev > tol::kValidate) throw Error(ErrorCode::NotTracePreserving, fmt::format("deviation {:.3e}", dev));
    return KrausChannel(static_cast<int>(in), static_cast<int>(out), std::move(kraus));
}

Matrix KrausChannel::apply(const Matrix& rho) const {
    Matrix out = Matrix::Zero(output_dim_, output_dim_);
    for (const auto& k : kraus_) out.noalias() += k * rho * k.adjoint();
    return out;
}

DensityMatrix maximally_mixed(SystemLayout layout) {
    const auto d = layout.total_dim();
    return DensityMatrix::assume_valid(std::move(layout), Matrix::Identity(d, d) / static_cast<double>(d));
}

PureState basis_state(SystemLayout layout, Eigen::Index index) {
    Vector v = Vector::Zero(layout.total_dim());
    if (index < 0 || index >= v.size()) throw Error(ErrorCode::BadParams, "basis index out of range");
    v(index) = 1.0;
    return make_pure(std::move(layout), v);
}

// ---------------------------------------------------------------------------
// Structural operations

namespace {

// Moves the factors in `moved` (in that order) to the end. Returns the
// permutation used and the resulting dims.
std::pair<std::vector<int>, std::vector<int>> to_back(const std::vector<int>& dims, const std::vector<int>& moved) {
    std::vector<int> perm = detail::complement(static_cast<int>(dims.size()), moved);
    perm.insert(perm.end(), moved.begin(), moved.end());
    std::vector<int> new_dims;
    for (int p : perm) new_dims.push_back(dims[p]);
    return {perm, new_dims};
}

std::vector<int> inverse(const std::vector<int>& perm) {
    std::vector<int> inv(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) inv[perm[k]] = static_cast<int>(k);
    return inv;
}

// Conjugates the trailing factor of dimension in_dim by every operator in
// `ops` and sums the results: (1 ⊗ K) M (1 ⊗ K)^dagger.
Matrix conjugate_trailing(const Matrix& m, Eigen::Index in_dim, const std::vector<Matrix>& ops) {
    const Eigen::Index rest = m.rows() / in_dim;
    const Eigen::Index out_dim = ops.front().rows();
    Matrix out = Matrix::Zero(rest * out_dim, rest * out_dim);
    for (Eigen::Index c = 0; c < rest; ++c)
        for (Eigen::Index r = 0; r < rest; ++r) {
            const auto block = m.block(r * in_dim, c * in_dim, in_dim, in_dim);
            if (block.isZero(0.0)) continue;
            auto target = out.block(r * out_dim, c * out_dim, out_dim, out_dim);
            for (const auto& k : ops) target.noalias() += k * block * k.adjoint();
        }
    return out;
}

}  // namespace

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    SystemLayout layout = a.layout().concat(b.layout());
    return DensityMatrix::assume_valid(std::move(layout), detail::kron(a.matrix(), b.matrix()));
}

PureState tensor(const PureState& a, const PureState& b) {
    SystemLayout layout = a.layout().concat(b.layout());
    Vector v(a.dim() * b.dim());
    for (Eigen::Index i = 0; i < a.dim(); ++i) v.segment(i * b.dim(), b.dim()) = a.vector()(i) * b.vector();
    return make_pure(std::move(layout), v);
}

DensityMatrix partial_trace(const DensityMatrix& rho, const LabelSet& discard) {
    const auto& layout = rho.layout();
    const std::vector<int> gone = layout.positions(discard);
    if (gone.empty()) return rho;
    if (gone.size() == layout.size()) throw Error(ErrorCode::EmptyRemainder, "cannot trace out every subsystem");
    const auto keep = detail::complement(static_cast<int>(layout.size()), gone);
    return DensityMatrix::assume_valid(layout.select(keep), detail::reduce(rho.matrix(), layout.dims(), keep));
}

DensityMatrix partial_trace(const PureState& psi, const LabelSet& discard) {
    const auto& layout = psi.layout();
    const std::vector<int> gone = layout.positions(discard);
    if (gone.size() == layout.size()) throw Error(ErrorCode::EmptyRemainder, "cannot trace out every subsystem");
    const auto keep = detail::complement(static_cast<int>(layout.size()), gone);
    const Matrix block = detail::reshape_pure(psi.vector(), layout.dims(), keep);
    return DensityMatrix::assume_valid(layout.select(keep), block * block.adjoint());
}

DensityMatrix marginal(const DensityMatrix& rho, const LabelSet& keep) {
    const auto kept = rho.layout().positions(keep);
    if (kept.empty()) throw Error(ErrorCode::EmptyRemainder, "empty marginal");
    LabelSet discard;
    for (int p : detail::complement(static_cast<int>(rho.layout().size()), kept))
        discard.push_back(rho.layout()[p].label);
    return partial_trace(rho, discard);
}

double entropy(const DensityMatrix& rho) { return detail::entropy_bits(rho.matrix()); }

namespace {
void require_same_layout(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.layout().dims() != b.layout().dims())
        throw Error(ErrorCode::DimensionMismatch, "states live on different layouts");
}
}  // namespace

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require_same_layout(rho, sigma);
    Eigen::SelfAdjointEigenSolver<Matrix> es(sigma.matrix());
    double cross = 0.0;  // tr rho log sigma
    for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j) {
        const auto v = es.eigenvectors().col(j);
        const double weight = (v.adjoint() * rho.matrix() * v)(0, 0).real();
        const double mu = es.eigenvalues()(j);
        if (mu <= tol::kEigFloor) {
            if (weight > tol::kEigFloor) return std::numeric_limits<double>::infinity();
            continue;
        }
        cross += weight * std::log2(mu);
    }
    return -entropy(rho) - cross;
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require_same_layout(rho, sigma);
    const Matrix diff = rho.matrix() - sigma.matrix();
    Eigen::SelfAdjointEigenSolver<Matrix> es(diff, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

PureState purify(const DensityMatrix& rho, const std::string& ancilla_label) {
    if (rho.layout().contains(ancilla_label))
        throw Error(ErrorCode::LabelClash, "ancilla label '" + ancilla_label + "' already used");
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
    const Eigen::Index n = rho.dim();

    std::vector<Eigen::Index> order;
    for (Eigen::Index j = n - 1; j >= 0; --j)
        if (es.eigenvalues()(j) > tol::kRank) order.push_back(j);
    const auto rank = static_cast<Eigen::Index>(order.size());

    Vector psi = Vector::Zero(n * rank);
    for (Eigen::Index i = 0; i < rank; ++i) {
        Vector e = es.eigenvectors().col(order[i]);
        for (Eigen::Index k = 0; k < n; ++k)
            if (std::abs(e(k)) > 1e-8) {
                e *= std::conj(e(k)) / std::abs(e(k));
                break;
            }
        const double amp = std::sqrt(es.eigenvalues()(order[i]));
        for (Eigen::Index k = 0; k < n; ++k) psi(k * rank + i) = amp * e(k);
    }
    psi.normalize();
    SystemLayout layout = rho.layout().concat(SystemLayout({{ancilla_label, static_cast<int>(rank)}}));
    return make_pure(std::move(layout), psi);
}

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& ch, const std::string& target,
                            const std::string& new_label) {
    const auto& layout = rho.layout();
    const auto pos = static_cast<int>(layout.index_of(target));
    if (layout[pos].dim != ch.input_dim())
        throw Error(ErrorCode::DimensionMismatch,
                    fmt::format("channel input {} vs subsystem {} of dim {}", ch.input_dim(), target, layout[pos].dim));
    if (new_label != target && layout.contains(new_label))
        throw Error(ErrorCode::LabelClash, "output label '" + new_label + "' already used");

    const auto dims = layout.dims();
    const auto [perm, back_dims] = to_back(dims, {pos});
    const Matrix moved = detail::permute(rho.matrix(), dims, perm);
    const Matrix mapped = conjugate_trailing(moved, ch.input_dim(), ch.kraus());

    std::vector<int> mapped_dims = back_dims;
    mapped_dims.back() = ch.output_dim();
    std::vector<Subsystem> subs = layout.subsystems();
    subs[pos] = {new_label, ch.output_dim()};
    return DensityMatrix::assume_valid(SystemLayout(std::move(subs)),
                                       detail::permute(mapped, mapped_dims, inverse(perm)));
}

DensityMatrix apply_local_operator(const DensityMatrix& rho, const LabelSet& labels, const Matrix& op) {
    const auto& layout = rho.layout();
    std::vector<int> moved;
    for (const auto& l : labels) moved.push_back(static_cast<int>(layout.index_of(l)));
    const Eigen::Index d = layout.dim_of(labels);
    if (op.rows() != d || op.cols() != d)
        throw Error(ErrorCode::DimensionMismatch, fmt::format("operator is {}x{}, subsystems have dim {}", op.rows(), op.cols(), d));
    const auto dims = layout.dims();
    const auto [perm, back_dims] = to_back(dims, moved);
    const Matrix mapped = conjugate_trailing(detail::permute(rho.matrix(), dims, perm), d, {op});
    return DensityMatrix::assume_valid(layout, detail::permute(mapped, back_dims, inverse(perm)));
}

DensityMatrix dephase(const DensityMatrix& rho, const std::string& target) {
    const auto& layout = rho.layout();
    const auto pos = static_cast<int>(layout.index_of(target));
    Eigen::Index stride = 1;
    for (std::size_t k = pos + 1; k < layout.size(); ++k) stride *= layout[k].dim;
    const int d = layout[pos].dim;
    Matrix out = rho.matrix();
    for (Eigen::Index j = 0; j < out.cols(); ++j)
        for (Eigen::Index i = 0; i < out.rows(); ++i)
            if ((i / stride) % d != (j / stride) % d) out(i, j) = 0.0;
    return DensityMatrix::assume_valid(layout, std::move(out));
}

}  // namespace entrolab
