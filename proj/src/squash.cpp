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

#include "entrolab/squash.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "detail/descent.hpp"
#include "detail/linalg.hpp"
#include "entrolab/sample.hpp"

namespace entrolab {

std::string_view to_string(Certification c) noexcept {
    return c == Certification::ExactAtKnownExtension ? "exact-at-known-extension" : "upper-bound-only";
}

namespace {

// An entropy expression with label sets replaced by factor positions.
struct Compiled {
    std::vector<std::pair<std::vector<int>, double>> terms;

    Compiled(const EntropyExpr& e, const SystemLayout& layout) {
        for (const auto& [set, c] : e.terms()) terms.emplace_back(layout.positions(set), c);
    }

    double operator()(detail::EntropyCache& cache) const {
        double v = 0.0;
        for (const auto& [pos, c] : terms) v += c * cache(pos);
        return v;
    }
};

std::string fresh_label(const SystemLayout& layout, const std::string& base) {
    std::string l = base;
    for (int i = 1; layout.contains(l) || layout.contains(l + "~env"); ++i) l = fmt::format("{}{}", base, i);
    return l;
}

void require_optimizable(const DensityMatrix& rho) {
    if (rho.dim() > kOptimizerMaxDim)
        throw Error(ErrorCode::TooLarge, fmt::format("state dimension {} exceeds {}", rho.dim(), kOptimizerMaxDim));
}

void require_unconditioned(const DensityMatrix& rho, const Partition& part) {
    if (!part.conditioner.empty())
        throw Error(ErrorCode::BadPartition, "the extension register is the conditioner; the partition must not name one");
    part.validate(rho.layout());
}

// Psi with rho = Psi Psi^dagger, from the canonical purification.
Matrix purifier_factor(const DensityMatrix& rho) {
    const PureState p = purify(rho, kPurifierLabel);
    const Eigen::Index r = p.layout().dim_of(std::string(kPurifierLabel));
    Matrix psi(rho.dim(), r);
    for (Eigen::Index s = 0; s < rho.dim(); ++s) psi.row(s) = p.vector().segment(s * r, r).transpose();
    return psi;
}

OptimizerConfig resolve(OptimizerConfig cfg, int r) {
    if (cfg.restarts < 1 || cfg.max_iters < 1 || cfg.window < 1 || !(cfg.rel_tol > 0))
        throw Error(ErrorCode::BadParams, "optimizer budgets must be positive");
    if (cfg.ensemble_size < 0 || cfg.extension_dim < 0 || cfg.extension_env < 0)
        throw Error(ErrorCode::BadParams, "optimizer sizes must be positive");
    if (cfg.ensemble_size == 0) cfg.ensemble_size = std::min(r * r, 64);
    if (cfg.extension_dim == 0) cfg.extension_dim = std::min(r * r, 32);
    if (cfg.extension_env == 0) cfg.extension_env = std::min(r * cfg.extension_dim, 64);
    cfg.extension_env = std::max(cfg.extension_env, (r + cfg.extension_dim - 1) / cfg.extension_dim);
    return cfg;
}

detail::DescentOptions descent_options(const OptimizerConfig& cfg) {
    detail::DescentOptions o;
    o.max_iters = cfg.max_iters;
    o.rel_tol = cfg.rel_tol;
    o.window = cfg.window;
    return o;
}

// Multi-restart descent over isometries with `rows` x `cols`; random
// restarts start at Haar points.
template <class F>
detail::SearchOutcome<Matrix> search_isometries(Eigen::Index rows, Eigen::Index cols,
                                                const std::vector<Matrix>& candidates, F&& f,
                                                const OptimizerConfig& cfg, std::uint64_t stream) {
    auto start = [&](std::mt19937_64& rng) {
        return detail::haar_isometry(static_cast<int>(rows), static_cast<int>(cols), rng);
    };
    auto perturb = [](const Matrix& v, double step, std::mt19937_64& rng) { return detail::perturb_rows(v, step, rng); };
    return detail::multi_restart(candidates, f, start, perturb, descent_options(cfg), cfg.restarts,
                                 derive_seed(cfg.seed, stream));
}

template <class Member>
double ensemble_value(const Matrix& psi, const Matrix& w, int k, Member&& member) {
    const Eigen::Index s = w.rows() / k;
    double v = 0.0;
    for (int i = 0; i < k; ++i) {
        const Matrix f = psi * w.middleRows(i * s, s).transpose();
        const double p = f.squaredNorm();
        if (p < 1e-15) continue;
        v += p * member(Matrix(f / std::sqrt(p)));
    }
    return v;
}

std::vector<Matrix> ensemble_candidates(int r, int k) {
    std::vector<Matrix> c{trivial_povm(r, k, r)};
    if (k >= r && r > 1) c.push_back(spectral_povm(r, k, r));
    return c;
}

bool is_pure(int r) { return r <= 1; }

Certification certify(double value, bool exact) {
    return exact || value <= 1e-9 ? Certification::ExactAtKnownExtension : Certification::UpperBoundOnly;
}

ClassicalExtension trivial_ensemble(const DensityMatrix& rho) { return {{1.0}, {rho}}; }

// Searches ensembles for the minimal average of `member` (evaluated on a
// normalized factor F with member state F F^dagger).
template <class Member>
BoundReport ensemble_search(const DensityMatrix& rho, const OptimizerConfig& cfg_in, Member&& member,
                            std::string method) {
    const Matrix psi = purifier_factor(rho);
    const int r = static_cast<int>(psi.cols());
    BoundReport rep;
    rep.config = resolve(cfg_in, r);
    rep.method = std::move(method);
    const int k = rep.config.ensemble_size;
    auto f = [&](const Matrix& w) { return ensemble_value(psi, w, k, member); };
    auto out = search_isometries(static_cast<Eigen::Index>(k) * r, r, ensemble_candidates(r, k), f, rep.config, 0);
    rep.value = out.value;
    rep.evals = out.evals;
    rep.restart_values = std::move(out.restart_values);
    rep.witness = ensemble_from_povm(rho, out.point, k);
    rep.certified = certify(rep.value, false);
    return rep;
}

}  // namespace

int purifier_rank(const DensityMatrix& rho) {
    return purify(rho, kPurifierLabel).layout().dim_of(std::string(kPurifierLabel));
}

Matrix trivial_povm(int rank, int outcomes, int block) {
    if (rank < 1 || outcomes < 1 || block < rank) throw Error(ErrorCode::BadParams, "trivial instrument needs block >= rank");
    Matrix w = Matrix::Zero(static_cast<Eigen::Index>(outcomes) * block, rank);
    w.topRows(rank) = Matrix::Identity(rank, rank);
    return w;
}

Matrix spectral_povm(int rank, int outcomes, int block) {
    if (outcomes < rank || block < 1) throw Error(ErrorCode::BadParams, "spectral instrument needs one outcome per eigenvector");
    Matrix w = Matrix::Zero(static_cast<Eigen::Index>(outcomes) * block, rank);
    for (int i = 0; i < rank; ++i) w(static_cast<Eigen::Index>(i) * block, i) = 1.0;
    return w;
}

ClassicalExtension ensemble_from_povm(const DensityMatrix& rho, const Matrix& w, int outcomes) {
    const Matrix psi = purifier_factor(rho);
    if (outcomes < 1 || w.rows() % outcomes != 0 || w.cols() != psi.cols())
        throw Error(ErrorCode::BadParams,
                    fmt::format("instrument must have rank(rho) = {} columns and rows divisible by {}", psi.cols(), outcomes));
    const Eigen::Index n = w.cols();
    if ((w.adjoint() * w - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-8)
        throw Error(ErrorCode::BadParams, "instrument is not an isometry");
    const Eigen::Index s = w.rows() / outcomes;
    ClassicalExtension ext;
    for (int i = 0; i < outcomes; ++i) {
        const Matrix f = psi * w.middleRows(i * s, s).transpose();
        const double p = f.squaredNorm();
        if (p < 1e-15) continue;
        ext.weights.push_back(p);
        ext.members.push_back(DensityMatrix::assume_valid(rho.layout(), f * f.adjoint() / p));
    }
    return ext;
}

double cmi_at_extension(const DensityMatrix& rho, const Partition& part, const ClassicalExtension& ext, Which which) {
    require_unconditioned(rho, part);
    ext.validate(rho, 1e-7);
    const std::string label = fresh_label(rho.layout(), "E");
    const DensityMatrix sigma = ext.flagged(label);
    return cond_multi_info(sigma, Partition{part.parties, {label}}, which);
}

double cmi_at_extension(const DensityMatrix& rho, const Partition& part, const QuantumExtension& ext, Which which) {
    require_unconditioned(rho, part);
    ext.validate(rho, 1e-7);
    const auto state = ext.realize(rho);
    return std::visit(
        [&](const auto& s) {
            EntropyTable t(s);
            return cond_multi_info(t, Partition{part.parties, {ext.label()}}, which);
        },
        state);
}

BoundReport c_squashed_upper(const DensityMatrix& rho, const Partition& part, Which which, const OptimizerConfig& cfg) {
    require_optimizable(rho);
    require_unconditioned(rho, part);
    const int r = purifier_rank(rho);
    if (is_pure(r)) {
        BoundReport rep;
        rep.which = which;
        rep.config = resolve(cfg, r);
        rep.value = multi_info(rho, part, which);
        rep.witness = trivial_ensemble(rho);
        rep.certified = Certification::ExactAtKnownExtension;
        rep.evals = 1;
        rep.method = "pure-input";
        return rep;
    }
    const Compiled expr(EntropyExpr::multi_info(part.parties, which), rho.layout());
    std::vector<int> dims = rho.layout().dims();
    dims.push_back(r);
    auto member = [&](const Matrix& f) {
        const Matrix ft = f.transpose();
        const Vector v = Eigen::Map<const Vector>(ft.data(), ft.size());
        detail::EntropyCache cache(v, dims);
        return expr(cache);
    };
    BoundReport rep = ensemble_search(rho, cfg, member, "classical-ensemble");
    rep.which = which;
    return rep;
}

BoundReport mixed_convex_roof(const std::function<double(const DensityMatrix&)>& g, const DensityMatrix& rho,
                              const OptimizerConfig& cfg) {
    require_optimizable(rho);
    const int r = purifier_rank(rho);
    if (is_pure(r)) {
        BoundReport rep;
        rep.config = resolve(cfg, r);
        rep.value = g(rho);
        rep.witness = trivial_ensemble(rho);
        rep.certified = Certification::ExactAtKnownExtension;
        rep.evals = 1;
        rep.method = "pure-input";
        return rep;
    }
    auto member = [&](const Matrix& f) { return g(DensityMatrix::assume_valid(rho.layout(), f * f.adjoint())); };
    BoundReport rep = ensemble_search(rho, cfg, member, "classical-ensemble");
    // A roof of an arbitrary g has no known floor, so only the pure case is exact.
    rep.certified = Certification::UpperBoundOnly;
    return rep;
}

BoundReport q_squashed_upper(const DensityMatrix& rho, const Partition& part, Which which, const OptimizerConfig& cfg) {
    BoundReport classical = c_squashed_upper(rho, part, which, cfg);
    if (classical.method == "pure-input") return classical;

    const Matrix psi = purifier_factor(rho);
    const int r = static_cast<int>(psi.cols());
    const OptimizerConfig eff = resolve(cfg, r);
    const int e = eff.extension_dim, f = eff.extension_env;
    const std::string z = fresh_label(rho.layout(), "E");
    const SystemLayout layout = rho.layout().concat(SystemLayout({{z, e}, {z + "~env", f}}));
    const Compiled expr(EntropyExpr::multi_info(part.parties, which).condition({z}), layout);
    const std::vector<int> dims = layout.dims();

    auto value = [&](const Matrix& v) {
        const Matrix mt = (psi * v.transpose()).transpose();
        const Vector g = Eigen::Map<const Vector>(mt.data(), mt.size());
        detail::EntropyCache cache(g, dims);
        return expr(cache);
    };

    // Stinespring rows are indexed z * f + t.
    std::vector<Matrix> candidates;
    if (e >= r) {
        Matrix id = Matrix::Zero(static_cast<Eigen::Index>(e) * f, r);
        for (int x = 0; x < r; ++x) id(static_cast<Eigen::Index>(x) * f, x) = 1.0;
        candidates.push_back(id);
    }
    if (f >= r) {
        Matrix constant = Matrix::Zero(static_cast<Eigen::Index>(e) * f, r);
        for (int x = 0; x < r; ++x) constant(x, x) = 1.0;
        candidates.push_back(constant);
    }
    auto out = search_isometries(static_cast<Eigen::Index>(e) * f, r, candidates, value, eff, 1);

    BoundReport rep;
    rep.which = which;
    rep.config = eff;
    rep.evals = out.evals + classical.evals;
    rep.restart_values = std::move(out.restart_values);
    if (classical.value <= out.value) {
        rep.value = classical.value;
        rep.witness = std::move(classical.witness);
        rep.method = "classical-ensemble";
    } else {
        std::vector<Matrix> kraus(f, Matrix::Zero(e, r));
        for (int zz = 0; zz < e; ++zz)
            for (int t = 0; t < f; ++t) kraus[t].row(zz) = out.point.row(static_cast<Eigen::Index>(zz) * f + t);
        rep.value = out.value;
        rep.witness = QuantumExtension::channel(make_channel(std::move(kraus)), z);
        rep.method = "purifier-channel";
    }
    rep.certified = certify(rep.value, false);
    return rep;
}

BoundReport bipartite_squashed_upper(const DensityMatrix& rho, const Partition& part, const OptimizerConfig& cfg) {
    if (part.size() != 2) throw Error(ErrorCode::BadPartition, "bipartite squashed entanglement needs two parties");
    BoundReport rep = q_squashed_upper(rho, part, Which::I, cfg);
    rep.value /= 2.0;
    for (double& v : rep.restart_values) v /= 2.0;
    return rep;
}

BoundReport certify_against(BoundReport report, double known, double tol) {
    if (std::abs(report.value - known) <= tol) report.certified = Certification::ExactAtKnownExtension;
    return report;
}

double evaluate_witness(const DensityMatrix& rho, const Partition& part, const BoundReport& report) {
    if (const auto* c = std::get_if<ClassicalExtension>(&report.witness))
        return cmi_at_extension(rho, part, *c, report.which);
    if (const auto* q = std::get_if<QuantumExtension>(&report.witness))
        return cmi_at_extension(rho, part, *q, report.which);
    throw Error(ErrorCode::BadParams, "report has no state extension witness");
}

}  // namespace entrolab
