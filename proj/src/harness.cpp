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

#include "entrolab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "entrolab/sample.hpp"

namespace entrolab {

namespace {

ProbeReport new_report(std::string check, std::string function, double tol) {
    ProbeReport r;
    r.check = std::move(check);
    r.function = std::move(function);
    r.tol = tol;
    return r;
}

}  // namespace

void ProbeReport::add(ProbeRecord r) {
    max_violation = std::max(max_violation, r.violation);
    pass = max_violation <= tol;
    records.push_back(std::move(r));
}

MonotoneFn multi_info_fn(Which which) {
    return {fmt::format("multi_info_{}", to_string(which)),
            [which](const DensityMatrix& rho, const Partition& part) { return cond_multi_info(rho, part, which); },
            std::nullopt};
}

MonotoneFn c_squashed_fn(Which which, const OptimizerConfig& cfg) {
    return {fmt::format("c_squashed_{}", to_string(which)),
            [which, cfg](const DensityMatrix& rho, const Partition& part) {
                return c_squashed_upper(rho, part, which, cfg).value;
            },
            cfg};
}

MonotoneFn q_squashed_fn(Which which, const OptimizerConfig& cfg) {
    return {fmt::format("q_squashed_{}", to_string(which)),
            [which, cfg](const DensityMatrix& rho, const Partition& part) {
                return q_squashed_upper(rho, part, which, cfg).value;
            },
            cfg};
}

MonotoneFn entropy_fn() {
    return {"entropy", [](const DensityMatrix& rho, const Partition&) { return entropy(rho); }, std::nullopt};
}

MonotoneFn rank_fn() {
    return {"rank",
            [](const DensityMatrix& rho, const Partition&) {
                Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
                return static_cast<double>((es.eigenvalues().array() > tol::kRank).count());
            },
            std::nullopt};
}

MonotoneFn trace_fn() {
    return {"trace", [](const DensityMatrix& rho, const Partition&) { return rho.matrix().trace().real(); },
            std::nullopt};
}

ProbeReport check_lui(const MonotoneFn& f, const DensityMatrix& rho, const Partition& part, int trials, double tol,
                      std::uint64_t seed) {
    part.validate(rho.layout());
    ProbeReport rep = new_report("lui", f.name, tol);
    const double base = f(rho, part);
    for (int t = 0; t < trials; ++t) {
        DensityMatrix moved = rho;
        for (std::size_t i = 0; i < part.size(); ++i) {
            const auto& labels = part.parties[i];
            const auto dim = static_cast<int>(rho.layout().dim_of(labels));
            const Matrix u = sample_unitary(dim, derive_seed(derive_seed(seed, t), i));
            moved = apply_local_operator(moved, labels, u);
        }
        const double v = f(moved, part);
        rep.add({fmt::format("trial {}", t), v, base, v - base, std::abs(v - base)});
    }
    return rep;
}

ProbeReport check_flags(const MonotoneFn& f, const ClassicalExtension& ensemble, const Partition& part,
                        const std::string& flag_label, double tol, std::size_t flag_party, int flag_dim) {
    const auto k = static_cast<int>(ensemble.size());
    if (k == 0) throw Error(ErrorCode::BadParams, "empty ensemble");
    if (flag_dim == 0) flag_dim = k;
    if (flag_dim < k)
        throw Error(ErrorCode::DimensionMismatch, fmt::format("flag dimension {} below ensemble size {}", flag_dim, k));
    if (flag_party >= part.size()) throw Error(ErrorCode::BadPartition, "flag party out of range");
    const auto& layout = ensemble.members.front().layout();
    part.validate(layout);

    // With a conditioner, the conditioning register receives its own copy of
    // the flag (the matched flagged extension).
    const bool copy = !part.conditioner.empty();
    std::vector<Subsystem> flag_subs{{flag_label, flag_dim}};
    if (copy) flag_subs.push_back({flag_label + "~copy", flag_dim});
    const SystemLayout flag_layout(flag_subs);
    const Eigen::Index fd = flag_layout.total_dim();
    Matrix joint = Matrix::Zero(layout.total_dim() * fd, layout.total_dim() * fd);
    double avg = 0.0;
    for (int i = 0; i < k; ++i) {
        Matrix proj = Matrix::Zero(fd, fd);
        const Eigen::Index idx = copy ? static_cast<Eigen::Index>(i) * flag_dim + i : i;
        proj(idx, idx) = 1.0;
        const auto& member = ensemble.members[i];
        if (!(member.layout() == layout)) throw Error(ErrorCode::DimensionMismatch, "ensemble members differ in layout");
        joint += ensemble.weights[i] * tensor(member, DensityMatrix::assume_valid(flag_layout, proj)).matrix();
        avg += ensemble.weights[i] * f(member, part);
    }
    Partition flagged_part = part;
    flagged_part.parties[flag_party].push_back(flag_label);
    if (copy) flagged_part.conditioner.push_back(flag_label + "~copy");
    const double v = f(make_density(layout.concat(flag_layout), joint), flagged_part);
    ProbeReport rep = new_report("flags", f.name, tol);
    rep.add({fmt::format("{} members, flag on party {}", k, flag_party + 1), v, avg, v - avg, std::abs(v - avg)});
    return rep;
}

ProbeReport check_convexity(const MonotoneFn& f, const DensityMatrix& rho, const DensityMatrix& sigma,
                            const Partition& part, double p, double tol) {
    if (!(rho.layout() == sigma.layout())) throw Error(ErrorCode::DimensionMismatch, "states have different layouts");
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::BadParams, "mixing weight outside [0, 1]");
    const auto mix = make_density(rho.layout(), p * rho.matrix() + (1.0 - p) * sigma.matrix());
    const double lhs = f(mix, part);
    const double rhs = p * f(rho, part) + (1.0 - p) * f(sigma, part);
    ProbeReport rep = new_report("convexity", f.name, tol);
    rep.add({fmt::format("p = {}", p), lhs, rhs, lhs - rhs, std::max(0.0, lhs - rhs)});
    return rep;
}

ProbeReport check_local_channels(const MonotoneFn& f, const DensityMatrix& rho, const Partition& part, int trials,
                                 double tol, std::uint64_t seed) {
    part.validate(rho.layout());
    ProbeReport rep = new_report("local-channel", f.name, tol);
    const double before = f(rho, part);
    for (int t = 0; t < trials; ++t) {
        std::mt19937_64 rng(derive_seed(seed, t));
        const auto& party = part.parties[std::uniform_int_distribution<std::size_t>(0, part.size() - 1)(rng)];
        const auto& label = party[std::uniform_int_distribution<std::size_t>(0, party.size() - 1)(rng)];
        const int d = rho.layout().dim_of(label);
        const auto ch = sample_channel(d, d, 2, rng());
        const double after = f(apply_channel(rho, ch, label, label), part);
        rep.add({fmt::format("channel on {}", label), after, before, after - before, std::max(0.0, after - before)});
    }
    return rep;
}

ProbeReport continuity_probe(const MonotoneFn& f, const DensityMatrix& rho, const Partition& part,
                             const std::vector<double>& eps_list, int trials, double ratio_bound,
                             std::uint64_t seed) {
    part.validate(rho.layout());
    ProbeReport rep = new_report("continuity", f.name, ratio_bound);
    rep.max_ratio = 0.0;
    const double base = f(rho, part);
    const double logd = std::log2(static_cast<double>(rho.dim()));
    for (std::size_t e = 0; e < eps_list.size(); ++e) {
        const double eps = eps_list[e];
        if (!(eps > 0.0 && eps < 2.0)) throw Error(ErrorCode::BadParams, "eps must lie in (0, 2)");
        for (int t = 0; t < trials; ++t) {
            // ||rho - sigma||_1 = (eps/2) ||rho - tau||_1 <= eps.
            const auto tau = sample_pure(rho.layout(), derive_seed(derive_seed(seed, e), t)).density();
            const auto sigma =
                make_density(rho.layout(), (1.0 - eps / 2) * rho.matrix() + (eps / 2) * tau.matrix());
            const double diff = std::abs(f(sigma, part) - base);
            const double ratio = logd > 0 ? diff / (eps * logd) : 0.0;
            *rep.max_ratio = std::max(*rep.max_ratio, ratio);
            rep.add({fmt::format("eps = {}", eps), diff, eps * logd, ratio, ratio});
        }
    }
    return rep;
}

double dw_rate(const DensityMatrix& rho, const Partition& part, const LabelSet& key_labels) {
    part.validate(rho.layout());
    if (!part.conditioner.empty()) throw Error(ErrorCode::BadPartition, "key rate partition takes no conditioner");
    if (key_labels.size() != part.size())
        throw Error(ErrorCode::BadPartition, "need exactly one key label per party");
    for (std::size_t i = 0; i < part.size(); ++i) {
        const auto& p = part.parties[i];
        if (std::find(p.begin(), p.end(), key_labels[i]) == p.end())
            throw Error(ErrorCode::BadPartition, fmt::format("key label {} is not in party {}", key_labels[i], i + 1));
    }
    const PureState psi = purify(rho, std::string(kPurifierLabel));
    LabelSet eve{std::string(kPurifierLabel)};
    const auto covered = part.party_labels();
    for (const auto& l : rho.layout().labels())
        if (std::find(covered.begin(), covered.end(), l) == covered.end()) eve.push_back(l);

    EntropyTable t(psi);
    auto mi = [&](const LabelSet& a, const LabelSet& b) {
        LabelSet ab = a;
        ab.insert(ab.end(), b.begin(), b.end());
        return t(a) + t(b) - t(ab);
    };
    const LabelSet a1{key_labels[0]};
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < key_labels.size(); ++i) best = std::min(best, mi(a1, {key_labels[i]}));
    return best - mi(a1, eve);
}

std::vector<QuantumExtension> random_channel_extensions(const DensityMatrix& rho, int count, int output_dim,
                                                        int kraus_count, std::uint64_t seed) {
    const int r = purifier_rank(rho);
    std::vector<QuantumExtension> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i)
        out.push_back(QuantumExtension::channel(sample_channel(r, output_dim, kraus_count, derive_seed(seed, i))));
    return out;
}

ProbeReport pdit_normalization_check(const PditSpec& spec, const std::vector<QuantumExtension>& extensions,
                                     double tol) {
    const DensityMatrix gamma = pdit(spec);
    const auto part = Partition::parse(flower_partition(spec.m));
    const double floor = spec.m * std::log2(static_cast<double>(spec.d));
    ProbeReport rep = new_report("pdit-normalization", "multi_info_I", tol);
    for (std::size_t i = 0; i < extensions.size(); ++i) {
        const double v = cmi_at_extension(gamma, part, extensions[i], Which::I);
        rep.add({fmt::format("extension {}, key share <= {:.6f}", i, v / spec.m), v, floor, v - floor,
                 std::max(0.0, floor - v)});
    }
    return rep;
}

LockRecord lockability_demo(int m, int d) {
    const FlowerBundle f = flower(m, d);
    const auto part = Partition::parse(flower_partition(m));
    LockRecord rec{m, d};
    rec.full_value_I = cmi_at_extension(f.reduced, part, QuantumExtension::explicit_state(f.purification, "X"), Which::I);
    rec.full_value_S = cmi_at_extension(f.reduced, part, ClassicalExtension{{1.0}, {f.reduced}}, Which::S);

    Partition locked_part = part;
    locked_part.parties[0] = {party_label(0)};
    rec.locked_value =
        cmi_at_extension(flower_locked_state(f), locked_part, flower_locked_ensemble(f), Which::I);
    return rec;
}

}  // namespace entrolab
