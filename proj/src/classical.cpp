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

#include "entrolab/classical.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include <fmt/format.h>

#include "detail/descent.hpp"
#include "entrolab/catalog.hpp"

namespace entrolab {

namespace {

std::vector<std::size_t> strides(const SystemLayout& l) {
    std::vector<std::size_t> s(l.size(), 1);
    for (std::size_t k = l.size(); k-- > 1;) s[k - 1] = s[k] * static_cast<std::size_t>(l[k].dim);
    return s;
}

void require_cells(std::size_t cells) {
    if (cells > kClassicalMaxCells)
        throw Error(ErrorCode::TooLarge, fmt::format("{} cells exceed the cap of {}", cells, kClassicalMaxCells));
}

double shannon(const std::vector<double>& p) {
    double h = 0.0;
    for (double x : p)
        if (x > 0.0) h -= x * std::log2(x);
    return h;
}

LabelSet join(LabelSet a, const LabelSet& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

void require_disjoint(const std::vector<const LabelSet*>& sets) {
    LabelSet all;
    for (const auto* s : sets) all = join(all, *s);
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
        throw Error(ErrorCode::BadPartition, "variable sets must be disjoint");
}

}  // namespace

JointDistribution::JointDistribution(SystemLayout alphabets, std::vector<double> probs)
    : alphabets_(std::move(alphabets)), probs_(std::move(probs)) {
    require_cells(static_cast<std::size_t>(alphabets_.total_dim()));
    if (static_cast<Eigen::Index>(probs_.size()) != alphabets_.total_dim())
        throw Error(ErrorCode::DimensionMismatch,
                    fmt::format("{} probabilities for {} cells", probs_.size(), alphabets_.total_dim()));
    double total = 0.0;
    for (double x : probs_) {
        if (!(x >= 0.0)) throw Error(ErrorCode::NotPositive, fmt::format("negative probability {}", x));
        total += x;
    }
    if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorCode::TraceNotOne, fmt::format("probabilities sum to {}", total));
}

std::vector<double> JointDistribution::marginal(const LabelSet& labels) const {
    std::vector<std::size_t> pos;
    for (const auto& l : labels) pos.push_back(alphabets_.index_of(l));
    auto sorted = pos;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error(ErrorCode::BadPartition, "repeated variable");

    const auto st = strides(alphabets_);
    std::size_t size = 1;
    for (auto k : pos) size *= static_cast<std::size_t>(alphabets_[k].dim);
    std::vector<double> out(size, 0.0);
    for (std::size_t c = 0; c < probs_.size(); ++c) {
        if (probs_[c] == 0.0) continue;
        std::size_t idx = 0;
        for (auto k : pos) idx = idx * alphabets_[k].dim + (c / st[k]) % alphabets_[k].dim;
        out[idx] += probs_[c];
    }
    return out;
}

double JointDistribution::at(const std::vector<int>& outcome) const {
    if (outcome.size() != alphabets_.size()) throw Error(ErrorCode::DimensionMismatch, "outcome length");
    std::size_t idx = 0;
    for (std::size_t k = 0; k < outcome.size(); ++k) {
        if (outcome[k] < 0 || outcome[k] >= alphabets_[k].dim) throw Error(ErrorCode::BadParams, "outcome out of range");
        idx = idx * alphabets_[k].dim + outcome[k];
    }
    return probs_[idx];
}

StochasticChannel::StochasticChannel(Eigen::MatrixXd matrix) : matrix_(std::move(matrix)) {
    if (matrix_.size() == 0) throw Error(ErrorCode::BadParams, "empty channel");
    if ((matrix_.array() < 0.0).any()) throw Error(ErrorCode::BadParams, "channel has negative entries");
    for (Eigen::Index j = 0; j < matrix_.cols(); ++j)
        if (std::abs(matrix_.col(j).sum() - 1.0) > 1e-12)
            throw Error(ErrorCode::BadParams, fmt::format("channel column {} sums to {}", j, matrix_.col(j).sum()));
}

StochasticChannel StochasticChannel::identity(int in, int out) {
    if (out < in) throw Error(ErrorCode::BadParams, "identity channel needs out >= in");
    return StochasticChannel(Eigen::MatrixXd::Identity(out, in));
}

StochasticChannel StochasticChannel::constant(int in, int out) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(out, in);
    m.row(0).setOnes();
    return StochasticChannel(std::move(m));
}

double classical_entropy(const JointDistribution& p, const LabelSet& vars) {
    if (vars.empty()) return 0.0;
    return shannon(p.marginal(vars));
}

double classical_mi(const JointDistribution& p, const LabelSet& a, const LabelSet& b) {
    return classical_cmi(p, a, b, {});
}

double classical_cmi(const JointDistribution& p, const LabelSet& a, const LabelSet& b, const LabelSet& c) {
    require_disjoint({&a, &b, &c});
    return classical_entropy(p, join(a, c)) + classical_entropy(p, join(b, c)) - classical_entropy(p, join(join(a, b), c)) -
           classical_entropy(p, c);
}

double cond_multi_info_classical(const JointDistribution& p, const Partition& part, Which which) {
    part.validate(p.alphabets());
    const auto& ps = part.parties;
    const LabelSet& e = part.conditioner;
    const double m = static_cast<double>(ps.size());
    const LabelSet all_e = join(part.party_labels(), e);
    auto h = [&](const LabelSet& s) { return classical_entropy(p, s); };
    double v = 0.0;
    if (which == Which::I) {
        for (const auto& party : ps) v += h(join(party, e));
        v -= (m - 1.0) * h(e) + h(all_e);
    } else {
        for (std::size_t i = 0; i < ps.size(); ++i) {
            LabelSet rest;
            for (std::size_t k = 0; k < ps.size(); ++k)
                if (k != i) rest = join(rest, ps[k]);
            v += h(join(rest, e));
        }
        v -= (m - 1.0) * h(all_e) + h(e);
    }
    return v;
}

JointDistribution apply_channel(const JointDistribution& p, const std::string& label, const StochasticChannel& ch,
                                const std::string& new_label) {
    const auto& l = p.alphabets();
    const std::size_t pos = l.index_of(label);
    if (l[pos].dim != ch.in_size())
        throw Error(ErrorCode::DimensionMismatch,
                    fmt::format("channel input {} vs variable {} of size {}", ch.in_size(), label, l[pos].dim));
    if (new_label != label && l.contains(new_label)) throw Error(ErrorCode::LabelClash, "label '" + new_label + "' in use");

    std::vector<Subsystem> subs = l.subsystems();
    subs[pos] = {new_label, ch.out_size()};
    SystemLayout out_layout(std::move(subs));
    require_cells(static_cast<std::size_t>(out_layout.total_dim()));

    const auto in_st = strides(l);
    const auto out_st = strides(out_layout);
    std::vector<double> out(static_cast<std::size_t>(out_layout.total_dim()), 0.0);
    const auto& m = ch.matrix();
    for (std::size_t c = 0; c < p.cells(); ++c) {
        const double pc = p.probs()[c];
        if (pc == 0.0) continue;
        const auto x = static_cast<Eigen::Index>((c / in_st[pos]) % l[pos].dim);
        // Same digits everywhere except at pos.
        std::size_t base = 0;
        for (std::size_t k = 0; k < l.size(); ++k)
            if (k != pos) base += ((c / in_st[k]) % l[k].dim) * out_st[k];
        for (Eigen::Index y = 0; y < m.rows(); ++y)
            if (m(y, x) != 0.0) out[base + y * out_st[pos]] += pc * m(y, x);
    }
    double total = 0.0;
    for (double x : out) total += x;
    for (double& x : out) x /= total;
    return JointDistribution(std::move(out_layout), std::move(out));
}

Partition eve_partition(const JointDistribution& p, const std::string& eve) {
    p.alphabets().index_of(eve);
    Partition part;
    for (const auto& l : p.alphabets().labels())
        if (l != eve) part.parties.push_back({l});
    if (part.parties.size() < 2) throw Error(ErrorCode::BadPartition, "need at least two variables besides Eve");
    return part;
}

namespace {

const std::string kEveBar = "~Ebar";

double chained_sum(const JointDistribution& q, const Partition& part, const LabelSet& e) {
    double v = 0.0;
    LabelSet before = e;
    for (std::size_t i = 0; i + 1 < part.size(); ++i) {
        LabelSet after;
        for (std::size_t k = i + 1; k < part.size(); ++k) after = join(after, part.parties[k]);
        v += classical_cmi(q, part.parties[i], after, before);
        before = join(before, part.parties[i]);
    }
    return v;
}

enum class Target { Intrinsic, SArrow };

double value_at(const JointDistribution& p, const std::string& eve, const StochasticChannel& ch, Target t) {
    const Partition part = eve_partition(p, eve);
    const auto q = apply_channel(p, eve, ch, kEveBar);
    if (t == Target::Intrinsic) return cond_multi_info_classical(q, Partition{part.parties, {kEveBar}}, Which::I);
    return chained_sum(q, part, {kEveBar});
}

Eigen::MatrixXd softmax_columns(const Eigen::MatrixXd& logits) {
    Eigen::MatrixXd m(logits.rows(), logits.cols());
    for (Eigen::Index j = 0; j < logits.cols(); ++j) {
        const Eigen::ArrayXd e = (logits.col(j).array() - logits.col(j).maxCoeff()).exp();
        m.col(j) = (e / e.sum()).matrix();
    }
    return m;
}

// Logits of a deterministic channel; the -60 entries contribute below 1e-24.
Eigen::MatrixXd deterministic_logits(int in, int out, bool identity) {
    Eigen::MatrixXd l = Eigen::MatrixXd::Constant(out, in, -60.0);
    for (int x = 0; x < in; ++x) l(identity ? x : 0, x) = 0.0;
    return l;
}

BoundReport channel_search(const JointDistribution& p, const std::string& eve, const OptimizerConfig& cfg_in,
                           Target target) {
    const int e = p.alphabets().dim_of(eve);
    OptimizerConfig cfg = cfg_in;
    if (cfg.restarts < 1 || cfg.max_iters < 1 || cfg.window < 1 || cfg.eve_alphabet < 0)
        throw Error(ErrorCode::BadParams, "optimizer budgets must be positive");
    if (cfg.eve_alphabet == 0) cfg.eve_alphabet = e;
    const int ebar = cfg.eve_alphabet;
    require_cells(p.cells() / e * ebar);

    auto f = [&](const Eigen::MatrixXd& logits) {
        return value_at(p, eve, StochasticChannel(softmax_columns(logits)), target);
    };
    std::vector<Eigen::MatrixXd> candidates;
    if (ebar >= e) candidates.push_back(deterministic_logits(e, ebar, true));
    candidates.push_back(deterministic_logits(e, ebar, false));

    auto start = [&](std::mt19937_64& rng) {
        std::normal_distribution<double> normal(0.0, 1.0);
        Eigen::MatrixXd l(ebar, e);
        for (Eigen::Index k = 0; k < l.size(); ++k) l.data()[k] = normal(rng);
        return l;
    };
    auto perturb = [](const Eigen::MatrixXd& l, double step, std::mt19937_64& rng) {
        Eigen::MatrixXd out = l;
        std::uniform_int_distribution<Eigen::Index> pick(0, l.size() - 1);
        std::normal_distribution<double> normal(0.0, 1.0);
        const int moves = std::uniform_int_distribution<int>(1, 3)(rng);
        for (int k = 0; k < moves; ++k) out.data()[pick(rng)] += 4.0 * step * normal(rng);
        return out;
    };
    detail::DescentOptions opt;
    opt.max_iters = cfg.max_iters;
    opt.rel_tol = cfg.rel_tol;
    opt.window = cfg.window;
    auto out = detail::multi_restart(candidates, f, start, perturb, opt, cfg.restarts,
                                     derive_seed(cfg.seed, target == Target::Intrinsic ? 2 : 3));

    BoundReport rep;
    rep.value = out.value;
    rep.which = Which::I;
    rep.witness = softmax_columns(out.point);
    rep.certified = out.value <= 1e-9 ? Certification::ExactAtKnownExtension : Certification::UpperBoundOnly;
    rep.config = cfg;
    rep.evals = out.evals;
    rep.restart_values = std::move(out.restart_values);
    rep.method = "eve-channel";
    return rep;
}

}  // namespace

double intrinsic_value_at(const JointDistribution& p, const std::string& eve, const StochasticChannel& ch) {
    return value_at(p, eve, ch, Target::Intrinsic);
}

double s_arrow_value_at(const JointDistribution& p, const std::string& eve, const StochasticChannel& ch) {
    return value_at(p, eve, ch, Target::SArrow);
}

BoundReport intrinsic_info(const JointDistribution& p, const std::string& eve, const OptimizerConfig& cfg) {
    return channel_search(p, eve, cfg, Target::Intrinsic);
}

BoundReport s_arrow(const JointDistribution& p, const std::string& eve, const OptimizerConfig& cfg) {
    return channel_search(p, eve, cfg, Target::SArrow);
}

EveMode parse_eve_mode(std::string_view s) {
    if (s == "independent") return EveMode::Independent;
    if (s == "copy") return EveMode::Copy;
    throw Error(ErrorCode::BadParams, fmt::format("unknown Eve mode '{}' (independent or copy)", s));
}

JointDistribution ideal_key_dist(int m, int d, EveMode mode) {
    if (m < 2 || d < 2) throw Error(ErrorCode::BadParams, "ideal key needs m >= 2 and d >= 2");
    std::vector<Subsystem> subs;
    for (int i = 0; i < m; ++i) subs.push_back({party_label(i), d});
    subs.push_back({"E", d});
    SystemLayout layout(std::move(subs));
    require_cells(static_cast<std::size_t>(layout.total_dim()));
    std::vector<double> probs(static_cast<std::size_t>(layout.total_dim()), 0.0);
    std::vector<int> outcome(m + 1);
    for (int i = 0; i < d; ++i) {
        std::size_t key = 0;
        for (int k = 0; k < m; ++k) key = key * d + i;
        for (int e = 0; e < d; ++e) {
            if (mode == EveMode::Copy && e != i) continue;
            probs[key * d + e] = mode == EveMode::Copy ? 1.0 / d : 1.0 / (static_cast<double>(d) * d);
        }
    }
    return JointDistribution(std::move(layout), std::move(probs));
}

DensityMatrix embed_classical(const JointDistribution& p) {
    if (p.alphabets().total_dim() > kCatalogMaxDim)
        throw Error(ErrorCode::TooLarge, fmt::format("embedding dimension {} exceeds {}", p.alphabets().total_dim(), kCatalogMaxDim));
    Matrix m = Matrix::Zero(p.alphabets().total_dim(), p.alphabets().total_dim());
    for (std::size_t c = 0; c < p.cells(); ++c) m(c, c) = p.probs()[c];
    return DensityMatrix::assume_valid(p.alphabets(), std::move(m));
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

JointDistribution parse_distribution_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::vector<std::string> header;
    while (header.empty() && std::getline(in, line))
        if (line.find_first_not_of(" \t\r") != std::string::npos) header = split_csv_line(line);
    if (header.size() < 2) throw Error(ErrorCode::ParseError, "CSV header needs variables and a probability column");
    const std::size_t n = header.size() - 1;
    for (std::size_t k = 0; k < n; ++k)
        if (header[k].empty()) throw Error(ErrorCode::ParseError, fmt::format("empty label in column {}", k + 1));

    std::map<std::vector<int>, double> rows;
    std::vector<int> sizes(n, 1);
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != n + 1)
            throw Error(ErrorCode::ParseError, fmt::format("line {}: expected {} fields, got {}", lineno, n + 1, cells.size()));
        std::vector<int> outcome(n);
        try {
            for (std::size_t k = 0; k < n; ++k) {
                std::size_t used = 0;
                outcome[k] = std::stoi(cells[k], &used);
                if (used != cells[k].size() || outcome[k] < 0) throw std::invalid_argument("outcome");
                sizes[k] = std::max(sizes[k], outcome[k] + 1);
            }
            std::size_t used = 0;
            const double prob = std::stod(cells[n], &used);
            if (used != cells[n].size() || !(prob >= 0.0)) throw std::invalid_argument("probability");
            if (!rows.emplace(outcome, prob).second)
                throw Error(ErrorCode::ParseError, fmt::format("line {}: repeated outcome", lineno));
        } catch (const std::logic_error&) {
            throw Error(ErrorCode::ParseError, fmt::format("line {}: bad number", lineno));
        }
    }
    std::vector<Subsystem> subs;
    for (std::size_t k = 0; k < n; ++k) subs.push_back({header[k], sizes[k]});
    SystemLayout layout(std::move(subs));
    require_cells(static_cast<std::size_t>(layout.total_dim()));

    double total = 0.0;
    for (const auto& [o, prob] : rows) total += prob;
    if (std::abs(total - 1.0) > 1e-6)
        throw Error(ErrorCode::ParseError, fmt::format("probabilities sum to {}, outside 1 +- 1e-6", total));
    std::vector<double> probs(static_cast<std::size_t>(layout.total_dim()), 0.0);
    for (const auto& [o, prob] : rows) {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < n; ++k) idx = idx * sizes[k] + o[k];
        probs[idx] = prob / total;
    }
    return JointDistribution(std::move(layout), std::move(probs));
}

std::string to_csv(const JointDistribution& p) {
    const auto& l = p.alphabets();
    std::string out;
    for (const auto& s : l.subsystems()) out += s.label + ",";
    out += "p\n";
    const auto st = strides(l);
    for (std::size_t c = 0; c < p.cells(); ++c) {
        if (p.probs()[c] == 0.0) continue;
        for (std::size_t k = 0; k < l.size(); ++k) out += fmt::format("{},", (c / st[k]) % l[k].dim);
        out += fmt::format("{:.17g}\n", p.probs()[c]);
    }
    return out;
}

}  // namespace entrolab
