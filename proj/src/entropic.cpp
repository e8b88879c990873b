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

#include "entrolab/entropic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include <fmt/format.h>

#include "detail/descent.hpp"
#include "detail/linalg.hpp"
#include "entrolab/sample.hpp"

namespace entrolab {

namespace {

LabelSet join(const LabelSet& a, const LabelSet& b) {
    LabelSet out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

LabelSet canonical(LabelSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

LabelSet parse_labels(std::string_view s, std::string_view what) {
    LabelSet out;
    for (auto& l : split(s, ',')) {
        if (l.empty()) throw Error(ErrorCode::BadPartition, fmt::format("empty label in {}", what));
        out.push_back(std::move(l));
    }
    return out;
}

// All parties except i, joined.
LabelSet all_but(const std::vector<LabelSet>& parties, std::size_t i) {
    LabelSet out;
    for (std::size_t k = 0; k < parties.size(); ++k)
        if (k != i) out = join(out, parties[k]);
    return out;
}

LabelSet prefix(const std::vector<LabelSet>& parties, std::size_t n) {
    LabelSet out;
    for (std::size_t k = 0; k < n; ++k) out = join(out, parties[k]);
    return out;
}

}  // namespace

std::string_view to_string(Which w) noexcept { return w == Which::I ? "I" : "S"; }

Which parse_which(std::string_view s) {
    if (s == "I") return Which::I;
    if (s == "S") return Which::S;
    throw Error(ErrorCode::BadParams, fmt::format("which must be I or S, got '{}'", s));
}

Partition Partition::parse(std::string_view text) {
    Partition p;
    const auto bar = text.find('|');
    const std::string_view head = text.substr(0, bar);
    if (bar != std::string_view::npos) {
        const std::string_view tail = text.substr(bar + 1);
        if (tail.find('|') != std::string_view::npos)
            throw Error(ErrorCode::BadPartition, "more than one '|' in partition");
        if (trim(tail).empty()) throw Error(ErrorCode::BadPartition, "empty conditioner after '|'");
        p.conditioner = parse_labels(tail, "conditioner");
    }
    for (const auto& party : split(head, ':')) {
        if (party.empty()) throw Error(ErrorCode::BadPartition, "empty party in partition");
        p.parties.push_back(parse_labels(party, "party"));
    }
    return p;
}

std::string Partition::to_string() const {
    std::vector<std::string> ps;
    for (const auto& party : parties) ps.push_back(fmt::format("{}", fmt::join(party, ",")));
    std::string out = fmt::format("{}", fmt::join(ps, ":"));
    if (!conditioner.empty()) out += fmt::format("|{}", fmt::join(conditioner, ","));
    return out;
}

LabelSet Partition::party_labels() const { return prefix(parties, parties.size()); }

void Partition::validate(const SystemLayout& layout) const {
    if (parties.size() < 2) throw Error(ErrorCode::BadPartition, "at least two parties are required");
    std::set<std::string> seen;
    auto claim = [&](const std::string& l) {
        if (!layout.contains(l)) throw Error(ErrorCode::BadPartition, fmt::format("label '{}' is not in the state", l));
        if (!seen.insert(l).second)
            throw Error(ErrorCode::BadPartition, fmt::format("label '{}' appears more than once", l));
    };
    for (const auto& party : parties) {
        if (party.empty()) throw Error(ErrorCode::BadPartition, "empty party");
        for (const auto& l : party) claim(l);
    }
    for (const auto& l : conditioner) claim(l);
}

EntropyTable::EntropyTable(const DensityMatrix& rho)
    : layout_(rho.layout()), cache_(new detail::EntropyCache(rho.matrix(), rho.layout().dims())) {}

EntropyTable::EntropyTable(const PureState& psi)
    : layout_(psi.layout()), cache_(new detail::EntropyCache(psi.vector(), psi.layout().dims())) {}

EntropyTable::~EntropyTable() { delete cache_; }

double EntropyTable::operator()(const LabelSet& labels) {
    return (*cache_)(layout_.positions(canonical(labels)));
}

void EntropyExpr::add(LabelSet set, double coeff) {
    set = canonical(std::move(set));
    if (set.empty() || coeff == 0.0) return;
    auto& c = terms_[set];
    c += coeff;
    if (std::abs(c) < 1e-14) terms_.erase(set);
}

EntropyExpr EntropyExpr::condition(const LabelSet& e) const {
    EntropyExpr out;
    for (const auto& [set, c] : terms_) {
        out.add(join(set, e), c);
        out.add(e, -c);
    }
    return out;
}

double EntropyExpr::evaluate(EntropyTable& table) const {
    double v = 0.0;
    for (const auto& [set, c] : terms_) v += c * table(set);
    return v;
}

EntropyExpr EntropyExpr::operator+(const EntropyExpr& o) const {
    EntropyExpr out = *this;
    for (const auto& [set, c] : o.terms_) out.add(set, c);
    return out;
}

EntropyExpr EntropyExpr::operator-(const EntropyExpr& o) const { return *this + o * -1.0; }

EntropyExpr EntropyExpr::operator*(double k) const {
    EntropyExpr out;
    for (const auto& [set, c] : terms_) out.add(set, c * k);
    return out;
}

EntropyExpr EntropyExpr::entropy(const LabelSet& set) {
    EntropyExpr out;
    out.add(set, 1.0);
    return out;
}

EntropyExpr EntropyExpr::multi_info(const std::vector<LabelSet>& parties, Which which) {
    EntropyExpr out;
    const double m = static_cast<double>(parties.size());
    const LabelSet all = prefix(parties, parties.size());
    if (which == Which::I) {
        for (const auto& p : parties) out.add(p, 1.0);
        out.add(all, -1.0);
    } else {
        for (std::size_t i = 0; i < parties.size(); ++i) out.add(all_but(parties, i), 1.0);
        out.add(all, -(m - 1.0));
    }
    return out;
}

EntropyExpr EntropyExpr::cmi(const LabelSet& a, const LabelSet& b, const LabelSet& e) {
    EntropyExpr out;
    out.add(join(a, e), 1.0);
    out.add(join(b, e), 1.0);
    out.add(join(join(a, b), e), -1.0);
    out.add(e, -1.0);
    return out;
}

double cond_multi_info(EntropyTable& t, const Partition& part, Which which) {
    part.validate(t.layout());
    const auto& ps = part.parties;
    const LabelSet& e = part.conditioner;
    const double m = static_cast<double>(ps.size());
    const LabelSet all_e = join(part.party_labels(), e);
    double v = 0.0;
    if (which == Which::I) {
        for (const auto& p : ps) v += t(join(p, e));
        v -= (m - 1.0) * t(e) + t(all_e);
    } else {
        for (std::size_t i = 0; i < ps.size(); ++i) v += t(join(all_but(ps, i), e));
        v -= (m - 1.0) * t(all_e) + t(e);
    }
    return v;
}

double cond_multi_info(const DensityMatrix& sigma, const Partition& part, Which which) {
    EntropyTable t(sigma);
    return cond_multi_info(t, part, which);
}

double cond_multi_info(const PureState& sigma, const Partition& part, Which which) {
    EntropyTable t(sigma);
    return cond_multi_info(t, part, which);
}

double multi_info(const DensityMatrix& rho, const Partition& part, Which which) {
    if (!part.conditioner.empty())
        throw Error(ErrorCode::BadPartition, "unconditional mutual information takes no conditioner");
    return cond_multi_info(rho, part, which);
}

double multi_info_I(const DensityMatrix& rho, const Partition& part) { return multi_info(rho, part, Which::I); }
double multi_info_S(const DensityMatrix& rho, const Partition& part) { return multi_info(rho, part, Which::S); }

double bipartite_cmi(const DensityMatrix& sigma, const LabelSet& a, const LabelSet& b, const LabelSet& e) {
    Partition p{{a, b}, e};
    p.validate(sigma.layout());
    EntropyTable t(sigma);
    return EntropyExpr::cmi(a, b, e).evaluate(t);
}

void IdentityReport::add(IdentityRecord r) {
    const double violation = r.inequality ? std::max(0.0, -r.residual) : std::abs(r.residual);
    max_violation = std::max(max_violation, violation);
    if (violation > tol || !std::isfinite(r.residual)) pass = false;
    records.push_back(std::move(r));
}

namespace {

void check_primed(const SystemLayout& layout, const Partition& part,
                  const std::vector<std::pair<std::string, std::string>>& pairs) {
    std::vector<LabelSet> doubled;
    for (const auto& [a, ap] : pairs) doubled.push_back({a, ap});
    Partition{doubled, part.conditioner}.validate(layout);
}

std::vector<LabelSet> singletons(const std::vector<std::pair<std::string, std::string>>& pairs, bool primed) {
    std::vector<LabelSet> out;
    for (const auto& [a, ap] : pairs) out.push_back({primed ? ap : a});
    return out;
}

}  // namespace

ChainParts chain_decomposition(const DensityMatrix& sigma,
                               const std::vector<std::pair<std::string, std::string>>& pairs,
                               const LabelSet& e, Which which) {
    check_primed(sigma.layout(), Partition{{}, e}, pairs);
    EntropyTable t(sigma);
    const auto unprimed = singletons(pairs, false);
    const auto primed = singletons(pairs, true);
    const LabelSet all_primed = prefix(primed, primed.size());

    std::vector<LabelSet> doubled;
    for (const auto& [a, ap] : pairs) doubled.push_back({a, ap});

    ChainParts out;
    out.total = cond_multi_info(t, Partition{doubled, e}, which);
    out.unprimed = cond_multi_info(t, Partition{unprimed, join(all_primed, e)}, which);
    out.primed = cond_multi_info(t, Partition{primed, e}, which);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const LabelSet own_prime = primed[i];
        if (which == Which::I) {
            out.residuals.push_back(
                EntropyExpr::cmi(unprimed[i], all_but(primed, i), join(own_prime, e)).evaluate(t));
        } else {
            out.residuals.push_back(
                EntropyExpr::cmi(all_but(unprimed, i), own_prime, join(all_but(primed, i), e)).evaluate(t));
        }
    }
    return out;
}

std::vector<double> chain_residuals(const DensityMatrix& sigma,
                                    const std::vector<std::pair<std::string, std::string>>& pairs,
                                    const LabelSet& e, Which which) {
    return chain_decomposition(sigma, pairs, e, which).residuals;
}

IdentityReport identity_suite(const std::vector<IdentitySample>& samples, double tol) {
    IdentityReport rep;
    rep.tol = tol;
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const auto& smp = samples[s];
        const auto& ps = smp.part.parties;
        const LabelSet& e = smp.part.conditioner;
        const std::size_t m = ps.size();
        smp.part.validate(smp.state.layout());
        EntropyTable t(smp.state);
        auto eq = [&](std::string name, double lhs, double rhs) {
            rep.add({std::move(name), s, lhs, rhs, lhs - rhs, false});
        };
        auto ge = [&](std::string name, double lhs, double rhs) {
            rep.add({std::move(name), s, lhs, rhs, lhs - rhs, true});
        };

        const double i_val = cond_multi_info(t, smp.part, Which::I);
        const double s_val = cond_multi_info(t, smp.part, Which::S);

        double bi = 0.0;
        for (std::size_t i = 1; i < m; ++i) bi += EntropyExpr::cmi(ps[i], prefix(ps, i), e).evaluate(t);
        eq("multi-bi", i_val, bi);

        const std::vector<LabelSet> head(ps.begin(), ps.end() - 1);
        const double recur = EntropyExpr::multi_info(head, Which::I).condition(e).evaluate(t) +
                             EntropyExpr::cmi(ps[m - 1], prefix(ps, m - 1), e).evaluate(t);
        eq("recur-I", i_val, recur);

        double chain = 0.0;
        for (std::size_t i = 0; i + 1 < m; ++i) {
            const std::vector<LabelSet> rest(ps.begin() + static_cast<long>(i) + 1, ps.end());
            chain += EntropyExpr::cmi(ps[i], prefix(rest, rest.size()), join(prefix(ps, i), e)).evaluate(t);
        }
        eq("s-chain", s_val, chain);

        double dual = 0.0;
        for (std::size_t i = 0; i < m; ++i) dual += EntropyExpr::cmi(ps[i], all_but(ps, i), e).evaluate(t);
        eq("s-plus-i", s_val + i_val, dual);

        if (smp.primed) {
            for (Which w : {Which::I, Which::S}) {
                const auto c = chain_decomposition(smp.state, *smp.primed, e, w);
                double sum = c.unprimed + c.primed;
                for (double r : c.residuals) sum += r;
                eq(fmt::format("chain-{}", to_string(w)), c.total, sum);
                ge(fmt::format("superadditivity-{}", to_string(w)), c.total, c.unprimed + c.primed);
            }
        }

        if (smp.x.empty()) continue;
        const std::string& x = smp.x;
        const LabelSet xs{x};
        for (Which w : {Which::I, Which::S}) {
            const double direct = cond_multi_info(t, Partition{ps, join(e, xs)}, w);
            const double nested = EntropyExpr::multi_info(ps, w).condition(e).condition(xs).evaluate(t);
            eq(fmt::format("cond-comp-{}", to_string(w)), direct, nested);
        }

        std::vector<LabelSet> xps = ps;
        xps[0] = join(xs, ps[0]);
        const Partition xpart{xps, e};
        const Partition given_x{ps, join(xs, e)};
        const double i_x = cond_multi_info(t, xpart, Which::I);
        const double s_x = cond_multi_info(t, xpart, Which::S);
        const double i_given = cond_multi_info(t, given_x, Which::I);
        const double s_given = cond_multi_info(t, given_x, Which::S);

        double r1 = i_given;
        for (std::size_t i = 1; i < m; ++i) r1 += EntropyExpr::cmi(xs, ps[i], e).evaluate(t);
        eq("rule1", i_x, r1);

        double r2 = i_val;
        for (std::size_t i = 1; i < m; ++i) r2 += EntropyExpr::cmi(xs, ps[i], join(prefix(ps, i), e)).evaluate(t);
        eq("rule2", i_x, r2);

        eq("rule3", s_x, s_given + EntropyExpr::cmi(xs, all_but(ps, 0), e).evaluate(t));

        const std::vector<LabelSet> tail(ps.begin() + 1, ps.end());
        double r4 = -EntropyExpr::multi_info(tail, Which::I).condition(e).evaluate(t);
        for (std::size_t i = 1; i < m; ++i) r4 += EntropyExpr::cmi(ps[i], join(xs, all_but(ps, i)), e).evaluate(t);
        eq("rule4", s_x, r4);

        ge("local-conditioning-I", i_x, i_given);
        ge("local-conditioning-S", s_x, s_given);

    }
    return rep;
}

namespace {

double shannon(const Eigen::VectorXd& p) {
    double h = 0.0;
    for (double x : p)
        if (x > 1e-15) h -= x * std::log2(x);
    return h;
}

// Mutual information of the outcomes when the rows of wa, wb are the
// conjugated measurement vectors.
double outcome_mi(const Matrix& rho_ab, const Matrix& wa, const Matrix& wb) {
    const Matrix k = detail::kron(wa, wb);
    const Eigen::Index da = wa.rows(), db = wb.rows();
    Eigen::VectorXd p(da * db);
    for (Eigen::Index r = 0; r < p.size(); ++r) p(r) = std::max(0.0, (k.row(r) * rho_ab * k.row(r).adjoint())(0, 0).real());
    Eigen::VectorXd pa = Eigen::VectorXd::Zero(da), pb = Eigen::VectorXd::Zero(db);
    for (Eigen::Index a = 0; a < da; ++a)
        for (Eigen::Index b = 0; b < db; ++b) {
            pa(a) += p(a * db + b);
            pb(b) += p(a * db + b);
        }
    return std::max(0.0, shannon(pa) + shannon(pb) - shannon(p));
}

}  // namespace

MeasuredInfo measured_mutual_info(const DensityMatrix& rho, const Partition& part,
                                  const std::optional<std::pair<Matrix, Matrix>>& bases,
                                  const MeasurementSearch& search) {
    if (part.size() != 2 || !part.conditioner.empty())
        throw Error(ErrorCode::BadPartition, "measured mutual information needs exactly two parties");
    part.validate(rho.layout());
    const auto& layout = rho.layout();
    std::vector<int> keep;
    for (const auto& party : part.parties) {
        const auto pos = layout.positions(party);
        keep.insert(keep.end(), pos.begin(), pos.end());
    }
    const Matrix rho_ab = detail::reduce(rho.matrix(), layout.dims(), keep);
    const auto da = static_cast<int>(layout.dim_of(part.parties[0]));
    const auto db = static_cast<int>(layout.dim_of(part.parties[1]));

    MeasuredInfo out;
    if (bases) {
        const auto& [ua, ub] = *bases;
        for (const Matrix* u : {&ua, &ub}) {
            const int d = u == &ua ? da : db;
            if (u->rows() != d || u->cols() != d)
                throw Error(ErrorCode::BadBasis, fmt::format("basis must be {}x{}", d, d));
            if ((u->adjoint() * *u - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-8)
                throw Error(ErrorCode::BadBasis, "basis vectors are not orthonormal");
        }
        out.basis_a = ua;
        out.basis_b = ub;
        out.value = outcome_mi(rho_ab, ua.adjoint(), ub.adjoint());
        return out;
    }

    using Point = std::pair<Matrix, Matrix>;
    auto objective = [&](const Point& p) { return -outcome_mi(rho_ab, p.first, p.second); };
    auto perturb = [&](const Point& p, double step, std::mt19937_64& rng) {
        Point q = p;
        if (std::uniform_int_distribution<int>(0, 1)(rng) == 0)
            q.first = detail::perturb_rows(p.first, step, rng);
        else
            q.second = detail::perturb_rows(p.second, step, rng);
        return q;
    };
    detail::DescentOptions opt;
    opt.max_iters = search.max_iters;

    Point best{Matrix::Identity(da, da), Matrix::Identity(db, db)};
    double best_val = objective(best);
    for (int r = 0; r < search.restarts; ++r) {
        std::mt19937_64 rng(derive_seed(search.seed, static_cast<std::uint64_t>(r)));
        Point start = r == 0 ? best : Point{detail::haar_unitary(da, rng), detail::haar_unitary(db, rng)};
        const double v0 = objective(start);
        auto res = detail::local_descent(std::move(start), v0, objective, perturb, opt, rng);
        if (res.value < best_val) {
            best_val = res.value;
            best = std::move(res.point);
        }
    }
    out.value = -best_val;
    out.basis_a = best.first.adjoint();
    out.basis_b = best.second.adjoint();
    out.lower_estimate = true;
    return out;
}

}  // namespace entrolab
