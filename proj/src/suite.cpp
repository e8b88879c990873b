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

#include "entrolab/suite.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "entrolab/sample.hpp"

namespace entrolab {

namespace {

SystemLayout qubit_layout(const LabelSet& labels) {
    std::vector<Subsystem> subs;
    for (const auto& l : labels) subs.push_back({l, 2});
    return SystemLayout(std::move(subs));
}

ProbeReport empty_report(std::string check, std::string function, double tol) {
    ProbeReport r;
    r.check = std::move(check);
    r.function = std::move(function);
    r.tol = tol;
    return r;
}

void absorb(ProbeReport& into, const ProbeReport& from, const std::string& prefix) {
    for (auto rec : from.records) {
        rec.input = prefix + ": " + rec.input;
        into.add(std::move(rec));
    }
}

}  // namespace

SuiteResult run_standard_suite(const SuiteOptions& opt) {
    SuiteResult out;
    const auto n = static_cast<std::uint64_t>(std::max(opt.samples, 1));
    auto seed = [&](std::uint64_t stream, std::uint64_t i) { return derive_seed(derive_seed(opt.seed, stream), i); };

    const auto generic = qubit_layout({"A", "B", "C", "X", "E"});
    const auto doubled = qubit_layout({"A", "B", "C", "A'", "B'", "C'", "E"});
    const auto four = qubit_layout({"A", "B", "C", "D"});
    const std::vector<std::pair<std::string, std::string>> pairs{{"A", "A'"}, {"B", "B'"}, {"C", "C'"}};
    std::vector<IdentitySample> samples;
    for (std::uint64_t i = 0; i < n; ++i) {
        const int rank = 1 + static_cast<int>(i % 5);
        samples.push_back({sample_mixed(generic, rank, seed(0, i)), Partition::parse("A:B:C|E"), "X", std::nullopt});
        samples.push_back({sample_mixed(doubled, rank, seed(1, i)), Partition::parse("A:B:C|E"), "", pairs});
        samples.push_back({sample_pure(four, seed(2, i)).density(), Partition::parse("A:B:C:D"), "", std::nullopt});
    }
    out.identities = identity_suite(samples, opt.identity_tol);

    const auto left = qubit_layout({"A", "B", "C", "E"});
    const auto right = qubit_layout({"A2", "B2", "C2", "E2"});
    for (Which w : {Which::I, Which::S}) {
        auto rep = empty_report("additivity", fmt::format("multi_info_{}", to_string(w)), opt.identity_tol);
        for (std::uint64_t i = 0; i < n; ++i) {
            const auto s1 = sample_mixed(left, 1 + static_cast<int>(i % 4), seed(3, i));
            const auto s2 = sample_mixed(right, 1 + static_cast<int>((i + 1) % 4), seed(4, i));
            const double a = cond_multi_info(s1, Partition::parse("A:B:C|E"), w);
            const double b = cond_multi_info(s2, Partition::parse("A2:B2:C2|E2"), w);
            const double joint = cond_multi_info(tensor(s1, s2), Partition::parse("A,A2:B,B2:C,C2|E,E2"), w);
            rep.add({fmt::format("sample {}", i), joint, a + b, joint - a - b, std::abs(joint - a - b)});
        }
        out.additivity.push_back(std::move(rep));
    }

    const auto mono_layout = qubit_layout({"A", "B", "C", "E"});
    const auto mono_part = Partition::parse("A:B:C|E");
    for (Which w : {Which::I, Which::S}) {
        const auto f = multi_info_fn(w);
        auto mono = empty_report("local-channel", f.name, opt.monotone_tol);
        auto lui = empty_report("lui", f.name, opt.monotone_tol);
        auto flags = empty_report("flags", f.name, opt.monotone_tol);
        for (std::uint64_t i = 0; i < n; ++i) {
            const auto rho = sample_mixed(mono_layout, 1 + static_cast<int>(i % 4), seed(5, i));
            const std::string tag = fmt::format("sample {}", i);
            absorb(mono, check_local_channels(f, rho, mono_part, 1, opt.monotone_tol, seed(6, i)), tag);
            absorb(lui, check_lui(f, rho, mono_part, 1, opt.monotone_tol, seed(7, i)), tag);
            const ClassicalExtension ens{{0.35, 0.65}, {rho, sample_mixed(mono_layout, 2, seed(8, i))}};
            absorb(flags, check_flags(f, ens, mono_part, "F", opt.monotone_tol, i % 3), tag);
        }
        out.monotone.push_back(std::move(mono));
        out.axioms.push_back(std::move(lui));
        out.axioms.push_back(std::move(flags));
    }

    const auto pair_layout = qubit_layout({"A", "B"});
    const auto ab = Partition::parse("A:B");
    out.controls.push_back(check_convexity(entropy_fn(), sample_mixed(pair_layout, 1, seed(9, 0)),
                                           sample_mixed(pair_layout, 1, seed(9, 1)), ab, 0.5, opt.monotone_tol));
    out.controls.push_back(continuity_probe(rank_fn(), sample_pure(pair_layout, seed(9, 2)).density(), ab,
                                            {1e-2, 1e-3, 1e-4}, 3, 16.0, seed(9, 3)));

    bool ok = out.identities.pass;
    for (const auto* group : {&out.additivity, &out.monotone, &out.axioms})
        for (const auto& r : *group) ok = ok && r.pass;
    for (const auto& r : out.controls) ok = ok && !r.pass;
    out.pass = ok;
    return out;
}

}  // namespace entrolab
