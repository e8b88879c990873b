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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "entrolab/harness.hpp"
#include "entrolab/sample.hpp"
#include "support.hpp"

using namespace entrolab;
using namespace entrolab::testing;

TEST_CASE("local unitary invariance") {
    const auto rho = sample_mixed(qubits({"A", "B", "C"}), 3, 1);
    const auto part = Partition::parse("A:B:C");
    for (Which w : {Which::I, Which::S}) {
        const auto rep = check_lui(multi_info_fn(w), rho, part, 20, 1e-8, 4);
        CHECK(rep.pass);
        CHECK(rep.records.size() == 20);
        CHECK(rep.max_violation <= 1e-8);
    }
    const auto t = check_lui(trace_fn(), rho, part, 5, 0.0);
    CHECK(t.max_violation <= 1e-12);
}

TEST_CASE("flags") {
    const auto layout = qubits({"A", "B", "E"});
    const auto cond = Partition::parse("A:B|E");
    for (Which w : {Which::I, Which::S}) {
        const auto rho = sample_mixed(layout, 2, 3);
        CHECK(check_flags(multi_info_fn(w), ClassicalExtension{{1.0}, {rho}}, cond, "F", 1e-9).pass);
        for (std::uint64_t s = 0; s < 20; ++s) {
            const ClassicalExtension ens{{0.3, 0.7},
                                         {sample_mixed(layout, 2, derive_seed(s, 0)), sample_mixed(layout, 1, derive_seed(s, 1))}};
            CHECK(check_flags(multi_info_fn(w), ens, cond, "F", 1e-7, s % 2, 3).pass);
        }
    }

    // Without a conditioner the flag on A leaves the Holevo quantity of B.
    const auto ab = qubits({"A", "B"});
    const auto part = Partition::parse("A:B");
    for (std::uint64_t s = 0; s < 10; ++s) {
        const ClassicalExtension ens{{0.4, 0.6}, {sample_mixed(ab, 2, derive_seed(s, 2)), sample_mixed(ab, 2, derive_seed(s, 3))}};
        double holevo = oracle_entropy(ens.mixture(), {"B"});
        for (std::size_t i = 0; i < 2; ++i) holevo -= ens.weights[i] * oracle_entropy(ens.members[i], {"B"});
        const auto rep = check_flags(multi_info_fn(Which::I), ens, part, "F", 1e-7);
        CHECK(std::abs(rep.records[0].residual - holevo) <= 1e-9);
    }

    const ClassicalExtension three{{0.2, 0.3, 0.5}, {sample_mixed(ab, 2, 1), sample_mixed(ab, 2, 2), sample_mixed(ab, 2, 3)}};
    CHECK(code_of([&] { check_flags(multi_info_fn(Which::I), three, part, "F", 1e-7, 0, 2); }) ==
          ErrorCode::DimensionMismatch);
}

TEST_CASE("convexity") {
    const auto part = Partition::parse("A:B");
    const auto rho = sample_mixed(qubits({"A", "B"}), 2, 10);
    const auto sigma = sample_mixed(qubits({"A", "B"}), 2, 11);
    for (double p : {0.0, 1.0}) CHECK(std::abs(check_convexity(entropy_fn(), rho, sigma, part, p, 0.0).records[0].residual) <= 1e-12);

    // Entropy is concave, so the check must fail.
    const auto neg = check_convexity(entropy_fn(), rho, sigma, part, 0.5, 1e-7);
    CHECK_FALSE(neg.pass);

    OptimizerConfig cfg;
    cfg.restarts = 2;
    cfg.max_iters = 60;
    cfg.seed = 3;
    for (std::uint64_t s = 0; s < 3; ++s) {
        const auto a = sample_mixed(qubits({"A", "B"}), 2, 20 + s);
        const auto b = sample_mixed(qubits({"A", "B"}), 2, 40 + s);
        const auto rep = check_convexity(c_squashed_fn(Which::I, cfg), a, b, part, 0.4, 2e-6);
        CHECK(rep.pass);
    }
    CHECK(code_of([&] { check_convexity(entropy_fn(), rho, sample_mixed(qubits({"A"}), 1, 1), part, 0.5, 0); }) ==
          ErrorCode::DimensionMismatch);
}

TEST_CASE("local channels never increase the multipartite informations") {
    const auto part = Partition::parse("A:B,C:D");
    const auto rho = sample_mixed(qubits({"A", "B", "C", "D"}), 2, 5);
    for (Which w : {Which::I, Which::S}) CHECK(check_local_channels(multi_info_fn(w), rho, part, 30, 1e-7, 9).pass);
}

TEST_CASE("continuity probe") {
    const auto part = Partition::parse("A:B:C");
    const auto rho = sample_mixed(qubits({"A", "B", "C"}), 4, 6);
    const auto rep = continuity_probe(multi_info_fn(Which::I), rho, part, {1e-2, 1e-3, 1e-4}, 5);
    CHECK(rep.pass);
    REQUIRE(rep.max_ratio.has_value());
    CHECK(*rep.max_ratio <= 16.0);

    // Rank jumps by a finite amount under arbitrarily small perturbations.
    const auto pure = sample_pure(qubits({"A", "B", "C"}), 2).density();
    const auto neg = continuity_probe(rank_fn(), pure, part, {1e-2, 1e-3, 1e-4}, 3);
    CHECK_FALSE(neg.pass);
    CHECK(*neg.max_ratio > 1000.0);
}

TEST_CASE("Devetak-Winter rate") {
    for (int d : {2, 3}) {
        const auto g = ghz(3, d).density();
        CHECK(std::abs(dw_rate(g, Partition::parse("A:B:C"), {"A", "B", "C"}) - std::log2(double(d))) <= 1e-8);
    }
    // The purification of a classical key gives Eve a copy of the key.
    CHECK(std::abs(dw_rate(ideal_key_state(3, 2), Partition::parse("A:B:C"), {"A", "B", "C"})) <= 1e-8);

    const auto prod = tensor(sample_pure(qubits({"A"}), 1), sample_pure(qubits({"B"}), 2)).density();
    CHECK(std::abs(dw_rate(prod, Partition::parse("A:B"), {"A", "B"})) <= 1e-8);

    const auto part = Partition::parse("A:B:C");
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto rho = sample_mixed(qubits({"A", "B", "C"}), 1 + s % 4, 60 + s);
        CHECK(dw_rate(rho, part, {"A", "B", "C"}) <= multi_info_I(rho, part) + 1e-9);
    }
    CHECK(code_of([&] { dw_rate(prod, Partition::parse("A:B"), {"B", "A"}); }) == ErrorCode::BadPartition);
    CHECK(code_of([&] { dw_rate(prod, Partition::parse("A:B"), {"A"}); }) == ErrorCode::BadPartition);
}

TEST_CASE("pdit normalization") {
    const auto plain = untwisted_pdit_spec(3, 2, 2, 1);
    const auto gamma = pdit(plain);
    const ClassicalExtension trivial{{1.0}, {gamma}};
    CHECK(cmi_at_extension(gamma, Partition::parse(flower_partition(3)), trivial, Which::I) >= 3.0 - 1e-9);

    for (std::uint64_t s = 0; s < 5; ++s) {
        const auto spec = random_pdit_spec(3, 2, 2, s);
        const auto exts = random_channel_extensions(pdit(spec), 10, 4, 2, s);
        const auto rep = pdit_normalization_check(spec, exts, 1e-7);
        CHECK(rep.pass);
        CHECK(rep.records.size() == 10);
    }

    // A Bell pair is the unshielded bipartite case.
    const auto bell_state = ghz(2, 2).density();
    CHECK(std::abs(cmi_at_extension(bell_state, Partition::parse("A:B"), ClassicalExtension{{1.0}, {bell_state}},
                                    Which::I) - 2.0) <= 1e-9);
}

TEST_CASE("lockability") {
    const auto a = lockability_demo(3, 4);
    CHECK(std::abs(a.full_value_I - 5.0) <= 1e-8);
    CHECK(std::abs(a.full_value_S - 5.0) <= 1e-8);
    CHECK(std::abs(a.locked_value) <= 1e-9);

    const auto b = lockability_demo(3, 2);
    CHECK(std::abs(b.full_value_I - 4.0) <= 1e-8);
    CHECK(std::abs(b.locked_value) <= 1e-9);

    const auto c = lockability_demo(2, 2);
    CHECK(std::abs(c.full_value_I - 3.0) <= 1e-8);
    CHECK(std::abs(c.locked_value) <= 1e-9);
    CHECK(a.full_value_I - a.locked_value > b.full_value_I - b.locked_value);
}
