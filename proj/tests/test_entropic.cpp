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

#include <algorithm>

#include "entrolab/entropic.hpp"
#include "entrolab/sample.hpp"
#include "support.hpp"

using namespace entrolab;
using namespace entrolab::testing;

namespace {

PureState ghz3() {
    Vector v = Vector::Zero(8);
    v(0) = v(7) = 1.0 / std::sqrt(2.0);
    return make_pure(qubits({"A", "B", "C"}), v);
}

}  // namespace

TEST_CASE("partition grammar") {
    const auto p = Partition::parse("A,A':B:C|E");
    REQUIRE(p.size() == 3);
    CHECK(p.parties[0] == LabelSet{"A", "A'"});
    CHECK(p.conditioner == LabelSet{"E"});
    CHECK(p.to_string() == "A,A':B:C|E");
    CHECK(Partition::parse(" A : B ").to_string() == "A:B");
    CHECK(code_of([] { Partition::parse("A:B|"); }) == ErrorCode::BadPartition);
    CHECK(code_of([] { Partition::parse("A::B"); }) == ErrorCode::BadPartition);
    CHECK(code_of([] { Partition::parse("A,:B"); }) == ErrorCode::BadPartition);
    CHECK(code_of([] { Partition::parse("A:B|E|F"); }) == ErrorCode::BadPartition);

    const auto l = qubits({"A", "B", "C"});
    CHECK(code_of([&] { Partition::parse("A").validate(l); }) == ErrorCode::BadPartition);
    CHECK(code_of([&] { Partition::parse("A:A").validate(l); }) == ErrorCode::BadPartition);
    CHECK(code_of([&] { Partition::parse("A:B|A").validate(l); }) == ErrorCode::BadPartition);
    CHECK(code_of([&] { Partition::parse("A:Q").validate(l); }) == ErrorCode::BadPartition);
    CHECK(parse_which("S") == Which::S);
    CHECK(code_of([] { parse_which("T"); }) == ErrorCode::BadParams);
}

TEST_CASE("conditioning does not depend on how the expression is written") {
    // S(A) + S(AB) - 2 S(AB) and S(A) - S(AB) are the same function.
    EntropyExpr f1, f2;
    f1.add({"A"}, 1.0);
    f1.add({"A", "B"}, 1.0);
    f1.add({"B", "A"}, -2.0);
    f2.add({"A"}, 1.0);
    f2.add({"A", "B"}, -1.0);
    CHECK(f1.condition({"E"}).terms() == f2.condition({"E"}).terms());
    CHECK(EntropyExpr::multi_info({{"A"}, {"B"}}, Which::I).terms() == EntropyExpr::cmi({"A"}, {"B"}).terms());
}

TEST_CASE("closed-form values") {
    const auto g = ghz3().density();
    CHECK(std::abs(multi_info_I(g, Partition::parse("A:B:C")) - 3.0) <= 1e-10);
    CHECK(std::abs(multi_info_S(g, Partition::parse("A:B:C")) - 3.0) <= 1e-10);

    const auto bz = tensor(bell().density(), basis_state(qubits({"C"}), 0).density());
    CHECK(std::abs(multi_info_I(bz, Partition::parse("A:B:C")) - 2.0) <= 1e-10);
    CHECK(std::abs(multi_info_S(bz, Partition::parse("A:B:C")) - 2.0) <= 1e-10);

    const auto prod = tensor(tensor(sample_mixed(qubits({"A"}), 2, 1), sample_mixed(qubits({"B"}), 2, 2)),
                             sample_mixed(qubits({"C"}), 2, 3));
    CHECK(std::abs(multi_info_I(prod, Partition::parse("A:B:C"))) <= 1e-10);
    CHECK(std::abs(multi_info_S(prod, Partition::parse("A:B:C"))) <= 1e-10);

    CHECK(std::abs(bipartite_cmi(bell().density(), {"A"}, {"B"}) - 2.0) <= 1e-10);
    CHECK(code_of([&] { multi_info_I(g, Partition::parse("A:B|C")); }) == ErrorCode::BadPartition);
}

TEST_CASE("conditional values on simple extensions") {
    const auto rho = sample_mixed(qubits({"A", "B", "C"}), 3, 5);
    const auto sigma = tensor(rho, sample_mixed(qubits({"E"}), 2, 6));
    for (Which w : {Which::I, Which::S})
        CHECK(std::abs(cond_multi_info(sigma, Partition::parse("A:B:C|E"), w) -
                       multi_info(rho, Partition::parse("A:B:C"), w)) <= 1e-9);

    // Classical copy of a shared bit in E.
    const auto copy = diag_state(qubits({"A", "B", "C", "E"}), {0.5, 0, 0, 0, 0, 0, 0, 0,
                                                                0, 0, 0, 0, 0, 0, 0, 0.5});
    for (Which w : {Which::I, Which::S})
        CHECK(std::abs(cond_multi_info(copy, Partition::parse("A:B:C|E"), w)) <= 1e-10);

    // Markov chain A - E - B.
    const auto markov = diag_state(qubits({"A", "B", "E"}), {0.5, 0, 0, 0, 0, 0, 0, 0.5});
    CHECK(std::abs(bipartite_cmi(markov, {"A"}, {"B"}, {"E"})) <= 1e-10);

    // Uncovered labels are traced out.
    CHECK(std::abs(cond_multi_info(sigma, Partition::parse("A:B"), Which::I) -
                   multi_info_I(partial_trace(rho, {"C"}), Partition::parse("A:B"))) <= 1e-10);
}

TEST_CASE("values agree with the brute-force oracle") {
    for (std::uint64_t s = 0; s < 50; ++s) {
        const auto pure = sample_pure(qubits({"A", "B", "E"}), 1000 + s).density();
        const double expect = oracle_entropy(pure, {"A", "E"}) + oracle_entropy(pure, {"B", "E"}) -
                              oracle_entropy(pure, {"A", "B", "E"}) - oracle_entropy(pure, {"E"});
        CHECK(std::abs(bipartite_cmi(pure, {"A"}, {"B"}, {"E"}) - expect) <= 1e-10);
        // For a pure tripartite state I(A:B|E) = S(AE) + S(BE) - S(E) = S(B) + S(A) - S(E).
        CHECK(std::abs(expect - (oracle_entropy(pure, {"A"}) + oracle_entropy(pure, {"B"}) -
                                 oracle_entropy(pure, {"E"}))) <= 1e-10);
    }
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto r = sample_mixed(SystemLayout({{"A", 2}, {"B", 3}, {"C", 2}, {"E", 2}}), 3, 2000 + s);
        const std::vector<LabelSet> ps{{"A"}, {"B", "C"}};
        const std::vector<LabelSet> ps3{{"C"}, {"A"}, {"B"}};
        CHECK(std::abs(cond_multi_info(r, {ps, {"E"}}, Which::I) - oracle_I(r, ps, {"E"})) <= 1e-9);
        CHECK(std::abs(cond_multi_info(r, {ps3, {"E"}}, Which::S) - oracle_S(r, ps3, {"E"})) <= 1e-9);
        CHECK(std::abs(cond_multi_info(r, {ps3, {}}, Which::S) - oracle_S(r, ps3, {})) <= 1e-9);
    }
}

TEST_CASE("pure and mixed representations give the same values") {
    const auto psi = sample_pure(qubits({"A", "B", "C", "E"}), 17);
    const auto rho = psi.density();
    for (Which w : {Which::I, Which::S})
        CHECK(std::abs(cond_multi_info(psi, Partition::parse("A:B:C|E"), w) -
                       cond_multi_info(rho, Partition::parse("A:B:C|E"), w)) <= 1e-10);
}

TEST_CASE("nonnegativity, bipartite collapse and permutation invariance") {
    for (std::uint64_t s = 0; s < 40; ++s) {
        const auto r = sample_mixed(qubits({"A", "B", "C", "E"}), 1 + static_cast<int>(s % 4), 3000 + s);
        for (Which w : {Which::I, Which::S}) {
            CHECK(cond_multi_info(r, Partition::parse("A:B:C|E"), w) >= -1e-8);
            CHECK(multi_info(r, Partition::parse("A:B:C,E"), w) >= -1e-8);
            CHECK(std::abs(multi_info(r, Partition::parse("A:B:C"), w) -
                           multi_info(r, Partition::parse("C:A:B"), w)) <= 1e-10);
        }
        CHECK(bipartite_cmi(r, {"A"}, {"B", "C"}, {"E"}) >= -1e-8);
        const double i2 = multi_info_I(r, Partition::parse("A,B:C"));
        CHECK(std::abs(i2 - multi_info_S(r, Partition::parse("A,B:C"))) <= 1e-10);
        CHECK(std::abs(i2 - bipartite_cmi(r, {"A", "B"}, {"C"})) <= 1e-10);
    }
}

TEST_CASE("relative-entropy representation of I") {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto r = sample_mixed(qubits({"A", "B", "C"}), 3, 4000 + s);
        const auto prod = tensor(tensor(marginal(r, {"A"}), marginal(r, {"B"})), marginal(r, {"C"}));
        CHECK(std::abs(relative_entropy(r, prod) - multi_info_I(r, Partition::parse("A:B:C"))) <= 1e-7);
    }
}

TEST_CASE("monotonicity under local channels and local conditioning") {
    for (std::uint64_t s = 0; s < 30; ++s) {
        const auto r = sample_mixed(qubits({"A", "B", "C", "E"}), 3, 5000 + s);
        const auto ch = sample_channel(2, 2, 2, 6000 + s);
        const auto out = apply_channel(r, ch, "A", "A");
        for (Which w : {Which::I, Which::S}) {
            const auto part = Partition::parse("A:B:C|E");
            CHECK(cond_multi_info(out, part, w) <= cond_multi_info(r, part, w) + 1e-7);
            // X = E joined to A_1 versus conditioning on it.
            CHECK(multi_info(r, Partition::parse("E,A:B:C"), w) >=
                  cond_multi_info(r, Partition::parse("A:B:C|E"), w) - 1e-8);
        }
    }
}

TEST_CASE("identity suite on random states") {
    std::vector<IdentitySample> samples;
    for (std::uint64_t s = 0; s < 100; ++s)
        samples.push_back({sample_mixed(qubits({"A", "B", "C", "X", "E"}), 1 + static_cast<int>(s % 5), 7000 + s),
                           Partition::parse("A:B:C|E"), "X", std::nullopt});
    const auto rep = identity_suite(samples, 1e-8);
    CHECK(rep.pass);
    CHECK(rep.max_violation <= 1e-8);
    CHECK(rep.records.size() == 100 * 12);

    // Product samples: rule 1's correction terms vanish.
    const auto prod = tensor(sample_mixed(qubits({"A", "B", "C", "E"}), 2, 1), sample_mixed(qubits({"X"}), 2, 2));
    for (std::size_t i = 1; i < 3; ++i) {
        const std::string party(1, static_cast<char>('A' + i));
        CHECK(std::abs(bipartite_cmi(prod, {"X"}, {party}, {"E"})) <= 1e-10);
    }
    const auto rep2 = identity_suite({{prod, Partition::parse("A:B:C|E"), "X", std::nullopt}}, 1e-8);
    CHECK(rep2.pass);

    // Pure four-party duality.
    const auto pure = sample_pure(qubits({"A", "B", "C", "D"}), 99).density();
    const auto rep3 = identity_suite({{pure, Partition::parse("A:B:C:D"), "", std::nullopt}}, 1e-8);
    CHECK(rep3.pass);
    const auto it = std::find_if(rep3.records.begin(), rep3.records.end(),
                                 [](const IdentityRecord& r) { return r.name == "s-plus-i"; });
    REQUIRE(it != rep3.records.end());
    CHECK(std::abs(it->residual) <= 1e-8);
}

TEST_CASE("identity suite flags a broken identity") {
    IdentityReport rep;
    rep.tol = 1e-8;
    rep.add({"fake", 0, 1.0, 0.5, 0.5, false});
    CHECK_FALSE(rep.pass);
    IdentityReport rep2;
    rep2.add({"fake-ineq", 0, 0.5, 1.0, -0.5, true});
    CHECK_FALSE(rep2.pass);
    IdentityReport rep3;
    rep3.add({"fine-ineq", 0, 1.0, 0.5, 0.5, true});
    CHECK(rep3.pass);
}

TEST_CASE("chain decomposition of doubled parties") {
    const std::vector<std::pair<std::string, std::string>> pairs{{"A", "A'"}, {"B", "B'"}, {"C", "C'"}};
    // Product of an unprimed and a primed state.
    const auto prod = tensor(sample_mixed(qubits({"A", "B", "C", "E"}), 3, 1),
                             sample_mixed(qubits({"A'", "B'", "C'", "E'"}), 3, 2));
    for (Which w : {Which::I, Which::S}) {
        for (double r : chain_residuals(prod, pairs, {"E", "E'"}, w)) CHECK(std::abs(r) <= 1e-8);
        // Additivity on the product.
        const double total = cond_multi_info(prod, Partition::parse("A,A':B,B':C,C'|E,E'"), w);
        const double parts = cond_multi_info(prod, Partition::parse("A:B:C|E"), w) +
                             cond_multi_info(prod, Partition::parse("A':B':C'|E'"), w);
        CHECK(std::abs(total - parts) <= 1e-8);
    }

    for (std::uint64_t s = 0; s < 50; ++s) {
        const auto r = sample_mixed(qubits({"A", "B", "C", "A'", "B'", "C'", "E"}), 2, 8000 + s);
        for (Which w : {Which::I, Which::S}) {
            const auto c = chain_decomposition(r, pairs, {"E"}, w);
            double sum = c.unprimed + c.primed;
            for (double x : c.residuals) {
                CHECK(x >= -1e-8);
                sum += x;
            }
            CHECK(std::abs(c.total - sum) <= 1e-8);
        }
    }

    // GHZ on ABC tensor GHZ on A'B'C'.
    Vector v = Vector::Zero(8);
    v(0) = v(7) = 1.0 / std::sqrt(2.0);
    const auto g1 = make_pure(qubits({"A", "B", "C"}), v).density();
    const auto g2 = make_pure(qubits({"A'", "B'", "C'"}), v).density();
    const auto gg = tensor(g1, g2);
    const auto c = chain_decomposition(gg, pairs, {}, Which::I);
    CHECK(std::abs(c.total - 6.0) <= 1e-8);
    CHECK(std::abs(c.unprimed - 3.0) <= 1e-8);
    CHECK(std::abs(c.primed - 3.0) <= 1e-8);
}

TEST_CASE("identity suite with primed parties") {
    std::vector<IdentitySample> samples;
    const std::vector<std::pair<std::string, std::string>> pairs{{"A", "A'"}, {"B", "B'"}, {"C", "C'"}};
    for (std::uint64_t s = 0; s < 5; ++s)
        samples.push_back({sample_mixed(qubits({"A", "B", "C", "A'", "B'", "C'", "E"}), 2, 9000 + s),
                           Partition::parse("A:B:C|E"), "", pairs});
    const auto rep = identity_suite(samples, 1e-8);
    CHECK(rep.pass);
    CHECK(std::count_if(rep.records.begin(), rep.records.end(),
                        [](const IdentityRecord& r) { return r.name == "superadditivity-S"; }) == 5);
}

TEST_CASE("measured mutual information") {
    const auto b = bell().density();
    const auto part = Partition::parse("A:B");
    const Matrix z = Matrix::Identity(2, 2);
    Matrix x(2, 2);
    x << 1, 1, 1, -1;
    x /= std::sqrt(2.0);
    CHECK(std::abs(measured_mutual_info(b, part, std::pair{z, z}).value - 1.0) <= 1e-10);
    CHECK(std::abs(measured_mutual_info(b, part, std::pair{z, x}).value) <= 1e-10);
    const auto prod = tensor(sample_mixed(qubits({"A"}), 2, 1), sample_mixed(qubits({"B"}), 2, 2));
    CHECK(std::abs(measured_mutual_info(prod, part, std::pair{x, z}).value) <= 1e-10);
    CHECK(code_of([&] { measured_mutual_info(b, part, std::pair{Matrix(z * 2.0), z}); }) == ErrorCode::BadBasis);
    CHECK(code_of([&] { measured_mutual_info(b, Partition::parse("A:B|E"), std::nullopt); }) ==
          ErrorCode::BadPartition);

    MeasurementSearch cfg;
    cfg.restarts = 4;
    cfg.max_iters = 100;
    cfg.seed = 3;
    const auto found = measured_mutual_info(b, part, std::nullopt, cfg);
    CHECK(found.lower_estimate);
    CHECK(found.value >= 1.0 - 1e-9);
    CHECK(found.value <= 1.0 + 1e-9);
    // The reported bases reproduce the value.
    CHECK(std::abs(measured_mutual_info(b, part, std::pair{found.basis_a, found.basis_b}).value - found.value) <= 1e-9);
}
