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

#include <limits>

#include "entrolab/sample.hpp"
#include "entrolab/state_io.hpp"
#include "support.hpp"

using namespace entrolab;
using namespace entrolab::testing;

namespace {

void check_valid(const DensityMatrix& rho) {
    const Matrix& m = rho.matrix();
    CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK(std::abs(m.trace() - cplx(1.0)) <= 1e-9);
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    CHECK(es.eigenvalues().minCoeff() >= -1e-9);
}

PureState ghz3() {
    Vector v = Vector::Zero(8);
    v(0) = v(7) = 1.0 / std::sqrt(2.0);
    return make_pure(qubits({"A", "B", "C"}), v);
}

KrausChannel z_dephasing() {
    Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    return make_channel({p0, p1});
}

}  // namespace

TEST_CASE("make_density validates and repairs small defects") {
    CHECK_NOTHROW(make_density(qubits({"A"}), Matrix::Identity(2, 2) / 2.0));

    Matrix neg = Matrix::Zero(2, 2);
    neg(0, 0) = 1.1;
    neg(1, 1) = -0.1;
    CHECK_THROWS_AS(make_density(qubits({"A"}), neg), Error);
    try {
        make_density(qubits({"A"}), neg);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotPositive);
    }

    Matrix skew = Matrix::Identity(2, 2) / 2.0;
    skew(0, 1) = 1e-8;
    const auto rho = make_density(qubits({"A"}), skew);
    CHECK(max_abs_diff(rho.matrix(), rho.matrix().adjoint()) == 0.0);

    Matrix big = Matrix::Identity(2, 2) / 2.0;
    big(0, 1) = 1e-3;
    try {
        make_density(qubits({"A"}), big);
        FAIL("expected NotHermitian");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotHermitian);
    }

    try {
        make_density(qubits({"A"}), Matrix::Identity(2, 2));
        FAIL("expected TraceNotOne");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TraceNotOne);
    }

    try {
        make_density(qubits({"A", "B"}), Matrix::Identity(2, 2) / 2.0);
        FAIL("expected DimensionMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DimensionMismatch);
    }
}

TEST_CASE("layouts reject duplicate and empty labels") {
    CHECK_THROWS_AS(qubits({"A", "A"}), Error);
    CHECK_THROWS_AS(qubits({""}), Error);
    CHECK_THROWS_AS(SystemLayout({{"A", 0}}), Error);
    const auto l = qubits({"A", "B", "C"});
    CHECK(l.total_dim() == 8);
    CHECK(l.positions({"C", "A"}) == std::vector<int>{0, 2});
}

TEST_CASE("tensor and partial trace round trip") {
    const auto a = sample_mixed(qubits({"A"}), 2, 11);
    const auto b = sample_mixed(SystemLayout({{"B", 3}}), 2, 12);
    const auto ab = tensor(a, b);
    check_valid(ab);
    CHECK(std::abs(ab.matrix().trace() - cplx(1.0)) <= 1e-12);
    CHECK(max_abs_diff(partial_trace(ab, {"B"}).matrix(), a.matrix()) <= 1e-12);
    CHECK(max_abs_diff(partial_trace(ab, {"A"}).matrix(), b.matrix()) <= 1e-12);
    CHECK_THROWS_AS(tensor(a, a), Error);

    try {
        partial_trace(ab, {"A", "B"});
        FAIL("expected EmptyRemainder");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptyRemainder);
    }
    try {
        partial_trace(ab, {"Q"});
        FAIL("expected UnknownLabel");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnknownLabel);
    }
}

TEST_CASE("partial trace of the three-qubit GHZ state") {
    // Direct oracle: rho_AB[ab, a'b'] = sum_c psi[abc] conj(psi[a'b'c]).
    const auto psi = ghz3();
    Matrix oracle = Matrix::Zero(4, 4);
    for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s)
            for (int c = 0; c < 2; ++c) oracle(r, s) += psi.vector()(2 * r + c) * std::conj(psi.vector()(2 * s + c));
    const auto rho_ab = partial_trace(psi, {"C"});
    CHECK(max_abs_diff(rho_ab.matrix(), oracle) <= 1e-12);
    CHECK(std::abs(rho_ab.matrix()(0, 0) - cplx(0.5)) <= 1e-12);
    CHECK(std::abs(rho_ab.matrix()(3, 3) - cplx(0.5)) <= 1e-12);
    CHECK(std::abs(rho_ab.matrix()(0, 3)) <= 1e-12);
    CHECK(max_abs_diff(partial_trace(psi.density(), {"C"}).matrix(), oracle) <= 1e-12);
    CHECK(rho_ab.layout().labels() == LabelSet{"A", "B"});

    // Middle factor.
    const auto rho_ac = partial_trace(psi, {"B"});
    CHECK(std::abs(rho_ac.matrix()(3, 3) - cplx(0.5)) <= 1e-12);
    CHECK(marginal(psi.density(), {"C", "A"}).layout().labels() == LabelSet{"A", "C"});
}

TEST_CASE("entropy values") {
    CHECK(entropy(ghz3().density()) <= 1e-12);
    CHECK(std::abs(entropy(maximally_mixed(SystemLayout({{"A", 5}}))) - std::log2(5.0)) <= 1e-12);
    CHECK(std::abs(entropy(diag_state(qubits({"A"}), {0.75, 0.25})) - h2(0.25)) <= 1e-12);
    CHECK(std::abs(h2(0.25) - 0.8112781244591328) <= 1e-15);

    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto a = sample_mixed(qubits({"A"}), 2, 100 + s);
        const auto b = sample_mixed(qubits({"B", "C"}), 3, 200 + s);
        CHECK(std::abs(entropy(tensor(a, b)) - entropy(a) - entropy(b)) <= 1e-8);
    }
}

TEST_CASE("entropy of large block-diagonal states splits blocks correctly") {
    const auto rho = sample_mixed(qubits({"A", "B", "C"}), 3, 5);
    const auto flag = diag_state(SystemLayout({{"F", 4}}), {0.1, 0.2, 0.3, 0.4});
    const double expect = entropy(rho) + entropy(flag);
    CHECK(std::abs(entropy(tensor(flag, rho)) - expect) <= 1e-10);
    CHECK(std::abs(entropy(tensor(rho, flag)) - expect) <= 1e-10);
}

TEST_CASE("relative entropy") {
    const auto rho = sample_mixed(qubits({"A", "B"}), 4, 3);
    CHECK(std::abs(relative_entropy(rho, rho)) <= 1e-9);

    const auto zero = basis_state(qubits({"A"}), 0).density();
    const auto one = basis_state(qubits({"A"}), 1).density();
    CHECK(relative_entropy(zero, one) == std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(relative_entropy(zero, rho), Error);

    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto r = sample_mixed(qubits({"A", "B"}), 3, 300 + s);
        const auto ra = partial_trace(r, {"B"});
        const auto rb = partial_trace(r, {"A"});
        const double mi = entropy(ra) + entropy(rb) - entropy(r);
        CHECK(std::abs(relative_entropy(r, tensor(ra, rb)) - mi) <= 1e-8);

        const auto s2 = sample_mixed(qubits({"A", "B"}), 4, 400 + s);
        const double d = relative_entropy(r, s2);
        CHECK(d >= 0.0);
        CHECK(trace_distance(r, s2) > 1e-7);
        CHECK(d > 1e-9);

        const auto ch = sample_channel(2, 2, 2, 500 + s);
        const double after = relative_entropy(apply_channel(r, ch, "A", "A"), apply_channel(s2, ch, "A", "A"));
        CHECK(after <= d + 1e-7);
    }
}

TEST_CASE("trace distance") {
    const auto rho = sample_mixed(qubits({"A"}), 2, 1);
    CHECK(trace_distance(rho, rho) <= 1e-12);
    CHECK(std::abs(trace_distance(basis_state(qubits({"A"}), 0).density(),
                                  basis_state(qubits({"A"}), 1).density()) - 2.0) <= 1e-12);
    CHECK(std::abs(trace_distance(diag_state(qubits({"A"}), {1.0, 0.0}),
                                  diag_state(qubits({"A"}), {0.75, 0.25})) - 0.5) <= 1e-12);
}

TEST_CASE("purification round trip") {
    const auto phi = sample_pure(qubits({"A", "B"}), 9);
    const auto p1 = purify(phi.density(), "X");
    CHECK(p1.layout().dim_of("X") == 1);
    CHECK(std::abs(std::abs(p1.vector().dot(phi.vector())) - 1.0) <= 1e-9);

    const auto mm = purify(maximally_mixed(qubits({"A"})), "X");
    CHECK(mm.layout().dim_of("X") == 2);
    CHECK(std::abs(entropy(partial_trace(mm, {"X"})) - 1.0) <= 1e-12);

    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto rho = sample_mixed(qubits({"A", "B", "C"}), 3, 40 + s);
        const auto psi = purify(rho, "X");
        CHECK(psi.layout().dim_of("X") == 3);
        CHECK(max_abs_diff(partial_trace(psi, {"X"}).matrix(), rho.matrix()) <= 1e-8);
        // Deterministic output.
        CHECK(max_abs_diff(purify(rho, "X").vector(), psi.vector()) == 0.0);
    }
    CHECK_THROWS_AS(purify(maximally_mixed(qubits({"A"})), "A"), Error);
}

TEST_CASE("channels and dephasing on a Bell pair") {
    const auto b = bell().density();
    Matrix expect = Matrix::Zero(4, 4);
    expect(0, 0) = expect(3, 3) = 0.5;

    // Kraus-sum oracle for dephasing on A: (P_k ⊗ I) rho (P_k ⊗ I).
    Matrix oracle = Matrix::Zero(4, 4);
    const auto deph = z_dephasing();
    for (const auto& k : deph.kraus()) {
        Matrix full = Matrix::Zero(4, 4);
        for (int a = 0; a < 2; ++a)
            for (int a2 = 0; a2 < 2; ++a2)
                for (int x = 0; x < 2; ++x) full(2 * a + x, 2 * a2 + x) = k(a, a2);
        oracle += full * b.matrix() * full.adjoint();
    }
    CHECK(max_abs_diff(oracle, expect) <= 1e-12);

    CHECK(max_abs_diff(apply_channel(b, z_dephasing(), "A", "A").matrix(), expect) <= 1e-12);
    CHECK(max_abs_diff(dephase(b, "A").matrix(), expect) <= 1e-12);
    CHECK(max_abs_diff(apply_channel(b, make_channel({Matrix::Identity(2, 2)}), "A", "A").matrix(), b.matrix()) <= 1e-12);

    std::vector<Matrix> depol;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Matrix k = Matrix::Zero(2, 2);
            k(i, j) = 1.0 / std::sqrt(2.0);
            depol.push_back(k);
        }
    CHECK(max_abs_diff(apply_channel(b, make_channel(depol), "A", "A").matrix(), Matrix::Identity(4, 4) / 4.0) <= 1e-12);

    // Relabel and resize.
    const auto wide = apply_channel(b, sample_channel(2, 3, 2, 1), "A", "Z");
    CHECK(wide.layout().labels() == LabelSet{"Z", "B"});
    CHECK(wide.dim() == 6);
    check_valid(wide);
    CHECK_THROWS_AS(apply_channel(b, sample_channel(3, 2, 1, 1), "A", "A"), Error);

    const auto diag = diag_state(qubits({"A", "B"}), {0.1, 0.2, 0.3, 0.4});
    CHECK(max_abs_diff(dephase(diag, "B").matrix(), diag.matrix()) == 0.0);
    for (std::uint64_t s = 0; s < 50; ++s) {
        const auto r = sample_mixed(qubits({"A", "B"}), 2, 700 + s);
        CHECK(entropy(dephase(r, "B")) >= entropy(r) - 1e-10);
    }
}

TEST_CASE("sampling is deterministic and valid") {
    const auto r1 = sample_mixed(qubits({"A", "B"}), 1, 77);
    CHECK(entropy(r1) <= 1e-9);
    CHECK(max_abs_diff(sample_mixed(qubits({"A", "B"}), 3, 77).matrix(),
                       sample_mixed(qubits({"A", "B"}), 3, 77).matrix()) == 0.0);
    const Matrix u = sample_unitary(4, 3);
    CHECK(max_abs_diff(u.adjoint() * u, Matrix::Identity(4, 4)) <= 1e-12);
    const auto ch = sample_channel(2, 3, 4, 5);
    Matrix acc = Matrix::Zero(2, 2);
    for (const auto& k : ch.kraus()) acc += k.adjoint() * k;
    CHECK(max_abs_diff(acc, Matrix::Identity(2, 2)) <= 1e-9);
    CHECK(derive_seed(1, 2) != derive_seed(1, 3));

    SampleParams bad;
    bad.layout = qubits({"A"});
    bad.rank = 0;
    CHECK_THROWS_AS(sample(SampleKind::MixedRank, bad, 1), Error);
}

TEST_CASE("state JSON round trip") {
    const auto rho = sample_mixed(qubits({"A", "B"}), 2, 8);
    const auto back = density_from_json(to_json(rho));
    CHECK(max_abs_diff(back.matrix(), rho.matrix()) <= 1e-15);
    const auto psi = sample_pure(qubits({"A"}), 8);
    const auto v = state_from_json(to_json(psi));
    REQUIRE(std::holds_alternative<PureState>(v));
    CHECK(max_abs_diff(std::get<PureState>(v).vector(), psi.vector()) == 0.0);
    CHECK_THROWS_AS(state_from_json(nlohmann::json::parse(R"({"layout": 3})")), Error);
}
