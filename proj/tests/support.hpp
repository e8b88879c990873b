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

// Small builders shared by the unit tests.

#pragma once

#include <cmath>
#include <initializer_list>
#include <string>
#include <vector>

#include <doctest.h>

#include "entrolab/qstate.hpp"

namespace entrolab::testing {

inline SystemLayout qubits(std::initializer_list<const char*> labels, int dim = 2) {
    std::vector<Subsystem> subs;
    for (const char* l : labels) subs.push_back({l, dim});
    return SystemLayout(std::move(subs));
}

inline DensityMatrix diag_state(const SystemLayout& layout, std::initializer_list<double> p) {
    Matrix m = Matrix::Zero(layout.total_dim(), layout.total_dim());
    Eigen::Index i = 0;
    for (double x : p) m(i, i) = x, ++i;
    return make_density(layout, m);
}

inline PureState bell(const std::string& a = "A", const std::string& b = "B") {
    Vector v = Vector::Zero(4);
    v(0) = v(3) = 1.0 / std::sqrt(2.0);
    return make_pure(SystemLayout({{a, 2}, {b, 2}}), v);
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

// Binary entropy, computed without the library.
inline double h2(double p) {
    if (p <= 0 || p >= 1) return 0.0;
    return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

// Brute-force reduced state: decodes every basis index digit by digit.
inline Matrix oracle_reduce(const DensityMatrix& rho, const LabelSet& keep) {
    const auto& l = rho.layout();
    const auto n = l.size();
    std::vector<bool> kept(n, false);
    for (const auto& k : keep) kept[l.index_of(k)] = true;
    Eigen::Index dk = 1;
    for (std::size_t i = 0; i < n; ++i)
        if (kept[i]) dk *= l[i].dim;
    auto split = [&](Eigen::Index idx, Eigen::Index& kidx, Eigen::Index& ridx) {
        std::vector<int> digits(n);
        for (std::size_t i = n; i-- > 0;) {
            digits[i] = static_cast<int>(idx % l[i].dim);
            idx /= l[i].dim;
        }
        kidx = ridx = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (kept[i])
                kidx = kidx * l[i].dim + digits[i];
            else
                ridx = ridx * l[i].dim + digits[i];
        }
    };
    Matrix out = Matrix::Zero(dk, dk);
    const Eigen::Index d = rho.dim();
    for (Eigen::Index i = 0; i < d; ++i) {
        Eigen::Index ki, ri;
        split(i, ki, ri);
        for (Eigen::Index j = 0; j < d; ++j) {
            Eigen::Index kj, rj;
            split(j, kj, rj);
            if (ri == rj) out(ki, kj) += rho.matrix()(i, j);
        }
    }
    return out;
}

inline double oracle_entropy(const DensityMatrix& rho, const LabelSet& keep) {
    if (keep.empty()) return 0.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(oracle_reduce(rho, keep));
    double s = 0.0;
    for (double x : es.eigenvalues())
        if (x > 1e-14) s -= x * std::log2(x);
    return s;
}

inline LabelSet operator+(LabelSet a, const LabelSet& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

// I and S straight from the defining entropy sums, using the oracle entropies.
inline double oracle_I(const DensityMatrix& r, const std::vector<LabelSet>& ps, const LabelSet& e) {
    LabelSet all;
    double v = 0.0;
    for (const auto& p : ps) {
        v += oracle_entropy(r, p + e) - oracle_entropy(r, e);
        all = all + p;
    }
    return v - (oracle_entropy(r, all + e) - oracle_entropy(r, e));
}

inline double oracle_S(const DensityMatrix& r, const std::vector<LabelSet>& ps, const LabelSet& e) {
    LabelSet all;
    for (const auto& p : ps) all = all + p;
    double v = 0.0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        LabelSet rest;
        for (std::size_t k = 0; k < ps.size(); ++k)
            if (k != i) rest = rest + ps[k];
        v += oracle_entropy(r, rest + e) - oracle_entropy(r, e);
    }
    const double m = static_cast<double>(ps.size());
    return v - (m - 1) * (oracle_entropy(r, all + e) - oracle_entropy(r, e));
}

inline ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::ParseError;
}

}  // namespace entrolab::testing
