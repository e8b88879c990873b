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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "entrolab/qstate.hpp"

namespace entrolab {

namespace detail {
class EntropyCache;
}

/// Which multipartite mutual information: I = sum S(A_i) - S(A_1..A_m),
/// S = sum S(all but A_i) - (m-1) S(A_1..A_m).
enum class Which { I, S };

std::string_view to_string(Which w) noexcept;
/// Accepts "I" or "S"; throws BadParams otherwise.
Which parse_which(std::string_view s);

/// Parties A_1 : ... : A_m and an optional conditioning register E.
struct Partition {
    std::vector<LabelSet> parties;
    LabelSet conditioner;

    /// Grammar: parties joined by ':', labels inside a party by ',', an
    /// optional conditioner after '|'. Example: "A,A':B:C|E".
    static Partition parse(std::string_view text);
    std::string to_string() const;

    std::size_t size() const noexcept { return parties.size(); }
    /// Union of all party labels, in party order.
    LabelSet party_labels() const;
    /// Throws BadPartition unless there are at least two nonempty, pairwise
    /// disjoint parties, the conditioner is disjoint from them, and every
    /// label exists in `layout`.
    void validate(const SystemLayout& layout) const;
};

/// Memoized subsystem entropies of one state, addressed by label sets. The
/// table refers to the state it was built from, which must outlive it.
class EntropyTable {
public:
    explicit EntropyTable(const DensityMatrix& rho);
    explicit EntropyTable(const PureState& psi);
    EntropyTable(DensityMatrix&&) = delete;
    EntropyTable(PureState&&) = delete;
    ~EntropyTable();
    EntropyTable(const EntropyTable&) = delete;
    EntropyTable& operator=(const EntropyTable&) = delete;

    /// S of the joint system of `labels` (order and duplicates ignored);
    /// the empty set has entropy 0.
    double operator()(const LabelSet& labels);
    const SystemLayout& layout() const noexcept { return layout_; }

private:
    SystemLayout layout_;
    detail::EntropyCache* cache_;
};

/// A formal linear combination of subsystem entropies. Conditioning on E
/// replaces every S(T) by S(TE) - S(E).
class EntropyExpr {
public:
    void add(LabelSet set, double coeff);
    EntropyExpr condition(const LabelSet& e) const;
    double evaluate(EntropyTable& table) const;
    const std::map<LabelSet, double>& terms() const noexcept { return terms_; }

    EntropyExpr operator+(const EntropyExpr& o) const;
    EntropyExpr operator-(const EntropyExpr& o) const;
    EntropyExpr operator*(double c) const;

    static EntropyExpr entropy(const LabelSet& set);
    static EntropyExpr multi_info(const std::vector<LabelSet>& parties, Which which);
    /// I(A:B|E) = S(AE) + S(BE) - S(ABE) - S(E).
    static EntropyExpr cmi(const LabelSet& a, const LabelSet& b, const LabelSet& e = {});

private:
    std::map<LabelSet, double> terms_;
};

double multi_info_I(const DensityMatrix& rho, const Partition& part);
double multi_info_S(const DensityMatrix& rho, const Partition& part);
double multi_info(const DensityMatrix& rho, const Partition& part, Which which);

/// Conditional multipartite mutual information by entropy subtraction. An
/// empty conditioner gives the unconditional value.
double cond_multi_info(const DensityMatrix& sigma, const Partition& part, Which which);
double cond_multi_info(const PureState& sigma, const Partition& part, Which which);
double cond_multi_info(EntropyTable& table, const Partition& part, Which which);

/// I(A:B|E) = S(AE) + S(BE) - S(ABE) - S(E).
double bipartite_cmi(const DensityMatrix& sigma, const LabelSet& a, const LabelSet& b,
                     const LabelSet& e = {});

struct IdentityRecord {
    std::string name;
    std::size_t sample = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;   // lhs - rhs
    bool inequality = false; // lhs >= rhs expected
};

struct IdentityReport {
    std::vector<IdentityRecord> records;
    double tol = 1e-8;
    bool pass = true;
    double max_violation = 0.0;

    void add(IdentityRecord r);
};

/// One input for the identity suite. `part` holds the parties and the
/// conditioner E; `x` is an extra local system. When `primed` is set, each
/// party A_i is paired with a label A_i' and the chain decomposition of the
/// doubled parties is checked as well.
struct IdentitySample {
    DensityMatrix state;
    Partition part;
    std::string x;
    std::optional<std::vector<std::pair<std::string, std::string>>> primed;
};

IdentityReport identity_suite(const std::vector<IdentitySample>& samples, double tol);

/// Residual terms of the decomposition
///   f(A_1A_1' : ... : A_mA_m' | E) = f(A_1:..:A_m | A_1'..A_m' E) + f(A_1':..:A_m' | E) + sum of terms.
/// For I the i-th term is I(A_i : primes other than A_i' | A_i' E); for S it
/// is I(unprimed other than A_i : A_i' | primes other than A_i' E).
std::vector<double> chain_residuals(const DensityMatrix& sigma,
                                    const std::vector<std::pair<std::string, std::string>>& primed_pairs,
                                    const LabelSet& e, Which which);

/// The three values of the chain decomposition, for checks that need them.
struct ChainParts {
    double total = 0.0;      // f(A_1A_1' : ... | E)
    double unprimed = 0.0;   // f(A_1 : ... | primes E)
    double primed = 0.0;     // f(A_1' : ... | E)
    std::vector<double> residuals;
};
ChainParts chain_decomposition(const DensityMatrix& sigma,
                               const std::vector<std::pair<std::string, std::string>>& primed_pairs,
                               const LabelSet& e, Which which);

struct MeasurementSearch {
    int restarts = 32;
    int max_iters = 200;
    std::uint64_t seed = 0;
};

struct MeasuredInfo {
    double value = 0.0;
    Matrix basis_a;            // columns are the measurement vectors
    Matrix basis_b;
    bool lower_estimate = false;  // true when found by search
};

/// Classical mutual information of the outcomes of local projective
/// measurements on the two parties of `part`. With `bases` the value is exact
/// for those bases; otherwise the best value over a seeded search is
/// returned, which only bounds the supremum from below.
MeasuredInfo measured_mutual_info(const DensityMatrix& rho, const Partition& part,
                                  const std::optional<std::pair<Matrix, Matrix>>& bases,
                                  const MeasurementSearch& search = {});

}  // namespace entrolab
