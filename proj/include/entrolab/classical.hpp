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

#include <string>
#include <string_view>
#include <vector>

#include "entrolab/entropic.hpp"
#include "entrolab/squash.hpp"

namespace entrolab {

/// Largest number of cells in a dense distribution.
inline constexpr std::size_t kClassicalMaxCells = std::size_t{1} << 16;

/// Dense joint distribution. The layout's labels and dims are the variables
/// and alphabet sizes; cells follow the same index order as quantum states.
class JointDistribution {
public:
    /// Rejects negative cells and totals off 1 by more than 1e-12.
    JointDistribution(SystemLayout alphabets, std::vector<double> probs);

    const SystemLayout& alphabets() const noexcept { return alphabets_; }
    const std::vector<double>& probs() const noexcept { return probs_; }
    std::size_t cells() const noexcept { return probs_.size(); }

    /// Marginal over `labels`, indexed in the given label order.
    std::vector<double> marginal(const LabelSet& labels) const;
    /// Probability of one outcome tuple (one value per variable, layout order).
    double at(const std::vector<int>& outcome) const;

private:
    SystemLayout alphabets_;
    std::vector<double> probs_;
};

/// Column-stochastic matrix, rows = outputs.
class StochasticChannel {
public:
    explicit StochasticChannel(Eigen::MatrixXd matrix);

    int in_size() const noexcept { return static_cast<int>(matrix_.cols()); }
    int out_size() const noexcept { return static_cast<int>(matrix_.rows()); }
    const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }

    static StochasticChannel identity(int in, int out);
    /// Every input goes to output 0.
    static StochasticChannel constant(int in, int out);

private:
    Eigen::MatrixXd matrix_;
};

double classical_entropy(const JointDistribution& p, const LabelSet& vars);
double classical_mi(const JointDistribution& p, const LabelSet& a, const LabelSet& b);
double classical_cmi(const JointDistribution& p, const LabelSet& a, const LabelSet& b, const LabelSet& c);
/// Classical counterpart of cond_multi_info; the partition may carry a conditioner.
double cond_multi_info_classical(const JointDistribution& p, const Partition& part, Which which = Which::I);

/// Replaces variable `label` by the channel output, relabelled `new_label`.
JointDistribution apply_channel(const JointDistribution& p, const std::string& label, const StochasticChannel& ch,
                                const std::string& new_label);

/// Parties are the variables other than `eve`, one per party, in order.
Partition eve_partition(const JointDistribution& p, const std::string& eve);

/// I(A_1:...:A_m | Ebar) after processing E by `ch`.
double intrinsic_value_at(const JointDistribution& p, const std::string& eve, const StochasticChannel& ch);
/// I(A_1:A_2...A_m|Ebar) + I(A_2:A_3...A_m|A_1 Ebar) + ... after processing E by `ch`.
double s_arrow_value_at(const JointDistribution& p, const std::string& eve, const StochasticChannel& ch);

/// Infimum search over channels E -> Ebar with |Ebar| = cfg.eve_alphabet (0
/// means |E|). The witness is the channel matrix.
BoundReport intrinsic_info(const JointDistribution& p, const std::string& eve, const OptimizerConfig& cfg = {});
BoundReport s_arrow(const JointDistribution& p, const std::string& eve, const OptimizerConfig& cfg = {});

enum class EveMode { Independent, Copy };
EveMode parse_eve_mode(std::string_view s);

/// (1/d) sum_i delta_{a_1 = ... = a_m = i} on A, B, ... times Eve's variable E
/// of size d: uniform and independent, or a copy of the key.
JointDistribution ideal_key_dist(int m, int d, EveMode mode);

/// Diagonal density matrix with the same layout.
DensityMatrix embed_classical(const JointDistribution& p);

/// Header of labels plus a trailing probability column, then one row per
/// outcome tuple. Alphabet sizes are the largest value seen plus one.
/// Totals within 1e-6 of 1 are renormalized.
JointDistribution parse_distribution_csv(std::string_view text);
std::string to_csv(const JointDistribution& p);

}  // namespace entrolab
