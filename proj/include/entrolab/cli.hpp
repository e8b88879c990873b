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
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "entrolab/entropic.hpp"
#include "entrolab/squash.hpp"

namespace entrolab::cli {

enum class Verb { Compute, Squash, Suite, Flower, Keybound, Intrinsic, DemoLock };
enum class Format { Json, Csv, Table };

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitViolation = 3;
inline constexpr int kExitNumeric = 4;

struct Command {
    Verb verb = Verb::Compute;
    std::string state;      // named state ("ghz:m=3,d=2") or file:path
    std::string partition;  // empty: derived from a named state
    Which which = Which::I;
    std::string mode;       // squash: c | q | bipartite; intrinsic: intrinsic | sarrow | both
    OptimizerConfig cfg;
    Format format = Format::Json;
    std::uint64_t seed = 0;
    int m = 3;
    int d = 2;
    int samples = 100;
    int extensions = 20;
    bool optimize = false;  // flower: add optimizer rows
    std::string dist;       // intrinsic: key:m=..,d=..,eve=.. or file:path (CSV or JSON)
    std::string eve = "E";
    std::string keys;       // keybound: comma-separated key labels
};

/// Bad command line. `flag()` names the offending flag when known.
class UsageError : public std::runtime_error {
public:
    UsageError(std::string flag, const std::string& msg)
        : std::runtime_error(flag.empty() ? msg : flag + ": " + msg), flag_(std::move(flag)) {}
    const std::string& flag() const noexcept { return flag_; }

private:
    std::string flag_;
};

/// Thrown for --help; what() is the help text.
class HelpRequested : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses arguments after the program name. The default seed comes from
/// ENTROLAB_SEED when set.
Command parse_args(const std::vector<std::string>& args);

/// Resolves a named state or file:path.
DensityMatrix resolve_state(const std::string& spec);
/// Partition implied by a named state ("A:B:C" for ghz and key, doubled
/// parties for flower and pdit).
std::string default_partition(const std::string& spec);

/// Executes the command, writing the report to `out` and diagnostics to `err`.
int run(const Command& cmd, std::ostream& out, std::ostream& err);

/// parse_args + run with exit-code mapping.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace entrolab::cli
