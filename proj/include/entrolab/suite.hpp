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
#include <vector>

#include "entrolab/entropic.hpp"
#include "entrolab/harness.hpp"

namespace entrolab {

struct SuiteOptions {
    int samples = 100;
    std::uint64_t seed = 0;
    double identity_tol = 1e-8;
    double monotone_tol = 1e-7;
};

/// Seeded run of every exact identity and axiom check on random states.
struct SuiteResult {
    IdentityReport identities;             // generic, primed and pure-duality samples
    std::vector<ProbeReport> additivity;   // products of extensions, I and S
    std::vector<ProbeReport> monotone;     // local channels, I and S
    std::vector<ProbeReport> axioms;       // LUI and FLAGS, I and S
    std::vector<ProbeReport> controls;     // must fail: entropy convexity, rank continuity
    bool pass = false;                     // everything within tolerance and every control failed
};

SuiteResult run_standard_suite(const SuiteOptions& opt);

}  // namespace entrolab
