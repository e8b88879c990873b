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

// Derivative-free local descent shared by every optimizer in the library.
// The caller supplies a perturbation that keeps the point feasible (for the
// isometries used here, products of two-level rotations on rows).

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "detail/linalg.hpp"
#include "entrolab/sample.hpp"

namespace entrolab::detail {

struct DescentOptions {
    int max_iters = 400;
    double rel_tol = 1e-7;
    int window = 50;
    double initial_step = 0.5;
    double min_step = 1e-7;
    double max_step = 3.2;
    double shrink = 0.8;      // step factor after a rejected move
    double min_gain = 1e-11;  // smaller improvements count as ties
};

template <class Point>
struct DescentResult {
    Point point;
    double value = 0.0;
    int iterations = 0;
    int evals = 0;
};

/// Minimizes f from `start`. perturb(point, step, rng) must return a feasible
/// neighbour at roughly distance `step`.
template <class Point, class Objective, class Perturb>
DescentResult<Point> local_descent(Point start, double start_value, Objective&& f, Perturb&& perturb,
                                   const DescentOptions& opt, std::mt19937_64& rng) {
    DescentResult<Point> r{std::move(start), start_value, 0, 0};
    double step = opt.initial_step;
    double window_start = r.value;
    for (int it = 0; it < opt.max_iters; ++it) {
        r.iterations = it + 1;
        Point cand = perturb(r.point, step, rng);
        const double v = f(cand);
        ++r.evals;
        if (std::isfinite(v) && v < r.value - opt.min_gain) {
            r.point = std::move(cand);
            r.value = v;
            step = std::min(step * 1.25, opt.max_step);
        } else {
            step *= opt.shrink;
        }
        if (step < opt.min_step) break;
        if (opt.window > 0 && (it + 1) % opt.window == 0) {
            const double gain = window_start - r.value;
            if (gain <= opt.rel_tol * std::max(1.0, std::abs(r.value))) break;
            window_start = r.value;
        }
    }
    return r;
}

template <class Point>
struct SearchOutcome {
    Point point;
    double value = std::numeric_limits<double>::infinity();
    int evals = 0;
    std::vector<double> restart_values;
};

/// Runs `restarts` descents. Restart 0 refines the best of `candidates` (if
/// any); the others start at random_start(rng). Restart r draws from
/// derive_seed(seed, r). Values within opt.min_gain of the best are ties and
/// keep the earlier point.
template <class Point, class Objective, class Start, class Perturb>
SearchOutcome<Point> multi_restart(const std::vector<Point>& candidates, Objective&& f, Start&& random_start,
                                   Perturb&& perturb, const DescentOptions& opt, int restarts, std::uint64_t seed) {
    SearchOutcome<Point> out;
    for (const auto& c : candidates) {
        const double v = f(c);
        ++out.evals;
        if (v < out.value - opt.min_gain) {
            out.value = v;
            out.point = c;
        }
    }
    const bool have_seed_point = !candidates.empty();
    const Point seed_point = out.point;
    const double seed_value = out.value;
    for (int r = 0; r < restarts; ++r) {
        std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
        Point start;
        double v0 = 0.0;
        if (r == 0 && have_seed_point) {
            start = seed_point;
            v0 = seed_value;
        } else {
            start = random_start(rng);
            v0 = f(start);
            ++out.evals;
        }
        auto res = local_descent(std::move(start), v0, f, perturb, opt, rng);
        out.evals += res.evals;
        out.restart_values.push_back(res.value);
        if (res.value < out.value - opt.min_gain) {
            out.value = res.value;
            out.point = std::move(res.point);
        }
    }
    return out;
}

/// Applies one to three random two-level rotations to the rows of v.
template <class Rng>
Matrix perturb_rows(const Matrix& v, double step, Rng& rng) {
    Matrix out = v;
    const auto n = v.rows();
    if (n < 2) return out;
    std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
    std::uniform_int_distribution<int> count(1, 3);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * 3.141592653589793);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int moves = count(rng);
    for (int k = 0; k < moves; ++k) {
        const Eigen::Index a = pick(rng);
        Eigen::Index b = pick(rng);
        while (b == a) b = pick(rng);
        apply_givens_rows(out, a, b, step * normal(rng), phase(rng));
    }
    return out;
}

}  // namespace entrolab::detail
