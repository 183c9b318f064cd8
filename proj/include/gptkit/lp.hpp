// Copyright 2026 The gpt-kit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GPTKIT_LP_HPP
#define GPTKIT_LP_HPP

#include <cstddef>
#include <optional>

#include "gptkit/scalar.hpp"

namespace gptkit {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    Vector x;
    Scalar objective;

    bool feasible() const { return status != LpStatus::infeasible; }
};

/**
 * Solves  minimize c·x  subject to  A x = b, x >= 0  with the two-phase
 * simplex method and Bland's anti-cycling rule.
 *
 * With rational data every pivot is exact. With doubles, entries within
 * `tol` of zero are treated as zero. Throws SolverFailure if the iteration
 * limit is reached.
 */
LpResult minimize(const Matrix& a, const Vector& b, const Vector& c, double tol = kDefaultTolerance);

/// Feasibility only: some x >= 0 with A x = b.
std::optional<Vector> find_nonnegative_solution(const Matrix& a, const Vector& b, double tol = kDefaultTolerance);

/// True iff x is a nonnegative combination of `generators`.
bool in_conic_hull(const std::vector<Vector>& generators, const Vector& x, double tol = kDefaultTolerance);

}  // namespace gptkit

#endif  // GPTKIT_LP_HPP
