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

#ifndef GPTKIT_LINALG_HPP
#define GPTKIT_LINALG_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "gptkit/scalar.hpp"

namespace gptkit {

/// Reduced row echelon form with the pivot column of each nonzero row.
struct RowEchelon {
    Matrix reduced;
    std::vector<std::size_t> pivots;

    std::size_t rank() const { return pivots.size(); }
};

/// Gauss-Jordan elimination. Exact for rational input (first nonzero pivot);
/// partial pivoting with an absolute zero threshold for doubles.
RowEchelon row_reduce(Matrix m, double tol = kDefaultTolerance);

std::size_t rank(const Matrix& m, double tol = kDefaultTolerance);
std::size_t rank(const std::vector<Vector>& vectors, std::size_t dim, double tol = kDefaultTolerance);

/// Indices of a maximal linearly independent subset, chosen greedily in order.
std::vector<std::size_t> independent_subset(const std::vector<Vector>& vectors, std::size_t dim,
                                            double tol = kDefaultTolerance);

std::optional<Matrix> inverse(const Matrix& m, double tol = kDefaultTolerance);

/// A basis of {x : m x = 0}.
std::vector<Vector> nullspace(const Matrix& m, double tol = kDefaultTolerance);

/// Some x with m x = b, or nullopt when the system is inconsistent.
std::optional<Vector> solve(const Matrix& m, const Vector& b, double tol = kDefaultTolerance);

}  // namespace gptkit

#endif  // GPTKIT_LINALG_HPP
