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

#ifndef GPTKIT_DOUBLE_DESCRIPTION_HPP
#define GPTKIT_DOUBLE_DESCRIPTION_HPP

#include <cstddef>
#include <vector>

#include "gptkit/scalar.hpp"

namespace gptkit {

/// Largest ambient dimension accepted by vertex/facet enumeration.
inline constexpr std::size_t kEnumerationDimensionCap = 16;

/**
 * Extreme rays of the pointed cone { x : <h, x> >= 0 for every h in `inequalities` }.
 *
 * Incremental double-description method: start from the simplicial cone of
 * `dim` independent inequalities, then add the remaining ones one at a time,
 * combining adjacent positive/negative ray pairs. Adjacency uses the
 * combinatorial zero-set test. Rays come back in canonical scale
 * (see canonical_ray) and in a deterministic order for a given input order.
 *
 * Throws DegenerateCone if the inequalities do not span the space (the cone
 * would contain a line) and DimensionCapExceeded above the cap.
 */
std::vector<Vector> extreme_rays(const std::vector<Vector>& inequalities, std::size_t dim,
                                 double tol = kDefaultTolerance);

}  // namespace gptkit

#endif  // GPTKIT_DOUBLE_DESCRIPTION_HPP
