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

#ifndef GPTKIT_MODELS_HPP
#define GPTKIT_MODELS_HPP

#include <string>
#include <string_view>
#include <vector>

#include "gptkit/cone.hpp"

namespace gptkit {

enum class ModelFamily { classical, polygon, ball };

struct ModelDescriptor {
    ModelFamily family = ModelFamily::classical;
    int parameter = 1;

    /// Canonical name in the CLI grammar ("classical:3", "squit", "polygon:5", "ball:3").
    std::string name() const;
};

/// Parses "classical:n", "polygon:n", "squit" (= polygon:4) or "ball:d".
ModelDescriptor parse_model_name(std::string_view text);
StateSpace make_model(const ModelDescriptor& descriptor, double tol = kDefaultTolerance);
StateSpace make_model(std::string_view name, double tol = kDefaultTolerance);

/// Probability simplex on n points: the nonnegative orthant with u = (1, ..., 1).
StateSpace make_classical(int n);

/**
 * Regular n-gon state space in R³ with unit (0, 0, 1). Vertices are
 * (cos 2πk/n, sin 2πk/n, 1), computed in floating point, except for n = 4,
 * which uses the exact square (1,1,1), (-1,1,1), (-1,-1,1), (1,-1,1).
 */
StateSpace make_polygon(int n, double tol = kDefaultTolerance);
inline StateSpace make_squit() { return make_polygon(4); }

/// d-ball state space: Lorentz cone in R^{d+1}, unit = last coordinate.
StateSpace make_ball(int d, double tol = kDefaultTolerance);

/// Direct sum A ⊕ B on R^{dim A + dim B}, units concatenated.
StateSpace direct_sum(const StateSpace& a, const StateSpace& b);

/// Rotation group Z_n of a polygon model, as matrices on state coordinates.
std::vector<Matrix> polygon_rotation_group(int n);
/// Cyclic permutations of classical(n).
std::vector<Matrix> classical_cyclic_group(int n);

/// A rotation-equivariant order isomorphism A* -> A for polygon(n), normalized
/// so that it maps the unit functional to a normalized state.
Matrix polygon_self_duality_map(int n);
/// (1/n)·identity, the normalized equivariant isomorphism for classical(n).
Matrix classical_self_duality_map(int n);

/// A model together with a transitive symmetry group and an equivariant
/// isomorphism A* -> A; the input of deterministic teleportation.
struct SymmetricModel {
    StateSpace space;
    std::vector<Matrix> group;
    Matrix omega_hat;
};

/// Supported: classical:n and polygon:n with group "z<n>" (the cyclic group).
SymmetricModel make_symmetric_model(std::string_view model, std::string_view group);

}  // namespace gptkit

#endif  // GPTKIT_MODELS_HPP
