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

#ifndef GPTKIT_COMPOSITES_HPP
#define GPTKIT_COMPOSITES_HPP

#include "gptkit/cone.hpp"

namespace gptkit {

// Bipartite coordinates: a form ω on A* x B* is the dim_A x dim_B array
// ω(e_i*, e_j*), flattened row-major as index i * dim_B + j. Product states
// flatten to kron(α, β). The triple layout used by the three-party shapes is
// the same reshuffle, so A(BC) and (AB)C share coordinates.

enum class TensorKind { min, max, custom };
enum class Side { a, b };

/// A state space on the dim_A·dim_B coordinate space together with its factors.
struct CompositeSpace {
    StateSpace space;
    StateSpace a;
    StateSpace b;
    TensorKind tag = TensorKind::custom;
};

/// Generated by products of factor generators; unit u_A ⊗ u_B.
CompositeSpace min_tensor(const StateSpace& a, const StateSpace& b);
/// Cut out by products of dual-cone generators; unit u_A ⊗ u_B.
CompositeSpace max_tensor(const StateSpace& a, const StateSpace& b);

/// Min generators as products (no enumeration).
std::vector<Vector> product_generators(const StateSpace& a, const StateSpace& b);
/// Max facets as products of dual generators (no enumeration).
std::vector<Vector> product_facets(const StateSpace& a, const StateSpace& b);

/// A ⊗_min B <= candidate <= A ⊗_max B. Throws InvalidInput if the
/// candidate's unit is not u_A ⊗ u_B.
bool is_composite(const StateSpace& a, const StateSpace& b, const StateSpace& candidate);

/// True iff both cones have the same members (mutual generator containment).
bool min_equals_max(const StateSpace& a, const StateSpace& b);

/// A bilinear form on A* x B*.
class BipartiteState {
 public:
    BipartiteState(StateSpace a, StateSpace b, Matrix coords);
    static BipartiteState product(const StateSpace& a, const Vector& alpha, const StateSpace& b, const Vector& beta);

    const StateSpace& a() const { return a_; }
    const StateSpace& b() const { return b_; }
    const Matrix& coords() const { return coords_; }
    Vector flat() const { return coords_.flat(); }

    /// ω(a, b) for functionals a on A and b on B.
    Scalar evaluate(const Vector& fa, const Vector& fb) const;
    /// ω(h_A, h_B) >= 0 for all dual-cone generator pairs.
    bool is_positive() const;
    bool is_normalized() const;

 private:
    StateSpace a_;
    StateSpace b_;
    Matrix coords_;
};

/// A functional on a bipartite composite: f(α ⊗ β) = αᵀ F β.
class BipartiteEffect {
 public:
    BipartiteEffect(StateSpace a, StateSpace b, Matrix coords);
    static BipartiteEffect product(const StateSpace& a, const Vector& fa, const StateSpace& b, const Vector& fb);

    const StateSpace& a() const { return a_; }
    const StateSpace& b() const { return b_; }
    const Matrix& coords() const { return coords_; }
    Vector flat() const { return coords_.flat(); }

    Scalar evaluate(const Vector& alpha, const Vector& beta) const;
    /// 0 <= f <= u_A ⊗ u_B on A ⊗_min B (checked on product generators).
    bool is_effect_on_min() const;
    /// 0 <= f <= u_A ⊗ u_B on A ⊗_max B (membership in the cone of products of dual generators).
    bool is_effect_on_max() const;

 private:
    StateSpace a_;
    StateSpace b_;
    Matrix coords_;
};

/// ω(·, u_B) (side a) or ω(u_A, ·) (side b).
Vector marginal(const BipartiteState& omega, Side keep);
/// ω(a, ·)/ω_A(a) for an effect a on A; the zero vector when ω_A(a) = 0.
Vector conditional(const BipartiteState& omega, const Effect& a);
/// ω(a, ·), the un-normalized conditional state.
Vector partial_evaluation(const BipartiteState& omega, const Effect& a);

/// ω̂ : A* -> B, a ↦ ω(a, ·).
LinearMap omega_hat(const BipartiteState& omega);
/// f̂ : A -> B*, α ↦ f(α ⊗ ·).
LinearMap f_hat(const BipartiteEffect& f);

/// State ω ∈ A ⊗_max B is in max but not min (LP membership test in the min cone).
bool is_entangled(const BipartiteState& omega);

struct RemoteEvaluation {
    Vector unnormalized;  ///< conditional state of C given outcome f, by direct contraction
    Scalar probability;   ///< u_C of the un-normalized state
    Vector normalized;    ///< divided by its base norm; zero when the probability is zero
};

/**
 * For α ∈ A, ω on B ⊗ C and f on A ⊗ B in A ⊗_min (B ⊗_max C): contracts
 * f against the first two indices of α ⊗ ω. The result is checked against the
 * operator route ω̂(f̂(α)); a mismatch throws std::logic_error.
 */
RemoteEvaluation remote_evaluate(const Vector& alpha, const BipartiteState& omega, const BipartiteEffect& f);

/// Every generator of A ⊗_min (B ⊗_max C) satisfies every facet of
/// (A ⊗_min B) ⊗_max C. Enumeration runs only on the pairwise composites.
bool check_distributive_inclusion(const StateSpace& a, const StateSpace& b, const StateSpace& c);

}  // namespace gptkit

#endif  // GPTKIT_COMPOSITES_HPP
