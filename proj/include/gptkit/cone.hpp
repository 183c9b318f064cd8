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

#ifndef GPTKIT_CONE_HPP
#define GPTKIT_CONE_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gptkit/scalar.hpp"

namespace gptkit {

enum class ConeKind { polyhedral, lorentz };

/**
 * A closed, pointed, generating convex cone.
 *
 * Polyhedral cones carry both descriptions: extreme-ray generators and
 * irredundant facet inequalities <facet, x> >= 0. Lorentz cones
 * { x : x_last >= |(x_1, ..., x_{dim-1})| } are kept analytic; asking them for
 * generators or facets throws UnsupportedKind.
 *
 * Immutable; copies share storage.
 */
class ConeRep {
 public:
    /// Builds a cone from spanning generators. Non-extreme and duplicate rays are
    /// dropped (the scale of the kept ones is preserved); facets are enumerated.
    static ConeRep from_generators(const std::vector<Vector>& generators, std::size_t dim,
                                   std::optional<Arithmetic> arithmetic = std::nullopt,
                                   double tol = kDefaultTolerance);
    /// Builds a cone from inequalities; extreme rays are enumerated and
    /// redundant inequalities dropped.
    static ConeRep from_facets(const std::vector<Vector>& facets, std::size_t dim,
                               std::optional<Arithmetic> arithmetic = std::nullopt,
                               double tol = kDefaultTolerance);
    /// Takes both descriptions as given after checking they describe the same cone.
    static ConeRep from_description(const std::vector<Vector>& generators, const std::vector<Vector>& facets,
                                    std::size_t dim, std::optional<Arithmetic> arithmetic = std::nullopt,
                                    double tol = kDefaultTolerance);
    static ConeRep lorentz(std::size_t dim, double tol = kDefaultTolerance);

    std::size_t dim() const { return data_->dim; }
    ConeKind kind() const { return data_->kind; }
    bool is_polyhedral() const { return data_->kind == ConeKind::polyhedral; }
    Arithmetic arithmetic() const { return data_->arithmetic; }
    double tolerance() const { return data_->tol; }

    const std::vector<Vector>& generators() const;
    const std::vector<Vector>& facets() const;

 private:
    struct Data {
        std::size_t dim = 0;
        ConeKind kind = ConeKind::polyhedral;
        Arithmetic arithmetic = Arithmetic::rational;
        double tol = kDefaultTolerance;
        std::vector<Vector> generators;
        std::vector<Vector> facets;
    };
    explicit ConeRep(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

    std::shared_ptr<const Data> data_;
};

/// x ∈ cone. Exact for rational data, tolerance-gated otherwise.
bool cone_contains(const ConeRep& cone, const Vector& x);
/// Functional a lies in the dual cone (a(x) >= 0 on the whole cone).
bool dual_cone_contains(const ConeRep& cone, const Vector& a);
/// The dual cone in the standard pairing; Lorentz cones are self-dual.
ConeRep dual_cone(const ConeRep& cone);
/// Mutual containment of generators (or equal Lorentz cones).
bool same_cone(const ConeRep& a, const ConeRep& b);

/**
 * An abstract state space: a cone plus a strictly positive order unit.
 * Construction fails with DegenerateCone if the unit is not strictly positive.
 */
class StateSpace {
 public:
    StateSpace(ConeRep cone, Vector unit, std::string label = {});

    std::size_t dim() const { return cone_.dim(); }
    const ConeRep& cone() const { return cone_; }
    const Vector& unit() const { return unit_; }
    const std::string& label() const { return label_; }
    double tolerance() const { return cone_.tolerance(); }
    Arithmetic arithmetic() const { return cone_.arithmetic(); }

    /// Extreme rays scaled to unit evaluation 1 (the pure states). Polyhedral only.
    std::vector<Vector> pure_states() const;
    /// True iff x is in the cone and u(x) = 1.
    bool is_state(const Vector& x) const;

 private:
    ConeRep cone_;
    Vector unit_;
    std::string label_;
};

/// The dual cone as a state space; its unit is the barycenter of the pure
/// states (polyhedral) or the original unit (Lorentz). Used as a map domain.
StateSpace dual_state_space(const StateSpace& space);

/// Same space in the requested arithmetic. Converting floating data to rational throws InvalidInput.
StateSpace with_arithmetic(const StateSpace& space, Arithmetic mode, double tol = kDefaultTolerance);

/// A functional with 0 <= a <= u in the dual order.
struct Effect {
    Vector functional;

    friend bool operator==(const Effect&, const Effect&) = default;
};

/// Effects summing to the order unit.
struct Observable {
    std::vector<Effect> effects;
};

bool is_effect(const StateSpace& space, const Vector& a);
bool is_observable(const StateSpace& space, const Observable& obs);

/// min{ u(v+) + u(v-) : v = v+ - v-, v± in the cone }.
Scalar base_norm(const StateSpace& space, const Vector& v);

/// A linear map between state spaces, stored as a codomain.dim x domain.dim matrix.
struct LinearMap {
    Matrix matrix;
    StateSpace domain;
    StateSpace codomain;

    LinearMap(Matrix m, StateSpace dom, StateSpace cod);
    Vector operator()(const Vector& x) const { return matrix * x; }
};

/**
 * Positivity T(domain cone) ⊆ codomain cone.
 *
 * Polyhedral domain: generator images are tested against the codomain.
 * Lorentz domain, polyhedral codomain: each pulled-back facet Tᵀh must lie in
 * the (self-dual) Lorentz cone, exact with rational data.
 * Lorentz to Lorentz: rank-one maps are checked directly; otherwise the
 * S-lemma criterion (some λ >= 0 with TᵀJT - λJ PSD, J = diag(-1,...,-1,1))
 * together with T(center) in the cone, evaluated in floating point.
 */
bool is_positive_map(const LinearMap& t);
/// u_cod(T x) <= u_dom(x) on the domain cone, i.e. u_dom - Tᵀu_cod in the dual cone.
bool is_norm_contractive(const LinearMap& t);
/// Invertible, positive, with positive inverse.
bool is_order_isomorphism(const LinearMap& t);
/// T (space coordinates to dual coordinates) is an order isomorphism onto the dual cone.
bool verify_self_duality_witness(const StateSpace& space, const Matrix& t);

/**
 * Effects a_1..a_k with a_i(states[j]) = δ_ij summing to the unit, found by an
 * LP over the dual-cone generators; nullopt when no such observable exists.
 * Throws SolverFailure if the LP does not terminate.
 */
std::optional<Observable> one_shot_distinguishing_observable(const StateSpace& space,
                                                             const std::vector<Vector>& states);

/// Irreducible direct summands of a polyhedral cone, one spanning basis per summand.
/// Summands are the connected components of the linear matroid on the extreme
/// rays; they come ordered by their first extreme ray.
std::vector<std::vector<Vector>> decompose_cone(const StateSpace& space);

/// Order-unit evaluation u(x).
inline Scalar unit_value(const StateSpace& space, const Vector& x) { return dot(space.unit(), x); }

}  // namespace gptkit

#endif  // GPTKIT_CONE_HPP
