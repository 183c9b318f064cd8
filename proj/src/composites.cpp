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

#include "gptkit/composites.hpp"

#include <stdexcept>
#include <string>

#include "gptkit/errors.hpp"
#include "gptkit/lp.hpp"

namespace gptkit {

namespace {

void require_polyhedral(const StateSpace& s, const char* what) {
    if (!s.cone().is_polyhedral()) {
        throw UnsupportedKind(std::string(what) + " needs polyhedral factors");
    }
}

std::optional<Arithmetic> joint_mode(const StateSpace& a, const StateSpace& b) {
    if (a.arithmetic() == Arithmetic::floating || b.arithmetic() == Arithmetic::floating) {
        return Arithmetic::floating;
    }
    return std::nullopt;
}

double joint_tol(const StateSpace& a, const StateSpace& b) { return std::max(a.tolerance(), b.tolerance()); }

std::string joint_label(const StateSpace& a, const StateSpace& b, const char* op) {
    if (a.label().empty() || b.label().empty()) {
        return {};
    }
    return "(" + a.label() + ")" + op + "(" + b.label() + ")";
}

std::vector<Vector> pairwise_kron(const std::vector<Vector>& xs, const std::vector<Vector>& ys) {
    std::vector<Vector> out;
    out.reserve(xs.size() * ys.size());
    for (const auto& x : xs) {
        for (const auto& y : ys) {
            out.push_back(kron(x, y));
        }
    }
    return out;
}

void check_shape(const Matrix& coords, const StateSpace& a, const StateSpace& b) {
    if (coords.rows() != a.dim() || coords.cols() != b.dim()) {
        throw DimensionMismatch("bipartite coordinates are " + std::to_string(coords.rows()) + "x" +
                                std::to_string(coords.cols()) + ", factors have dimensions " +
                                std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
    }
}

}  // namespace

std::vector<Vector> product_generators(const StateSpace& a, const StateSpace& b) {
    require_polyhedral(a, "tensor products");
    require_polyhedral(b, "tensor products");
    return pairwise_kron(a.cone().generators(), b.cone().generators());
}

std::vector<Vector> product_facets(const StateSpace& a, const StateSpace& b) {
    require_polyhedral(a, "tensor products");
    require_polyhedral(b, "tensor products");
    return pairwise_kron(a.cone().facets(), b.cone().facets());
}

CompositeSpace min_tensor(const StateSpace& a, const StateSpace& b) {
    ConeRep cone = ConeRep::from_generators(product_generators(a, b), a.dim() * b.dim(), joint_mode(a, b),
                                            joint_tol(a, b));
    return {StateSpace(cone, kron(a.unit(), b.unit()), joint_label(a, b, "(x)min")), a, b, TensorKind::min};
}

CompositeSpace max_tensor(const StateSpace& a, const StateSpace& b) {
    ConeRep cone =
        ConeRep::from_facets(product_facets(a, b), a.dim() * b.dim(), joint_mode(a, b), joint_tol(a, b));
    return {StateSpace(cone, kron(a.unit(), b.unit()), joint_label(a, b, "(x)max")), a, b, TensorKind::max};
}

bool is_composite(const StateSpace& a, const StateSpace& b, const StateSpace& candidate) {
    if (candidate.dim() != a.dim() * b.dim()) {
        throw DimensionMismatch("candidate composite has dimension " + std::to_string(candidate.dim()));
    }
    const double tol = std::max(joint_tol(a, b), candidate.tolerance());
    if (!approx_equal(candidate.unit(), kron(a.unit(), b.unit()), tol)) {
        throw InvalidInput("candidate composite unit is not u_A (x) u_B");
    }
    for (const auto& g : product_generators(a, b)) {
        if (!cone_contains(candidate.cone(), g)) {
            return false;
        }
    }
    auto facets = product_facets(a, b);
    for (const auto& g : candidate.cone().generators()) {
        for (const auto& h : facets) {
            if (sign(dot(h, g), tol) < 0) {
                return false;
            }
        }
    }
    return true;
}

bool min_equals_max(const StateSpace& a, const StateSpace& b) {
    return same_cone(min_tensor(a, b).space.cone(), max_tensor(a, b).space.cone());
}

BipartiteState::BipartiteState(StateSpace a, StateSpace b, Matrix coords)
    : a_(std::move(a)), b_(std::move(b)), coords_(std::move(coords)) {
    check_shape(coords_, a_, b_);
}

BipartiteState BipartiteState::product(const StateSpace& a, const Vector& alpha, const StateSpace& b,
                                       const Vector& beta) {
    return BipartiteState(a, b, Matrix::outer(alpha, beta));
}

Scalar BipartiteState::evaluate(const Vector& fa, const Vector& fb) const { return dot(fa, coords_ * fb); }

bool BipartiteState::is_positive() const {
    require_polyhedral(a_, "positivity of bipartite states");
    require_polyhedral(b_, "positivity of bipartite states");
    const double tol = joint_tol(a_, b_);
    for (const auto& ha : a_.cone().facets()) {
        Vector row = coords_.transpose() * ha;
        for (const auto& hb : b_.cone().facets()) {
            if (sign(dot(row, hb), tol) < 0) {
                return false;
            }
        }
    }
    return true;
}

bool BipartiteState::is_normalized() const {
    return approx_equal(evaluate(a_.unit(), b_.unit()), Scalar(1), joint_tol(a_, b_));
}

BipartiteEffect::BipartiteEffect(StateSpace a, StateSpace b, Matrix coords)
    : a_(std::move(a)), b_(std::move(b)), coords_(std::move(coords)) {
    check_shape(coords_, a_, b_);
}

BipartiteEffect BipartiteEffect::product(const StateSpace& a, const Vector& fa, const StateSpace& b,
                                         const Vector& fb) {
    return BipartiteEffect(a, b, Matrix::outer(fa, fb));
}

Scalar BipartiteEffect::evaluate(const Vector& alpha, const Vector& beta) const {
    return dot(alpha, coords_ * beta);
}

bool BipartiteEffect::is_effect_on_min() const {
    const double tol = joint_tol(a_, b_);
    Vector f = flat();
    Vector complement = kron(a_.unit(), b_.unit()) - f;
    for (const auto& g : product_generators(a_, b_)) {
        if (sign(dot(f, g), tol) < 0 || sign(dot(complement, g), tol) < 0) {
            return false;
        }
    }
    return true;
}

bool BipartiteEffect::is_effect_on_max() const {
    const double tol = joint_tol(a_, b_);
    auto dual_products = product_facets(a_, b_);
    Vector f = flat();
    return in_conic_hull(dual_products, f, tol) &&
           in_conic_hull(dual_products, kron(a_.unit(), b_.unit()) - f, tol);
}

Vector marginal(const BipartiteState& omega, Side keep) {
    if (keep == Side::a) {
        return omega.coords() * omega.b().unit();
    }
    return omega.coords().transpose() * omega.a().unit();
}

Vector partial_evaluation(const BipartiteState& omega, const Effect& a) {
    if (a.functional.size() != omega.a().dim()) {
        throw DimensionMismatch("effect length does not match factor A");
    }
    return omega.coords().transpose() * a.functional;
}

Vector conditional(const BipartiteState& omega, const Effect& a) {
    Vector unnormalized = partial_evaluation(omega, a);
    Scalar probability = dot(unnormalized, omega.b().unit());
    if (is_zero(probability, joint_tol(omega.a(), omega.b()))) {
        return Vector(omega.b().dim(), probability.is_rational() ? Scalar(0) : Scalar(0.0));
    }
    return (Scalar(1) / probability) * unnormalized;
}

LinearMap omega_hat(const BipartiteState& omega) {
    return LinearMap(omega.coords().transpose(), dual_state_space(omega.a()), omega.b());
}

LinearMap f_hat(const BipartiteEffect& f) {
    return LinearMap(f.coords().transpose(), f.a(), dual_state_space(f.b()));
}

bool is_entangled(const BipartiteState& omega) {
    if (!omega.is_positive()) {
        throw InvalidInput("entanglement is defined for positive forms");
    }
    return !in_conic_hull(product_generators(omega.a(), omega.b()), omega.flat(), joint_tol(omega.a(), omega.b()));
}

RemoteEvaluation remote_evaluate(const Vector& alpha, const BipartiteState& omega, const BipartiteEffect& f) {
    const std::size_t da = f.a().dim();
    const std::size_t db = f.b().dim();
    const std::size_t dc = omega.b().dim();
    if (alpha.size() != da) {
        throw DimensionMismatch("alpha does not live in the effect's first factor");
    }
    if (omega.a().dim() != db) {
        throw DimensionMismatch("the state's first factor does not match the effect's second factor");
    }
    const double tol = std::max(joint_tol(f.a(), f.b()), omega.b().tolerance());

    // Direct route: contract f against indices (i, j) of the triple array α ⊗ ω.
    Vector triple = kron(alpha, omega.flat());
    Vector direct(dc);
    for (std::size_t i = 0; i < da; ++i) {
        for (std::size_t j = 0; j < db; ++j) {
            const Scalar& fij = f.coords()(i, j);
            for (std::size_t k = 0; k < dc; ++k) {
                direct[k] += fij * triple[(i * db + j) * dc + k];
            }
        }
    }
    Vector via_operators = omega_hat(omega).matrix * (f_hat(f).matrix * alpha);
    if (!approx_equal(direct, via_operators, tol)) {
        throw std::logic_error("remote evaluation: contraction disagrees with the operator composition");
    }

    RemoteEvaluation out;
    out.probability = dot(omega.b().unit(), direct);
    if (is_zero_vector(direct, tol)) {
        out.normalized = Vector(dc, Scalar(0));
    } else {
        out.normalized = (Scalar(1) / base_norm(omega.b(), direct)) * direct;
    }
    out.unnormalized = std::move(direct);
    return out;
}

bool check_distributive_inclusion(const StateSpace& a, const StateSpace& b, const StateSpace& c) {
    require_polyhedral(a, "distributivity");
    require_polyhedral(b, "distributivity");
    require_polyhedral(c, "distributivity");
    const double tol = std::max(joint_tol(a, b), c.tolerance());
    auto lhs_generators = pairwise_kron(a.cone().generators(), max_tensor(b, c).space.cone().generators());
    auto rhs_facets = pairwise_kron(min_tensor(a, b).space.cone().facets(), c.cone().facets());
    for (const auto& g : lhs_generators) {
        for (const auto& h : rhs_facets) {
            if (sign(dot(h, g), tol) < 0) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace gptkit
