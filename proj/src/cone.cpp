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

#include "gptkit/cone.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "gptkit/double_description.hpp"
#include "gptkit/errors.hpp"
#include "gptkit/linalg.hpp"
#include "gptkit/lp.hpp"

namespace gptkit {

namespace {

Arithmetic resolve_arithmetic(const std::vector<const std::vector<Vector>*>& lists, std::optional<Arithmetic> requested) {
    bool rational = true;
    for (const auto* list : lists) {
        for (const auto& v : *list) {
            rational = rational && all_rational(v);
        }
    }
    if (requested == Arithmetic::rational && !rational) {
        throw InvalidInput("rational arithmetic requested for non-rational data");
    }
    if (requested) {
        return *requested;
    }
    return rational ? Arithmetic::rational : Arithmetic::floating;
}

std::vector<Vector> prepare(const std::vector<Vector>& vectors, std::size_t dim, Arithmetic arithmetic,
                            const char* what) {
    std::vector<Vector> out;
    out.reserve(vectors.size());
    for (const auto& v : vectors) {
        if (v.size() != dim) {
            throw DimensionMismatch(std::string(what) + " of length " + std::to_string(v.size()) +
                                    " in dimension " + std::to_string(dim));
        }
        out.push_back(arithmetic == Arithmetic::floating ? to_float(v) : v);
    }
    return out;
}

/// Drops zero vectors and positive multiples of earlier entries.
std::vector<Vector> dedup_rays(const std::vector<Vector>& rays, double tol) {
    std::vector<Vector> out;
    for (const auto& r : rays) {
        if (is_zero_vector(r, tol)) {
            continue;
        }
        bool seen = false;
        for (const auto& kept : out) {
            if (same_ray(kept, r, tol)) {
                seen = true;
                break;
            }
        }
        if (!seen) {
            out.push_back(r);
        }
    }
    return out;
}

/// Keeps the vectors whose tight set among `against` has rank dim - 1.
std::vector<Vector> keep_tight_rank(const std::vector<Vector>& candidates, const std::vector<Vector>& against,
                                    std::size_t dim, double tol) {
    std::vector<Vector> out;
    for (const auto& c : candidates) {
        std::vector<Vector> tight;
        for (const auto& a : against) {
            if (is_zero(dot(c, a), tol)) {
                tight.push_back(a);
            }
        }
        if (rank(tight, dim, tol) + 1 == dim) {
            out.push_back(c);
        }
    }
    return out;
}

/// Lorentz membership x_last >= |x_rest|; exact for rational input.
bool in_lorentz(const Vector& x, double tol) {
    const std::size_t n = x.size();
    if (all_rational(x)) {
        if (sign(x[n - 1]) < 0) {
            return false;
        }
        Scalar rest;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            rest += x[i] * x[i];
        }
        return sign(x[n - 1] * x[n - 1] - rest) >= 0;
    }
    double rest = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        rest += x[i].to_double() * x[i].to_double();
    }
    return x[n - 1].to_double() - std::sqrt(rest) >= -tol;
}

}  // namespace

ConeRep ConeRep::from_generators(const std::vector<Vector>& generators, std::size_t dim,
                                 std::optional<Arithmetic> arithmetic, double tol) {
    if (dim == 0) {
        throw DimensionMismatch("cone of dimension 0");
    }
    auto data = std::make_shared<Data>();
    data->dim = dim;
    data->tol = tol;
    data->arithmetic = resolve_arithmetic({&generators}, arithmetic);
    std::vector<Vector> gens = dedup_rays(prepare(generators, dim, data->arithmetic, "generator"), tol);
    if (rank(gens, dim, tol) < dim) {
        throw DegenerateCone("generators do not span the space; the cone is not generating");
    }
    data->facets = extreme_rays(gens, dim, tol);
    if (rank(data->facets, dim, tol) < dim) {
        throw DegenerateCone("the generated cone contains a line; it is not pointed");
    }
    data->generators = keep_tight_rank(gens, data->facets, dim, tol);
    return ConeRep(std::move(data));
}

ConeRep ConeRep::from_facets(const std::vector<Vector>& facets, std::size_t dim, std::optional<Arithmetic> arithmetic,
                             double tol) {
    if (dim == 0) {
        throw DimensionMismatch("cone of dimension 0");
    }
    auto data = std::make_shared<Data>();
    data->dim = dim;
    data->tol = tol;
    data->arithmetic = resolve_arithmetic({&facets}, arithmetic);
    std::vector<Vector> ineqs = prepare(facets, dim, data->arithmetic, "facet");
    for (auto& h : ineqs) {
        h = canonical_ray(std::move(h));
    }
    ineqs = dedup_rays(ineqs, tol);
    data->generators = extreme_rays(ineqs, dim, tol);
    if (rank(data->generators, dim, tol) < dim) {
        throw DegenerateCone("the inequalities cut out a cone that is not full-dimensional");
    }
    data->facets = keep_tight_rank(ineqs, data->generators, dim, tol);
    return ConeRep(std::move(data));
}

ConeRep ConeRep::from_description(const std::vector<Vector>& generators, const std::vector<Vector>& facets,
                                  std::size_t dim, std::optional<Arithmetic> arithmetic, double tol) {
    Arithmetic mode = resolve_arithmetic({&generators, &facets}, arithmetic);
    ConeRep reference = from_facets(facets, dim, mode, tol);
    std::vector<Vector> gens = dedup_rays(prepare(generators, dim, mode, "generator"), tol);
    auto covered = [tol](const std::vector<Vector>& xs, const std::vector<Vector>& ys) {
        for (const auto& x : xs) {
            bool found = false;
            for (const auto& y : ys) {
                if (same_ray(x, y, tol)) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                return false;
            }
        }
        return true;
    };
    if (gens.size() != reference.generators().size() || !covered(gens, reference.generators()) ||
        !covered(reference.generators(), gens)) {
        throw DegenerateCone("generators are not the extreme rays of the cone cut out by the facets");
    }
    auto data = std::make_shared<Data>(*reference.data_);
    data->generators = std::move(gens);
    return ConeRep(std::move(data));
}

ConeRep ConeRep::lorentz(std::size_t dim, double tol) {
    if (dim < 2) {
        throw DimensionMismatch("Lorentz cone needs dimension >= 2");
    }
    auto data = std::make_shared<Data>();
    data->dim = dim;
    data->kind = ConeKind::lorentz;
    data->tol = tol;
    data->arithmetic = Arithmetic::rational;
    return ConeRep(std::move(data));
}

const std::vector<Vector>& ConeRep::generators() const {
    if (!is_polyhedral()) {
        throw UnsupportedKind("Lorentz cones have no finite generator list");
    }
    return data_->generators;
}

const std::vector<Vector>& ConeRep::facets() const {
    if (!is_polyhedral()) {
        throw UnsupportedKind("Lorentz cones have no finite facet list");
    }
    return data_->facets;
}

bool cone_contains(const ConeRep& cone, const Vector& x) {
    if (x.size() != cone.dim()) {
        throw DimensionMismatch("point of length " + std::to_string(x.size()) + " for a cone of dimension " +
                                std::to_string(cone.dim()));
    }
    if (!cone.is_polyhedral()) {
        return in_lorentz(x, cone.tolerance());
    }
    for (const auto& h : cone.facets()) {
        if (sign(dot(h, x), cone.tolerance()) < 0) {
            return false;
        }
    }
    return true;
}

bool dual_cone_contains(const ConeRep& cone, const Vector& a) {
    if (a.size() != cone.dim()) {
        throw DimensionMismatch("functional of length " + std::to_string(a.size()) + " for a cone of dimension " +
                                std::to_string(cone.dim()));
    }
    if (!cone.is_polyhedral()) {
        return in_lorentz(a, cone.tolerance());
    }
    for (const auto& g : cone.generators()) {
        if (sign(dot(a, g), cone.tolerance()) < 0) {
            return false;
        }
    }
    return true;
}

ConeRep dual_cone(const ConeRep& cone) {
    if (!cone.is_polyhedral()) {
        return ConeRep::lorentz(cone.dim(), cone.tolerance());
    }
    return ConeRep::from_facets(cone.generators(), cone.dim(), cone.arithmetic(), cone.tolerance());
}

bool same_cone(const ConeRep& a, const ConeRep& b) {
    if (a.dim() != b.dim()) {
        return false;
    }
    if (!a.is_polyhedral() || !b.is_polyhedral()) {
        return a.kind() == b.kind();
    }
    for (const auto& g : a.generators()) {
        if (!cone_contains(b, g)) {
            return false;
        }
    }
    for (const auto& g : b.generators()) {
        if (!cone_contains(a, g)) {
            return false;
        }
    }
    return true;
}

StateSpace::StateSpace(ConeRep cone, Vector unit, std::string label)
    : cone_(std::move(cone)), unit_(std::move(unit)), label_(std::move(label)) {
    if (unit_.size() != cone_.dim()) {
        throw DimensionMismatch("unit of length " + std::to_string(unit_.size()) + " for a cone of dimension " +
                                std::to_string(cone_.dim()));
    }
    if (cone_.arithmetic() == Arithmetic::floating) {
        unit_ = to_float(unit_);
    } else if (!all_rational(unit_)) {
        throw InvalidInput("non-rational unit for a rational cone");
    }
    const double tol = cone_.tolerance();
    if (cone_.is_polyhedral()) {
        for (const auto& g : cone_.generators()) {
            if (sign(dot(unit_, g), tol) <= 0) {
                throw DegenerateCone("order unit is not strictly positive on every extreme ray");
            }
        }
    } else {
        Vector u = unit_;
        Scalar rest;
        for (std::size_t i = 0; i + 1 < u.size(); ++i) {
            rest += u[i] * u[i];
        }
        if (sign(u.back(), tol) <= 0 || sign(u.back() * u.back() - rest, tol) <= 0) {
            throw DegenerateCone("order unit is not strictly positive on the Lorentz cone");
        }
    }
}

std::vector<Vector> StateSpace::pure_states() const {
    std::vector<Vector> out;
    for (const auto& g : cone_.generators()) {
        out.push_back((Scalar(1) / dot(unit_, g)) * g);
    }
    return out;
}

bool StateSpace::is_state(const Vector& x) const {
    return cone_contains(cone_, x) && approx_equal(dot(unit_, x), Scalar(1), tolerance());
}

StateSpace dual_state_space(const StateSpace& space) {
    if (!space.cone().is_polyhedral()) {
        return StateSpace(dual_cone(space.cone()), space.unit());
    }
    std::vector<Vector> pure = space.pure_states();
    Vector center(space.dim());
    for (const auto& p : pure) {
        center = center + p;
    }
    center = (Scalar(1) / Scalar(static_cast<long>(pure.size()))) * center;
    return StateSpace(dual_cone(space.cone()), center);
}

StateSpace with_arithmetic(const StateSpace& space, Arithmetic mode, double tol) {
    const ConeRep& cone = space.cone();
    if (mode == cone.arithmetic() && tol == cone.tolerance()) {
        return space;
    }
    if (!cone.is_polyhedral()) {
        return StateSpace(ConeRep::lorentz(cone.dim(), tol), space.unit(), space.label());
    }
    if (mode == Arithmetic::rational) {
        if (cone.arithmetic() == Arithmetic::floating) {
            throw InvalidInput("state space has floating-point data and no exact rational form");
        }
        return StateSpace(ConeRep::from_description(cone.generators(), cone.facets(), cone.dim(), mode, tol),
                          space.unit(), space.label());
    }
    std::vector<Vector> gens, facets;
    for (const auto& g : cone.generators()) {
        gens.push_back(to_float(g));
    }
    for (const auto& h : cone.facets()) {
        facets.push_back(to_float(h));
    }
    return StateSpace(ConeRep::from_description(gens, facets, cone.dim(), mode, tol), to_float(space.unit()),
                      space.label());
}

bool is_effect(const StateSpace& space, const Vector& a) {
    return dual_cone_contains(space.cone(), a) && dual_cone_contains(space.cone(), space.unit() - a);
}

bool is_observable(const StateSpace& space, const Observable& obs) {
    if (obs.effects.empty()) {
        return false;
    }
    Vector total(space.dim());
    for (const auto& e : obs.effects) {
        if (!is_effect(space, e.functional)) {
            return false;
        }
        total = total + e.functional;
    }
    return approx_equal(total, space.unit(), space.tolerance());
}

Scalar base_norm(const StateSpace& space, const Vector& v) {
    if (v.size() != space.dim()) {
        throw DimensionMismatch("base_norm: vector length mismatch");
    }
    const double tol = space.tolerance();
    if (!space.cone().is_polyhedral()) {
        Vector e_last(space.dim());
        e_last.back() = 1;
        if (!approx_equal(space.unit(), e_last, tol)) {
            throw UnsupportedKind("Lorentz base norm needs the unit (0, ..., 0, 1)");
        }
        Scalar rest;
        for (std::size_t i = 0; i + 1 < v.size(); ++i) {
            rest += v[i] * v[i];
        }
        Scalar t = abs(v.back());
        return sign(t * t - rest, 0.0) >= 0 ? t : sqrt(rest);
    }
    // v = Σ (λ_i - μ_i) g_i with λ, μ >= 0, minimizing Σ (λ_i + μ_i) u(g_i).
    const auto& gens = space.cone().generators();
    const std::size_t n = gens.size();
    Matrix a(space.dim(), 2 * n);
    Vector cost(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        Scalar weight = dot(space.unit(), gens[i]);
        cost[i] = weight;
        cost[n + i] = weight;
        for (std::size_t r = 0; r < space.dim(); ++r) {
            a(r, i) = gens[i][r];
            a(r, n + i) = -gens[i][r];
        }
    }
    LpResult result = minimize(a, v, cost, tol);
    if (result.status != LpStatus::optimal) {
        throw SolverFailure("base norm LP did not reach an optimum");
    }
    return result.objective;
}

LinearMap::LinearMap(Matrix m, StateSpace dom, StateSpace cod)
    : matrix(std::move(m)), domain(std::move(dom)), codomain(std::move(cod)) {
    if (matrix.rows() != codomain.dim() || matrix.cols() != domain.dim()) {
        throw DimensionMismatch("map matrix is " + std::to_string(matrix.rows()) + "x" + std::to_string(matrix.cols()) +
                                ", expected " + std::to_string(codomain.dim()) + "x" + std::to_string(domain.dim()));
    }
}

bool is_norm_contractive(const LinearMap& t) {
    Vector pulled = t.matrix.transpose() * t.codomain.unit();
    return dual_cone_contains(t.domain.cone(), t.domain.unit() - pulled);
}

bool is_order_isomorphism(const LinearMap& t) {
    if (t.matrix.rows() != t.matrix.cols()) {
        return false;
    }
    auto inv = inverse(t.matrix, t.domain.tolerance());
    if (!inv) {
        return false;
    }
    return is_positive_map(t) && is_positive_map(LinearMap(*inv, t.codomain, t.domain));
}

bool verify_self_duality_witness(const StateSpace& space, const Matrix& t) {
    return is_order_isomorphism(LinearMap(t, space, dual_state_space(space)));
}

std::optional<Observable> one_shot_distinguishing_observable(const StateSpace& space,
                                                             const std::vector<Vector>& states) {
    if (!space.cone().is_polyhedral()) {
        throw UnsupportedKind("distinguishing observables need a polyhedral dual cone");
    }
    if (states.empty()) {
        throw InvalidInput("no states to distinguish");
    }
    for (const auto& s : states) {
        if (s.size() != space.dim()) {
            throw DimensionMismatch("state length mismatch");
        }
        if (!space.is_state(s)) {
            throw InvalidInput("distinguishability needs normalized states");
        }
    }
    const auto& dual_gens = space.cone().facets();
    const std::size_t k = states.size();
    const std::size_t m = dual_gens.size();
    const std::size_t dim = space.dim();
    // Unknowns λ[i][f] >= 0 with a_i = Σ_f λ[i][f] h_f.
    Matrix a(k * k + dim, k * m);
    Vector b(k * k + dim);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            std::size_t row = i * k + j;
            for (std::size_t f = 0; f < m; ++f) {
                a(row, i * m + f) = dot(dual_gens[f], states[j]);
            }
            b[row] = (i == j) ? 1 : 0;
        }
    }
    for (std::size_t c = 0; c < dim; ++c) {
        std::size_t row = k * k + c;
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t f = 0; f < m; ++f) {
                a(row, i * m + f) = dual_gens[f][c];
            }
        }
        b[row] = space.unit()[c];
    }
    auto solution = find_nonnegative_solution(a, b, space.tolerance());
    if (!solution) {
        return std::nullopt;
    }
    Observable obs;
    for (std::size_t i = 0; i < k; ++i) {
        Vector effect(dim, space.arithmetic() == Arithmetic::rational ? Scalar(0) : Scalar(0.0));
        for (std::size_t f = 0; f < m; ++f) {
            effect = effect + (*solution)[i * m + f] * dual_gens[f];
        }
        obs.effects.push_back(Effect{std::move(effect)});
    }
    return obs;
}

std::vector<std::vector<Vector>> decompose_cone(const StateSpace& space) {
    if (!space.cone().is_polyhedral()) {
        throw UnsupportedKind("cone decomposition needs enumerated extreme rays");
    }
    const auto& rays = space.cone().generators();
    const std::size_t dim = space.dim();
    const double tol = space.tolerance();
    std::vector<std::size_t> parent(rays.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    auto unite = [&](std::size_t x, std::size_t y) {
        x = find(x);
        y = find(y);
        if (x != y) {
            parent[std::max(x, y)] = std::min(x, y);
        }
    };

    // Fundamental circuits with respect to one basis connect exactly the
    // rays that must share a summand.
    std::vector<std::size_t> basis = independent_subset(rays, dim, tol);
    std::vector<Vector> basis_vectors;
    for (auto i : basis) {
        basis_vectors.push_back(rays[i]);
    }
    Matrix basis_columns = Matrix::from_columns(basis_vectors, dim);
    std::vector<bool> in_basis(rays.size(), false);
    for (auto i : basis) {
        in_basis[i] = true;
    }
    for (std::size_t r = 0; r < rays.size(); ++r) {
        if (in_basis[r]) {
            continue;
        }
        auto coeffs = solve(basis_columns, rays[r], tol);
        if (!coeffs) {
            throw DegenerateCone("extreme ray outside the span of a basis");
        }
        for (std::size_t b = 0; b < basis.size(); ++b) {
            if (!is_zero((*coeffs)[b], tol)) {
                unite(r, basis[b]);
            }
        }
    }

    std::vector<std::vector<Vector>> summands;
    std::vector<std::size_t> root_to_summand(rays.size(), rays.size());
    for (std::size_t r = 0; r < rays.size(); ++r) {
        std::size_t root = find(r);
        if (root_to_summand[root] == rays.size()) {
            root_to_summand[root] = summands.size();
            summands.emplace_back();
        }
        summands[root_to_summand[root]].push_back(rays[r]);
    }
    for (auto& block : summands) {
        std::vector<Vector> spanning;
        for (auto i : independent_subset(block, dim, tol)) {
            spanning.push_back(block[i]);
        }
        block = std::move(spanning);
    }
    return summands;
}

}  // namespace gptkit
