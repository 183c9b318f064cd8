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
#include <random>

#include "gtest/gtest.h"

#include "gptkit/errors.hpp"
#include "gptkit/linalg.hpp"
#include "gptkit/models.hpp"
#include "test_util.hpp"

using namespace gptkit;

namespace {

Vector v1() { return make_vector({1, 1, 1}); }
Vector v2() { return make_vector({-1, 1, 1}); }
Vector v3() { return make_vector({-1, -1, 1}); }
Vector v4() { return make_vector({1, -1, 1}); }

/// Base norm via its dual characterization: max a(v) over the vertices of the
/// order interval [-u, u], the vertices found by brute-force subset solving.
Scalar base_norm_oracle(const StateSpace& space, const Vector& v) {
    std::vector<Vector> rows;
    Vector rhs;
    for (const auto& p : space.pure_states()) {
        rows.push_back(p);
        rhs.push_back(Scalar(1));
        rows.push_back(-p);
        rhs.push_back(Scalar(1));
    }
    const std::size_t dim = space.dim();
    std::optional<Scalar> best;
    test::for_each_subset(rows.size(), dim, [&](const std::vector<std::size_t>& pick) {
        std::vector<Vector> sub;
        Vector b;
        for (auto i : pick) {
            sub.push_back(rows[i]);
            b.push_back(rhs[i]);
        }
        Matrix m = Matrix::from_rows(sub, dim);
        if (rank(m) < dim) {
            return;
        }
        Vector a = *solve(m, b);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (sign(rhs[i] - dot(rows[i], a)) < 0) {
                return;
            }
        }
        Scalar value = dot(a, v);
        if (!best || sign(value - *best) > 0) {
            best = value;
        }
    });
    return *best;
}

}  // namespace

TEST(cone_contains, orthant_and_square) {
    StateSpace orthant = make_classical(3);
    ASSERT_TRUE(cone_contains(orthant.cone(), make_vector({1, 2, 0})));
    ASSERT_FALSE(cone_contains(orthant.cone(), make_vector({1, -1, 0})));
    ASSERT_TRUE(cone_contains(make_squit().cone(), make_vector({0, 0, 1})));
    ASSERT_THROW(cone_contains(orthant.cone(), make_vector({1, 2})), DimensionMismatch);
}

TEST(cone_contains, lorentz_is_exact_on_rationals) {
    ConeRep l = ConeRep::lorentz(4);
    ASSERT_TRUE(cone_contains(l, {Scalar::ratio(3, 5), Scalar::ratio(4, 5), Scalar(0), Scalar(1)}));
    ASSERT_FALSE(cone_contains(l, {Scalar::ratio(3, 5), Scalar::ratio(4, 5), Scalar(mpq_class(1, 1000000000000L)),
                                   Scalar(1)}));
}

TEST(cone_rep, construction_validates) {
    // Line: {(1,0), (-1,0), (0,1)} is generating but not pointed.
    ASSERT_THROW(ConeRep::from_generators({make_vector({1, 0}), make_vector({-1, 0}), make_vector({0, 1})}, 2),
                 DegenerateCone);
    ASSERT_THROW(ConeRep::from_generators({make_vector({1, 0, 0}), make_vector({0, 1, 0})}, 3), DegenerateCone);
    // Interior and duplicate generators are dropped.
    ConeRep c = ConeRep::from_generators({make_vector({1, 0}), make_vector({1, 1}), make_vector({0, 1}),
                                          make_vector({2, 0})},
                                         2);
    ASSERT_EQ(c.generators().size(), 2u);
    ASSERT_THROW(ConeRep::lorentz(3).generators(), UnsupportedKind);
}

TEST(cone_rep, description_must_be_consistent) {
    std::vector<Vector> gens = {v1(), v2(), v3(), v4()};
    std::vector<Vector> facets = {make_vector({1, 0, 1}), make_vector({-1, 0, 1}), make_vector({0, 1, 1}),
                                  make_vector({0, -1, 1})};
    ASSERT_NO_THROW(ConeRep::from_description(gens, facets, 3));
    ASSERT_THROW(ConeRep::from_description({v1(), v2(), v3()}, facets, 3), DegenerateCone);
}

TEST(state_space, unit_must_be_strictly_positive) {
    ConeRep orthant = ConeRep::from_generators({make_vector({1, 0}), make_vector({0, 1})}, 2);
    ASSERT_THROW(StateSpace(orthant, make_vector({1, 0})), DegenerateCone);
    ASSERT_THROW(StateSpace(ConeRep::lorentz(3), make_vector({1, 0, 1})), DegenerateCone);
    ASSERT_NO_THROW(StateSpace(orthant, make_vector({2, 1})));
}

TEST(dual_cone, examples) {
    StateSpace orthant = make_classical(4);
    ASSERT_TRUE(same_cone(dual_cone(orthant.cone()), orthant.cone()));
    ASSERT_EQ(dual_cone(ConeRep::lorentz(4)).kind(), ConeKind::lorentz);
    auto dual = dual_cone(make_squit().cone());
    ASSERT_TRUE(test::same_ray_set(dual.generators(), {make_vector({1, 0, 1}), make_vector({-1, 0, 1}),
                                                       make_vector({0, 1, 1}), make_vector({0, -1, 1})}));
    // The oracle: facets found by brute force on the square's generators.
    ASSERT_TRUE(test::same_ray_set(dual.generators(), test::brute_force_extreme_rays({v1(), v2(), v3(), v4()}, 3)));
}

TEST(dual_cone, involution_on_random_cones) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Vector> gens;
        for (int k = 0; k < 6; ++k) {
            gens.push_back({Scalar(d(rng)), Scalar(d(rng)), Scalar(5 + std::abs(d(rng)))});
        }
        ConeRep c = ConeRep::from_generators(gens, 3);
        ConeRep dd = dual_cone(dual_cone(c));
        ASSERT_TRUE(same_cone(c, dd)) << "trial " << trial;
        for (const auto& g : c.generators()) {
            ASSERT_TRUE(cone_contains(dd, g));
        }
    }
}

TEST(is_effect, examples) {
    StateSpace squit = make_squit();
    ASSERT_TRUE(is_effect(squit, squit.unit()));
    ASSERT_FALSE(is_effect(squit, Scalar(2) * squit.unit()));
    Vector a = {Scalar::ratio(1, 4), Scalar::ratio(1, 4), Scalar::ratio(1, 2)};
    ASSERT_TRUE(is_effect(squit, a));
    ASSERT_EQ(dot(a, v1()), Scalar(1));
    ASSERT_EQ(dot(a, v2()), Scalar::ratio(1, 2));
    ASSERT_EQ(dot(a, v3()), Scalar(0));
    ASSERT_EQ(dot(a, v4()), Scalar::ratio(1, 2));
    ASSERT_THROW(is_effect(squit, make_vector({1, 1})), DimensionMismatch);
}

TEST(is_effect, random_effects_are_probabilities_on_vertices) {
    StateSpace squit = make_squit();
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> d(-8, 8);
    int accepted = 0;
    for (int trial = 0; trial < 300; ++trial) {
        Vector a = {Scalar::ratio(d(rng), 16), Scalar::ratio(d(rng), 16), Scalar::ratio(d(rng) + 8, 16)};
        bool effect = is_effect(squit, a);
        bool oracle = true;
        for (const auto& p : squit.pure_states()) {
            Scalar value = dot(a, p);
            oracle = oracle && sign(value) >= 0 && sign(Scalar(1) - value) >= 0;
        }
        ASSERT_EQ(effect, oracle);
        accepted += effect ? 1 : 0;
    }
    ASSERT_GT(accepted, 0);
}

TEST(base_norm, examples) {
    StateSpace squit = make_squit();
    ASSERT_EQ(base_norm(squit, make_vector({0, 0, 0})), Scalar(0));
    ASSERT_EQ(base_norm(squit, v1()), Scalar(1));
    ASSERT_EQ(base_norm(squit, make_vector({2, 2, 0})), Scalar(2));
    ASSERT_EQ(base_norm_oracle(squit, make_vector({2, 2, 0})), Scalar(2));
}

TEST(base_norm, matches_dual_oracle_and_unit_on_cone) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> d(-6, 6);
    for (const StateSpace& space : {make_squit(), make_classical(3), direct_sum(make_squit(), make_classical(1))}) {
        for (int trial = 0; trial < 25; ++trial) {
            Vector v(space.dim());
            for (auto& x : v) {
                x = Scalar::ratio(d(rng), 3);
            }
            ASSERT_EQ(base_norm(space, v), base_norm_oracle(space, v));
        }
        for (const auto& g : space.cone().generators()) {
            Vector x = Scalar(3) * g;
            ASSERT_EQ(base_norm(space, x), dot(space.unit(), x));
        }
    }
}

TEST(base_norm, lorentz_closed_form) {
    StateSpace qubit = make_ball(3);
    ASSERT_EQ(base_norm(qubit, make_vector({3, 4, 0, 1})), Scalar(5));
    ASSERT_EQ(base_norm(qubit, make_vector({0, 0, 0, -2})), Scalar(2));
}

TEST(positive_maps, identity_negation_and_rotation) {
    StateSpace squit = make_squit();
    ASSERT_TRUE(is_positive_map(LinearMap(Matrix::identity(3), squit, squit)));
    StateSpace bit = make_classical(2);
    ASSERT_FALSE(is_positive_map(LinearMap(Scalar(-1) * Matrix::identity(2), bit, bit)));
    // A* -> A: the 45° rotation with scale √2 carries dual generators onto vertices.
    Matrix m = polygon_self_duality_map(4);
    LinearMap rot(m, dual_state_space(squit), squit);
    ASSERT_TRUE(is_positive_map(rot));
    StateSpace dual = dual_state_space(squit);
    for (const auto& h : dual.cone().generators()) {
        bool hits_vertex = false;
        for (const auto& g : squit.cone().generators()) {
            hits_vertex = hits_vertex || same_ray(m * h, g);
        }
        ASSERT_TRUE(hits_vertex);
    }
}

TEST(positive_maps, lorentz_pairings) {
    StateSpace qubit = make_ball(3);
    ASSERT_TRUE(is_positive_map(LinearMap(Matrix::identity(4), qubit, qubit)));
    Matrix flip = Matrix::identity(4);
    flip(3, 3) = -1;
    ASSERT_FALSE(is_positive_map(LinearMap(flip, qubit, qubit)));
    // Shrinking the Bloch vector stays positive; stretching it does not.
    Matrix shrink = Matrix::identity(4);
    Matrix stretch = Matrix::identity(4);
    for (std::size_t i = 0; i < 3; ++i) {
        shrink(i, i) = Scalar::ratio(1, 2);
        stretch(i, i) = 2;
    }
    ASSERT_TRUE(is_positive_map(LinearMap(shrink, qubit, qubit)));
    ASSERT_FALSE(is_positive_map(LinearMap(stretch, qubit, qubit)));
    // Measurement in the z basis: ball -> classical(2), (x, y, z, t) -> ((t+z)/2, (t-z)/2).
    Matrix measure(2, 4);
    measure(0, 2) = Scalar::ratio(1, 2);
    measure(0, 3) = Scalar::ratio(1, 2);
    measure(1, 2) = Scalar::ratio(-1, 2);
    measure(1, 3) = Scalar::ratio(1, 2);
    StateSpace bit = make_classical(2);
    ASSERT_TRUE(is_positive_map(LinearMap(measure, qubit, bit)));
    ASSERT_TRUE(is_positive_map(LinearMap(2 * measure, qubit, bit)));
    ASSERT_FALSE(is_norm_contractive(LinearMap(2 * measure, qubit, bit)));
    // Classical bit -> ball: a preparation of two antipodal pure states.
    Matrix prepare(4, 2);
    prepare(2, 0) = 1;
    prepare(2, 1) = -1;
    prepare(3, 0) = 1;
    prepare(3, 1) = 1;
    ASSERT_TRUE(is_positive_map(LinearMap(prepare, bit, qubit)));
    prepare(0, 0) = 1;
    ASSERT_FALSE(is_positive_map(LinearMap(prepare, bit, qubit)));
}

TEST(norm_contractive, identity_scaling_and_preparation) {
    StateSpace squit = make_squit();
    ASSERT_TRUE(is_norm_contractive(LinearMap(Matrix::identity(3), squit, squit)));
    ASSERT_FALSE(is_norm_contractive(LinearMap(Scalar(2) * Matrix::identity(3), squit, squit)));
    Vector omega = {Scalar::ratio(1, 2), Scalar(0), Scalar(1)};
    LinearMap prep(Matrix::outer(omega, squit.unit()), squit, squit);
    ASSERT_TRUE(is_positive_map(prep));
    ASSERT_TRUE(is_norm_contractive(prep));
}

TEST(order_isomorphism, examples) {
    StateSpace tri = make_classical(3);
    ASSERT_TRUE(is_order_isomorphism(LinearMap(Matrix::identity(3), tri, tri)));
    Matrix perm(3, 3);
    perm(1, 0) = 1;
    perm(2, 1) = 1;
    perm(0, 2) = 1;
    ASSERT_TRUE(is_order_isomorphism(LinearMap(perm, tri, tri)));
    Vector center = {Scalar::ratio(1, 3), Scalar::ratio(1, 3), Scalar::ratio(1, 3)};
    ASSERT_FALSE(is_order_isomorphism(LinearMap(Matrix::outer(center, tri.unit()), tri, tri)));
    // Positive but with a non-positive inverse.
    Matrix mix = Matrix::identity(3);
    mix(0, 1) = 1;
    ASSERT_TRUE(is_positive_map(LinearMap(mix, tri, tri)));
    ASSERT_FALSE(is_order_isomorphism(LinearMap(mix, tri, tri)));
}

TEST(order_isomorphism, maps_extreme_rays_to_extreme_rays) {
    std::vector<std::pair<StateSpace, std::vector<Matrix>>> cases = {
        {make_squit(), polygon_rotation_group(4)},
        {make_classical(3), classical_cyclic_group(3)},
        {make_polygon(5), polygon_rotation_group(5)}};
    for (const auto& [space, group] : cases) {
        for (const Matrix& g : group) {
            LinearMap t(g, space, space);
            ASSERT_TRUE(is_order_isomorphism(t));
            for (const auto& ray : space.cone().generators()) {
                bool hit = false;
                for (const auto& other : space.cone().generators()) {
                    hit = hit || same_ray(t(ray), other, 1e-9);
                }
                ASSERT_TRUE(hit);
            }
        }
    }
}

TEST(self_duality, witnesses) {
    StateSpace tri = make_classical(3);
    ASSERT_TRUE(verify_self_duality_witness(tri, Matrix::identity(3)));
    StateSpace squit = make_squit();
    Matrix witness = *inverse(polygon_self_duality_map(4));
    ASSERT_TRUE(verify_self_duality_witness(squit, witness));
    ASSERT_TRUE(verify_self_duality_witness(squit, Scalar(7) * witness));
    ASSERT_FALSE(verify_self_duality_witness(squit, Matrix::identity(3)));
    // Vertex (1,1,1) is outside the dual square |x| + |y| <= z.
    ASSERT_FALSE(cone_contains(dual_cone(squit.cone()), v1()));
    ASSERT_TRUE(verify_self_duality_witness(make_ball(3), Matrix::identity(4)));
}

TEST(distinguishing_observable, examples) {
    StateSpace tri = make_classical(3);
    auto obs = one_shot_distinguishing_observable(tri, tri.cone().generators());
    ASSERT_TRUE(obs.has_value());
    for (std::size_t i = 0; i < 3; ++i) {
        Vector e(3);
        e[i] = 1;
        ASSERT_EQ(obs->effects[i].functional, e);
    }

    StateSpace squit = make_squit();
    auto pair = one_shot_distinguishing_observable(squit, {v1(), v3()});
    ASSERT_TRUE(pair.has_value());
    ASSERT_TRUE(is_observable(squit, *pair));
    ASSERT_EQ(dot(pair->effects[0].functional, v1()), Scalar(1));
    ASSERT_EQ(dot(pair->effects[0].functional, v3()), Scalar(0));
    ASSERT_EQ(dot(pair->effects[1].functional, v3()), Scalar(1));
    ASSERT_EQ(dot(pair->effects[1].functional, v1()), Scalar(0));
    // The symmetric answer is also a valid distinguishing observable.
    Observable symmetric{{Effect{{Scalar::ratio(1, 4), Scalar::ratio(1, 4), Scalar::ratio(1, 2)}},
                          Effect{{Scalar::ratio(-1, 4), Scalar::ratio(-1, 4), Scalar::ratio(1, 2)}}}};
    ASSERT_TRUE(is_observable(squit, symmetric));

    ASSERT_FALSE(one_shot_distinguishing_observable(squit, {v1(), v2(), v3()}).has_value());
    // Affine-extension oracle: v4 = v1 - v2 + v3, so a2 with a2(v1,v2,v3) = (0,1,0) has a2(v4) = -1.
    ASSERT_EQ(v1() - v2() + v3(), v4());
    ASSERT_THROW(one_shot_distinguishing_observable(squit, {make_vector({2, 0, 2})}), InvalidInput);
    ASSERT_THROW(one_shot_distinguishing_observable(make_ball(3), {make_vector({0, 0, 0, 1})}), UnsupportedKind);
}

TEST(decompose_cone, examples_match_partition_oracle) {
    struct Case {
        StateSpace space;
        std::size_t summands;
    };
    std::vector<Case> cases = {{make_classical(3), 3},
                               {direct_sum(make_squit(), make_classical(1)), 2},
                               {make_polygon(5), 1},
                               {make_squit(), 1},
                               {direct_sum(make_classical(2), make_squit()), 3}};
    for (const auto& c : cases) {
        auto blocks = decompose_cone(c.space);
        ASSERT_EQ(blocks.size(), c.summands) << c.space.label();
        auto oracle = test::brute_force_summands(c.space.cone().generators(), c.space.dim());
        ASSERT_EQ(oracle.size(), c.summands) << c.space.label();
        std::vector<Vector> all;
        std::size_t total_rank = 0;
        for (const auto& b : blocks) {
            total_rank += b.size();
            all.insert(all.end(), b.begin(), b.end());
        }
        ASSERT_EQ(total_rank, c.space.dim());
        ASSERT_EQ(rank(all, c.space.dim()), c.space.dim());
    }
}

TEST(decompose_cone, partition_is_invariant_under_generator_order) {
    StateSpace base = direct_sum(direct_sum(make_squit(), make_classical(2)), make_squit());
    std::vector<Vector> gens = base.cone().generators();
    auto reference = decompose_cone(base);
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        std::shuffle(gens.begin(), gens.end(), rng);
        StateSpace shuffled(ConeRep::from_generators(gens, base.dim()), base.unit());
        auto blocks = decompose_cone(shuffled);
        ASSERT_EQ(blocks.size(), reference.size());
        // Same spans: every block of one decomposition has the rank of its
        // match in the other, and together they span the same space.
        for (const auto& b : blocks) {
            bool matched = false;
            for (const auto& r : reference) {
                std::vector<Vector> joined = b;
                joined.insert(joined.end(), r.begin(), r.end());
                matched = matched || (rank(joined, base.dim()) == b.size() && b.size() == r.size());
            }
            ASSERT_TRUE(matched);
        }
    }
}
