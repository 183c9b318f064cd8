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

#include "gptkit/models.hpp"

#include "gtest/gtest.h"

#include "gptkit/errors.hpp"
#include "gptkit/linalg.hpp"
#include "test_util.hpp"

using namespace gptkit;

TEST(models, classical) {
    StateSpace one = make_classical(1);
    ASSERT_EQ(one.dim(), 1u);
    ASSERT_EQ(one.pure_states().size(), 1u);
    StateSpace bit = make_classical(2);
    ASSERT_EQ(bit.pure_states().size(), 2u);
    StateSpace tri = make_classical(3);
    ASSERT_EQ(tri.arithmetic(), Arithmetic::rational);
    ASSERT_TRUE(test::same_ray_set(tri.cone().facets(), tri.cone().generators()));
    ASSERT_THROW(make_classical(0), InvalidInput);
}

TEST(models, classical_state_sets_are_simplices) {
    for (int n = 1; n <= 5; ++n) {
        StateSpace s = make_classical(n);
        auto pure = s.pure_states();
        // Affine independence of the points = linear independence of (p, 1).
        std::vector<Vector> lifted;
        for (auto p : pure) {
            p.push_back(Scalar(1));
            lifted.push_back(p);
        }
        ASSERT_EQ(rank(lifted, s.dim() + 1), pure.size());
    }
}

TEST(models, squit_facets) {
    StateSpace squit = make_squit();
    ASSERT_EQ(squit.arithmetic(), Arithmetic::rational);
    ASSERT_TRUE(test::same_ray_set(squit.cone().facets(), {make_vector({1, 0, 1}), make_vector({-1, 0, 1}),
                                                           make_vector({0, 1, 1}), make_vector({0, -1, 1})}));
    ASSERT_EQ(make_polygon(4).label(), "squit");
}

TEST(models, polygons) {
    StateSpace tri = make_polygon(3);
    ASSERT_EQ(tri.arithmetic(), Arithmetic::floating);
    ASSERT_EQ(tri.cone().generators().size(), 3u);
    ASSERT_EQ(tri.cone().facets().size(), 3u);
    StateSpace pent = make_polygon(5);
    ASSERT_EQ(pent.cone().generators().size(), 5u);
    ASSERT_EQ(decompose_cone(pent).size(), 1u);
    ASSERT_THROW(make_polygon(2), InvalidInput);
}

TEST(models, rotations_are_automorphisms) {
    for (int n : {3, 4, 5, 6, 8}) {
        StateSpace space = make_polygon(n);
        auto group = polygon_rotation_group(n);
        ASSERT_EQ(group.size(), static_cast<std::size_t>(n));
        const Matrix& step = group[1];
        ASSERT_TRUE(is_order_isomorphism(LinearMap(step, space, space))) << n;
        // The rotation permutes the vertices cyclically.
        auto pure = space.pure_states();
        for (std::size_t k = 0; k < pure.size(); ++k) {
            ASSERT_TRUE(approx_equal(step * pure[k], pure[(k + 1) % pure.size()])) << n;
        }
        if (n == 4) {
            ASSERT_TRUE(step.is_rational());
        }
    }
}

TEST(models, balls) {
    StateSpace seg = make_ball(1);
    ASSERT_EQ(seg.dim(), 2u);
    ASSERT_EQ(seg.cone().kind(), ConeKind::lorentz);
    // (x, t) -> ((t + x)/2, (t - x)/2) identifies the 1-ball with the classical bit.
    Matrix to_bit(2, 2);
    to_bit(0, 0) = Scalar::ratio(1, 2);
    to_bit(0, 1) = Scalar::ratio(1, 2);
    to_bit(1, 0) = Scalar::ratio(-1, 2);
    to_bit(1, 1) = Scalar::ratio(1, 2);
    LinearMap iso(to_bit, seg, make_classical(2));
    ASSERT_TRUE(is_order_isomorphism(iso));
    ASSERT_TRUE(is_norm_contractive(iso));
    ASSERT_EQ(make_ball(2).dim(), 3u);
    StateSpace qubit = make_ball(3);
    ASSERT_EQ(qubit.dim(), 4u);
    ASSERT_TRUE(same_cone(dual_cone(qubit.cone()), qubit.cone()));
    ASSERT_THROW(make_ball(0), InvalidInput);
}

TEST(models, name_grammar) {
    ASSERT_EQ(parse_model_name("classical:3").name(), "classical:3");
    ASSERT_EQ(parse_model_name("squit").name(), "squit");
    ASSERT_EQ(parse_model_name("polygon:4").name(), "squit");
    ASSERT_EQ(parse_model_name("ball:3").family, ModelFamily::ball);
    ASSERT_THROW(parse_model_name("polygon:2"), InvalidInput);
    ASSERT_THROW(parse_model_name("simplex:3"), InvalidInput);
    ASSERT_THROW(parse_model_name("classical:x"), InvalidInput);
    ASSERT_EQ(make_model("polygon:6").cone().generators().size(), 6u);
}

TEST(models, direct_sum_blocks) {
    StateSpace s = direct_sum(make_squit(), make_classical(1));
    ASSERT_EQ(s.dim(), 4u);
    ASSERT_EQ(s.cone().generators().size(), 5u);
    ASSERT_EQ(decompose_cone(s).size(), 2u);
}

TEST(models, self_duality_maps_are_equivariant_isomorphisms) {
    for (int n : {3, 4, 5, 6, 8}) {
        StateSpace space = make_polygon(n);
        Matrix w = polygon_self_duality_map(n);
        ASSERT_TRUE(is_order_isomorphism(LinearMap(w, dual_state_space(space), space))) << n;
        ASSERT_TRUE(approx_equal(dot(space.unit(), w * space.unit()), Scalar(1)));
        for (const auto& g : polygon_rotation_group(n)) {
            Matrix contragredient = inverse(g)->transpose();
            ASSERT_TRUE(approx_equal(g * w, w * contragredient)) << n;
        }
    }
}
