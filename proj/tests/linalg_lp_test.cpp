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

#include <random>

#include "gtest/gtest.h"

#include "gptkit/errors.hpp"
#include "gptkit/linalg.hpp"
#include "gptkit/lp.hpp"

using namespace gptkit;

TEST(linalg, rank_and_nullspace) {
    Matrix m = Matrix::from_rows({make_vector({1, 2, 3}), make_vector({2, 4, 6}), make_vector({1, 0, 1})});
    ASSERT_EQ(rank(m), 2u);
    auto ns = nullspace(m);
    ASSERT_EQ(ns.size(), 1u);
    ASSERT_TRUE(is_zero_vector(m * ns[0]));
}

TEST(linalg, inverse_exact) {
    Matrix m = Matrix::from_rows({make_vector({2, 1}), make_vector({1, 1})});
    auto inv = inverse(m);
    ASSERT_TRUE(inv.has_value());
    ASSERT_EQ(m * *inv, Matrix::identity(2));
    ASSERT_FALSE(inverse(Matrix::from_rows({make_vector({1, 2}), make_vector({2, 4})})).has_value());
}

TEST(linalg, solve_reports_inconsistency) {
    Matrix m = Matrix::from_rows({make_vector({1, 1}), make_vector({2, 2})});
    ASSERT_FALSE(solve(m, make_vector({1, 3})).has_value());
    auto x = solve(m, make_vector({1, 2}));
    ASSERT_TRUE(x.has_value());
    ASSERT_EQ(m * *x, make_vector({1, 2}));
}

TEST(linalg, random_rational_inverse_property) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> d(-5, 5);
    for (int trial = 0; trial < 50; ++trial) {
        Matrix m(4, 4);
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                m(i, j) = d(rng);
            }
        }
        auto inv = inverse(m);
        if (rank(m) < 4) {
            ASSERT_FALSE(inv.has_value());
        } else {
            ASSERT_TRUE(inv.has_value());
            ASSERT_EQ(*inv * m, Matrix::identity(4));
        }
    }
}

TEST(lp, small_optimum_exact) {
    // min -x - y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6.  Optimum at (8/5, 6/5).
    Matrix a = Matrix::from_rows({make_vector({1, 2, 1, 0}), make_vector({3, 1, 0, 1})});
    LpResult r = minimize(a, make_vector({4, 6}), make_vector({-1, -1, 0, 0}));
    ASSERT_EQ(r.status, LpStatus::optimal);
    ASSERT_EQ(r.objective, Scalar::ratio(-14, 5));
    ASSERT_EQ(r.x[0], Scalar::ratio(8, 5));
}

TEST(lp, infeasible_and_unbounded) {
    Matrix a = Matrix::from_rows({make_vector({1, 1})});
    ASSERT_EQ(minimize(a, make_vector({-1}), make_vector({0, 0})).status, LpStatus::infeasible);
    Matrix b = Matrix::from_rows({make_vector({1, -1})});
    ASSERT_EQ(minimize(b, make_vector({1}), make_vector({0, -1})).status, LpStatus::unbounded);
}

TEST(lp, redundant_rows_are_tolerated) {
    Matrix a = Matrix::from_rows({make_vector({1, 1, 0}), make_vector({2, 2, 0}), make_vector({0, 1, 1})});
    auto x = find_nonnegative_solution(a, make_vector({1, 2, 1}));
    ASSERT_TRUE(x.has_value());
    ASSERT_EQ(a * *x, make_vector({1, 2, 1}));
}

TEST(lp, degenerate_cycling_example_terminates) {
    // Beale's example, which cycles under the textbook largest-coefficient rule.
    Matrix a = Matrix::from_rows({
        {Scalar::ratio(1, 4), Scalar(-8), Scalar(-1), Scalar(9), Scalar(1), Scalar(0), Scalar(0)},
        {Scalar::ratio(1, 2), Scalar(-12), Scalar::ratio(-1, 2), Scalar(3), Scalar(0), Scalar(1), Scalar(0)},
        {Scalar(0), Scalar(0), Scalar(1), Scalar(0), Scalar(0), Scalar(0), Scalar(1)},
    });
    Vector c = {Scalar::ratio(-3, 4), Scalar(20), Scalar::ratio(-1, 2), Scalar(6), Scalar(0), Scalar(0), Scalar(0)};
    LpResult r = minimize(a, make_vector({0, 0, 1}), c);
    ASSERT_EQ(r.status, LpStatus::optimal);
    ASSERT_EQ(r.objective, Scalar::ratio(-5, 4));
}

TEST(lp, conic_hull_membership) {
    std::vector<Vector> gens = {make_vector({1, 0}), make_vector({1, 1})};
    ASSERT_TRUE(in_conic_hull(gens, make_vector({3, 1})));
    ASSERT_FALSE(in_conic_hull(gens, make_vector({0, 1})));
}
