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

#include <algorithm>
#include <functional>

#include "gptkit/errors.hpp"
#include "gptkit/linalg.hpp"
#include "gptkit/lp.hpp"
#include "gptkit/protocols.hpp"

namespace gptkit {

std::vector<LinearMap> nondisturbing_basis(const StateSpace& space) {
    auto blocks = decompose_cone(space);
    std::vector<Vector> columns;
    for (const auto& block : blocks) {
        columns.insert(columns.end(), block.begin(), block.end());
    }
    const std::size_t dim = space.dim();
    Matrix basis = Matrix::from_columns(columns, dim);
    auto inv = inverse(basis, space.tolerance());
    if (!inv) {
        throw std::logic_error("summand bases do not span the space");
    }
    std::vector<LinearMap> out;
    std::size_t offset = 0;
    for (const auto& block : blocks) {
        Matrix p(dim, dim);
        for (std::size_t c = offset; c < offset + block.size(); ++c) {
            p = p + Matrix::outer(basis.column(c), inv->row_vector(c));
        }
        offset += block.size();
        out.emplace_back(std::move(p), space, space);
    }
    return out;
}

bool is_nondisturbing(const StateSpace& space, const Matrix& t) {
    if (t.rows() != space.dim() || t.cols() != space.dim()) {
        throw DimensionMismatch("map shape does not match the state space");
    }
    if (!is_positive_map(LinearMap(t, space, space))) {
        return false;
    }
    const double tol = space.tolerance();
    for (const auto& g : space.cone().generators()) {
        Vector image = t * g;
        std::size_t k = 0;
        for (std::size_t i = 1; i < g.size(); ++i) {
            if (sign(abs(g[i]) - abs(g[k]), tol) > 0) {
                k = i;
            }
        }
        Scalar c = image[k] / g[k];
        if (sign(c, tol) < 0 || !approx_equal(image, c * g, tol)) {
            return false;
        }
    }
    return true;
}

bool is_clonable(const StateSpace& space, const std::vector<Vector>& states) {
    return one_shot_distinguishing_observable(space, states).has_value();
}

LinearMap build_cloner(const StateSpace& space, const std::vector<Vector>& states, const Observable& observable) {
    const double tol = space.tolerance();
    if (states.empty() || observable.effects.size() < states.size()) {
        throw InvalidInput("the observable needs one effect per state");
    }
    if (!is_observable(space, observable)) {
        throw InvalidInput("effects do not form an observable");
    }
    for (std::size_t i = 0; i < states.size(); ++i) {
        for (std::size_t j = 0; j < states.size(); ++j) {
            Scalar expected = i == j ? 1 : 0;
            if (!approx_equal(dot(observable.effects[i].functional, states[j]), expected, tol)) {
                throw InvalidInput("the observable does not distinguish the states");
            }
        }
    }
    const std::size_t dim = space.dim();
    Matrix m(dim * dim, dim);
    for (std::size_t i = 0; i < observable.effects.size(); ++i) {
        const Vector& s = states[i < states.size() ? i : 0];
        m = m + Matrix::outer(kron(s, s), observable.effects[i].functional);
    }
    return LinearMap(std::move(m), space, min_tensor(space, space).space);
}

namespace {

bool for_each_subset(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& f) {
    std::vector<std::size_t> idx(k);
    std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
        if (depth == k) {
            return f(idx);
        }
        for (std::size_t i = start; i < n; ++i) {
            idx[depth] = i;
            if (!rec(i + 1, depth + 1)) {
                return false;
            }
        }
        return true;
    };
    return rec(0, 0);
}

}  // namespace

BroadcastResult is_broadcastable(const StateSpace& space, const std::vector<Vector>& states,
                                 const BroadcastOptions& options) {
    if (states.empty()) {
        throw InvalidInput("no states given");
    }
    const double tol = space.tolerance();
    for (const auto& s : states) {
        if (s.size() != space.dim()) {
            throw DimensionMismatch("state length mismatch");
        }
        if (!space.is_state(s)) {
            throw InvalidInput("broadcastability needs normalized states");
        }
    }
    std::vector<Vector> pool = space.pure_states();
    for (const auto& s : states) {
        bool seen = std::any_of(pool.begin(), pool.end(), [&](const Vector& p) { return approx_equal(p, s, tol); });
        if (!seen) {
            pool.push_back(s);
        }
    }
    const std::size_t max_size =
        std::min(options.max_subset_size == 0 ? space.dim() + 1 : options.max_subset_size, pool.size());

    BroadcastResult result;
    result.verdict = BroadcastVerdict::not_broadcastable;
    for (std::size_t k = 1; k <= max_size; ++k) {
        bool finished = for_each_subset(pool.size(), k, [&](const std::vector<std::size_t>& pick) {
            if (result.candidates_examined >= options.max_candidates) {
                result.verdict = BroadcastVerdict::inconclusive;
                return false;
            }
            ++result.candidates_examined;
            std::vector<Vector> vertices;
            for (auto i : pick) {
                vertices.push_back(pool[i]);
            }
            if (rank(vertices, space.dim(), tol) != vertices.size()) {
                return true;
            }
            for (const auto& s : states) {
                if (!in_conic_hull(vertices, s, tol)) {
                    return true;
                }
            }
            auto obs = one_shot_distinguishing_observable(space, vertices);
            if (!obs) {
                return true;
            }
            result.verdict = BroadcastVerdict::broadcastable;
            result.simplex = std::move(vertices);
            result.distinguisher = std::move(obs);
            return false;
        });
        if (!finished) {
            break;
        }
    }
    return result;
}

}  // namespace gptkit
