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

#include "gptkit/double_description.hpp"

#include <boost/dynamic_bitset.hpp>

#include <string>
#include <utility>

#include "gptkit/errors.hpp"
#include "gptkit/linalg.hpp"

namespace gptkit {

namespace {

struct Ray {
    Vector coords;
    boost::dynamic_bitset<> zeros;  // processed inequalities tight on this ray
};

bool adjacent(const std::vector<Ray>& rays, std::size_t p, std::size_t q, std::size_t dim) {
    boost::dynamic_bitset<> common = rays[p].zeros & rays[q].zeros;
    if (common.count() + 2 < dim) {
        return false;
    }
    for (std::size_t r = 0; r < rays.size(); ++r) {
        if (r != p && r != q && common.is_subset_of(rays[r].zeros)) {
            return false;
        }
    }
    return true;
}

}  // namespace

std::vector<Vector> extreme_rays(const std::vector<Vector>& inequalities, std::size_t dim, double tol) {
    if (dim == 0) {
        throw DimensionMismatch("enumeration in dimension 0");
    }
    if (dim > kEnumerationDimensionCap) {
        throw DimensionCapExceeded("enumeration dimension " + std::to_string(dim) + " exceeds cap " +
                                   std::to_string(kEnumerationDimensionCap));
    }
    std::vector<Vector> rows;
    rows.reserve(inequalities.size());
    for (const auto& h : inequalities) {
        if (h.size() != dim) {
            throw DimensionMismatch("inequality length " + std::to_string(h.size()) + " != " + std::to_string(dim));
        }
        if (!is_zero_vector(h, tol)) {
            rows.push_back(canonical_ray(h));
        }
    }
    std::vector<std::size_t> basis = independent_subset(rows, dim, tol);
    if (basis.size() < dim) {
        throw DegenerateCone("inequalities have rank " + std::to_string(basis.size()) + " < " +
                             std::to_string(dim) + "; the cone is not pointed");
    }

    // Process the basis rows first, then the rest in input order.
    std::vector<std::size_t> order = basis;
    {
        std::vector<bool> in_basis(rows.size(), false);
        for (auto i : basis) {
            in_basis[i] = true;
        }
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (!in_basis[i]) {
                order.push_back(i);
            }
        }
    }
    const std::size_t total = order.size();

    std::vector<Vector> basis_rows;
    for (auto i : basis) {
        basis_rows.push_back(rows[i]);
    }
    auto inv = inverse(Matrix::from_rows(basis_rows, dim), tol);
    if (!inv) {
        throw DegenerateCone("singular initial basis");
    }
    std::vector<Ray> rays;
    for (std::size_t j = 0; j < dim; ++j) {
        Ray ray{canonical_ray(inv->column(j)), boost::dynamic_bitset<>(total)};
        for (std::size_t k = 0; k < dim; ++k) {
            if (k != j) {
                ray.zeros.set(k);
            }
        }
        rays.push_back(std::move(ray));
    }

    for (std::size_t step = dim; step < total; ++step) {
        const Vector& h = rows[order[step]];
        std::vector<Scalar> values;
        std::vector<int> signs;
        values.reserve(rays.size());
        for (const auto& r : rays) {
            values.push_back(dot(h, r.coords));
            signs.push_back(sign(values.back(), tol));
        }
        std::vector<Ray> next;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (signs[i] >= 0) {
                Ray kept = rays[i];
                if (signs[i] == 0) {
                    kept.zeros.set(step);
                }
                next.push_back(std::move(kept));
            }
        }
        for (std::size_t p = 0; p < rays.size(); ++p) {
            if (signs[p] <= 0) {
                continue;
            }
            for (std::size_t q = 0; q < rays.size(); ++q) {
                if (signs[q] >= 0 || !adjacent(rays, p, q, dim)) {
                    continue;
                }
                // values[p] > 0 > values[q]: the combination is tight on h.
                Vector combined = values[p] * rays[q].coords - values[q] * rays[p].coords;
                Ray fresh{canonical_ray(std::move(combined)), rays[p].zeros & rays[q].zeros};
                fresh.zeros.set(step);
                next.push_back(std::move(fresh));
            }
        }
        rays = std::move(next);
        if (rays.empty()) {
            throw DegenerateCone("inequalities admit only the zero vector");
        }
    }

    std::vector<Vector> out;
    out.reserve(rays.size());
    for (auto& r : rays) {
        out.push_back(std::move(r.coords));
    }
    return out;
}

}  // namespace gptkit
