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

#include <Eigen/Dense>

#include <cmath>

#include "gptkit/cone.hpp"
#include "gptkit/errors.hpp"
#include "gptkit/linalg.hpp"

namespace gptkit {

namespace {

/// The two extreme rays of the 2-dimensional Lorentz cone {t >= |x|}.
std::vector<Vector> planar_lorentz_rays() { return {make_vector({1, 1}), make_vector({-1, 1})}; }

std::vector<Vector> enumerable_rays(const ConeRep& cone) {
    if (cone.is_polyhedral()) {
        return cone.generators();
    }
    if (cone.dim() == 2) {
        return planar_lorentz_rays();
    }
    throw UnsupportedKind("no finite generator list");
}

bool lorentz_to_lorentz(const Matrix& t, double tol) {
    const std::size_t n = t.cols();
    const std::size_t r = rank(t, tol);
    if (r == 0) {
        return true;
    }
    ConeRep dom = ConeRep::lorentz(n, tol);
    ConeRep cod = ConeRep::lorentz(t.rows(), tol);
    if (r == 1) {
        // t = u vᵀ with u a nonzero column and v the matching row coefficients.
        std::size_t col = 0;
        while (is_zero_vector(t.column(col), tol)) {
            ++col;
        }
        Vector u = t.column(col);
        std::size_t pivot = 0;
        while (is_zero(u[pivot], tol)) {
            ++pivot;
        }
        Vector v = (Scalar(1) / u[pivot]) * t.row_vector(pivot);
        return (cone_contains(cod, u) && cone_contains(dom, v)) || (cone_contains(cod, -u) && cone_contains(dom, -v));
    }
    Vector center(n);
    center.back() = 1;
    if (!cone_contains(cod, t * center)) {
        return false;
    }
    // S-lemma: T(K) ⊆ K ∪ -K iff TᵀJT - λJ is PSD for some λ >= 0.
    Eigen::MatrixXd tm(t.rows(), n);
    for (std::size_t i = 0; i < t.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            tm(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = t(i, j).to_double();
        }
    }
    Eigen::VectorXd jd_cod = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(t.rows()), -1.0);
    jd_cod(jd_cod.size() - 1) = 1.0;
    Eigen::VectorXd jd_dom = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), -1.0);
    jd_dom(jd_dom.size() - 1) = 1.0;
    Eigen::MatrixXd quad = tm.transpose() * jd_cod.asDiagonal() * tm;
    auto min_eig = [&](double lambda) {
        Eigen::MatrixXd m = quad - lambda * Eigen::MatrixXd(jd_dom.asDiagonal());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
        return solver.eigenvalues()(0);
    };
    double lo = 0.0;
    double hi = quad(quad.rows() - 1, quad.cols() - 1);
    if (hi < 0.0) {
        return false;
    }
    // λ_min(quad - λJ) is concave in λ.
    for (int iter = 0; iter < 200; ++iter) {
        double m1 = lo + (hi - lo) / 3.0;
        double m2 = hi - (hi - lo) / 3.0;
        if (min_eig(m1) < min_eig(m2)) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    double scale = std::max(1.0, quad.cwiseAbs().maxCoeff());
    return min_eig(0.5 * (lo + hi)) >= -tol * scale;
}

}  // namespace

bool is_positive_map(const LinearMap& t) {
    const ConeRep& dom = t.domain.cone();
    const ConeRep& cod = t.codomain.cone();
    const double tol = std::max(dom.tolerance(), cod.tolerance());
    if (dom.is_polyhedral() || dom.dim() == 2) {
        for (const auto& g : enumerable_rays(dom)) {
            if (!cone_contains(cod, t.matrix * g)) {
                return false;
            }
        }
        return true;
    }
    if (cod.is_polyhedral() || cod.dim() == 2) {
        // The 2-dimensional Lorentz cone is self-dual with the same two rays as facets.
        Matrix tt = t.matrix.transpose();
        for (const auto& h : enumerable_rays(cod)) {
            if (!dual_cone_contains(dom, tt * h)) {
                return false;
            }
        }
        return true;
    }
    return lorentz_to_lorentz(t.matrix, tol);
}

}  // namespace gptkit
