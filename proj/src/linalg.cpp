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

#include "gptkit/linalg.hpp"

#include <utility>

#include "gptkit/errors.hpp"

namespace gptkit {

RowEchelon row_reduce(Matrix m, double tol) {
    const bool exact = m.is_rational();
    RowEchelon out;
    std::size_t lead_row = 0;
    for (std::size_t col = 0; col < m.cols() && lead_row < m.rows(); ++col) {
        std::optional<std::size_t> pivot;
        double best = 0.0;
        for (std::size_t r = lead_row; r < m.rows(); ++r) {
            if (sign(m(r, col), tol) == 0) {
                continue;
            }
            if (exact) {
                pivot = r;
                break;
            }
            double mag = std::abs(m(r, col).to_double());
            if (!pivot || mag > best) {
                pivot = r;
                best = mag;
            }
        }
        if (!pivot) {
            for (std::size_t r = lead_row; r < m.rows(); ++r) {
                m(r, col) = exact ? Scalar(0) : Scalar(0.0);
            }
            continue;
        }
        if (*pivot != lead_row) {
            for (std::size_t c = 0; c < m.cols(); ++c) {
                std::swap(m(*pivot, c), m(lead_row, c));
            }
        }
        Scalar p = m(lead_row, col);
        for (std::size_t c = col; c < m.cols(); ++c) {
            m(lead_row, c) /= p;
        }
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == lead_row || sign(m(r, col), 0.0) == 0) {
                continue;
            }
            Scalar factor = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c) {
                m(r, c) -= factor * m(lead_row, c);
            }
        }
        out.pivots.push_back(col);
        ++lead_row;
    }
    out.reduced = std::move(m);
    return out;
}

std::size_t rank(const Matrix& m, double tol) { return row_reduce(m, tol).rank(); }

std::size_t rank(const std::vector<Vector>& vectors, std::size_t dim, double tol) {
    if (vectors.empty()) {
        return 0;
    }
    return rank(Matrix::from_rows(vectors, dim), tol);
}

std::vector<std::size_t> independent_subset(const std::vector<Vector>& vectors, std::size_t dim, double tol) {
    // Column pivots of the transposed matrix pick the earliest independent vectors.
    if (vectors.empty()) {
        return {};
    }
    Matrix cols = Matrix::from_rows(vectors, dim).transpose();
    return row_reduce(cols, tol).pivots;
}

std::optional<Matrix> inverse(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) {
        throw DimensionMismatch("inverse of a non-square matrix");
    }
    const std::size_t n = m.rows();
    Matrix aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            aug(r, c) = m(r, c);
        }
        aug(r, n + r) = 1;
    }
    RowEchelon re = row_reduce(std::move(aug), tol);
    if (re.rank() < n || re.pivots[n - 1] != n - 1) {
        return std::nullopt;
    }
    Matrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            inv(r, c) = re.reduced(r, n + c);
        }
    }
    return inv;
}

std::vector<Vector> nullspace(const Matrix& m, double tol) {
    RowEchelon re = row_reduce(m, tol);
    const bool exact = m.is_rational();
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : re.pivots) {
        is_pivot[p] = true;
    }
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) {
            continue;
        }
        Vector v(m.cols(), exact ? Scalar(0) : Scalar(0.0));
        v[free] = exact ? Scalar(1) : Scalar(1.0);
        for (std::size_t r = 0; r < re.pivots.size(); ++r) {
            v[re.pivots[r]] = -re.reduced(r, free);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vector> solve(const Matrix& m, const Vector& b, double tol) {
    if (b.size() != m.rows()) {
        throw DimensionMismatch("solve: right-hand side length mismatch");
    }
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            aug(r, c) = m(r, c);
        }
        aug(r, m.cols()) = b[r];
    }
    RowEchelon re = row_reduce(std::move(aug), tol);
    if (!re.pivots.empty() && re.pivots.back() == m.cols()) {
        return std::nullopt;
    }
    const bool exact = m.is_rational() && all_rational(b);
    Vector x(m.cols(), exact ? Scalar(0) : Scalar(0.0));
    for (std::size_t r = 0; r < re.pivots.size(); ++r) {
        x[re.pivots[r]] = re.reduced(r, m.cols());
    }
    return x;
}

}  // namespace gptkit
