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

#include "gptkit/lp.hpp"

#include <utility>
#include <vector>

#include "gptkit/errors.hpp"

namespace gptkit {

namespace {

constexpr std::size_t kIterationLimit = 200000;

/// Dense simplex tableau: constraint rows, then one reduced-cost row. The last
/// column is the right-hand side (the objective row stores -objective there).
class Tableau {
 public:
    Tableau(std::size_t rows, std::size_t cols) : table_(rows + 1, cols + 1), basis_(rows) {}

    Scalar& at(std::size_t r, std::size_t c) { return table_(r, c); }
    const Scalar& at(std::size_t r, std::size_t c) const { return table_(r, c); }
    Scalar& rhs(std::size_t r) { return table_(r, table_.cols() - 1); }
    std::size_t constraint_rows() const { return table_.rows() - 1; }
    std::size_t objective_row() const { return table_.rows() - 1; }
    std::vector<std::size_t>& basis() { return basis_; }

    void pivot(std::size_t row, std::size_t col) {
        Scalar p = table_(row, col);
        for (std::size_t c = 0; c < table_.cols(); ++c) {
            table_(row, c) /= p;
        }
        for (std::size_t r = 0; r < table_.rows(); ++r) {
            if (r == row || sign(table_(r, col), 0.0) == 0) {
                continue;
            }
            Scalar factor = table_(r, col);
            for (std::size_t c = 0; c < table_.cols(); ++c) {
                table_(r, c) -= factor * table_(row, c);
            }
        }
        basis_[row] = col;
    }

    /// Bland's rule over columns [0, allowed). Returns false when unbounded.
    bool optimize(std::size_t allowed, double tol) {
        for (std::size_t iter = 0; iter < kIterationLimit; ++iter) {
            std::optional<std::size_t> entering;
            for (std::size_t j = 0; j < allowed; ++j) {
                if (sign(at(objective_row(), j), tol) < 0) {
                    entering = j;
                    break;
                }
            }
            if (!entering) {
                return true;
            }
            std::optional<std::size_t> leaving;
            Scalar best_ratio;
            for (std::size_t r = 0; r < constraint_rows(); ++r) {
                if (sign(at(r, *entering), tol) <= 0) {
                    continue;
                }
                Scalar ratio = rhs(r) / at(r, *entering);
                if (!leaving) {
                    leaving = r;
                    best_ratio = ratio;
                    continue;
                }
                int cmp = sign(ratio - best_ratio, tol);
                if (cmp < 0 || (cmp == 0 && basis_[r] < basis_[*leaving])) {
                    leaving = r;
                    best_ratio = ratio;
                }
            }
            if (!leaving) {
                return false;
            }
            pivot(*leaving, *entering);
        }
        throw SolverFailure("simplex iteration limit reached");
    }

 private:
    Matrix table_;
    std::vector<std::size_t> basis_;
};

}  // namespace

LpResult minimize(const Matrix& a, const Vector& b, const Vector& c, double tol) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (b.size() != m || c.size() != n) {
        throw DimensionMismatch("LP: inconsistent shapes");
    }
    const bool exact = a.is_rational() && all_rational(b) && all_rational(c);
    const Scalar zero = exact ? Scalar(0) : Scalar(0.0);

    Tableau tab(m, n + m);
    for (std::size_t r = 0; r < m; ++r) {
        const bool flip = sign(b[r], 0.0) < 0;
        for (std::size_t j = 0; j < n; ++j) {
            tab.at(r, j) = flip ? -a(r, j) : a(r, j);
        }
        for (std::size_t j = 0; j < m; ++j) {
            tab.at(r, n + j) = (j == r) ? (exact ? Scalar(1) : Scalar(1.0)) : zero;
        }
        tab.rhs(r) = flip ? -b[r] : b[r];
        tab.basis()[r] = n + r;
    }
    // Phase 1: minimize the sum of artificials.
    const std::size_t z = tab.objective_row();
    for (std::size_t j = 0; j <= n + m; ++j) {
        tab.at(z, j) = zero;
    }
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t j = 0; j < n; ++j) {
            tab.at(z, j) -= tab.at(r, j);
        }
        tab.rhs(z) -= tab.rhs(r);
    }
    tab.optimize(n + m, tol);
    if (sign(-tab.rhs(z), tol) > 0) {
        return LpResult{LpStatus::infeasible, {}, zero};
    }
    for (std::size_t r = 0; r < m; ++r) {
        if (tab.basis()[r] < n) {
            continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (sign(tab.at(r, j), tol) != 0) {
                tab.pivot(r, j);
                break;
            }
        }
    }
    // Phase 2 over the original columns only.
    for (std::size_t j = 0; j <= n + m; ++j) {
        tab.at(z, j) = zero;
    }
    for (std::size_t j = 0; j < n; ++j) {
        tab.at(z, j) = c[j];
    }
    for (std::size_t r = 0; r < m; ++r) {
        std::size_t bj = tab.basis()[r];
        if (bj >= n || sign(c[bj], 0.0) == 0) {
            continue;
        }
        Scalar cb = c[bj];
        for (std::size_t j = 0; j <= n + m; ++j) {
            tab.at(z, j) -= cb * tab.at(r, j);
        }
    }
    const bool bounded = tab.optimize(n, tol);

    LpResult result;
    result.x.assign(n, zero);
    for (std::size_t r = 0; r < m; ++r) {
        if (tab.basis()[r] < n) {
            result.x[tab.basis()[r]] = tab.rhs(r);
        }
    }
    result.objective = dot(c, result.x);
    result.status = bounded ? LpStatus::optimal : LpStatus::unbounded;
    return result;
}

std::optional<Vector> find_nonnegative_solution(const Matrix& a, const Vector& b, double tol) {
    const bool exact = a.is_rational() && all_rational(b);
    Vector c(a.cols(), exact ? Scalar(0) : Scalar(0.0));
    LpResult r = minimize(a, b, c, tol);
    if (!r.feasible()) {
        return std::nullopt;
    }
    return r.x;
}

bool in_conic_hull(const std::vector<Vector>& generators, const Vector& x, double tol) {
    if (generators.empty()) {
        return is_zero_vector(x, tol);
    }
    Matrix a = Matrix::from_columns(generators, x.size());
    return find_nonnegative_solution(a, x, tol).has_value();
}

}  // namespace gptkit
