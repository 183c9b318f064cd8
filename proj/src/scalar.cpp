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

#include "gptkit/scalar.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "gptkit/errors.hpp"

namespace gptkit {

namespace {

template <typename Op>
void combine(std::variant<mpq_class, double>& lhs, const std::variant<mpq_class, double>& rhs, Op op) {
    if (std::holds_alternative<mpq_class>(lhs) && std::holds_alternative<mpq_class>(rhs)) {
        op(std::get<mpq_class>(lhs), std::get<mpq_class>(rhs));
        return;
    }
    auto as_double = [](const std::variant<mpq_class, double>& v) {
        return std::holds_alternative<double>(v) ? std::get<double>(v) : std::get<mpq_class>(v).get_d();
    };
    double a = as_double(lhs);
    op(a, as_double(rhs));
    lhs = a;
}

}  // namespace

Scalar Scalar::ratio(long num, long den) {
    if (den == 0) {
        throw std::domain_error("zero denominator");
    }
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(std::move(q));
}

Scalar Scalar::parse(std::string_view text) {
    std::string s(text);
    auto is_integer = [](const std::string& t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        return i < t.size() && std::all_of(t.begin() + static_cast<long>(i), t.end(),
                                           [](char c) { return c >= '0' && c <= '9'; });
    };
    auto strip_plus = [](std::string t) { return (!t.empty() && t[0] == '+') ? t.substr(1) : t; };
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (!is_integer(num) || !is_integer(den)) {
            throw InvalidInput("malformed rational '" + s + "'");
        }
        mpz_class d(strip_plus(den));
        if (d == 0) {
            throw InvalidInput("zero denominator in '" + s + "'");
        }
        mpq_class q(mpz_class(strip_plus(num)), d);
        q.canonicalize();
        return Scalar(std::move(q));
    }
    if (is_integer(s)) {
        return Scalar(mpq_class(mpz_class(strip_plus(s))));
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw InvalidInput("malformed number '" + s + "'");
    }
    return Scalar(v);
}

double Scalar::to_double() const {
    return is_rational() ? rational().get_d() : std::get<double>(value_);
}

std::string Scalar::to_string() const {
    if (is_rational()) {
        return rational().get_str();
    }
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), std::get<double>(value_));
    return std::string(buf, ptr);
}

Scalar& Scalar::operator+=(const Scalar& o) {
    combine(value_, o.value_, [](auto& a, const auto& b) { a += b; });
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    combine(value_, o.value_, [](auto& a, const auto& b) { a -= b; });
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    combine(value_, o.value_, [](auto& a, const auto& b) { a *= b; });
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.is_rational() && o.rational() == 0) {
        throw std::domain_error("division by exact zero");
    }
    combine(value_, o.value_, [](auto& a, const auto& b) { a /= b; });
    return *this;
}

Scalar Scalar::operator-() const {
    if (is_rational()) {
        return Scalar(mpq_class(-rational()));
    }
    return Scalar(-std::get<double>(value_));
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.is_rational() && b.is_rational()) {
        return a.rational() == b.rational();
    }
    return a.to_double() == b.to_double();
}

int sign(const Scalar& x, double tol) {
    if (x.is_rational()) {
        return sgn(x.rational());
    }
    double v = x.to_double();
    if (std::abs(v) <= tol) {
        return 0;
    }
    return v > 0 ? 1 : -1;
}

Scalar abs(const Scalar& x) {
    if (x.is_rational()) {
        return Scalar(mpq_class(::abs(x.rational())));
    }
    return Scalar(std::abs(x.to_double()));
}

Scalar to_float(const Scalar& x) { return Scalar(x.to_double()); }

Scalar sqrt(const Scalar& x) {
    if (x.is_rational() && sgn(x.rational()) >= 0) {
        const mpz_class& num = x.rational().get_num();
        const mpz_class& den = x.rational().get_den();
        if (mpz_perfect_square_p(num.get_mpz_t()) != 0 && mpz_perfect_square_p(den.get_mpz_t()) != 0) {
            return Scalar(mpq_class(::sqrt(num), ::sqrt(den)));
        }
    }
    return Scalar(std::sqrt(x.to_double()));
}

bool all_rational(std::span<const Scalar> v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_rational(); });
}

Vector to_float(const Vector& v) {
    Vector out;
    out.reserve(v.size());
    for (const auto& s : v) {
        out.push_back(to_float(s));
    }
    return out;
}

Vector make_vector(std::initializer_list<long> values) {
    Vector out;
    out.reserve(values.size());
    for (long v : values) {
        out.emplace_back(v);
    }
    return out;
}

Scalar dot(std::span<const Scalar> a, std::span<const Scalar> b) {
    if (a.size() != b.size()) {
        throw DimensionMismatch("dot: lengths " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
    }
    Scalar acc;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

Vector operator+(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) {
        throw DimensionMismatch("vector sum: length mismatch");
    }
    Vector out(a);
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] += b[i];
    }
    return out;
}

Vector operator-(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) {
        throw DimensionMismatch("vector difference: length mismatch");
    }
    Vector out(a);
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] -= b[i];
    }
    return out;
}

Vector operator*(const Scalar& s, const Vector& v) {
    Vector out(v);
    for (auto& x : out) {
        x *= s;
    }
    return out;
}

Vector operator-(const Vector& v) {
    Vector out;
    out.reserve(v.size());
    for (const auto& x : v) {
        out.push_back(-x);
    }
    return out;
}

Vector kron(const Vector& a, const Vector& b) {
    Vector out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a) {
        for (const auto& y : b) {
            out.push_back(x * y);
        }
    }
    return out;
}

bool is_zero_vector(std::span<const Scalar> v, double tol) {
    return std::all_of(v.begin(), v.end(), [tol](const Scalar& s) { return is_zero(s, tol); });
}

bool approx_equal(std::span<const Scalar> a, std::span<const Scalar> b, double tol) {
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!approx_equal(a[i], b[i], tol)) {
            return false;
        }
    }
    return true;
}

Scalar max_abs(std::span<const Scalar> v) {
    Scalar best;
    for (const auto& x : v) {
        Scalar a = abs(x);
        if (sign(a - best, 0.0) > 0) {
            best = a;
        }
    }
    return best;
}

Vector canonical_ray(Vector v) {
    if (all_rational(v)) {
        mpz_class lcm_den = 1;
        for (const auto& x : v) {
            mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), x.rational().get_den().get_mpz_t());
        }
        mpz_class g = 0;
        std::vector<mpz_class> ints;
        ints.reserve(v.size());
        for (const auto& x : v) {
            mpz_class n = x.rational().get_num() * (lcm_den / x.rational().get_den());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
            ints.push_back(std::move(n));
        }
        if (g == 0) {
            return v;
        }
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] = Scalar(mpq_class(ints[i] / g));
        }
        return v;
    }
    Scalar m = max_abs(v);
    if (m.to_double() == 0.0) {
        return to_float(v);
    }
    Vector out;
    out.reserve(v.size());
    for (const auto& x : v) {
        out.emplace_back(x.to_double() / m.to_double());
    }
    return out;
}

bool same_ray(std::span<const Scalar> a, std::span<const Scalar> b, double tol) {
    if (a.size() != b.size()) {
        return false;
    }
    Vector ca = canonical_ray(Vector(a.begin(), a.end()));
    Vector cb = canonical_ray(Vector(b.begin(), b.end()));
    if (is_zero_vector(ca, tol) || is_zero_vector(cb, tol)) {
        return false;
    }
    return approx_equal(ca, cb, tol);
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1;
    }
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) {
            throw DimensionMismatch("matrix row " + std::to_string(r) + " has wrong length");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(r, c) = rows[r][c];
        }
    }
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
    return from_rows(rows, rows.empty() ? 0 : rows.front().size());
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols, std::size_t rows) {
    return from_rows(cols, rows).transpose();
}

Matrix Matrix::outer(const Vector& column, const Vector& row) {
    Matrix m(column.size(), row.size());
    for (std::size_t r = 0; r < column.size(); ++r) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            m(r, c) = column[r] * row[c];
        }
    }
    return m;
}

Matrix Matrix::reshape(const Vector& flat, std::size_t rows, std::size_t cols) {
    if (flat.size() != rows * cols) {
        throw DimensionMismatch("reshape: " + std::to_string(flat.size()) + " entries into " + std::to_string(rows) +
                                "x" + std::to_string(cols));
    }
    Matrix m(rows, cols);
    m.data_ = flat;
    return m;
}

Vector Matrix::row_vector(std::size_t r) const {
    auto s = row(r);
    return Vector(s.begin(), s.end());
}

Vector Matrix::column(std::size_t c) const {
    Vector out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        out.push_back((*this)(r, c));
    }
    return out;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            t(c, r) = (*this)(r, c);
        }
    }
    return t;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
        throw DimensionMismatch("matrix sum: shape mismatch");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] += o.data_[i];
    }
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
        throw DimensionMismatch("matrix difference: shape mismatch");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] -= o.data_[i];
    }
    return *this;
}

Matrix operator*(const Scalar& s, Matrix m) {
    for (auto& x : m.data_) {
        x *= s;
    }
    return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
        throw DimensionMismatch("matrix product: " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) +
                                " times " + std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
    }
    Matrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& x = a(r, k);
            if (x.is_rational() && sgn(x.rational()) == 0) {
                continue;
            }
            for (std::size_t c = 0; c < b.cols_; ++c) {
                out(r, c) += x * b(k, c);
            }
        }
    }
    return out;
}

Vector operator*(const Matrix& a, const Vector& v) {
    if (a.cols_ != v.size()) {
        throw DimensionMismatch("matrix-vector product: " + std::to_string(a.cols_) + " columns, vector length " +
                                std::to_string(v.size()));
    }
    Vector out(a.rows_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
        out[r] = dot(a.row(r), v);
    }
    return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

bool approx_equal(const Matrix& a, const Matrix& b, double tol) {
    return a.rows() == b.rows() && a.cols() == b.cols() && approx_equal(a.flat(), b.flat(), tol);
}

Matrix to_float(const Matrix& m) { return Matrix::reshape(to_float(m.flat()), m.rows(), m.cols()); }

}  // namespace gptkit
