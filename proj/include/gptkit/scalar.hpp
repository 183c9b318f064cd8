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

#ifndef GPTKIT_SCALAR_HPP
#define GPTKIT_SCALAR_HPP

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gptkit {

/// Absolute tolerance used by float-mode predicates unless configured otherwise.
inline constexpr double kDefaultTolerance = 1e-9;

enum class Arithmetic { rational, floating };

/**
 * A real number that is either an exact rational (GMP) or a double.
 *
 * Arithmetic between two rationals stays exact; anything touching a double
 * is carried out in floating point. Predicates that compare against zero take
 * an absolute tolerance, which is ignored for exact values.
 */
class Scalar {
 public:
    Scalar() : value_(mpq_class(0)) {}
    Scalar(int v) : value_(mpq_class(v)) {}  // NOLINT(google-explicit-constructor)
    Scalar(long v) : value_(mpq_class(v)) {}  // NOLINT(google-explicit-constructor)
    Scalar(mpq_class v) : value_(std::move(v)) { std::get<mpq_class>(value_).canonicalize(); }  // NOLINT
    explicit Scalar(double v) : value_(v) {}

    static Scalar ratio(long num, long den);
    /// Parses "p/q", an integer, or a decimal literal (the latter becomes a double).
    static Scalar parse(std::string_view text);

    bool is_rational() const { return std::holds_alternative<mpq_class>(value_); }
    const mpq_class& rational() const { return std::get<mpq_class>(value_); }
    double to_double() const;
    /// "p/q" (or "p") for rationals, shortest round-trip decimal for doubles.
    std::string to_string() const;

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    Scalar operator-() const;

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    /// Exact value comparison (no tolerance).
    friend bool operator==(const Scalar& a, const Scalar& b);

 private:
    std::variant<mpq_class, double> value_;
};

/// -1, 0 or +1; doubles within `tol` of zero count as zero.
int sign(const Scalar& x, double tol = kDefaultTolerance);
inline bool is_zero(const Scalar& x, double tol = kDefaultTolerance) { return sign(x, tol) == 0; }
inline bool approx_equal(const Scalar& a, const Scalar& b, double tol = kDefaultTolerance) {
    return is_zero(a - b, tol);
}
/// a < b beyond tolerance.
inline bool definitely_less(const Scalar& a, const Scalar& b, double tol = kDefaultTolerance) {
    return sign(b - a, tol) > 0;
}
Scalar abs(const Scalar& x);
Scalar to_float(const Scalar& x);
/// Exact square root when x is a rational perfect square, otherwise a double.
Scalar sqrt(const Scalar& x);

using Vector = std::vector<Scalar>;

bool all_rational(std::span<const Scalar> v);
Vector to_float(const Vector& v);
Vector make_vector(std::initializer_list<long> values);

Scalar dot(std::span<const Scalar> a, std::span<const Scalar> b);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(const Scalar& s, const Vector& v);
Vector operator-(const Vector& v);
Vector kron(const Vector& a, const Vector& b);
bool is_zero_vector(std::span<const Scalar> v, double tol = kDefaultTolerance);
bool approx_equal(std::span<const Scalar> a, std::span<const Scalar> b, double tol = kDefaultTolerance);
Scalar max_abs(std::span<const Scalar> v);

/// Rescales a ray to a canonical representative: primitive integer vector for
/// rationals, unit max-norm for doubles. Direction and sign are preserved.
Vector canonical_ray(Vector v);
/// True iff a = c·b for some c > 0.
bool same_ray(std::span<const Scalar> a, std::span<const Scalar> b, double tol = kDefaultTolerance);

/// Dense row-major matrix of Scalars.
class Matrix {
 public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
    static Matrix from_rows(const std::vector<Vector>& rows);
    static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows);
    static Matrix outer(const Vector& column, const Vector& row);
    /// Reshapes a row-major vector of length rows*cols.
    static Matrix reshape(const Vector& flat, std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Scalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    Vector row_vector(std::size_t r) const;
    Vector column(std::size_t c) const;
    const Vector& flat() const { return data_; }

    Matrix transpose() const;
    bool is_rational() const { return all_rational(data_); }

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(const Scalar& s, Matrix m);
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Vector operator*(const Matrix& a, const Vector& v);
    friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Vector data_;
};

Matrix kron(const Matrix& a, const Matrix& b);
bool approx_equal(const Matrix& a, const Matrix& b, double tol = kDefaultTolerance);
Matrix to_float(const Matrix& m);

}  // namespace gptkit

#endif  // GPTKIT_SCALAR_HPP
