#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "opcalc/errors.hpp"

namespace opcalc {

using Complex = std::complex<double>;
using Vec = std::vector<Complex>;

/// Dense complex matrix, row-major. Dimensions are always >= 1; empty
/// matrices are rejected at construction time.
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> entries);
    static Matrix diagonal_complex(std::span<const Complex> entries);

    /// Builds from row-major data; validates length and finiteness.
    static Matrix from_data(std::size_t rows, std::size_t cols, Vec data);

    /// Row-major literal constructors, mainly for tests and small fixtures.
    static Matrix from_real(std::initializer_list<std::initializer_list<double>> rows);
    static Matrix from_complex(std::initializer_list<std::initializer_list<Complex>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Complex> data() const { return data_; }
    std::span<Complex> mutable_data() { return data_; }

    Matrix adjoint() const;
    Matrix transpose() const;
    Matrix conjugate() const;

    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix operator*(const Matrix& rhs) const;
    Matrix operator*(Complex scalar) const;

    /// Matrix-vector product M x.
    Vec apply(std::span<const Complex> x) const;

    Vec column(std::size_t j) const;
    void set_column(std::size_t j, std::span<const Complex> v);

    Complex diagonal_sum() const;

    double frobenius_norm() const;
    double max_abs() const;
    bool all_finite() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Vec data_;
};

Matrix operator*(Complex scalar, const Matrix& m);

/// Frobenius norm of a - b; the workhorse for reconstruction residuals.
double frobenius_distance(const Matrix& a, const Matrix& b);

/// tr(A B) without forming the product.
Complex trace_product(const Matrix& a, const Matrix& b);

// Vector helpers. Inner products follow <x;z> = sum_j x[j] * conj(z[j])
// (linear in the first argument).
double vec_norm(std::span<const Complex> x);
Complex vec_inner(std::span<const Complex> x, std::span<const Complex> z);
Vec vec_scale(std::span<const Complex> x, Complex a);
Vec vec_add(std::span<const Complex> x, std::span<const Complex> y);
Vec vec_sub(std::span<const Complex> x, std::span<const Complex> y);
bool vec_all_finite(std::span<const Complex> x);

/// Rank-one matrix y * z^adj, i.e. M[i][j] = y[i] * conj(z[j]).
Matrix outer_adjoint(std::span<const Complex> y, std::span<const Complex> z);

/// Rank-one matrix x * y^T with no conjugation: M[i][j] = x[i] * y[j].
Matrix outer_bilinear(std::span<const Complex> x, std::span<const Complex> y);

}  // namespace opcalc
