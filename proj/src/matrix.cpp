#include "opcalc/matrix.hpp"

#include <cmath>
#include <string>

namespace opcalc {

namespace {

void require_nonempty(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
        throw InvalidDimensionError("matrix dimensions must be positive, got " +
                                    std::to_string(rows) + "x" + std::to_string(cols));
    }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    require_nonempty(rows, cols);
    data_.assign(rows * cols, Complex{0.0, 0.0});
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const double> entries) {
    Matrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

Matrix Matrix::diagonal_complex(std::span<const Complex> entries) {
    Matrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

Matrix Matrix::from_data(std::size_t rows, std::size_t cols, Vec data) {
    require_nonempty(rows, cols);
    if (data.size() != rows * cols) {
        throw InvalidDimensionError("data length " + std::to_string(data.size()) +
                                    " does not match " + std::to_string(rows) + "x" +
                                    std::to_string(cols));
    }
    if (!vec_all_finite(data)) {
        throw InvalidDimensionError("matrix entries must be finite");
    }
    Matrix m(rows, cols);
    m.data_ = std::move(data);
    return m;
}

Matrix Matrix::from_real(std::initializer_list<std::initializer_list<double>> rows) {
    Vec data;
    std::size_t ncols = 0;
    for (const auto& row : rows) {
        if (ncols == 0) ncols = row.size();
        if (row.size() != ncols) throw InvalidDimensionError("ragged row in matrix literal");
        for (double v : row) data.emplace_back(v, 0.0);
    }
    return from_data(rows.size(), ncols, std::move(data));
}

Matrix Matrix::from_complex(std::initializer_list<std::initializer_list<Complex>> rows) {
    Vec data;
    std::size_t ncols = 0;
    for (const auto& row : rows) {
        if (ncols == 0) ncols = row.size();
        if (row.size() != ncols) throw InvalidDimensionError("ragged row in matrix literal");
        for (Complex v : row) data.push_back(v);
    }
    return from_data(rows.size(), ncols, std::move(data));
}

Matrix Matrix::adjoint() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

Matrix Matrix::transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

Matrix Matrix::conjugate() const {
    Matrix out(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = std::conj(data_[k]);
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw DimensionMismatchError("matrix addition requires equal dimensions");
    Matrix out(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = data_[k] + rhs.data_[k];
    return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw DimensionMismatchError("matrix subtraction requires equal dimensions");
    Matrix out(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = data_[k] - rhs.data_[k];
    return out;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw DimensionMismatchError("matrix product: inner dimensions differ");
    Matrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Complex a = (*this)(i, k);
            if (a == Complex{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                out(i, j) += a * rhs(k, j);
            }
        }
    }
    return out;
}

Matrix Matrix::operator*(Complex scalar) const {
    Matrix out(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = data_[k] * scalar;
    return out;
}

Matrix operator*(Complex scalar, const Matrix& m) { return m * scalar; }

Vec Matrix::apply(std::span<const Complex> x) const {
    if (x.size() != cols_) throw DimensionMismatchError("matrix-vector product: size mismatch");
    Vec out(rows_, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < rows_; ++i) {
        Complex acc{0.0, 0.0};
        const Complex* row = data_.data() + i * cols_;
        for (std::size_t j = 0; j < cols_; ++j) acc += row[j] * x[j];
        out[i] = acc;
    }
    return out;
}

Vec Matrix::column(std::size_t j) const {
    Vec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
}

void Matrix::set_column(std::size_t j, std::span<const Complex> v) {
    if (v.size() != rows_) throw DimensionMismatchError("set_column: size mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Complex Matrix::diagonal_sum() const {
    Complex acc{0.0, 0.0};
    const std::size_t n = rows_ < cols_ ? rows_ : cols_;
    for (std::size_t i = 0; i < n; ++i) acc += (*this)(i, i);
    return acc;
}

double Matrix::frobenius_norm() const {
    double acc = 0.0;
    for (const Complex& v : data_) acc += std::norm(v);
    return std::sqrt(acc);
}

double Matrix::max_abs() const {
    double acc = 0.0;
    for (const Complex& v : data_) acc = std::max(acc, std::abs(v));
    return acc;
}

bool Matrix::all_finite() const { return vec_all_finite(data_); }

double frobenius_distance(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatchError("frobenius_distance: dimensions differ");
    double acc = 0.0;
    auto da = a.data();
    auto db = b.data();
    for (std::size_t k = 0; k < da.size(); ++k) acc += std::norm(da[k] - db[k]);
    return std::sqrt(acc);
}

Complex trace_product(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols())
        throw DimensionMismatchError("trace_product: dimensions incompatible");
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * b(j, i);
    return acc;
}

double vec_norm(std::span<const Complex> x) {
    double acc = 0.0;
    for (const Complex& v : x) acc += std::norm(v);
    return std::sqrt(acc);
}

Complex vec_inner(std::span<const Complex> x, std::span<const Complex> z) {
    if (x.size() != z.size()) throw DimensionMismatchError("inner product: size mismatch");
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < x.size(); ++j) acc += x[j] * std::conj(z[j]);
    return acc;
}

Vec vec_scale(std::span<const Complex> x, Complex a) {
    Vec out(x.begin(), x.end());
    for (Complex& v : out) v *= a;
    return out;
}

Vec vec_add(std::span<const Complex> x, std::span<const Complex> y) {
    if (x.size() != y.size()) throw DimensionMismatchError("vector add: size mismatch");
    Vec out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] + y[j];
    return out;
}

Vec vec_sub(std::span<const Complex> x, std::span<const Complex> y) {
    if (x.size() != y.size()) throw DimensionMismatchError("vector sub: size mismatch");
    Vec out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] - y[j];
    return out;
}

bool vec_all_finite(std::span<const Complex> x) {
    for (const Complex& v : x) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    return true;
}

Matrix outer_adjoint(std::span<const Complex> y, std::span<const Complex> z) {
    Matrix out(y.size(), z.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        for (std::size_t j = 0; j < z.size(); ++j) out(i, j) = y[i] * std::conj(z[j]);
    return out;
}

Matrix outer_bilinear(std::span<const Complex> x, std::span<const Complex> y) {
    Matrix out(x.size(), y.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) out(i, j) = x[i] * y[j];
    return out;
}

}  // namespace opcalc
