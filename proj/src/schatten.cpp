#include "opcalc/schatten.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace opcalc {

Complex trace(const Matrix& t) {
    if (!t.is_square()) throw NonSquareError("trace requires a square matrix");
    return t.diagonal_sum();
}

double schatten_norm(const Matrix& t, double p, const Tolerances& tol) {
    if (!t.is_square()) throw NonSquareError("schatten_norm requires a square matrix");
    if (!(p > 0.0)) throw InvalidPError("schatten_norm: p must be in (0, inf], got " +
                                        std::to_string(p));
    if (std::isinf(p)) return operator_norm(t, tol);
    SvdFactors s = svd(t, tol);
    if (p == 1.0) {
        double acc = 0.0;
        for (double x : s.singular_values) acc += x;
        return acc;
    }
    if (p == 2.0) {
        double acc = 0.0;
        for (double x : s.singular_values) acc += x * x;
        return std::sqrt(acc);
    }
    double acc = 0.0;
    for (double x : s.singular_values)
        if (x > 0.0) acc += std::pow(x, p);
    return std::pow(acc, 1.0 / p);
}

Complex hs_inner(const Matrix& t, const Matrix& s) {
    if (t.rows() != s.rows() || t.cols() != s.cols())
        throw DimensionMismatchError("hs_inner requires equal dimensions");
    // tr(S^adj T) = sum_ij conj(S[i][j]) T[i][j]; no product needed.
    Complex acc{0.0, 0.0};
    auto dt = t.data();
    auto ds = s.data();
    for (std::size_t k = 0; k < dt.size(); ++k) acc += std::conj(ds[k]) * dt[k];
    return acc;
}

BasisTraceSums basis_trace_sums(const Matrix& t, const Matrix& basis, const Tolerances& tol) {
    if (!t.is_square()) throw NonSquareError("basis_trace_sums requires a square matrix");
    if (basis.rows() != t.rows() || basis.cols() != t.cols())
        throw DimensionMismatchError("basis_trace_sums: basis dimension mismatch");
    const std::size_t n = t.rows();
    const double unitary_residual = frobenius_distance(basis.adjoint() * basis,
                                                       Matrix::identity(n));
    if (unitary_residual > tol.algebraic * static_cast<double>(n))
        throw NotUnitaryError("basis_trace_sums: basis is not unitary, residual " +
                              std::to_string(unitary_residual));

    const Matrix abs_t = abs_op(t, tol);
    BasisTraceSums out{Complex{0.0, 0.0}, 0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
        Vec bk = basis.column(k);
        const Complex d = vec_inner(t.apply(bk), bk);
        out.sum += d;
        out.abs_sum += std::abs(d);
        out.abs_diag_of_abs += vec_inner(abs_t.apply(bk), bk).real();
    }
    return out;
}

std::pair<Matrix, Matrix> factor_hs(const Matrix& t, const Tolerances& tol) {
    PolarFactors pf = polar(t, tol);
    Matrix root = sqrt_psd(pf.p, tol);
    return {pf.w * root, root};
}

Matrix truncate_spectral(const Matrix& t, std::size_t k, const Tolerances& tol) {
    if (!t.is_square()) throw NonSquareError("truncate_spectral requires a square matrix");
    const std::size_t n = t.rows();
    if (k > n) throw KOutOfRangeError("truncate_spectral: k = " + std::to_string(k) +
                                      " exceeds dimension " + std::to_string(n));
    SvdFactors s = svd(t, tol);
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc{0.0, 0.0};
            for (std::size_t r = 0; r < k; ++r)
                acc += s.u(i, r) * s.singular_values[r] * std::conj(s.v(j, r));
            out(i, j) = acc;
        }
    }
    return out;
}

DualAttainment dual_attainment(const Matrix& t, const Tolerances& tol) {
    PolarFactors pf = polar(t, tol);
    Matrix s = pf.w.adjoint();
    const double value = trace(s * t).real();
    return DualAttainment{std::move(s), value};
}

Matrix shift_matrix(std::size_t n) {
    if (n < 2) throw NTooSmallError("shift_matrix requires n >= 2");
    Matrix s(n, n);
    for (std::size_t k = 0; k + 1 < n; ++k) s(k + 1, k) = 1.0;
    return s;
}

}  // namespace opcalc
