#pragma once

#include <utility>
#include <vector>

#include "opcalc/decomp.hpp"
#include "opcalc/matrix.hpp"

namespace opcalc {

/// Sum of diagonal entries. Basis independent on square matrices; the
/// verifier exercises that through basis_trace_sums.
Complex trace(const Matrix& t);

/// (sum_k sigma_k^p)^(1/p) for finite p in (0, inf); sigma_max for p = inf
/// (pass std::numeric_limits<double>::infinity()). p = 1 is the trace norm,
/// p = 2 the Hilbert-Schmidt (Frobenius) norm.
double schatten_norm(const Matrix& t, double p, const Tolerances& tol = {});

/// Hilbert-Schmidt inner product <T;S> = tr(S^adj T).
Complex hs_inner(const Matrix& t, const Matrix& s);

/// Diagonal sums of T against the orthonormal basis given by the columns of
/// the unitary B: sum of <T b_k; b_k>, sum of their moduli, and the same
/// diagonal sum for |T| (which equals the trace norm for every basis).
struct BasisTraceSums {
    Complex sum;
    double abs_sum;
    double abs_diag_of_abs;
};
BasisTraceSums basis_trace_sums(const Matrix& t, const Matrix& basis, const Tolerances& tol = {});

/// Hilbert-Schmidt factorisation T = A B with A = W P^(1/2), B = P^(1/2)
/// from the polar decomposition; attains ||A||_2 ||B||_2 = ||T||_1.
std::pair<Matrix, Matrix> factor_hs(const Matrix& t, const Tolerances& tol = {});

/// Best rank-k approximation in the trace norm: keep the k largest singular
/// values, zero the rest. The residual ||T - T_k||_1 is the suffix sum of
/// the dropped singular values.
Matrix truncate_spectral(const Matrix& t, std::size_t k, const Tolerances& tol = {});

/// A norming functional for the trace norm: S = W^adj from the polar
/// decomposition, with ||S|| <= 1 and Re tr(S T) = ||T||_1.
struct DualAttainment {
    Matrix s;
    double value;
};
DualAttainment dual_attainment(const Matrix& t, const Tolerances& tol = {});

/// n x n truncation of the unilateral shift: e_k -> e_{k+1}, e_n -> 0.
/// Zero diagonal in the standard basis, trace norm n - 1.
Matrix shift_matrix(std::size_t n);

}  // namespace opcalc
