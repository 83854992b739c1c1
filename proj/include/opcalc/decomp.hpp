#pragma once

#include <vector>

#include "opcalc/matrix.hpp"

namespace opcalc {

/// Tolerances shared across decompositions. `algebraic` is a relative
/// tolerance for symmetry/PSD checks and residual acceptance; `rank_rel`
/// scales sigma_max to decide which singular values count as nonzero
/// (partial-isometry support, representation truncation).
struct Tolerances {
    double algebraic = 1e-9;
    double rank_rel = 1e-10;
};

struct EigResult {
    std::vector<double> eigenvalues;  // descending
    Matrix q;                         // unitary, columns are eigenvectors
};

struct SvdFactors {
    Matrix u;                             // columns orthonormal
    std::vector<double> singular_values;  // descending, >= 0
    Matrix v;                             // columns orthonormal
};

struct PolarFactors {
    Matrix w;  // partial isometry
    Matrix p;  // PSD, equals |T|
};

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.
/// H = Q diag(lambda) Q^adj with lambda descending.
EigResult hermitian_eig(const Matrix& h, const Tolerances& tol = {}, std::size_t max_sweeps = 64);

/// Thin SVD, A = U diag(sigma) V^adj with sigma descending. Computed from
/// the Hermitian eigendecomposition of A^adj A with column recovery; falls
/// back to one-sided Jacobi near rank deficiency.
SvdFactors svd(const Matrix& a, const Tolerances& tol = {});

/// PSD square root: returns Hermitian R >= 0 with R^2 = P. Eigenvalues in
/// [-tol*||P||, 0) are clamped to zero; anything below raises NotPsd.
Matrix sqrt_psd(const Matrix& p, const Tolerances& tol = {});

/// |T| = (T^adj T)^(1/2).
Matrix abs_op(const Matrix& t, const Tolerances& tol = {});

/// Polar decomposition T = W P with P = |T| and W a partial isometry
/// supported on the orthogonal complement of the null space.
PolarFactors polar(const Matrix& t, const Tolerances& tol = {});

/// Largest singular value.
double operator_norm(const Matrix& t, const Tolerances& tol = {});

/// Sum of all singular values; accepts rectangular input. Square callers
/// normally go through schatten_norm(t, 1).
double trace_norm(const Matrix& t, const Tolerances& tol = {});

}  // namespace opcalc
