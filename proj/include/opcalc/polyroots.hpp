#pragma once

#include <vector>

#include "opcalc/matrix.hpp"

namespace opcalc {

/// Monic characteristic polynomial coefficients of a square matrix by the
/// Faddeev-LeVerrier recursion: p(x) = x^n + c[n-1] x^(n-1) + ... + c[0].
/// The returned vector holds c[0..n-1].
std::vector<Complex> characteristic_polynomial(const Matrix& a);

/// All roots of the monic polynomial x^n + c[n-1] x^(n-1) + ... + c[0]
/// by Durand-Kerner iteration. Independent of the Jacobi eigensolvers;
/// intended for small degrees (n <= 16, reliable accuracy for n <= 4).
std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs,
                                      std::size_t max_iterations = 500);

/// Eigenvalues of a square matrix via the characteristic polynomial route.
std::vector<Complex> char_poly_eigenvalues(const Matrix& a);

}  // namespace opcalc
