#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "opcalc/decomp.hpp"
#include "opcalc/matrix.hpp"

namespace opcalc {

/// Finite sum of elementary tensors x_i (x) y_i. The pair list is one
/// *representation*; the underlying element is captured by coeff_matrix,
/// which every representation of the same element shares. Coordinates pair
/// bilinearly (no conjugation) throughout this module; operations that
/// reinterpret the first slot as Riesz vectors of functionals say so
/// explicitly (see k_map).
struct TensorElement {
    std::size_t dim_x = 0;
    std::size_t dim_y = 0;
    std::vector<std::pair<Vec, Vec>> pairs;  // may be empty: the zero element

    static TensorElement zero(std::size_t dim_x, std::size_t dim_y);
    static TensorElement single(Vec x, Vec y);

    void validate() const;  // dims positive, vector sizes match, entries finite
};

/// Scalar-valued bilinear form phi(x, y) = x^T M y (no conjugation).
struct BilinearForm {
    Matrix coeffs;

    std::size_t dim_x() const { return coeffs.rows(); }
    std::size_t dim_y() const { return coeffs.cols(); }
    Complex apply(std::span<const Complex> x, std::span<const Complex> y) const;
};

/// Canonical coordinates of the element: M[j][k] = sum_i x_i[j] y_i[k].
/// Invariant under change of representation.
Matrix coeff_matrix(const TensorElement& f);

/// Greatest crossnorm, inf over representations of sum ||x_i|| ||y_i||;
/// computed exactly as the trace norm of the coefficient matrix.
double projective_norm(const TensorElement& f, const Tolerances& tol = {});

/// Least crossnorm, sup over unit functional pairs of |sum f(x_i) g(y_i)|;
/// equals the largest singular value of the coefficient matrix.
double injective_norm(const TensorElement& f, const Tolerances& tol = {});

/// Cost of the *given* representation, sum ||x_i|| ||y_i||. Always at least
/// the projective norm.
double representation_cost(const TensorElement& f);

/// Re-representation by an invertible mix: x'_j = sum_k G[j][k] x_k and
/// y'_j = sum_k invtrans(G)[j][k] y_k, which leaves coeff_matrix unchanged.
/// When G is larger than the pair count, the element is padded with zero
/// pairs first. Raises SingularMix when G is not invertible.
TensorElement mix_representation(const TensorElement& f, const Matrix& g,
                                 const Tolerances& tol = {});

/// A minimum-cost representation of the element with coefficient matrix c:
/// pairs (sigma_k u_k, conj(v_k)) from the SVD, cost = trace norm.
TensorElement optimal_element(const Matrix& c, const Tolerances& tol = {});

/// Natural map into operators for elements whose first slots are the Riesz
/// vectors z_k of functionals f_k(x) = <x; z_k>: returns sum_k y_k z_k^adj,
/// so that the assembled operator acts as T x = sum_k <x; z_k> y_k.
Matrix k_map(const TensorElement& f);

/// The same element expressed in functional coordinates: first slots
/// conjugated. Riesz identification is conjugate linear, so this is the
/// pair list whose bilinear coefficient matrix is the invariant of the
/// operator-side element consumed by k_map.
TensorElement conjugate_first_slots(const TensorElement& f);

/// Theorem 3.2 machinery, scalar target: a bilinear form and its
/// linearisation share the same coefficient matrix, and the linearised
/// functional evaluates on an element as the entrywise sum of coeffs
/// against coeff_matrix.
Matrix linearize(const BilinearForm& phi);
BilinearForm bilinearize(const Matrix& coeffs);
Complex linearized_apply(const Matrix& coeffs, const TensorElement& f);

/// Bilinear map with vector target Z = C^target_dim: component p acts as
/// x^T coeffs[p] y. Used by the verifier to exercise the vector-target
/// direction of the linearisation isometry.
struct VectorBilinearMap {
    std::vector<Matrix> components;

    std::size_t target_dim() const { return components.size(); }
    Vec apply(std::span<const Complex> x, std::span<const Complex> y) const;
};

/// Lower bound on sup_{||x||=||y||=1} ||phi(x, y)|| by alternating ascent
/// (power-iteration inner solves), best of `restarts` runs seeded from rng
/// draws supplied by the caller.
double vector_bilinear_norm_lower_bound(const VectorBilinearMap& phi,
                                        const std::vector<std::pair<Vec, Vec>>& starts,
                                        std::size_t iterations = 100);

}  // namespace opcalc
