#pragma once

#include <cstddef>
#include <vector>

#include "opcalc/decomp.hpp"
#include "opcalc/matrix.hpp"
#include "opcalc/tensor.hpp"

namespace opcalc {

/// One term of a nuclear representation: the operator contributes
/// <x; z> y for each term.
struct NuclearTerm {
    Vec z;
    Vec y;
};

/// Representation T x = sum_k <x; z_k> y_k of a square operator; weights
/// are absorbed into z. The cost sum_k ||z_k|| ||y_k|| of any representation
/// dominates the nuclear norm of the assembled operator.
struct NuclearRep {
    std::size_t dim = 0;
    std::vector<NuclearTerm> terms;

    void validate() const;
};

/// Applies the representation to a vector: sum_k <x; z_k> y_k.
Vec nuclear_apply(const NuclearRep& rep, std::span<const Complex> x);

/// Cost of this representation, sum_k ||z_k|| ||y_k||.
double rep_cost(const NuclearRep& rep);

/// Assembles the represented operator, sum_k y_k z_k^adj.
Matrix rep_to_matrix(const NuclearRep& rep);

/// Minimum-cost representation from the SVD: terms (sigma_k v_k, u_k),
/// dropping singular values below the rank floor. Its cost equals the
/// trace norm of t.
NuclearRep optimal_rep(const Matrix& t, const Tolerances& tol = {});

/// Representation of the adjoint: terms swapped to (y_k, z_k). Cost is
/// unchanged.
NuclearRep adjoint_rep(const NuclearRep& rep);

/// Representation of L T R: terms (R^adj z_k, L y_k). Cost is bounded by
/// ||L|| cost ||R||.
NuclearRep compose_rep(const Matrix& l, const NuclearRep& rep, const Matrix& r);

/// Nuclear norm; coincides with the trace norm, and is the infimum of
/// rep_cost over all representations of t.
double nuclear_norm(const Matrix& t, const Tolerances& tol = {});

/// The pair list viewed as a tensor element (coordinates passed through
/// unchanged), for re-representation experiments.
TensorElement rep_as_element(const NuclearRep& rep);

}  // namespace opcalc
