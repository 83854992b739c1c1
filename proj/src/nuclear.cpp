#include "opcalc/nuclear.hpp"

#include <cmath>

namespace opcalc {

void NuclearRep::validate() const {
    if (dim == 0) throw InvalidDimensionError("nuclear representation dimension must be positive");
    for (const auto& term : terms) {
        if (term.z.size() != dim || term.y.size() != dim)
            throw DimensionMismatchError("nuclear representation term has wrong vector size");
        if (!vec_all_finite(term.z) || !vec_all_finite(term.y))
            throw InvalidDimensionError("nuclear representation entries must be finite");
    }
}

Vec nuclear_apply(const NuclearRep& rep, std::span<const Complex> x) {
    rep.validate();
    if (x.size() != rep.dim) throw DimensionMismatchError("nuclear_apply: vector size mismatch");
    Vec out(rep.dim, Complex{0.0, 0.0});
    for (const auto& term : rep.terms) {
        const Complex w = vec_inner(x, term.z);
        if (w == Complex{0.0, 0.0}) continue;
        for (std::size_t i = 0; i < rep.dim; ++i) out[i] += w * term.y[i];
    }
    return out;
}

double rep_cost(const NuclearRep& rep) {
    rep.validate();
    double acc = 0.0;
    for (const auto& term : rep.terms) acc += vec_norm(term.z) * vec_norm(term.y);
    return acc;
}

Matrix rep_to_matrix(const NuclearRep& rep) {
    rep.validate();
    Matrix m(rep.dim, rep.dim);
    for (const auto& term : rep.terms) {
        for (std::size_t i = 0; i < rep.dim; ++i) {
            if (term.y[i] == Complex{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < rep.dim; ++j)
                m(i, j) += term.y[i] * std::conj(term.z[j]);
        }
    }
    return m;
}

NuclearRep optimal_rep(const Matrix& t, const Tolerances& tol) {
    if (!t.is_square()) throw NonSquareError("optimal_rep requires a square matrix");
    SvdFactors s = svd(t, tol);
    const double rank_floor = s.singular_values.empty()
                                  ? 0.0
                                  : s.singular_values.front() * tol.rank_rel;
    NuclearRep rep{t.rows(), {}};
    for (std::size_t k = 0; k < s.singular_values.size(); ++k) {
        const double sk = s.singular_values[k];
        if (sk <= rank_floor) break;
        Vec z = s.v.column(k);
        for (Complex& v : z) v *= sk;
        rep.terms.push_back(NuclearTerm{std::move(z), s.u.column(k)});
    }
    return rep;
}

NuclearRep adjoint_rep(const NuclearRep& rep) {
    rep.validate();
    NuclearRep out{rep.dim, {}};
    out.terms.reserve(rep.terms.size());
    for (const auto& term : rep.terms) out.terms.push_back(NuclearTerm{term.y, term.z});
    return out;
}

NuclearRep compose_rep(const Matrix& l, const NuclearRep& rep, const Matrix& r) {
    rep.validate();
    if (!l.is_square() || !r.is_square() || l.rows() != rep.dim || r.rows() != rep.dim)
        throw DimensionMismatchError("compose_rep: factor dimensions must match the representation");
    const Matrix r_adj = r.adjoint();
    NuclearRep out{rep.dim, {}};
    out.terms.reserve(rep.terms.size());
    for (const auto& term : rep.terms)
        out.terms.push_back(NuclearTerm{r_adj.apply(term.z), l.apply(term.y)});
    return out;
}

double nuclear_norm(const Matrix& t, const Tolerances& tol) {
    if (!t.is_square()) throw NonSquareError("nuclear_norm requires a square matrix");
    return trace_norm(t, tol);
}

TensorElement rep_as_element(const NuclearRep& rep) {
    rep.validate();
    TensorElement f{rep.dim, rep.dim, {}};
    f.pairs.reserve(rep.terms.size());
    for (const auto& term : rep.terms) f.pairs.emplace_back(term.z, term.y);
    return f;
}

}  // namespace opcalc
