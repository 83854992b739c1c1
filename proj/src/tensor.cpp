#include "opcalc/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace opcalc {

namespace {

// Invert by Gauss-Jordan with partial pivoting. Raises SingularMix when a
// pivot falls below tol relative to the matrix scale.
Matrix invert(const Matrix& g, const Tolerances& tol) {
    if (!g.is_square()) throw DimensionMismatchError("mix matrix must be square");
    const std::size_t n = g.rows();
    Matrix a = g;
    Matrix inv = Matrix::identity(n);
    const double scale = std::max(a.max_abs(), 1e-300);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double cand = std::abs(a(r, col));
            if (cand > best) {
                best = cand;
                pivot = r;
            }
        }
        if (best <= 1e-13 * scale)
            throw SingularMixError("mix matrix is singular to working precision");
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(col, j), a(pivot, j));
                std::swap(inv(col, j), inv(pivot, j));
            }
        }
        const Complex d = a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) /= d;
            inv(col, j) /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const Complex f = a(r, col);
            if (f == Complex{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

}  // namespace

TensorElement TensorElement::zero(std::size_t dim_x, std::size_t dim_y) {
    TensorElement f{dim_x, dim_y, {}};
    f.validate();
    return f;
}

TensorElement TensorElement::single(Vec x, Vec y) {
    TensorElement f{x.size(), y.size(), {}};
    f.pairs.emplace_back(std::move(x), std::move(y));
    f.validate();
    return f;
}

void TensorElement::validate() const {
    if (dim_x == 0 || dim_y == 0)
        throw InvalidDimensionError("tensor element dimensions must be positive");
    for (const auto& [x, y] : pairs) {
        if (x.size() != dim_x || y.size() != dim_y)
            throw DimensionMismatchError("tensor element pair has wrong vector sizes");
        if (!vec_all_finite(x) || !vec_all_finite(y))
            throw InvalidDimensionError("tensor element entries must be finite");
    }
}

Complex BilinearForm::apply(std::span<const Complex> x, std::span<const Complex> y) const {
    if (x.size() != dim_x() || y.size() != dim_y())
        throw DimensionMismatchError("bilinear form: argument sizes mismatch");
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < dim_x(); ++j) {
        if (x[j] == Complex{0.0, 0.0}) continue;
        Complex row{0.0, 0.0};
        for (std::size_t k = 0; k < dim_y(); ++k) row += coeffs(j, k) * y[k];
        acc += x[j] * row;
    }
    return acc;
}

Matrix coeff_matrix(const TensorElement& f) {
    f.validate();
    Matrix m(f.dim_x, f.dim_y);
    for (const auto& [x, y] : f.pairs) {
        for (std::size_t j = 0; j < f.dim_x; ++j) {
            if (x[j] == Complex{0.0, 0.0}) continue;
            for (std::size_t k = 0; k < f.dim_y; ++k) m(j, k) += x[j] * y[k];
        }
    }
    return m;
}

double projective_norm(const TensorElement& f, const Tolerances& tol) {
    return trace_norm(coeff_matrix(f), tol);
}

double injective_norm(const TensorElement& f, const Tolerances& tol) {
    return operator_norm(coeff_matrix(f), tol);
}

double representation_cost(const TensorElement& f) {
    f.validate();
    double acc = 0.0;
    for (const auto& [x, y] : f.pairs) acc += vec_norm(x) * vec_norm(y);
    return acc;
}

TensorElement mix_representation(const TensorElement& f, const Matrix& g,
                                 const Tolerances& tol) {
    f.validate();
    if (!g.is_square()) throw DimensionMismatchError("mix matrix must be square");
    const std::size_t r = g.rows();
    if (r < f.pairs.size())
        throw DimensionMismatchError("mix matrix smaller than the pair count");

    TensorElement padded = f;
    while (padded.pairs.size() < r) {
        padded.pairs.emplace_back(Vec(f.dim_x, Complex{0.0, 0.0}),
                                  Vec(f.dim_y, Complex{0.0, 0.0}));
    }

    const Matrix ginv = invert(g, tol);  // y' uses invtrans(G)[j][k] = ginv[k][j]
    TensorElement out{f.dim_x, f.dim_y, {}};
    out.pairs.reserve(r);
    for (std::size_t j = 0; j < r; ++j) {
        Vec x(f.dim_x, Complex{0.0, 0.0});
        Vec y(f.dim_y, Complex{0.0, 0.0});
        for (std::size_t k = 0; k < r; ++k) {
            const Complex gjk = g(j, k);
            const Complex hjk = ginv(k, j);
            const auto& [xk, yk] = padded.pairs[k];
            if (gjk != Complex{0.0, 0.0})
                for (std::size_t i = 0; i < f.dim_x; ++i) x[i] += gjk * xk[i];
            if (hjk != Complex{0.0, 0.0})
                for (std::size_t i = 0; i < f.dim_y; ++i) y[i] += hjk * yk[i];
        }
        out.pairs.emplace_back(std::move(x), std::move(y));
    }
    return out;
}

TensorElement optimal_element(const Matrix& c, const Tolerances& tol) {
    SvdFactors s = svd(c, tol);
    const double rank_floor = s.singular_values.empty()
                                  ? 0.0
                                  : s.singular_values.front() * tol.rank_rel;
    TensorElement out{c.rows(), c.cols(), {}};
    for (std::size_t k = 0; k < s.singular_values.size(); ++k) {
        const double sk = s.singular_values[k];
        if (sk <= rank_floor) break;
        Vec x = s.u.column(k);
        for (Complex& v : x) v *= sk;
        Vec y = s.v.column(k);
        for (Complex& v : y) v = std::conj(v);
        out.pairs.emplace_back(std::move(x), std::move(y));
    }
    return out;
}

Matrix k_map(const TensorElement& f) {
    f.validate();
    // Pairs are (z_k, y_k) with z_k the Riesz vector of f_k; the assembled
    // operator maps x to sum_k <x; z_k> y_k.
    Matrix m(f.dim_y, f.dim_x);
    for (const auto& [z, y] : f.pairs) {
        for (std::size_t i = 0; i < f.dim_y; ++i) {
            if (y[i] == Complex{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < f.dim_x; ++j) m(i, j) += y[i] * std::conj(z[j]);
        }
    }
    return m;
}

TensorElement conjugate_first_slots(const TensorElement& f) {
    TensorElement out{f.dim_x, f.dim_y, {}};
    out.pairs.reserve(f.pairs.size());
    for (const auto& [x, y] : f.pairs) {
        Vec xc(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) xc[j] = std::conj(x[j]);
        out.pairs.emplace_back(std::move(xc), y);
    }
    return out;
}

Matrix linearize(const BilinearForm& phi) { return phi.coeffs; }

BilinearForm bilinearize(const Matrix& coeffs) { return BilinearForm{coeffs}; }

Complex linearized_apply(const Matrix& coeffs, const TensorElement& f) {
    const Matrix c = coeff_matrix(f);
    if (c.rows() != coeffs.rows() || c.cols() != coeffs.cols())
        throw DimensionMismatchError("linearized_apply: dimension mismatch");
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < c.rows(); ++j)
        for (std::size_t k = 0; k < c.cols(); ++k) acc += coeffs(j, k) * c(j, k);
    return acc;
}

Vec VectorBilinearMap::apply(std::span<const Complex> x, std::span<const Complex> y) const {
    Vec out(components.size());
    for (std::size_t p = 0; p < components.size(); ++p)
        out[p] = BilinearForm{components[p]}.apply(x, y);
    return out;
}

namespace {

// Top right-singular-vector direction of m by power iteration on m^adj m.
Vec top_right_singular_vector(const Matrix& m, Vec start, std::size_t iters) {
    double nrm = vec_norm(start);
    if (nrm == 0.0) {
        start.assign(m.cols(), Complex{0.0, 0.0});
        start[0] = 1.0;
        nrm = 1.0;
    }
    for (Complex& v : start) v /= nrm;
    const Matrix gram = m.adjoint() * m;
    for (std::size_t it = 0; it < iters; ++it) {
        Vec next = gram.apply(start);
        const double nn = vec_norm(next);
        if (nn == 0.0) break;
        for (Complex& v : next) v /= nn;
        start = std::move(next);
    }
    return start;
}

}  // namespace

double vector_bilinear_norm_lower_bound(const VectorBilinearMap& phi,
                                        const std::vector<std::pair<Vec, Vec>>& starts,
                                        std::size_t iterations) {
    if (phi.components.empty()) return 0.0;
    const std::size_t nx = phi.components.front().rows();
    const std::size_t ny = phi.components.front().cols();
    const std::size_t target = phi.components.size();

    double best = 0.0;
    for (const auto& [x0, y0] : starts) {
        Vec x = x0;
        Vec y = y0;
        double nx0 = vec_norm(x);
        double ny0 = vec_norm(y);
        if (nx0 == 0.0 || ny0 == 0.0) continue;
        for (Complex& v : x) v /= nx0;
        for (Complex& v : y) v /= ny0;
        double value = vec_norm(phi.apply(x, y));
        for (std::size_t it = 0; it < iterations; ++it) {
            // Fix y: phi(x, y) = B(y) x with B[p][j] = (coeffs[p] y)[j];
            // the best unit x is the top right singular vector of B.
            Matrix b(target, nx);
            for (std::size_t p = 0; p < target; ++p) {
                const Matrix& mp = phi.components[p];
                for (std::size_t j = 0; j < nx; ++j) {
                    Complex acc{0.0, 0.0};
                    for (std::size_t k = 0; k < ny; ++k) acc += mp(j, k) * y[k];
                    b(p, j) = acc;
                }
            }
            x = top_right_singular_vector(b, std::move(x), 25);
            // Fix x: phi(x, y) = C(x) y with C[p][k] = (x^T coeffs[p])[k].
            Matrix c(target, ny);
            for (std::size_t p = 0; p < target; ++p) {
                const Matrix& mp = phi.components[p];
                for (std::size_t k = 0; k < ny; ++k) {
                    Complex acc{0.0, 0.0};
                    for (std::size_t j = 0; j < nx; ++j) acc += x[j] * mp(j, k);
                    c(p, k) = acc;
                }
            }
            y = top_right_singular_vector(c, std::move(y), 25);
            const double now = vec_norm(phi.apply(x, y));
            if (now <= value * (1.0 + 1e-12)) {
                value = std::max(value, now);
                break;
            }
            value = now;
        }
        best = std::max(best, value);
    }
    return best;
}

}  // namespace opcalc
