#include "opcalc/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace opcalc {

namespace {

constexpr double kMachineEps = std::numeric_limits<double>::epsilon();

// Off-diagonal Frobenius norm of a square matrix.
double off_diagonal_norm(const Matrix& a) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) acc += std::norm(a(i, j));
    return std::sqrt(acc);
}

// 2x2 unitary that diagonalises the Hermitian block [[app, apq], [conj(apq), aqq]].
// Returns entries (g00, g01, g10, g11) of G with G^adj A G diagonal.
struct JacobiRotation {
    Complex g00, g01, g10, g11;
};

JacobiRotation make_rotation(double app, double aqq, Complex apq) {
    const double mag = std::abs(apq);
    const Complex phase = apq / mag;  // apq = mag * phase
    // Real rotation for [[app, mag], [mag, aqq]].
    const double theta = (aqq - app) / (2.0 * mag);
    double t;
    if (theta == 0.0) {
        t = 1.0;
    } else {
        t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        if (theta < 0.0) t = -t;
    }
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    // Embed the phase: A = D B D^adj with D = diag(1, conj(phase)), so
    // G = D R carries the complex structure.
    JacobiRotation rot;
    rot.g00 = c;
    rot.g01 = s;
    rot.g10 = -s * std::conj(phase);
    rot.g11 = c * std::conj(phase);
    return rot;
}

// A <- G^adj A G on rows/columns (p, q); Q <- Q G when Q is non-null.
void apply_rotation(Matrix& a, Matrix* q, std::size_t p, std::size_t qcol,
                    const JacobiRotation& g) {
    const std::size_t n = a.rows();
    // Column update: (col_p, col_q) <- (col_p g00 + col_q g10, col_p g01 + col_q g11).
    for (std::size_t i = 0; i < n; ++i) {
        const Complex ap = a(i, p);
        const Complex aq = a(i, qcol);
        a(i, p) = ap * g.g00 + aq * g.g10;
        a(i, qcol) = ap * g.g01 + aq * g.g11;
    }
    // Row update with G^adj on the left.
    for (std::size_t j = 0; j < n; ++j) {
        const Complex ap = a(p, j);
        const Complex aq = a(qcol, j);
        a(p, j) = std::conj(g.g00) * ap + std::conj(g.g10) * aq;
        a(qcol, j) = std::conj(g.g01) * ap + std::conj(g.g11) * aq;
    }
    if (q != nullptr) {
        for (std::size_t i = 0; i < n; ++i) {
            const Complex qp = (*q)(i, p);
            const Complex qq = (*q)(i, qcol);
            (*q)(i, p) = qp * g.g00 + qq * g.g10;
            (*q)(i, qcol) = qp * g.g01 + qq * g.g11;
        }
    }
}

// Sort descending with the permutation applied to the columns of q.
void sort_descending(std::vector<double>& values, Matrix& q) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    std::vector<double> sorted(n);
    Matrix qs(q.rows(), n);
    for (std::size_t k = 0; k < n; ++k) {
        sorted[k] = values[order[k]];
        for (std::size_t i = 0; i < q.rows(); ++i) qs(i, k) = q(i, order[k]);
    }
    values = std::move(sorted);
    q = std::move(qs);
}

// Extends the first `have` orthonormal columns of u to a full orthonormal
// set. For each missing slot, takes the standard basis candidate with the
// largest residual after projection (the best residual is at least
// sqrt(missing/m), so a fixed acceptance threshold would be wrong), then
// re-orthogonalizes once to clean up.
void complete_orthonormal_columns(Matrix& u, std::size_t have) {
    const std::size_t m = u.rows();
    const std::size_t want = u.cols();
    auto project_off = [&](Vec& v, std::size_t count) {
        for (std::size_t k = 0; k < count; ++k) {
            Vec uk = u.column(k);
            const Complex proj = vec_inner(v, uk);
            for (std::size_t i = 0; i < m; ++i) v[i] -= proj * uk[i];
        }
    };
    for (std::size_t filled = have; filled < want; ++filled) {
        Vec best;
        double best_norm = -1.0;
        for (std::size_t cand = 0; cand < m; ++cand) {
            Vec v(m, Complex{0.0, 0.0});
            v[cand] = 1.0;
            project_off(v, filled);
            const double nrm = vec_norm(v);
            if (nrm > best_norm) {
                best_norm = nrm;
                best = std::move(v);
            }
        }
        project_off(best, filled);
        const double nrm = vec_norm(best);
        for (Complex& x : best) x /= nrm;
        u.set_column(filled, best);
    }
}

// One-sided Jacobi on the columns of a (rows >= cols). Accurate for tiny
// singular values because it never forms A^adj A globally.
SvdFactors one_sided_jacobi(const Matrix& a, std::size_t max_sweeps) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    Matrix b = a;
    Matrix v = Matrix::identity(n);
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double gpp = 0.0, gqq = 0.0;
                Complex gpq{0.0, 0.0};
                for (std::size_t i = 0; i < m; ++i) {
                    const Complex bp = b(i, p);
                    const Complex bq = b(i, q);
                    gpp += std::norm(bp);
                    gqq += std::norm(bq);
                    gpq += std::conj(bp) * bq;  // (B^adj B)[p][q]
                }
                if (std::abs(gpq) <= 8.0 * kMachineEps * std::sqrt(gpp * gqq) ||
                    gpp == 0.0 || gqq == 0.0) {
                    continue;
                }
                // Gram block [[gpp, gpq], [conj(gpq), gqq]]; same rotation as
                // the Hermitian case, applied to columns of b and v.
                const JacobiRotation g = make_rotation(gpp, gqq, gpq);
                for (std::size_t i = 0; i < m; ++i) {
                    const Complex bp = b(i, p);
                    const Complex bq = b(i, q);
                    b(i, p) = bp * g.g00 + bq * g.g10;
                    b(i, q) = bp * g.g01 + bq * g.g11;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex vp = v(i, p);
                    const Complex vq = v(i, q);
                    v(i, p) = vp * g.g00 + vq * g.g10;
                    v(i, q) = vp * g.g01 + vq * g.g11;
                }
                rotated = true;
            }
        }
        if (!rotated) break;
        if (sweep + 1 == max_sweeps)
            throw NoConvergenceError("one-sided Jacobi SVD: sweep limit hit");
    }

    std::vector<double> raw(n);
    for (std::size_t k = 0; k < n; ++k) raw[k] = vec_norm(b.column(k));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return raw[x] > raw[y]; });

    SvdFactors out{Matrix(m, n), std::vector<double>(n), Matrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.singular_values[k] = raw[order[k]];
        out.u.set_column(k, b.column(order[k]));  // still scaled by sigma
        out.v.set_column(k, v.column(order[k]));
    }
    return out;
}

}  // namespace

EigResult hermitian_eig(const Matrix& h, const Tolerances& tol, std::size_t max_sweeps) {
    if (!h.is_square()) throw NonSquareError("hermitian_eig requires a square matrix");
    const std::size_t n = h.rows();
    const double scale = h.frobenius_norm();
    const double asym = frobenius_distance(h, h.adjoint());
    if (asym > tol.algebraic * std::max(scale, 1e-300)) {
        throw NotHermitianError("hermitian_eig: symmetry violation " + std::to_string(asym) +
                                " exceeds tolerance");
    }

    // Work on the Hermitian part; kills rounding-level asymmetry.
    Matrix a = (h + h.adjoint()) * Complex{0.5, 0.0};
    Matrix q = Matrix::identity(n);

    if (n > 1 && scale > 0.0) {
        const double target = 1e-14 * scale;
        bool converged = off_diagonal_norm(a) <= target;
        for (std::size_t sweep = 0; !converged; ++sweep) {
            if (sweep >= max_sweeps)
                throw NoConvergenceError("hermitian_eig: sweep limit hit");
            bool rotated = false;
            for (std::size_t p = 0; p + 1 < n; ++p) {
                for (std::size_t qc = p + 1; qc < n; ++qc) {
                    const Complex apq = a(p, qc);
                    const double app = a(p, p).real();
                    const double aqq = a(qc, qc).real();
                    if (std::abs(apq) <= 0.5 * kMachineEps * (std::abs(app) + std::abs(aqq)) ||
                        std::abs(apq) == 0.0) {
                        continue;
                    }
                    apply_rotation(a, &q, p, qc, make_rotation(app, aqq, apq));
                    rotated = true;
                }
            }
            converged = off_diagonal_norm(a) <= target || !rotated;
        }
    }

    std::vector<double> lambda(n);
    for (std::size_t i = 0; i < n; ++i) lambda[i] = a(i, i).real();
    sort_descending(lambda, q);
    return EigResult{std::move(lambda), std::move(q)};
}

SvdFactors svd(const Matrix& a, const Tolerances& tol) {
    if (a.rows() < a.cols()) {
        SvdFactors s = svd(a.adjoint(), tol);
        return SvdFactors{std::move(s.v), std::move(s.singular_values), std::move(s.u)};
    }
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();

    if (a.frobenius_norm() == 0.0) {
        SvdFactors out{Matrix(m, n), std::vector<double>(n, 0.0), Matrix(n, n)};
        complete_orthonormal_columns(out.u, 0);
        out.v = Matrix::identity(n);
        return out;
    }

    // Primary route: eigendecomposition of the Gram matrix.
    const Matrix gram = a.adjoint() * a;
    EigResult eig = hermitian_eig(gram, tol);
    std::vector<double> sigma(n);
    for (std::size_t k = 0; k < n; ++k) sigma[k] = std::sqrt(std::max(eig.eigenvalues[k], 0.0));

    // Near rank deficiency the Gram route loses half the digits; hand the
    // whole problem to one-sided Jacobi, which is accurate there.
    const double sigma_max = sigma.front();
    const double sigma_min = sigma.back();
    if (sigma_max == 0.0 || sigma_min / sigma_max < 1e-4) {
        SvdFactors out = one_sided_jacobi(a, 96);
        // Columns of out.u still carry their norms; normalise and complete.
        std::size_t nonzero = 0;
        const double zero_floor = out.singular_values.front() * 1e-18;
        for (std::size_t k = 0; k < n; ++k) {
            const double s = out.singular_values[k];
            if (s > zero_floor && s > 0.0) {
                Vec col = out.u.column(k);
                for (Complex& x : col) x /= s;
                out.u.set_column(k, col);
                ++nonzero;
            } else {
                Vec zero(m, Complex{0.0, 0.0});
                out.u.set_column(k, zero);
            }
        }
        // Zero-sigma columns need orthonormal fill-in.
        if (nonzero < n) {
            Matrix packed(m, n);
            std::size_t w = 0;
            for (std::size_t k = 0; k < n; ++k) {
                if (vec_norm(out.u.column(k)) > 0.5) packed.set_column(w++, out.u.column(k));
            }
            complete_orthonormal_columns(packed, w);
            // Nonzero sigmas come first after descending sort, so packed
            // columns line up with sigma order.
            out.u = std::move(packed);
        }
        return out;
    }

    // Column recovery: u_k = A v_k, sigma_k = ||A v_k||, then Gram-Schmidt
    // to restore orthonormality lost to rounding.
    Matrix u(m, n);
    for (std::size_t k = 0; k < n; ++k) {
        Vec col = a.apply(eig.q.column(k));
        for (std::size_t j = 0; j < k; ++j) {
            Vec uj = u.column(j);
            const Complex proj = vec_inner(col, uj);
            for (std::size_t i = 0; i < m; ++i) col[i] -= proj * uj[i];
        }
        const double nrm = vec_norm(col);
        sigma[k] = nrm;
        for (Complex& x : col) x /= nrm;
        u.set_column(k, col);
    }
    SvdFactors out{std::move(u), std::move(sigma), std::move(eig.q)};

    // Rounding can micro-swap near-equal values; restore descending order.
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (out.singular_values[k] < out.singular_values[k + 1]) {
            // Joint re-sort of sigma with both factor column sets.
            std::vector<std::size_t> order(n);
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
                return out.singular_values[x] > out.singular_values[y];
            });
            Matrix u2(m, n), v2(out.v.rows(), n);
            std::vector<double> s2(n);
            for (std::size_t j = 0; j < n; ++j) {
                s2[j] = out.singular_values[order[j]];
                u2.set_column(j, out.u.column(order[j]));
                v2.set_column(j, out.v.column(order[j]));
            }
            out.singular_values = std::move(s2);
            out.u = std::move(u2);
            out.v = std::move(v2);
            break;
        }
    }
    return out;
}

Matrix sqrt_psd(const Matrix& p, const Tolerances& tol) {
    if (!p.is_square()) throw NonSquareError("sqrt_psd requires a square matrix");
    EigResult eig = hermitian_eig(p, tol);  // raises NotHermitian when warranted
    const double scale = p.frobenius_norm();
    const std::size_t n = p.rows();
    std::vector<double> roots(n);
    for (std::size_t k = 0; k < n; ++k) {
        double lam = eig.eigenvalues[k];
        if (lam < -tol.algebraic * std::max(scale, 1e-300)) {
            throw NotPsdError("sqrt_psd: eigenvalue " + std::to_string(lam) +
                              " below PSD tolerance");
        }
        roots[k] = std::sqrt(std::max(lam, 0.0));
    }
    // R = Q sqrt(Lambda) Q^adj, assembled symmetrically.
    Matrix r(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k)
                acc += eig.q(i, k) * roots[k] * std::conj(eig.q(j, k));
            r(i, j) = acc;
        }
    }
    return r;
}

Matrix abs_op(const Matrix& t, const Tolerances& tol) {
    if (!t.is_square()) throw NonSquareError("abs_op requires a square matrix");
    // (T^adj T)^(1/2) assembled spectrally as V diag(sigma) V^adj. Going
    // through the SVD keeps zero modes exact; sqrt_psd on the Gram matrix
    // would smear them by sqrt(eps) * sigma_max.
    const std::size_t n = t.rows();
    SvdFactors s = svd(t, tol);
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k)
                acc += s.v(i, k) * s.singular_values[k] * std::conj(s.v(j, k));
            out(i, j) = acc;
        }
    }
    return out;
}

PolarFactors polar(const Matrix& t, const Tolerances& tol) {
    if (!t.is_square()) throw NonSquareError("polar requires a square matrix");
    const std::size_t n = t.rows();
    SvdFactors s = svd(t, tol);
    const double rank_floor = s.singular_values.empty() ? 0.0
                                                        : s.singular_values.front() * tol.rank_rel;
    // W = U D V^adj with D the 0/1 mask of the numerical support.
    Matrix w(n, n);
    Matrix p(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex accw{0.0, 0.0};
            Complex accp{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k) {
                const Complex vjk = std::conj(s.v(j, k));
                if (s.singular_values[k] > rank_floor) accw += s.u(i, k) * vjk;
                accp += s.v(i, k) * s.singular_values[k] * vjk;
            }
            w(i, j) = accw;
            p(i, j) = accp;
        }
    }
    return PolarFactors{std::move(w), std::move(p)};
}

double operator_norm(const Matrix& t, const Tolerances& tol) {
    SvdFactors s = svd(t, tol);
    return s.singular_values.empty() ? 0.0 : s.singular_values.front();
}

double trace_norm(const Matrix& t, const Tolerances& tol) {
    SvdFactors s = svd(t, tol);
    double acc = 0.0;
    for (double x : s.singular_values) acc += x;
    return acc;
}

}  // namespace opcalc
