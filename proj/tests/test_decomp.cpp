#include <doctest.h>

#include <cmath>

#include "opcalc/decomp.hpp"
#include "opcalc/rng.hpp"
#include "oracles.hpp"

using namespace opcalc;

namespace {

Matrix reassemble(const SvdFactors& s) {
    const std::size_t m = s.u.rows();
    const std::size_t n = s.v.rows();
    Matrix out(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc{0.0, 0.0};
            for (std::size_t k = 0; k < s.singular_values.size(); ++k)
                acc += s.u(i, k) * s.singular_values[k] * std::conj(s.v(j, k));
            out(i, j) = acc;
        }
    return out;
}

Matrix hermitian_from(TrialRng& rng, std::size_t n) {
    const Matrix g = ginibre(rng, n, n);
    return (g + g.adjoint()) * Complex{0.5, 0.0};
}

}  // namespace

TEST_CASE("hermitian_eig: diagonal, 2x2 oracle, identity") {
    // Diagonal case sorts descending.
    const EigResult d = hermitian_eig(Matrix::from_real({{1, 0}, {0, 3}}));
    CHECK(d.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(d.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));

    // [[2,1],[1,2]]: roots of the characteristic polynomial x^2 - 4x + 3.
    const Matrix h = Matrix::from_real({{2, 1}, {1, 2}});
    const auto expected = oracle::quadratic_roots(-4.0, 3.0);
    const EigResult e = hermitian_eig(h);
    CHECK(e.eigenvalues[0] == doctest::Approx(expected[0]).epsilon(1e-12));
    CHECK(e.eigenvalues[1] == doctest::Approx(expected[1]).epsilon(1e-12));

    // Identity: all ones, reconstruction exact.
    const EigResult i = hermitian_eig(Matrix::identity(4));
    for (double lam : i.eigenvalues) CHECK(lam == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("hermitian_eig error paths") {
    CHECK_THROWS_AS(hermitian_eig(Matrix(2, 3)), NonSquareError);
    CHECK_THROWS_AS(hermitian_eig(Matrix::from_real({{0, 1}, {0, 0}})), NotHermitianError);
    // Sweep limit of zero on a non-diagonal matrix cannot converge.
    CHECK_THROWS_AS(hermitian_eig(Matrix::from_real({{2, 1}, {1, 2}}), Tolerances{}, 0),
                    NoConvergenceError);
}

TEST_CASE("hermitian_eig reconstruction on random Hermitian input") {
    TrialRng rng(derive_seed(11, "eig_recon", 0, 0));
    for (std::size_t n : {1, 2, 3, 5, 9}) {
        const Matrix h = hermitian_from(rng, n);
        const EigResult e = hermitian_eig(h);
        Matrix recon(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Complex acc{0.0, 0.0};
                for (std::size_t k = 0; k < n; ++k)
                    acc += e.q(i, k) * e.eigenvalues[k] * std::conj(e.q(j, k));
                recon(i, j) = acc;
            }
        CHECK(frobenius_distance(recon, h) <= 1e-9 * h.frobenius_norm());
        CHECK(frobenius_distance(e.q.adjoint() * e.q, Matrix::identity(n)) <= 1e-9);
        for (std::size_t k = 1; k < n; ++k) CHECK(e.eigenvalues[k - 1] >= e.eigenvalues[k]);
    }
}

TEST_CASE("svd: fixed examples") {
    const SvdFactors d = svd(Matrix::from_real({{3, 0}, {0, 4}}));
    CHECK(d.singular_values[0] == doctest::Approx(4.0).epsilon(1e-13));
    CHECK(d.singular_values[1] == doctest::Approx(3.0).epsilon(1e-13));

    // Nilpotent shift: A^adj A = diag(0, 1).
    const SvdFactors s = svd(Matrix::from_real({{0, 1}, {0, 0}}));
    CHECK(s.singular_values[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(s.singular_values[1] == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("svd: 3x3 complex draws match the cubic oracle") {
    TrialRng rng(derive_seed(11, "svd_cubic", 3, 0));
    for (int t = 0; t < 50; ++t) {
        const Matrix a = ginibre(rng, 3, 3);
        const auto expected = oracle::small_singular_values(a);
        const SvdFactors s = svd(a);
        for (int k = 0; k < 3; ++k) {
            CHECK(std::abs(s.singular_values[k] - expected[k]) <=
                  1e-9 * std::max(expected[0], 1e-300));
        }
    }
}

TEST_CASE("svd: reconstruction, orthonormality, rectangular and degenerate input") {
    TrialRng rng(derive_seed(11, "svd_shapes", 0, 0));
    SUBCASE("tall and wide") {
        for (auto [m, n] : {std::pair<std::size_t, std::size_t>{5, 3}, {3, 5}, {4, 4}, {1, 6}}) {
            const Matrix a = ginibre(rng, m, n);
            const SvdFactors s = svd(a);
            CHECK(s.singular_values.size() == std::min(m, n));
            CHECK(frobenius_distance(reassemble(s), a) <= 1e-9 * a.frobenius_norm());
            const std::size_t k = std::min(m, n);
            CHECK(frobenius_distance(s.u.adjoint() * s.u, Matrix::identity(k)) <= 1e-9);
            CHECK(frobenius_distance(s.v.adjoint() * s.v, Matrix::identity(k)) <= 1e-9);
        }
    }
    SUBCASE("zero matrix and 1x1") {
        const SvdFactors z = svd(Matrix(3, 3));
        for (double sv : z.singular_values) CHECK(sv == 0.0);
        CHECK(frobenius_distance(z.u.adjoint() * z.u, Matrix::identity(3)) <= 1e-12);

        const SvdFactors one = svd(Matrix::from_complex({{{0, -2}}}));
        CHECK(one.singular_values[0] == doctest::Approx(2.0).epsilon(1e-14));
    }
    SUBCASE("rank-one input at larger dimension still yields orthonormal U") {
        // The null-space completion must work even when every standard
        // basis vector has small overlap with the missing directions.
        const Vec y = random_vector(rng, 16);
        const Vec z = random_vector(rng, 16);
        const SvdFactors s = svd(outer_adjoint(y, z));
        CHECK(frobenius_distance(s.u.adjoint() * s.u, Matrix::identity(16)) <= 1e-9);
        CHECK(frobenius_distance(s.v.adjoint() * s.v, Matrix::identity(16)) <= 1e-9);
    }
    SUBCASE("rank-deficient fallback keeps tiny singular values accurate") {
        const Matrix bad = Matrix::from_real(
            {{1, 0, 0}, {0, 1e-7, 0}, {0, 0, 1e-13}});
        const SvdFactors s = svd(bad);
        CHECK(s.singular_values[1] == doctest::Approx(1e-7).epsilon(1e-10));
        CHECK(s.singular_values[2] == doctest::Approx(1e-13).epsilon(1e-10));
        CHECK(frobenius_distance(reassemble(s), bad) <= 1e-12);
        for (int t = 0; t < 20; ++t) {
            const Matrix rd = random_rank_deficient(rng, 6, 2 + t % 3);
            const SvdFactors f = svd(rd);
            CHECK(frobenius_distance(reassemble(f), rd) <=
                  1e-9 * std::max(f.singular_values[0], 1e-300));
            CHECK(frobenius_distance(f.u.adjoint() * f.u, Matrix::identity(6)) <= 1e-9);
            CHECK(frobenius_distance(f.v.adjoint() * f.v, Matrix::identity(6)) <= 1e-9);
        }
    }
}

TEST_CASE("sqrt_psd: fixed examples and error paths") {
    const Matrix r = sqrt_psd(Matrix::from_real({{4, 0}, {0, 9}}));
    CHECK(r(0, 0).real() == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(r(1, 1).real() == doctest::Approx(3.0).epsilon(1e-13));

    // Eigendecomposition oracle: eigenvalues 3 and 1.
    const Matrix h = sqrt_psd(Matrix::from_real({{2, 1}, {1, 2}}));
    const double on_diag = (std::sqrt(3.0) + 1.0) / 2.0;
    const double off_diag = (std::sqrt(3.0) - 1.0) / 2.0;
    CHECK(h(0, 0).real() == doctest::Approx(on_diag).epsilon(1e-12));
    CHECK(h(0, 1).real() == doctest::Approx(off_diag).epsilon(1e-12));

    const Matrix z = sqrt_psd(Matrix(3, 3));
    CHECK(z.frobenius_norm() == 0.0);

    CHECK_THROWS_AS(sqrt_psd(Matrix::from_real({{0, 1}, {0, 0}})), NotHermitianError);
    CHECK_THROWS_AS(sqrt_psd(Matrix::from_real({{1, 0}, {0, -1}})), NotPsdError);

    // Squaring stays within the doubled error budget.
    TrialRng rng(derive_seed(11, "sqrt_budget", 0, 0));
    for (int t = 0; t < 20; ++t) {
        const Matrix p = random_psd(rng, 5);
        const Matrix root = sqrt_psd(p);
        CHECK(frobenius_distance(root * root, p) <= 1e-8 * p.frobenius_norm());
        CHECK(frobenius_distance(root, root.adjoint()) <= 1e-9 * root.frobenius_norm());
    }
}

TEST_CASE("abs_op: shift, unitary, isometry identity") {
    const Matrix a = abs_op(Matrix::from_real({{0, 1}, {0, 0}}));
    CHECK(a(0, 0).real() == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(a(1, 1).real() == doctest::Approx(1.0).epsilon(1e-13));

    TrialRng rng(derive_seed(11, "abs", 0, 0));
    const Matrix u = haar_unitary(rng, 4);
    CHECK(frobenius_distance(abs_op(u), Matrix::identity(4)) <= 1e-9);

    // || |T| x || = ||T x|| for sampled x.
    const Matrix t = ginibre(rng, 4, 4);
    const Matrix abs_t = abs_op(t);
    for (int i = 0; i < 20; ++i) {
        const Vec x = random_vector(rng, 4);
        const double lhs = vec_norm(abs_t.apply(x));
        const double rhs = vec_norm(t.apply(x));
        CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(rhs, 1e-300));
    }
}

TEST_CASE("polar: shift example, full rank, rank-2 projection") {
    const PolarFactors pf = polar(Matrix::from_real({{0, 1}, {0, 0}}));
    CHECK(std::abs(pf.w(0, 1) - Complex{1, 0}) <= 1e-12);
    CHECK(std::abs(pf.p(1, 1) - Complex{1, 0}) <= 1e-12);
    const Matrix proj = pf.w.adjoint() * pf.w;
    CHECK(std::abs(proj(1, 1) - Complex{1, 0}) <= 1e-12);
    CHECK(std::abs(proj(0, 0)) <= 1e-12);

    TrialRng rng(derive_seed(11, "polar", 0, 0));
    SUBCASE("invertible input gives unitary W") {
        const Matrix t = ginibre(rng, 5, 5);
        const PolarFactors f = polar(t);
        CHECK(frobenius_distance(f.w.adjoint() * f.w, Matrix::identity(5)) <= 1e-9);
        CHECK(frobenius_distance(f.w * f.p, t) <= 1e-9 * operator_norm(t));
    }
    SUBCASE("rank-2 product of 4x2 and 2x4") {
        const Matrix t = ginibre(rng, 4, 2) * ginibre(rng, 2, 4);
        const PolarFactors f = polar(t);
        const Matrix p2 = f.w.adjoint() * f.w;
        CHECK(std::abs(p2.diagonal_sum().real() - 2.0) <= 1e-8);
        CHECK(frobenius_distance(p2 * p2, p2) <= 1e-9);
        CHECK(frobenius_distance(f.w * f.p, t) <= 1e-9 * operator_norm(t));
    }
    CHECK_THROWS_AS(polar(Matrix(2, 3)), NonSquareError);
}

TEST_CASE("operator_norm: fixed cases and sampling lower bound") {
    CHECK(operator_norm(Matrix::from_real({{3, 0}, {0, 4}})) == doctest::Approx(4.0));

    TrialRng rng(derive_seed(11, "opnorm", 0, 0));
    const Vec x = random_vector(rng, 3);
    const Vec y = random_vector(rng, 4);
    const Matrix rank_one = outer_adjoint(x, y);
    CHECK(operator_norm(rank_one) ==
          doctest::Approx(vec_norm(x) * vec_norm(y)).epsilon(1e-11));

    const Matrix t = ginibre(rng, 5, 5);
    const double norm = operator_norm(t);
    for (int i = 0; i < 1000; ++i) {
        const Vec u = random_unit_vector(rng, 5);
        CHECK(vec_norm(t.apply(u)) <= norm + 1e-6);
    }
    // The bound is attained on the top right singular vector.
    const SvdFactors s = svd(t);
    CHECK(vec_norm(t.apply(s.v.column(0))) == doctest::Approx(norm).epsilon(1e-10));
}

TEST_CASE("norm chain ||T|| = || |T| || = ||T*||") {
    TrialRng rng(derive_seed(11, "norm_chain_kernel", 0, 0));
    for (std::size_t n : {1, 2, 4, 7}) {
        const Matrix t = ginibre(rng, n, n);
        const double op = operator_norm(t);
        CHECK(std::abs(operator_norm(abs_op(t)) - op) <= 1e-9 * op);
        CHECK(std::abs(operator_norm(t.adjoint()) - op) <= 1e-9 * op);
    }
}
