#include <doctest.h>

#include <cmath>
#include <limits>

#include "opcalc/polyroots.hpp"
#include "opcalc/rng.hpp"
#include "opcalc/schatten.hpp"
#include "oracles.hpp"

using namespace opcalc;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("trace: diagonal sums and conjugation invariance") {
    CHECK(trace(Matrix::from_real({{1, 2}, {3, 4}})) == Complex{5, 0});
    CHECK(trace(Matrix::from_real({{0, 1}, {0, 0}})) == Complex{0, 0});
    CHECK_THROWS_AS(trace(Matrix(2, 3)), NonSquareError);

    TrialRng rng(derive_seed(17, "trace", 0, 0));
    const Matrix t = ginibre(rng, 4, 4);
    const Matrix q = haar_unitary(rng, 4);
    const Complex direct = trace(t);
    const Complex conjugated = trace(q.adjoint() * t * q);
    CHECK(std::abs(direct - conjugated) <= 1e-10 * std::max(1.0, std::abs(direct)));
}

TEST_CASE("schatten_norm: fixed values and the cubic oracle") {
    const Matrix d = Matrix::from_real({{3, 0}, {0, 4}});
    CHECK(schatten_norm(d, 1) == doctest::Approx(7.0).epsilon(1e-12));
    CHECK(schatten_norm(d, 2) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(schatten_norm(d, kInf) == doctest::Approx(4.0).epsilon(1e-12));

    const Matrix id = Matrix::identity(9);
    CHECK(schatten_norm(id, 1) == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(schatten_norm(id, 2) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(schatten_norm(id, kInf) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(schatten_norm(d, 0.0), InvalidPError);
    CHECK_THROWS_AS(schatten_norm(d, -1.0), InvalidPError);
    CHECK_THROWS_AS(schatten_norm(Matrix(2, 3), 1.0), NonSquareError);

    // General p is accepted; p = 4 on a diagonal matrix is elementary.
    CHECK(schatten_norm(d, 4) ==
          doctest::Approx(std::pow(std::pow(3.0, 4) + std::pow(4.0, 4), 0.25)).epsilon(1e-12));

    TrialRng rng(derive_seed(17, "schatten_cubic", 0, 0));
    for (int t = 0; t < 30; ++t) {
        const Matrix a = ginibre(rng, 3, 3);
        const auto sv = oracle::small_singular_values(a);
        const double expected = sv[0] + sv[1] + sv[2];
        CHECK(std::abs(schatten_norm(a, 1) - expected) <= 1e-9 * expected);
    }
}

TEST_CASE("hs_inner: identity, norm identity, disjoint supports") {
    CHECK(hs_inner(Matrix::identity(5), Matrix::identity(5)) == Complex{5, 0});
    CHECK(hs_inner(Matrix::from_real({{1, 0}, {0, 0}}), Matrix::from_real({{0, 0}, {0, 1}})) ==
          Complex{0, 0});
    CHECK_THROWS_AS(hs_inner(Matrix(2, 2), Matrix(3, 3)), DimensionMismatchError);

    TrialRng rng(derive_seed(17, "hs", 0, 0));
    const Matrix t = ginibre(rng, 4, 4);
    const double t2 = schatten_norm(t, 2);
    CHECK(std::abs(hs_inner(t, t) - Complex{t2 * t2, 0.0}) <= 1e-10 * t2 * t2);
}

TEST_CASE("basis_trace_sums: fixed bases and random unitary bases") {
    const Matrix d = Matrix::from_real({{1, 0}, {0, -2}});
    const BasisTraceSums fixed = basis_trace_sums(d, Matrix::identity(2));
    CHECK(fixed.sum == Complex{-1, 0});
    CHECK(fixed.abs_sum == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(fixed.abs_diag_of_abs == doctest::Approx(3.0).epsilon(1e-9));

    const std::size_t n = 6;
    const BasisTraceSums shift_sums = basis_trace_sums(shift_matrix(n), Matrix::identity(n));
    CHECK(std::abs(shift_sums.sum) <= 1e-12);
    CHECK(shift_sums.abs_sum <= 1e-12);
    CHECK(shift_sums.abs_diag_of_abs == doctest::Approx(n - 1.0).epsilon(1e-9));

    CHECK_THROWS_AS(basis_trace_sums(d, Matrix::from_real({{1, 1}, {0, 1}})), NotUnitaryError);
    CHECK_THROWS_AS(basis_trace_sums(d, Matrix::identity(3)), DimensionMismatchError);

    TrialRng rng(derive_seed(17, "basis", 0, 0));
    const Matrix t = ginibre(rng, 5, 5);
    const double t1 = schatten_norm(t, 1);
    for (int b = 0; b < 25; ++b) {
        const BasisTraceSums sums = basis_trace_sums(t, haar_unitary(rng, 5));
        CHECK(sums.abs_sum <= t1 + 1e-9 * t1);
        CHECK(std::abs(sums.abs_diag_of_abs - t1) <= 1e-9 * t1);
    }
}

TEST_CASE("factor_hs: attaining factorizations") {
    const auto [sa, sb] = factor_hs(Matrix::from_real({{0, 1}, {0, 0}}));
    CHECK(schatten_norm(sa, 2) * schatten_norm(sb, 2) == doctest::Approx(1.0).epsilon(1e-9));

    const Matrix psd = Matrix::from_real({{4, 0}, {0, 9}});
    const auto [pa, pb] = factor_hs(psd);
    CHECK(frobenius_distance(pa, pb) <= 1e-9 * pb.frobenius_norm());
    CHECK(pb(0, 0).real() == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(pb(1, 1).real() == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(schatten_norm(pa, 2) * schatten_norm(pb, 2) == doctest::Approx(13.0).epsilon(1e-9));

    TrialRng rng(derive_seed(17, "factor", 0, 0));
    for (int t = 0; t < 20; ++t) {
        const Matrix m = ginibre(rng, 4, 4);
        const auto [a, b] = factor_hs(m);
        CHECK(frobenius_distance(a * b, m) <= 1e-9 * operator_norm(m));
        const double t1 = schatten_norm(m, 1);
        CHECK(std::abs(schatten_norm(a, 2) * schatten_norm(b, 2) - t1) <= 1e-8 * t1);
    }
}

TEST_CASE("truncate_spectral: residuals are suffix sums") {
    TrialRng rng(derive_seed(17, "truncate", 0, 0));
    const Matrix t = ginibre(rng, 6, 6);
    CHECK(frobenius_distance(truncate_spectral(t, 6), t) <= 1e-9 * operator_norm(t));
    CHECK_THROWS_AS(truncate_spectral(t, 7), KOutOfRangeError);

    const Matrix d = Matrix::from_real({{3, 0, 0}, {0, 2, 0}, {0, 0, 1}});
    const Matrix d1 = truncate_spectral(d, 1);
    CHECK(d1(0, 0).real() == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(std::abs(d1(1, 1)) <= 1e-12);
    CHECK(schatten_norm(d - d1, 1) == doctest::Approx(3.0).epsilon(1e-11));

    const SvdFactors s = svd(t);
    const auto suffix = oracle::suffix_sums(s.singular_values);
    for (std::size_t k = 0; k <= 6; ++k) {
        const double residual = schatten_norm(t - truncate_spectral(t, k), 1);
        CHECK(std::abs(residual - suffix[k]) <= 1e-9 * std::max(suffix[0], 1e-300));
    }
}

TEST_CASE("dual_attainment: value, fixed cases, sampled contractions") {
    const DualAttainment diag = dual_attainment(Matrix::from_real({{3, 0}, {0, 4}}));
    CHECK(diag.value == doctest::Approx(7.0).epsilon(1e-10));
    CHECK(frobenius_distance(diag.s, Matrix::identity(2)) <= 1e-9);

    const DualAttainment sh = dual_attainment(Matrix::from_real({{0, 1}, {0, 0}}));
    CHECK(sh.value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(sh.s(1, 0) - Complex{1, 0}) <= 1e-10);
    CHECK(std::abs(sh.s(0, 1)) <= 1e-10);

    TrialRng rng(derive_seed(17, "dual", 0, 0));
    const Matrix t = ginibre(rng, 4, 4);
    const DualAttainment da = dual_attainment(t);
    const double t1 = schatten_norm(t, 1);
    CHECK(std::abs(da.value - t1) <= 1e-8 * t1);
    CHECK(operator_norm(da.s) <= 1.0 + 1e-9);
    for (int i = 0; i < 500; ++i) {
        const Matrix c = random_contraction(rng, 4);
        CHECK(trace_product(c, t).real() <= da.value + 1e-8 * t1);
    }
}

TEST_CASE("shift_matrix: definition and trace norm") {
    const Matrix s2 = shift_matrix(2);
    CHECK(s2(1, 0) == Complex{1, 0});
    CHECK(std::abs(s2(0, 0)) + std::abs(s2(0, 1)) + std::abs(s2(1, 1)) == 0.0);
    CHECK_THROWS_AS(shift_matrix(1), NTooSmallError);

    for (std::size_t n : {2, 5, 16}) {
        const Matrix s = shift_matrix(n);
        double diag = 0.0;
        for (std::size_t k = 0; k < n; ++k) diag += std::abs(s(k, k));
        CHECK(diag == 0.0);
        // S^adj S = diag(1, ..., 1, 0), so the trace norm is n - 1.
        CHECK(schatten_norm(s, 1) == doctest::Approx(n - 1.0).epsilon(1e-10));
    }
}

TEST_CASE("trace equals the eigenvalue sum for small dimensions") {
    TrialRng rng(derive_seed(17, "lidskii", 0, 0));
    for (std::size_t n : {2, 3, 4}) {
        for (int t = 0; t < 25; ++t) {
            const Matrix a = ginibre(rng, n, n);
            Complex sum{0, 0};
            for (Complex r : char_poly_eigenvalues(a)) sum += r;
            CHECK(std::abs(trace(a) - sum) <= 1e-7 * std::max(1.0, schatten_norm(a, 1)));
        }
    }
}
