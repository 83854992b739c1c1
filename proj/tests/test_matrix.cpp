#include <doctest.h>

#include <limits>

#include "opcalc/matrix.hpp"

using namespace opcalc;

TEST_CASE("construction validates dimensions and data") {
    CHECK_THROWS_AS(Matrix(0, 3), InvalidDimensionError);
    CHECK_THROWS_AS(Matrix(3, 0), InvalidDimensionError);
    CHECK_THROWS_AS(Matrix::from_data(2, 2, Vec(3)), InvalidDimensionError);

    Vec bad(4, Complex{1.0, 0.0});
    bad[2] = Complex{std::numeric_limits<double>::quiet_NaN(), 0.0};
    CHECK_THROWS_AS(Matrix::from_data(2, 2, bad), InvalidDimensionError);

    // 1x1 is fine.
    const Matrix one = Matrix::from_real({{5.0}});
    CHECK(one.rows() == 1);
    CHECK(one(0, 0) == Complex{5.0, 0.0});
}

TEST_CASE("arithmetic and adjoint") {
    const Matrix a = Matrix::from_complex({{{1, 2}, {3, -1}}, {{0, 0}, {2, 2}}});
    const Matrix aa = a.adjoint();
    CHECK(aa(0, 0) == Complex{1, -2});
    CHECK(aa(1, 0) == Complex{3, 1});
    CHECK(aa(0, 1) == Complex{0, 0});

    const Matrix sum = a + a;
    CHECK(sum(0, 1) == Complex{6, -2});
    const Matrix diff = a - a;
    CHECK(diff.frobenius_norm() == 0.0);

    const Matrix id = Matrix::identity(2);
    CHECK(frobenius_distance(a * id, a) == 0.0);
    CHECK(frobenius_distance(id * a, a) == 0.0);

    CHECK_THROWS_AS(a * Matrix(3, 3), DimensionMismatchError);
    CHECK_THROWS_AS(a + Matrix(3, 2), DimensionMismatchError);
}

TEST_CASE("matrix-vector product and inner product conventions") {
    const Matrix a = Matrix::from_real({{1, 2}, {3, 4}});
    const Vec x{Complex{1, 0}, Complex{1, 0}};
    const Vec y = a.apply(x);
    CHECK(y[0] == Complex{3, 0});
    CHECK(y[1] == Complex{7, 0});

    // <x;z> is linear in x, conjugate linear in z.
    const Vec u{Complex{0, 1}};
    const Vec v{Complex{0, 1}};
    CHECK(vec_inner(u, v) == Complex{1, 0});
    CHECK(vec_inner(vec_scale(u, Complex{0, 1}), v) == Complex{0, 1});
}

TEST_CASE("trace_product equals trace of the product") {
    const Matrix a = Matrix::from_real({{1, 2}, {3, 4}});
    const Matrix b = Matrix::from_real({{0, 1}, {1, 0}});
    const Complex direct = (a * b).diagonal_sum();
    CHECK(std::abs(trace_product(a, b) - direct) < 1e-14);
}

TEST_CASE("outer products") {
    const Vec y{Complex{1, 0}, Complex{0, 0}};
    const Vec z{Complex{0, 1}};
    const Matrix m = outer_adjoint(y, z);  // y z^adj
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 1);
    CHECK(m(0, 0) == Complex{0, -1});

    const Matrix b = outer_bilinear(z, y);  // z y^T, no conjugation
    CHECK(b(0, 0) == Complex{0, 1});
}
