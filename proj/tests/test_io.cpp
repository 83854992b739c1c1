#include <doctest.h>

#include <cmath>

#include "opcalc/io.hpp"
#include "opcalc/rng.hpp"

using namespace opcalc;
using nlohmann::json;

TEST_CASE("matrix JSON round trip is lossless") {
    TrialRng rng(derive_seed(29, "io", 0, 0));
    const Matrix m = ginibre(rng, 3, 5);
    const Matrix back = matrix_from_json(json::parse(matrix_to_json(m).dump()));
    CHECK(back.rows() == 3);
    CHECK(back.cols() == 5);
    CHECK(frobenius_distance(back, m) == 0.0);
}

TEST_CASE("matrix JSON parse errors name the offending field") {
    CHECK_THROWS_WITH_AS(matrix_from_json(json::parse(R"({"cols": 2, "data": []})")),
                         doctest::Contains("rows"), ParseError);
    CHECK_THROWS_WITH_AS(matrix_from_json(json::parse(R"({"rows": 0, "cols": 2, "data": []})")),
                         doctest::Contains("rows"), ParseError);
    CHECK_THROWS_WITH_AS(
        matrix_from_json(json::parse(R"({"rows": 1, "cols": 2, "data": [[1, 0]]})")),
        doctest::Contains("data"), ParseError);
    CHECK_THROWS_WITH_AS(
        matrix_from_json(json::parse(R"({"rows": 1, "cols": 1, "data": [[1]]})")),
        doctest::Contains("data[0]"), ParseError);
    CHECK_THROWS_AS(matrix_from_json(json::parse("[1, 2]")), ParseError);
}

TEST_CASE("tensor element JSON round trip and validation") {
    TrialRng rng(derive_seed(29, "io_tensor", 0, 0));
    const TensorElement f = random_tensor_element(rng, 2, 3, 4);
    const TensorElement back = tensor_element_from_json(tensor_element_to_json(f));
    CHECK(back.dim_x == 2);
    CHECK(back.dim_y == 3);
    REQUIRE(back.pairs.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(vec_norm(vec_sub(back.pairs[k].first, f.pairs[k].first)) == 0.0);
        CHECK(vec_norm(vec_sub(back.pairs[k].second, f.pairs[k].second)) == 0.0);
    }

    CHECK_THROWS_WITH_AS(tensor_element_from_json(json::parse(
                             R"({"dim_x": 2, "dim_y": 2, "pairs": [{"x": [[1,0]], "y": [[1,0],[0,0]]}]})")),
                         doctest::Contains("pairs[0].x"), ParseError);
}

TEST_CASE("nuclear rep JSON round trip") {
    NuclearRep rep{2, {NuclearTerm{{Complex{1, 2}, Complex{0, 0}},
                                   {Complex{0, 0}, Complex{3, -4}}}}};
    const NuclearRep back = nuclear_rep_from_json(nuclear_rep_to_json(rep));
    CHECK(back.dim == 2);
    REQUIRE(back.terms.size() == 1);
    CHECK(back.terms[0].z[0] == Complex{1, 2});
    CHECK(back.terms[0].y[1] == Complex{3, -4});

    CHECK_THROWS_WITH_AS(nuclear_rep_from_json(json::parse(R"({"terms": []})")),
                         doctest::Contains("dim"), ParseError);
}

TEST_CASE("extreme magnitudes survive the decimal round trip") {
    Vec data{Complex{1.0 / 3.0, -2.0e-300}, Complex{1.7976931348623157e308, 5.0e-324},
             Complex{-0.1, 0.3}, Complex{0.0, -0.0}};
    const Matrix m = Matrix::from_data(2, 2, data);
    const Matrix back = matrix_from_json(json::parse(matrix_to_json(m).dump()));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(back(i, j) == m(i, j));
}
