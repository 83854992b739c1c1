#pragma once

#include <string>

#include "opcalc/decomp.hpp"
#include "opcalc/matrix.hpp"
#include "opcalc/nuclear.hpp"
#include "opcalc/tensor.hpp"

// Forward declaration keeps the json header out of most translation units.
#include <json.hpp>

namespace opcalc {

// Matrix wire format: {"rows": n, "cols": m, "data": [[re, im], ...]},
// row-major. Parse errors name the offending field.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

// Tensor element: {"dim_x": n, "dim_y": m,
//                  "pairs": [{"x": [[re,im],...], "y": [[re,im],...]}, ...]}.
nlohmann::json tensor_element_to_json(const TensorElement& f);
TensorElement tensor_element_from_json(const nlohmann::json& j);

// Nuclear representation: {"dim": n, "terms": [{"z": ..., "y": ...}, ...]}.
nlohmann::json nuclear_rep_to_json(const NuclearRep& rep);
NuclearRep nuclear_rep_from_json(const nlohmann::json& j);

nlohmann::json svd_factors_to_json(const SvdFactors& s);
nlohmann::json polar_factors_to_json(const PolarFactors& p);

Matrix read_matrix_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

}  // namespace opcalc
