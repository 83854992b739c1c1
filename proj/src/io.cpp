#include "opcalc/io.hpp"

#include <fstream>

namespace opcalc {

using nlohmann::json;

namespace {

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError(field + ": expected [re, im] number pair");
    return Complex{j[0].get<double>(), j[1].get<double>()};
}

json vec_to_json(const Vec& v) {
    json arr = json::array();
    for (const Complex& z : v) arr.push_back(complex_to_json(z));
    return arr;
}

Vec vec_from_json(const json& j, const std::string& field) {
    if (!j.is_array()) throw ParseError(field + ": expected an array of [re, im] pairs");
    Vec v;
    v.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(complex_from_json(j[i], field + "[" + std::to_string(i) + "]"));
    return v;
}

std::size_t positive_size(const json& j, const std::string& field) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() > 0))
        throw ParseError(field + ": expected a positive integer");
    const auto v = j.get<long long>();
    if (v <= 0) throw ParseError(field + ": expected a positive integer");
    return static_cast<std::size_t>(v);
}

const json& require_field(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) throw ParseError(std::string(name) + ": missing field");
    return *it;
}

}  // namespace

json matrix_to_json(const Matrix& m) {
    json out;
    out["rows"] = m.rows();
    out["cols"] = m.cols();
    json data = json::array();
    for (const Complex& z : m.data()) data.push_back(complex_to_json(z));
    out["data"] = std::move(data);
    return out;
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("matrix: expected a JSON object");
    const std::size_t rows = positive_size(require_field(j, "rows"), "rows");
    const std::size_t cols = positive_size(require_field(j, "cols"), "cols");
    Vec data = vec_from_json(require_field(j, "data"), "data");
    if (data.size() != rows * cols)
        throw ParseError("data: length " + std::to_string(data.size()) + " does not match rows*cols");
    if (!vec_all_finite(data)) throw ParseError("data: entries must be finite");
    return Matrix::from_data(rows, cols, std::move(data));
}

json tensor_element_to_json(const TensorElement& f) {
    json out;
    out["dim_x"] = f.dim_x;
    out["dim_y"] = f.dim_y;
    json pairs = json::array();
    for (const auto& [x, y] : f.pairs) {
        json p;
        p["x"] = vec_to_json(x);
        p["y"] = vec_to_json(y);
        pairs.push_back(std::move(p));
    }
    out["pairs"] = std::move(pairs);
    return out;
}

TensorElement tensor_element_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("tensor element: expected a JSON object");
    TensorElement f{positive_size(require_field(j, "dim_x"), "dim_x"),
                    positive_size(require_field(j, "dim_y"), "dim_y"),
                    {}};
    const json& pairs = require_field(j, "pairs");
    if (!pairs.is_array()) throw ParseError("pairs: expected an array");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const json& p = pairs[i];
        const std::string tag = "pairs[" + std::to_string(i) + "]";
        if (!p.is_object()) throw ParseError(tag + ": expected an object");
        Vec x = vec_from_json(require_field(p, "x"), tag + ".x");
        Vec y = vec_from_json(require_field(p, "y"), tag + ".y");
        if (x.size() != f.dim_x) throw ParseError(tag + ".x: length does not match dim_x");
        if (y.size() != f.dim_y) throw ParseError(tag + ".y: length does not match dim_y");
        f.pairs.emplace_back(std::move(x), std::move(y));
    }
    f.validate();
    return f;
}

json nuclear_rep_to_json(const NuclearRep& rep) {
    json out;
    out["dim"] = rep.dim;
    json terms = json::array();
    for (const auto& term : rep.terms) {
        json t;
        t["z"] = vec_to_json(term.z);
        t["y"] = vec_to_json(term.y);
        terms.push_back(std::move(t));
    }
    out["terms"] = std::move(terms);
    return out;
}

NuclearRep nuclear_rep_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("nuclear rep: expected a JSON object");
    NuclearRep rep{positive_size(require_field(j, "dim"), "dim"), {}};
    const json& terms = require_field(j, "terms");
    if (!terms.is_array()) throw ParseError("terms: expected an array");
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const json& t = terms[i];
        const std::string tag = "terms[" + std::to_string(i) + "]";
        if (!t.is_object()) throw ParseError(tag + ": expected an object");
        Vec z = vec_from_json(require_field(t, "z"), tag + ".z");
        Vec y = vec_from_json(require_field(t, "y"), tag + ".y");
        if (z.size() != rep.dim) throw ParseError(tag + ".z: length does not match dim");
        if (y.size() != rep.dim) throw ParseError(tag + ".y: length does not match dim");
        rep.terms.push_back(NuclearTerm{std::move(z), std::move(y)});
    }
    rep.validate();
    return rep;
}

json svd_factors_to_json(const SvdFactors& s) {
    json out;
    out["U"] = matrix_to_json(s.u);
    out["singular_values"] = s.singular_values;
    out["V"] = matrix_to_json(s.v);
    return out;
}

json polar_factors_to_json(const PolarFactors& p) {
    json out;
    out["W"] = matrix_to_json(p.w);
    out["P"] = matrix_to_json(p.p);
    return out;
}

Matrix read_matrix_file(const std::string& path) { return matrix_from_json(read_json_file(path)); }

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ParseError(path + ": malformed JSON");
    return j;
}

}  // namespace opcalc
