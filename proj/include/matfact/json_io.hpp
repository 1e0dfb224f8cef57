#pragma once

// JSON interchange for fields, matrices and subspaces.
//
//   field:    {"kind": "prime_field", "p": 5} or {"kind": "rationals"}
//   matrix:   {"field": field, "rows": r, "cols": c, "entries": [["1", "2/3"], ...]}
//   subspace: {"kind": "linear" | "affine" | "hyperplane", "n": n, "field": field,
//              "basis": [matrix, ...], "base": matrix?, "normal": matrix?}
//
// Malformed documents raise Errc::invalid_input.

#include <string>

#include <json.hpp>

#include "matfact/subspace.hpp"

namespace matfact {

using json = nlohmann::json;

json to_json(const FieldSpec& f);
json to_json(const Matrix& m);
json to_json(const LinearSubspace& v);
json to_json(const AffineSubspace& a);
json to_json(const Hyperplane& h);

FieldSpec field_from_json(const json& j);
Matrix matrix_from_json(const json& j);
/// Linear or hyperplane documents.
LinearSubspace linear_from_json(const json& j);
/// Any subspace kind; linear ones get base 0.
AffineSubspace affine_from_json(const json& j);
/// A hyperplane document, or a linear one of dimension n^2 - 1.
Hyperplane hyperplane_from_json(const json& j);

json parse_json_text(const std::string& text);

}  // namespace matfact
