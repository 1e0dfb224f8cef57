#include "matfact/json_io.hpp"

namespace matfact {

namespace {

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) raise(Errc::invalid_input, std::string("missing key \"") + key + "\"");
  return j.at(key);
}

std::size_t size_member(const json& j, const char* key) {
  const json& v = member(j, key);
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0) {
    raise(Errc::invalid_input, std::string("\"") + key + "\" must be a positive integer");
  }
  return v.get<std::size_t>();
}

json subspace_header(const char* kind, const LinearSubspace& v) {
  json basis = json::array();
  for (const auto& b : v.basis()) basis.push_back(to_json(b));
  return json{{"kind", kind}, {"n", v.rows()}, {"field", to_json(v.field())}, {"basis", std::move(basis)}};
}

void check_kind(const json& j, std::initializer_list<const char*> allowed) {
  const json& k = member(j, "kind");
  if (k.is_string()) {
    for (const char* a : allowed) {
      if (k.get<std::string>() == a) return;
    }
  }
  raise(Errc::invalid_input, "unexpected subspace kind " + k.dump());
}

LinearSubspace basis_from_json(const json& j, const FieldSpec& f, std::size_t n) {
  const json& b = member(j, "basis");
  if (!b.is_array()) raise(Errc::invalid_input, "\"basis\" must be an array");
  std::vector<Matrix> mats;
  for (const auto& e : b) {
    Matrix m = matrix_from_json(e);
    if (m.field() != f || m.rows() != n || m.cols() != n) raise(Errc::invalid_input, "basis matrix does not match n/field");
    mats.push_back(std::move(m));
  }
  return LinearSubspace::span_from(f, n, mats);
}

Matrix square_member(const json& j, const char* key, const FieldSpec& f, std::size_t n) {
  Matrix m = matrix_from_json(member(j, key));
  if (m.field() != f || m.rows() != n || m.cols() != n) {
    raise(Errc::invalid_input, std::string("\"") + key + "\" does not match n/field");
  }
  return m;
}

}  // namespace

json to_json(const FieldSpec& f) {
  if (f.is_finite()) return json{{"kind", "prime_field"}, {"p", f.p()}};
  return json{{"kind", "rationals"}};
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
    rows.push_back(std::move(row));
  }
  return json{{"field", to_json(m.field())}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

json to_json(const LinearSubspace& v) { return subspace_header("linear", v); }

json to_json(const AffineSubspace& a) {
  json j = subspace_header("affine", a.translation());
  j["base"] = to_json(a.base());
  return j;
}

json to_json(const Hyperplane& h) {
  json j = subspace_header("hyperplane", h.subspace());
  j["normal"] = to_json(h.normal());
  return j;
}

FieldSpec field_from_json(const json& j) {
  const json& k = member(j, "kind");
  if (k == "rationals") return FieldSpec::rationals();
  if (k == "prime_field") {
    const json& p = member(j, "p");
    if (!p.is_number_unsigned()) raise(Errc::invalid_input, "\"p\" must be a positive integer");
    try {
      return FieldSpec::prime(p.get<std::uint64_t>());
    } catch (const Error& e) {
      if (e.code() == Errc::invalid_input) throw;
      raise(Errc::invalid_input, e.what());
    }
  }
  raise(Errc::invalid_input, "unknown field kind " + k.dump());
}

Matrix matrix_from_json(const json& j) {
  const FieldSpec f = field_from_json(member(j, "field"));
  const std::size_t rows = size_member(j, "rows");
  const std::size_t cols = size_member(j, "cols");
  const json& es = member(j, "entries");
  if (!es.is_array() || es.size() != rows) raise(Errc::invalid_input, "\"entries\" must hold one array per row");
  std::vector<Scalar> out;
  out.reserve(rows * cols);
  for (const auto& row : es) {
    if (!row.is_array() || row.size() != cols) raise(Errc::invalid_input, "entry row has the wrong length");
    for (const auto& e : row) {
      std::string text;
      if (e.is_string()) {
        text = e.get<std::string>();
      } else if (e.is_number_integer()) {
        text = e.dump();
      } else {
        raise(Errc::invalid_input, "entries must be strings or integers");
      }
      try {
        out.push_back(Scalar::parse(f, text));
      } catch (const Error& err) {
        if (err.code() == Errc::invalid_input) throw;
        raise(Errc::invalid_input, err.what());
      }
    }
  }
  return Matrix(f, rows, cols, std::move(out));
}

LinearSubspace linear_from_json(const json& j) {
  check_kind(j, {"linear", "hyperplane"});
  if (member(j, "kind") == "hyperplane") return hyperplane_from_json(j).subspace();
  const FieldSpec f = field_from_json(member(j, "field"));
  return basis_from_json(j, f, size_member(j, "n"));
}

AffineSubspace affine_from_json(const json& j) {
  check_kind(j, {"linear", "affine", "hyperplane"});
  const FieldSpec f = field_from_json(member(j, "field"));
  const std::size_t n = size_member(j, "n");
  if (member(j, "kind") == "affine") return AffineSubspace(square_member(j, "base", f, n), basis_from_json(j, f, n));
  return AffineSubspace::linear(linear_from_json(j));
}

Hyperplane hyperplane_from_json(const json& j) {
  check_kind(j, {"linear", "hyperplane"});
  const FieldSpec f = field_from_json(member(j, "field"));
  const std::size_t n = size_member(j, "n");
  if (member(j, "kind") == "hyperplane" && j.contains("normal")) {
    Matrix a = square_member(j, "normal", f, n);
    if (a.is_zero()) raise(Errc::invalid_input, "hyperplane normal must be nonzero");
    return Hyperplane(std::move(a));
  }
  const LinearSubspace v = basis_from_json(j, f, n);
  if (v.dim() + 1 != n * n) raise(Errc::invalid_input, "subspace is not a hyperplane");
  return hyperplane_from_subspace(v);
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    raise(Errc::invalid_input, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace matfact
