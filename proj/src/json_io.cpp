#include "ncad/json_io.hpp"

#include <fstream>
#include <cstdint>
#include <sstream>
#include <utility>

namespace ncad {

namespace {

const Json& field(const Json& j, const char* key, const char* what) {
  if (!j.is_object())
    fail(ErrorKind::SchemaError, std::string(what) + " must be a JSON object");
  auto it = j.find(key);
  if (it == j.end())
    fail(ErrorKind::SchemaError, std::string(what) + " is missing field \"" + key + "\"");
  return *it;
}

std::size_t as_size(const Json& j, const char* what) {
  if (j.is_number_unsigned()) return j.get<std::size_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0)
    return static_cast<std::size_t>(j.get<std::int64_t>());
  fail(ErrorKind::SchemaError, std::string(what) + " must be a nonnegative integer");
}

std::string as_string(const Json& j, const char* what) {
  if (!j.is_string()) fail(ErrorKind::SchemaError, std::string(what) + " must be a string");
  return j.get<std::string>();
}

const Json& as_array(const Json& j, const char* what) {
  if (!j.is_array()) fail(ErrorKind::SchemaError, std::string(what) + " must be an array");
  return j;
}

std::vector<std::size_t> size_list(const Json& j, const char* what) {
  std::vector<std::size_t> out;
  for (const Json& v : as_array(j, what)) out.push_back(as_size(v, what));
  return out;
}

}  // namespace

Json matrix_to_json(const ScalarMatrix& m) {
  Json entries = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_string(m.at(r, c)));
    entries.push_back(std::move(row));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

ScalarMatrix matrix_from_json(const Json& j) {
  const std::size_t rows = as_size(field(j, "rows", "matrix"), "matrix rows");
  const std::size_t cols = as_size(field(j, "cols", "matrix"), "matrix cols");
  const Json& entries = as_array(field(j, "entries", "matrix"), "matrix entries");
  if (entries.size() != rows)
    fail(ErrorKind::SchemaError, "matrix entries must hold exactly \"rows\" rows");
  ScalarMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const Json& row = as_array(entries[r], "matrix row");
    if (row.size() != cols)
      fail(ErrorKind::SchemaError, "matrix row " + std::to_string(r) +
                                       " must hold exactly \"cols\" entries");
    for (std::size_t c = 0; c < cols; ++c)
      m.at(r, c) = scalar_from_string(as_string(row[c], "matrix entry"));
  }
  return m;
}

Json point_to_json(const PointMatrix& p) {
  Json components = Json::array();
  for (std::size_t alpha = 0; alpha < p.dim(); ++alpha)
    components.push_back(matrix_to_json(p.component(alpha)));
  return Json{{"dim", p.dim()}, {"components", std::move(components)}};
}

PointMatrix point_from_json(const Json& j) {
  const std::size_t dim = as_size(field(j, "dim", "point"), "point dim");
  const Json& components = as_array(field(j, "components", "point"), "point components");
  if (components.size() != dim)
    fail(ErrorKind::SchemaError, "point must hold exactly \"dim\" components");
  std::vector<ScalarMatrix> mats;
  mats.reserve(dim);
  for (const Json& c : components) mats.push_back(matrix_from_json(c));
  return PointMatrix(std::move(mats));
}

Json poly_to_json(const NcPolynomial& p) {
  const NcPolynomial q = canonicalize(p);
  Json terms = Json::array();
  for (const Monomial& t : q.terms) {
    Json words = Json::array();
    for (const Word& w : t.xwords) words.push_back(w);
    terms.push_back(Json{{"coeff", scalar_to_string(t.coeff)},
                         {"w", std::move(words)},
                         {"v", t.zletters}});
  }
  return Json{{"order", q.order()},
              {"xdims", q.xdims},
              {"zdims", q.zdims},
              {"terms", std::move(terms)}};
}

NcPolynomial poly_from_json(const Json& j) {
  const std::size_t order = as_size(field(j, "order", "polynomial"), "polynomial order");
  NcPolynomial p;
  p.xdims = size_list(field(j, "xdims", "polynomial"), "polynomial xdims");
  p.zdims = size_list(field(j, "zdims", "polynomial"), "polynomial zdims");
  if (p.xdims.size() != order + 1 || p.zdims.size() != order)
    fail(ErrorKind::SchemaError,
         "polynomial order must match the slot lists: order k needs k+1 xdims and k zdims");
  for (const Json& jt : as_array(field(j, "terms", "polynomial"), "polynomial terms")) {
    Monomial t;
    t.coeff = scalar_from_string(as_string(field(jt, "coeff", "term"), "term coeff"));
    for (const Json& jw : as_array(field(jt, "w", "term"), "term words"))
      t.xwords.push_back(size_list(jw, "term word letter"));
    t.zletters = size_list(field(jt, "v", "term"), "term direction letter");
    if (t.xwords.size() != order + 1 || t.zletters.size() != order)
      fail(ErrorKind::SchemaError, "term must hold k+1 words and k direction letters");
    p.terms.push_back(std::move(t));
  }
  validate_poly(p);
  return p;
}

EvalSample sample_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorKind::SchemaError, "sample must be a JSON object");
  EvalSample s;
  for (const Json& jp : as_array(field(j, "X", "sample"), "sample points"))
    s.points.push_back(point_from_json(jp));
  if (j.contains("Z"))
    for (const Json& jd : as_array(j.at("Z"), "sample directions"))
      s.dirs.push_back(point_from_json(jd));
  return s;
}

Json map_to_json(const MultiLinearMap& g) {
  Json shapes = Json::array();
  for (std::size_t a = 0; a < g.arity(); ++a) {
    const ArgShape& sh = g.argshape(a);
    shapes.push_back(Json{{"rows", sh.rows}, {"cols", sh.cols}, {"dim", sh.dim}});
  }
  Json coeffs = Json::array();
  for (std::size_t flat = 0; flat < g.tuple_count(); ++flat) {
    if (g.coeff_flat(flat).is_zero()) continue;
    Json basis = Json::array();
    for (const auto& triple : g.decode(flat))
      basis.push_back(Json::array({triple[0], triple[1], triple[2]}));
    coeffs.push_back(Json{{"basis", std::move(basis)}, {"value", matrix_to_json(g.coeff_flat(flat))}});
  }
  return Json{{"arity", g.arity()},
              {"argshapes", std::move(shapes)},
              {"out", Json{{"rows", g.out_rows()}, {"cols", g.out_cols()}}},
              {"coeffs", std::move(coeffs)}};
}

MultiLinearMap map_from_json(const Json& j) {
  const std::size_t arity = as_size(field(j, "arity", "map"), "map arity");
  std::vector<ArgShape> shapes;
  for (const Json& js : as_array(field(j, "argshapes", "map"), "map argshapes")) {
    ArgShape sh;
    sh.rows = as_size(field(js, "rows", "argshape"), "argshape rows");
    sh.cols = as_size(field(js, "cols", "argshape"), "argshape cols");
    sh.dim = as_size(field(js, "dim", "argshape"), "argshape dim");
    shapes.push_back(sh);
  }
  if (shapes.size() != arity)
    fail(ErrorKind::SchemaError, "map must hold exactly \"arity\" argument shapes");
  const Json& out = field(j, "out", "map");
  MultiLinearMap g(std::move(shapes), as_size(field(out, "rows", "map out"), "map out rows"),
                   as_size(field(out, "cols", "map out"), "map out cols"));
  for (const Json& jc : as_array(field(j, "coeffs", "map"), "map coeffs")) {
    const Json& jb = as_array(field(jc, "basis", "map coefficient"), "coefficient basis");
    if (jb.size() != arity)
      fail(ErrorKind::SchemaError, "coefficient basis must hold one triple per argument");
    std::vector<std::array<std::size_t, 3>> basis;
    for (const Json& jt : jb) {
      const Json& triple = as_array(jt, "basis triple");
      if (triple.size() != 3)
        fail(ErrorKind::SchemaError, "basis triple must be [row, col, component]");
      basis.push_back({as_size(triple[0], "basis row"), as_size(triple[1], "basis col"),
                       as_size(triple[2], "basis component")});
    }
    g.coeff(basis) = matrix_from_json(field(jc, "value", "map coefficient"));
  }
  return g;
}

Json table_to_json(const DerivationTable& t) {
  Json values = Json::array();
  for (std::size_t i = 1; i <= t.s; ++i) {
    Json row = Json::array();
    for (std::size_t l = 1; l <= t.s; ++l) row.push_back(matrix_to_json(t.at(i, l)));
    values.push_back(std::move(row));
  }
  return Json{{"s", t.s}, {"values", std::move(values)}};
}

Json report_to_json(const CheckReport& r) {
  return Json{{"ok", r.ok}, {"checked", r.checked}, {"detail", r.detail}};
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::ParseError, "cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::ParseError, path + ": " + e.what());
  }
}

}  // namespace ncad
