#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "ncad/derivation.hpp"
#include "ncad/integrate.hpp"

namespace ncad {

using Json = nlohmann::json;

/// Schemas (all rationals are exact base-10 "p" or "p/q" strings):
///   matrix  {"rows": n, "cols": m, "entries": [[str, ...], ...]}
///   point   {"dim": d, "components": [matrix, ...]}
///   poly    {"order": k, "xdims": [...], "zdims": [...],
///            "terms": [{"coeff": str, "w": [[letter, ...], ...], "v": [letter, ...]}]}
///           (letters are 1-based component indices; "w" holds k+1 words, "v" k letters)
///   sample  {"X": [point, ...], "Z": [point, ...]}   ("Z" may be omitted)
///   map     {"arity": r, "argshapes": [{"rows", "cols", "dim"}, ...],
///            "out": {"rows", "cols"},
///            "coeffs": [{"basis": [[row, col, component], ...], "value": matrix}, ...]}
///           (0-based basis triples, one per argument; nonzero coefficients only,
///            in increasing flat-index order — deterministic for golden files)
///   table   {"s": n, "values": [[matrix, ...], ...]}   (values[i][l] = D(E_{i+1,l+1}))
///   report  {"ok": bool, "checked": n, "detail": str}
///
/// Readers throw SchemaError (wrong structure) or ParseError (bad literals);
/// writers emit exactly the shapes above. poly_to_json canonicalizes first, so
/// equal polynomials serialize to equal bytes.

Json matrix_to_json(const ScalarMatrix& m);
ScalarMatrix matrix_from_json(const Json& j);

Json point_to_json(const PointMatrix& p);
PointMatrix point_from_json(const Json& j);

Json poly_to_json(const NcPolynomial& p);
NcPolynomial poly_from_json(const Json& j);

/// Evaluation data: points (one square tuple per slot) and directions.
struct EvalSample {
  std::vector<PointMatrix> points;
  std::vector<PointMatrix> dirs;
};
EvalSample sample_from_json(const Json& j);

Json map_to_json(const MultiLinearMap& g);
MultiLinearMap map_from_json(const Json& j);

Json table_to_json(const DerivationTable& t);

Json report_to_json(const CheckReport& r);

/// Reads and parses a whole file; ParseError on I/O or syntax trouble.
Json load_json_file(const std::string& path);

}  // namespace ncad
