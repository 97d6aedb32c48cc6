#pragma once

#include <array>
#include <functional>
#include <vector>

#include "ncad/matrix.hpp"

namespace ncad {

struct ArgShape {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t dim = 1;

  bool operator==(const ArgShape&) const = default;
};

/// Dense multilinear map (Z^1..Z^k) -> matrix, with each Z^a a PointMatrix of
/// shape argshape(a). Stored as one output matrix per tuple of elementary
/// argument positions; arity 0 degenerates to a single constant matrix.
/// Evaluation is exactly k-linear by construction.
class MultiLinearMap {
 public:
  MultiLinearMap(std::vector<ArgShape> argshapes, std::size_t out_rows, std::size_t out_cols);

  /// Fills coefficients by probing fn on every elementary argument tuple.
  static MultiLinearMap materialize(
      std::vector<ArgShape> argshapes, std::size_t out_rows, std::size_t out_cols,
      const std::function<ScalarMatrix(const std::vector<PointMatrix>&)>& fn);

  std::size_t arity() const { return argshapes_.size(); }
  const ArgShape& argshape(std::size_t a) const;
  std::size_t out_rows() const { return out_rows_; }
  std::size_t out_cols() const { return out_cols_; }

  ScalarMatrix eval(const std::vector<PointMatrix>& args) const;
  ScalarMatrix operator()(const std::vector<PointMatrix>& args) const { return eval(args); }

  bool is_zero() const;
  bool operator==(const MultiLinearMap&) const = default;

  /// Coefficient at one tuple of (row, col, component) triples, 0-based.
  const ScalarMatrix& coeff(const std::vector<std::array<std::size_t, 3>>& basis) const;
  ScalarMatrix& coeff(const std::vector<std::array<std::size_t, 3>>& basis);

  std::size_t tuple_count() const { return coeffs_.size(); }
  const ScalarMatrix& coeff_flat(std::size_t flat) const { return coeffs_[flat]; }
  ScalarMatrix& coeff_flat(std::size_t flat) { return coeffs_[flat]; }
  /// Decodes a flat index into per-argument (row, col, component) triples.
  std::vector<std::array<std::size_t, 3>> decode(std::size_t flat) const;

 private:
  std::vector<ArgShape> argshapes_;
  std::size_t out_rows_;
  std::size_t out_cols_;
  std::vector<ScalarMatrix> coeffs_;
};

MultiLinearMap operator+(const MultiLinearMap& a, const MultiLinearMap& b);
MultiLinearMap operator-(const MultiLinearMap& a, const MultiLinearMap& b);
MultiLinearMap operator-(const MultiLinearMap& a);
MultiLinearMap operator*(const Scalar& c, const MultiLinearMap& a);

/// h(args) = s * g(args).
MultiLinearMap out_premul(const ScalarMatrix& s, const MultiLinearMap& g);
/// h(args) = g(args) * s.
MultiLinearMap out_postmul(const MultiLinearMap& g, const ScalarMatrix& s);
/// h(.., Z_a, ..) = g(.., s * Z_a, ..).
MultiLinearMap arg_premul(const MultiLinearMap& g, std::size_t a, const ScalarMatrix& s);
/// h(.., Z_a, ..) = g(.., Z_a * s, ..).
MultiLinearMap arg_postmul(const MultiLinearMap& g, std::size_t a, const ScalarMatrix& s);

/// Module actions indexed by a slot 0 <= j <= arity. The left action by a
/// square S premultiplies the output when j = 0 and otherwise postmultiplies
/// argument j; the right action postmultiplies the output when j = arity and
/// otherwise premultiplies argument j+1 (argument indices 1-based here).
MultiLinearMap slot_left(const ScalarMatrix& s, const MultiLinearMap& g, std::size_t j);
MultiLinearMap slot_right(const MultiLinearMap& g, const ScalarMatrix& s, std::size_t j);
/// slot_left(s, g, j) - slot_right(g, s, j).
MultiLinearMap slot_bracket(const ScalarMatrix& s, const MultiLinearMap& g, std::size_t j);

}  // namespace ncad
