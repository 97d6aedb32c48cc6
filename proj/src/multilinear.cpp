#include "ncad/multilinear.hpp"

#include <string>
#include <utility>

namespace ncad {

namespace {

std::size_t basis_size(const ArgShape& s) { return s.rows * s.cols * s.dim; }

std::size_t total_tuples(const std::vector<ArgShape>& shapes) {
  std::size_t total = 1;
  for (const ArgShape& s : shapes) total *= basis_size(s);
  return total;
}

void require_same_layout(const MultiLinearMap& a, const MultiLinearMap& b, const char* what) {
  bool same = a.arity() == b.arity() && a.out_rows() == b.out_rows() && a.out_cols() == b.out_cols();
  for (std::size_t i = 0; same && i < a.arity(); ++i) same = a.argshape(i) == b.argshape(i);
  if (!same) fail(ErrorKind::ShapeMismatch, std::string(what) + " needs identical map layouts");
}

template <typename Fn>
MultiLinearMap coeffwise(const MultiLinearMap& a, Fn&& fn) {
  MultiLinearMap out = a;
  for (std::size_t t = 0; t < out.tuple_count(); ++t) out.coeff_flat(t) = fn(a.coeff_flat(t), t);
  return out;
}

}  // namespace

MultiLinearMap::MultiLinearMap(std::vector<ArgShape> argshapes, std::size_t out_rows,
                               std::size_t out_cols)
    : argshapes_(std::move(argshapes)), out_rows_(out_rows), out_cols_(out_cols) {
  for (const ArgShape& s : argshapes_)
    if (s.rows == 0 || s.cols == 0 || s.dim == 0)
      fail(ErrorKind::ShapeMismatch, "argument shape must be positive");
  if (out_rows_ == 0 || out_cols_ == 0)
    fail(ErrorKind::ShapeMismatch, "output shape must be positive");
  coeffs_.assign(total_tuples(argshapes_), ScalarMatrix(out_rows_, out_cols_));
}

const ArgShape& MultiLinearMap::argshape(std::size_t a) const {
  if (a >= argshapes_.size()) fail(ErrorKind::IndexOutOfRange, "argument index out of range");
  return argshapes_[a];
}

std::vector<std::array<std::size_t, 3>> MultiLinearMap::decode(std::size_t flat) const {
  std::vector<std::array<std::size_t, 3>> basis(argshapes_.size());
  for (std::size_t a = argshapes_.size(); a-- > 0;) {
    const ArgShape& s = argshapes_[a];
    std::size_t b = flat % basis_size(s);
    flat /= basis_size(s);
    basis[a] = {b / (s.cols * s.dim), (b / s.dim) % s.cols, b % s.dim};
  }
  return basis;
}

const ScalarMatrix& MultiLinearMap::coeff(
    const std::vector<std::array<std::size_t, 3>>& basis) const {
  if (basis.size() != argshapes_.size())
    fail(ErrorKind::ShapeMismatch, "basis tuple has wrong length");
  std::size_t flat = 0;
  for (std::size_t a = 0; a < argshapes_.size(); ++a) {
    const ArgShape& s = argshapes_[a];
    auto [r, c, d] = basis[a];
    if (r >= s.rows || c >= s.cols || d >= s.dim)
      fail(ErrorKind::IndexOutOfRange, "basis triple out of range");
    flat = flat * basis_size(s) + (r * s.cols + c) * s.dim + d;
  }
  return coeffs_[flat];
}

ScalarMatrix& MultiLinearMap::coeff(const std::vector<std::array<std::size_t, 3>>& basis) {
  return const_cast<ScalarMatrix&>(std::as_const(*this).coeff(basis));
}

MultiLinearMap MultiLinearMap::materialize(
    std::vector<ArgShape> argshapes, std::size_t out_rows, std::size_t out_cols,
    const std::function<ScalarMatrix(const std::vector<PointMatrix>&)>& fn) {
  MultiLinearMap out(std::move(argshapes), out_rows, out_cols);
  std::vector<PointMatrix> args;
  for (std::size_t a = 0; a < out.arity(); ++a) {
    const ArgShape& s = out.argshape(a);
    args.push_back(PointMatrix::zero(s.rows, s.cols, s.dim));
  }
  for (std::size_t t = 0; t < out.tuple_count(); ++t) {
    auto basis = out.decode(t);
    for (std::size_t a = 0; a < out.arity(); ++a)
      args[a].component(basis[a][2]).at(basis[a][0], basis[a][1]) = 1;
    ScalarMatrix value = fn(args);
    if (value.rows() != out_rows || value.cols() != out_cols)
      fail(ErrorKind::ShapeMismatch, "materialized value has wrong shape");
    out.coeff_flat(t) = std::move(value);
    for (std::size_t a = 0; a < out.arity(); ++a)
      args[a].component(basis[a][2]).at(basis[a][0], basis[a][1]) = 0;
  }
  return out;
}

ScalarMatrix MultiLinearMap::eval(const std::vector<PointMatrix>& args) const {
  if (args.size() != argshapes_.size())
    fail(ErrorKind::ShapeMismatch, "expected " + std::to_string(argshapes_.size()) +
                                       " arguments, got " + std::to_string(args.size()));
  for (std::size_t a = 0; a < args.size(); ++a) {
    const ArgShape& s = argshapes_[a];
    if (args[a].rows() != s.rows || args[a].cols() != s.cols || args[a].dim() != s.dim)
      fail(ErrorKind::ShapeMismatch, "argument " + std::to_string(a + 1) + " has wrong shape");
  }
  ScalarMatrix result(out_rows_, out_cols_);
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    if (coeffs_[t].is_zero()) continue;
    auto basis = decode(t);
    Scalar factor = 1;
    for (std::size_t a = 0; a < args.size() && sgn(factor) != 0; ++a)
      factor *= args[a].component(basis[a][2]).at(basis[a][0], basis[a][1]);
    if (sgn(factor) != 0) result = result + factor * coeffs_[t];
  }
  return result;
}

bool MultiLinearMap::is_zero() const {
  for (const ScalarMatrix& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

MultiLinearMap operator+(const MultiLinearMap& a, const MultiLinearMap& b) {
  require_same_layout(a, b, "map addition");
  return coeffwise(a, [&](const ScalarMatrix& m, std::size_t t) { return m + b.coeff_flat(t); });
}

MultiLinearMap operator-(const MultiLinearMap& a, const MultiLinearMap& b) {
  require_same_layout(a, b, "map subtraction");
  return coeffwise(a, [&](const ScalarMatrix& m, std::size_t t) { return m - b.coeff_flat(t); });
}

MultiLinearMap operator-(const MultiLinearMap& a) {
  return coeffwise(a, [](const ScalarMatrix& m, std::size_t) { return -m; });
}

MultiLinearMap operator*(const Scalar& c, const MultiLinearMap& a) {
  return coeffwise(a, [&](const ScalarMatrix& m, std::size_t) { return c * m; });
}

MultiLinearMap out_premul(const ScalarMatrix& s, const MultiLinearMap& g) {
  if (s.cols() != g.out_rows()) fail(ErrorKind::ShapeMismatch, "output premultiplier mismatch");
  std::vector<ArgShape> shapes;
  for (std::size_t a = 0; a < g.arity(); ++a) shapes.push_back(g.argshape(a));
  MultiLinearMap out(std::move(shapes), s.rows(), g.out_cols());
  for (std::size_t t = 0; t < g.tuple_count(); ++t) out.coeff_flat(t) = s * g.coeff_flat(t);
  return out;
}

MultiLinearMap out_postmul(const MultiLinearMap& g, const ScalarMatrix& s) {
  if (s.rows() != g.out_cols()) fail(ErrorKind::ShapeMismatch, "output postmultiplier mismatch");
  std::vector<ArgShape> shapes;
  for (std::size_t a = 0; a < g.arity(); ++a) shapes.push_back(g.argshape(a));
  MultiLinearMap out(std::move(shapes), g.out_rows(), s.cols());
  for (std::size_t t = 0; t < g.tuple_count(); ++t) out.coeff_flat(t) = g.coeff_flat(t) * s;
  return out;
}

MultiLinearMap arg_premul(const MultiLinearMap& g, std::size_t a, const ScalarMatrix& s) {
  if (s.rows() != g.argshape(a).rows)
    fail(ErrorKind::ShapeMismatch, "argument premultiplier mismatch");
  std::vector<ArgShape> shapes;
  for (std::size_t i = 0; i < g.arity(); ++i) shapes.push_back(g.argshape(i));
  shapes[a].rows = s.cols();
  MultiLinearMap out(std::move(shapes), g.out_rows(), g.out_cols());
  for (std::size_t t = 0; t < out.tuple_count(); ++t) {
    auto basis = out.decode(t);
    ScalarMatrix acc(g.out_rows(), g.out_cols());
    auto probe = basis;
    for (std::size_t u = 0; u < s.rows(); ++u) {
      if (is_zero(s.at(u, basis[a][0]))) continue;
      probe[a][0] = u;
      acc = acc + s.at(u, basis[a][0]) * g.coeff(probe);
    }
    out.coeff_flat(t) = std::move(acc);
  }
  return out;
}

MultiLinearMap arg_postmul(const MultiLinearMap& g, std::size_t a, const ScalarMatrix& s) {
  if (s.cols() != g.argshape(a).cols)
    fail(ErrorKind::ShapeMismatch, "argument postmultiplier mismatch");
  std::vector<ArgShape> shapes;
  for (std::size_t i = 0; i < g.arity(); ++i) shapes.push_back(g.argshape(i));
  shapes[a].cols = s.rows();
  MultiLinearMap out(std::move(shapes), g.out_rows(), g.out_cols());
  for (std::size_t t = 0; t < out.tuple_count(); ++t) {
    auto basis = out.decode(t);
    ScalarMatrix acc(g.out_rows(), g.out_cols());
    auto probe = basis;
    for (std::size_t v = 0; v < s.cols(); ++v) {
      if (is_zero(s.at(basis[a][1], v))) continue;
      probe[a][1] = v;
      acc = acc + s.at(basis[a][1], v) * g.coeff(probe);
    }
    out.coeff_flat(t) = std::move(acc);
  }
  return out;
}

MultiLinearMap slot_left(const ScalarMatrix& s, const MultiLinearMap& g, std::size_t j) {
  if (j > g.arity()) fail(ErrorKind::SlotOutOfRange, "slot exceeds arity");
  if (j == 0) return out_premul(s, g);
  return arg_postmul(g, j - 1, s);
}

MultiLinearMap slot_right(const MultiLinearMap& g, const ScalarMatrix& s, std::size_t j) {
  if (j > g.arity()) fail(ErrorKind::SlotOutOfRange, "slot exceeds arity");
  if (j == g.arity()) return out_postmul(g, s);
  return arg_premul(g, j, s);
}

MultiLinearMap slot_bracket(const ScalarMatrix& s, const MultiLinearMap& g, std::size_t j) {
  return slot_left(s, g, j) - slot_right(g, s, j);
}

}  // namespace ncad
