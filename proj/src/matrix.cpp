#include "ncad/matrix.hpp"

#include <string>

namespace ncad {

namespace {

std::string shape_str(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

void require_same_shape(const ScalarMatrix& a, const ScalarMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorKind::ShapeMismatch, std::string(op) + ": " + shape_str(a.rows(), a.cols()) +
                                       " vs " + shape_str(b.rows(), b.cols()));
}

}  // namespace

ScalarMatrix ScalarMatrix::identity(std::size_t n) {
  ScalarMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Scalar& ScalarMatrix::at(std::size_t r, std::size_t c) {
  if (r >= rows_ || c >= cols_)
    fail(ErrorKind::IndexOutOfRange, "entry (" + std::to_string(r) + "," + std::to_string(c) +
                                         ") of a " + shape_str(rows_, cols_) + " matrix");
  return entries_[r * cols_ + c];
}

const Scalar& ScalarMatrix::at(std::size_t r, std::size_t c) const {
  return const_cast<ScalarMatrix*>(this)->at(r, c);
}

bool ScalarMatrix::is_zero() const {
  for (const Scalar& e : entries_)
    if (!ncad::is_zero(e)) return false;
  return true;
}

ScalarMatrix operator+(const ScalarMatrix& a, const ScalarMatrix& b) {
  require_same_shape(a, b, "matrix sum");
  ScalarMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out.at(r, c) = a.at(r, c) + b.at(r, c);
  return out;
}

ScalarMatrix operator-(const ScalarMatrix& a, const ScalarMatrix& b) {
  require_same_shape(a, b, "matrix difference");
  ScalarMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out.at(r, c) = a.at(r, c) - b.at(r, c);
  return out;
}

ScalarMatrix operator-(const ScalarMatrix& a) {
  ScalarMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out.at(r, c) = -a.at(r, c);
  return out;
}

ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b) {
  if (a.cols() != b.rows())
    fail(ErrorKind::ShapeMismatch, "matrix product: " + shape_str(a.rows(), a.cols()) + " times " +
                                       shape_str(b.rows(), b.cols()));
  ScalarMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Scalar& ark = a.at(r, k);
      if (is_zero(ark)) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out.at(r, c) += ark * b.at(k, c);
    }
  return out;
}

ScalarMatrix operator*(const Scalar& c, const ScalarMatrix& a) {
  ScalarMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(r, j) = c * a.at(r, j);
  return out;
}

ScalarMatrix matrix_unit(std::size_t n, std::size_t i, std::size_t j) {
  if (i < 1 || i > n || j < 1 || j > n)
    fail(ErrorKind::IndexOutOfRange, "matrix unit (" + std::to_string(i) + "," +
                                         std::to_string(j) + ") of size " + std::to_string(n));
  ScalarMatrix m(n, n);
  m.at(i - 1, j - 1) = 1;
  return m;
}

ScalarMatrix submatrix(const ScalarMatrix& m, std::size_t r0, std::size_t c0,
                       std::size_t rows, std::size_t cols) {
  if (r0 + rows > m.rows() || c0 + cols > m.cols())
    fail(ErrorKind::IndexOutOfRange, "submatrix " + shape_str(rows, cols) + " at (" +
                                         std::to_string(r0) + "," + std::to_string(c0) +
                                         ") of a " + shape_str(m.rows(), m.cols()) + " matrix");
  ScalarMatrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) out.at(r, c) = m.at(r0 + r, c0 + c);
  return out;
}

ScalarMatrix hstack(const ScalarMatrix& a, const ScalarMatrix& b) {
  if (a.rows() != b.rows())
    fail(ErrorKind::ShapeMismatch, "hstack: " + shape_str(a.rows(), a.cols()) + " with " +
                                       shape_str(b.rows(), b.cols()));
  ScalarMatrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out.at(r, c) = a.at(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) out.at(r, a.cols() + c) = b.at(r, c);
  }
  return out;
}

ScalarMatrix vstack(const ScalarMatrix& a, const ScalarMatrix& b) {
  if (a.cols() != b.cols())
    fail(ErrorKind::ShapeMismatch, "vstack: " + shape_str(a.rows(), a.cols()) + " with " +
                                       shape_str(b.rows(), b.cols()));
  ScalarMatrix out(a.rows() + b.rows(), a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c) {
    for (std::size_t r = 0; r < a.rows(); ++r) out.at(r, c) = a.at(r, c);
    for (std::size_t r = 0; r < b.rows(); ++r) out.at(a.rows() + r, c) = b.at(r, c);
  }
  return out;
}

ScalarMatrix kron_identity(std::size_t m, const ScalarMatrix& Y) {
  ScalarMatrix out(m * Y.rows(), m * Y.cols());
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t r = 0; r < Y.rows(); ++r)
      for (std::size_t c = 0; c < Y.cols(); ++c)
        out.at(p * Y.rows() + r, p * Y.cols() + c) = Y.at(r, c);
  return out;
}

ScalarMatrix scalar_matrix(const Scalar& c, std::size_t n) {
  ScalarMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = c;
  return m;
}

PointMatrix::PointMatrix(std::vector<ScalarMatrix> components)
    : components_(std::move(components)) {
  if (components_.empty()) fail(ErrorKind::DimMismatch, "point needs at least one component");
  for (const ScalarMatrix& comp : components_)
    if (comp.rows() != components_[0].rows() || comp.cols() != components_[0].cols())
      fail(ErrorKind::ShapeMismatch, "point components must share one shape");
}

PointMatrix PointMatrix::zero(std::size_t rows, std::size_t cols, std::size_t dim) {
  if (dim == 0) fail(ErrorKind::DimMismatch, "point needs at least one component");
  return PointMatrix(std::vector<ScalarMatrix>(dim, ScalarMatrix(rows, cols)));
}

bool PointMatrix::is_zero() const {
  for (const ScalarMatrix& comp : components_)
    if (!comp.is_zero()) return false;
  return true;
}

ScalarMatrix& PointMatrix::component(std::size_t alpha) {
  if (alpha >= components_.size())
    fail(ErrorKind::ComponentOutOfRange, "component " + std::to_string(alpha) + " of a dim-" +
                                             std::to_string(components_.size()) + " point");
  return components_[alpha];
}

const ScalarMatrix& PointMatrix::component(std::size_t alpha) const {
  return const_cast<PointMatrix*>(this)->component(alpha);
}

namespace {

void require_same_dim(const PointMatrix& a, const PointMatrix& b, const char* op) {
  if (a.dim() != b.dim())
    fail(ErrorKind::DimMismatch, std::string(op) + ": dim " + std::to_string(a.dim()) + " vs " +
                                     std::to_string(b.dim()));
}

template <typename Fn>
PointMatrix componentwise(std::size_t dim, Fn&& fn) {
  std::vector<ScalarMatrix> comps;
  comps.reserve(dim);
  for (std::size_t alpha = 0; alpha < dim; ++alpha) comps.push_back(fn(alpha));
  return PointMatrix(std::move(comps));
}

}  // namespace

PointMatrix operator+(const PointMatrix& a, const PointMatrix& b) {
  require_same_dim(a, b, "point sum");
  return componentwise(a.dim(), [&](std::size_t i) { return a.component(i) + b.component(i); });
}

PointMatrix operator-(const PointMatrix& a, const PointMatrix& b) {
  require_same_dim(a, b, "point difference");
  return componentwise(a.dim(), [&](std::size_t i) { return a.component(i) - b.component(i); });
}

PointMatrix operator-(const PointMatrix& a) {
  return componentwise(a.dim(), [&](std::size_t i) { return -a.component(i); });
}

PointMatrix operator*(const Scalar& c, const PointMatrix& a) {
  return componentwise(a.dim(), [&](std::size_t i) { return c * a.component(i); });
}

PointMatrix operator*(const ScalarMatrix& s, const PointMatrix& a) {
  return componentwise(a.dim(), [&](std::size_t i) { return s * a.component(i); });
}

PointMatrix operator*(const PointMatrix& a, const ScalarMatrix& s) {
  return componentwise(a.dim(), [&](std::size_t i) { return a.component(i) * s; });
}

PointMatrix comm(const ScalarMatrix& s, const PointMatrix& a) { return s * a - a * s; }

PointMatrix kron_identity(std::size_t m, const PointMatrix& Y) {
  if (m == 0) fail(ErrorKind::IndexOutOfRange, "amplification multiplicity must be positive");
  return componentwise(Y.dim(), [&](std::size_t i) { return kron_identity(m, Y.component(i)); });
}

PointMatrix block_upper(const PointMatrix& X, const PointMatrix& Z, const PointMatrix& W) {
  require_same_dim(X, Z, "block upper");
  require_same_dim(X, W, "block upper");
  if (!X.is_square() || !W.is_square())
    fail(ErrorKind::ShapeMismatch, "block upper needs square diagonal blocks");
  if (Z.rows() != X.rows() || Z.cols() != W.cols())
    fail(ErrorKind::ShapeMismatch,
         "block upper off-diagonal must be " + shape_str(X.rows(), W.cols()) + ", got " +
             shape_str(Z.rows(), Z.cols()));
  return componentwise(X.dim(), [&](std::size_t i) {
    const ScalarMatrix zero_block(W.rows(), X.cols());
    return vstack(hstack(X.component(i), Z.component(i)), hstack(zero_block, W.component(i)));
  });
}

PointMatrix direct_sum(const PointMatrix& X, const PointMatrix& W) {
  require_same_dim(X, W, "direct_sum");
  return componentwise(X.dim(), [&](std::size_t i) {
    const ScalarMatrix& a = X.component(i);
    const ScalarMatrix& b = W.component(i);
    ScalarMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (std::size_t c = 0; c < a.cols(); ++c) out.at(r, c) = a.at(r, c);
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) out.at(a.rows() + r, a.cols() + c) = b.at(r, c);
    return out;
  });
}

PointMatrix hstack(const PointMatrix& a, const PointMatrix& b) {
  require_same_dim(a, b, "hstack");
  return componentwise(a.dim(), [&](std::size_t i) { return hstack(a.component(i), b.component(i)); });
}

PointMatrix vstack(const PointMatrix& a, const PointMatrix& b) {
  require_same_dim(a, b, "vstack");
  return componentwise(a.dim(), [&](std::size_t i) { return vstack(a.component(i), b.component(i)); });
}

PointMatrix submatrix(const PointMatrix& p, std::size_t r0, std::size_t c0,
                      std::size_t rows, std::size_t cols) {
  return componentwise(p.dim(),
                       [&](std::size_t i) { return submatrix(p.component(i), r0, c0, rows, cols); });
}

}  // namespace ncad
