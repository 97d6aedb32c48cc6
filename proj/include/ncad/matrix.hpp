#pragma once

#include <cstddef>
#include <vector>

#include "ncad/errors.hpp"
#include "ncad/scalar.hpp"

namespace ncad {

/// Dense row-major matrix of exact rationals. Values are immutable in spirit:
/// every operation returns a fresh matrix, entries are only written through
/// at() while a value is being assembled.
class ScalarMatrix {
 public:
  ScalarMatrix() = default;
  ScalarMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}

  static ScalarMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  /// 0-based, range-checked access.
  Scalar& at(std::size_t r, std::size_t c);
  const Scalar& at(std::size_t r, std::size_t c) const;

  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }

  bool operator==(const ScalarMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> entries_;
};

ScalarMatrix operator+(const ScalarMatrix& a, const ScalarMatrix& b);
ScalarMatrix operator-(const ScalarMatrix& a, const ScalarMatrix& b);
ScalarMatrix operator-(const ScalarMatrix& a);
ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b);
ScalarMatrix operator*(const Scalar& c, const ScalarMatrix& a);

/// n-by-n matrix with a single 1 in (1-based) position (i, j).
ScalarMatrix matrix_unit(std::size_t n, std::size_t i, std::size_t j);

/// Block `rows x cols` window of m starting at (0-based) (r0, c0).
ScalarMatrix submatrix(const ScalarMatrix& m, std::size_t r0, std::size_t c0,
                       std::size_t rows, std::size_t cols);

ScalarMatrix hstack(const ScalarMatrix& a, const ScalarMatrix& b);
ScalarMatrix vstack(const ScalarMatrix& a, const ScalarMatrix& b);

/// Block-diagonal amplification I_m (x) Y.
ScalarMatrix kron_identity(std::size_t m, const ScalarMatrix& Y);

ScalarMatrix scalar_matrix(const Scalar& c, std::size_t n);  // c * I_n

/// A matrix point over R^d: d same-shaped rational matrices, one per
/// coordinate of the module. All componentwise structure (sums, blocks,
/// multiplication by coefficient matrices) lives here.
class PointMatrix {
 public:
  PointMatrix() = default;
  explicit PointMatrix(std::vector<ScalarMatrix> components);

  static PointMatrix zero(std::size_t rows, std::size_t cols, std::size_t dim);

  std::size_t dim() const { return components_.size(); }
  std::size_t rows() const { return components_.empty() ? 0 : components_[0].rows(); }
  std::size_t cols() const { return components_.empty() ? 0 : components_[0].cols(); }
  bool is_square() const { return rows() == cols(); }
  bool is_zero() const;

  /// 0-based component access.
  ScalarMatrix& component(std::size_t alpha);
  const ScalarMatrix& component(std::size_t alpha) const;

  bool operator==(const PointMatrix&) const = default;

 private:
  std::vector<ScalarMatrix> components_;
};

PointMatrix operator+(const PointMatrix& a, const PointMatrix& b);
PointMatrix operator-(const PointMatrix& a, const PointMatrix& b);
PointMatrix operator-(const PointMatrix& a);
PointMatrix operator*(const Scalar& c, const PointMatrix& a);
PointMatrix operator*(const ScalarMatrix& s, const PointMatrix& a);  // componentwise s * a
PointMatrix operator*(const PointMatrix& a, const ScalarMatrix& s);  // componentwise a * s

/// Componentwise commutator s * a - a * s; requires square shapes.
PointMatrix comm(const ScalarMatrix& s, const PointMatrix& a);

PointMatrix kron_identity(std::size_t m, const PointMatrix& Y);

/// Componentwise block upper triangular point [[X, Z], [0, W]].
/// X is n x n, W is m x m, Z is n x m, all with equal dim.
PointMatrix block_upper(const PointMatrix& X, const PointMatrix& Z, const PointMatrix& W);

PointMatrix direct_sum(const PointMatrix& X, const PointMatrix& W);

PointMatrix hstack(const PointMatrix& a, const PointMatrix& b);
PointMatrix vstack(const PointMatrix& a, const PointMatrix& b);
PointMatrix submatrix(const PointMatrix& p, std::size_t r0, std::size_t c0,
                      std::size_t rows, std::size_t cols);

}  // namespace ncad
