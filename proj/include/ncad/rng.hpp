#pragma once

#include <cstdint>
#include <utility>

#include "ncad/matrix.hpp"
#include "ncad/scalar.hpp"

namespace ncad {

/// Seed and entry bounds for reproducible generation. The same spec yields
/// the same sequence on every platform (no std distributions involved).
struct RngSpec {
  std::uint64_t seed = 0;
  long num_lo = -3;      // inclusive numerator range
  long num_hi = 3;
  unsigned long den_hi = 2;  // denominators drawn from 1..den_hi
};

class Rng {
 public:
  explicit Rng(RngSpec spec);
  explicit Rng(std::uint64_t seed) : Rng(RngSpec{seed}) {}

  std::uint64_t next_u64();
  /// Uniform draw from the inclusive range [lo, hi].
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);

  Scalar scalar();
  Scalar nonzero_scalar();
  ScalarMatrix matrix(std::size_t rows, std::size_t cols);
  PointMatrix point(std::size_t rows, std::size_t cols, std::size_t dim);

  const RngSpec& spec() const { return spec_; }

 private:
  RngSpec spec_;
  std::uint64_t state_[4];
};

/// Invertible S with its exact inverse, built from unit-pivot row operations
/// (shears, swaps, sign flips), so S * inverse == I holds exactly.
std::pair<ScalarMatrix, ScalarMatrix> random_invertible(std::size_t n, Rng& rng);

/// P with P * P == P, conjugated from a random 0/1 diagonal.
ScalarMatrix random_idempotent(std::size_t n, Rng& rng);

}  // namespace ncad
