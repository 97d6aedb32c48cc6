#include "ncad/rng.hpp"

namespace ncad {

namespace {

// splitmix64, used to spread the seed over the xoshiro state.
std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

}  // namespace

Rng::Rng(RngSpec spec) : spec_(spec) {
  std::uint64_t s = spec.seed;
  for (auto& word : state_) word = splitmix64(s);
}

// xoshiro256**; fixed algorithm keeps sequences identical across toolchains.
std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

std::uint64_t Rng::uniform(std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo + 1;  // hi >= lo assumed; span 0 means the full range
  if (span == 0) return next_u64();
  // Rejection keeps the draw exactly uniform.
  const std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % span);
  std::uint64_t v = next_u64();
  while (v >= limit) v = next_u64();
  return lo + v % span;
}

Scalar Rng::scalar() {
  const long num = spec_.num_lo +
                   static_cast<long>(uniform(0, static_cast<std::uint64_t>(spec_.num_hi - spec_.num_lo)));
  const unsigned long den = static_cast<unsigned long>(uniform(1, spec_.den_hi));
  Scalar value(num, den);
  value.canonicalize();
  return value;
}

Scalar Rng::nonzero_scalar() {
  Scalar value = scalar();
  while (is_zero(value)) value = scalar();
  return value;
}

ScalarMatrix Rng::matrix(std::size_t rows, std::size_t cols) {
  ScalarMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = scalar();
  return m;
}

PointMatrix Rng::point(std::size_t rows, std::size_t cols, std::size_t dim) {
  std::vector<ScalarMatrix> comps;
  comps.reserve(dim);
  for (std::size_t alpha = 0; alpha < dim; ++alpha) comps.push_back(matrix(rows, cols));
  return PointMatrix(std::move(comps));
}

std::pair<ScalarMatrix, ScalarMatrix> random_invertible(std::size_t n, Rng& rng) {
  ScalarMatrix s = ScalarMatrix::identity(n);
  ScalarMatrix inv = ScalarMatrix::identity(n);
  if (n == 1) return {s, inv};
  const std::size_t ops = 2 * n + rng.uniform(0, 2);
  for (std::size_t t = 0; t < ops; ++t) {
    std::size_t i = rng.uniform(0, n - 1);
    std::size_t j = rng.uniform(0, n - 2);
    if (j >= i) ++j;  // i != j
    switch (rng.uniform(0, 2)) {
      case 0: {  // shear: row_i += c * row_j; inverse accumulates the opposite shear
        Scalar c = rng.nonzero_scalar();
        ScalarMatrix e = ScalarMatrix::identity(n);
        e.at(i, j) = c;
        ScalarMatrix einv = ScalarMatrix::identity(n);
        einv.at(i, j) = -c;
        s = e * s;
        inv = inv * einv;
        break;
      }
      case 1: {  // swap rows i and j
        ScalarMatrix e = ScalarMatrix::identity(n);
        e.at(i, i) = 0;
        e.at(j, j) = 0;
        e.at(i, j) = 1;
        e.at(j, i) = 1;
        s = e * s;
        inv = inv * e;
        break;
      }
      default: {  // flip the sign of row i
        ScalarMatrix e = ScalarMatrix::identity(n);
        e.at(i, i) = -1;
        s = e * s;
        inv = inv * e;
        break;
      }
    }
  }
  return {s, inv};
}

ScalarMatrix random_idempotent(std::size_t n, Rng& rng) {
  auto [s, inv] = random_invertible(n, rng);
  ScalarMatrix diag(n, n);
  for (std::size_t i = 0; i < n; ++i) diag.at(i, i) = rng.uniform(0, 1);
  return s * diag * inv;
}

}  // namespace ncad
