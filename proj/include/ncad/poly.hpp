#pragma once

#include <cstddef>
#include <vector>

#include "ncad/matrix.hpp"

namespace ncad {

/// Word over a matrix-tuple alphabet; letters are 1-based component indices.
using Word = std::vector<std::size_t>;

/// coeff * x^{w_0} z_{v_1} x^{w_1} ... z_{v_k} x^{w_k}.
/// xwords has k+1 entries, zletters has k entries (1-based component indices).
struct Monomial {
  Scalar coeff;
  std::vector<Word> xwords;
  std::vector<std::size_t> zletters;

  bool operator==(const Monomial&) const = default;
};

/// Polynomial of order k = xdims.size() - 1. Slot j arguments range over
/// square matrix tuples of length xdims[j]; direction slot j (1-based) over
/// rectangular matrix tuples of length zdims[j-1].
struct NcPolynomial {
  std::vector<std::size_t> xdims;
  std::vector<std::size_t> zdims;
  std::vector<Monomial> terms;

  std::size_t order() const { return xdims.size() - 1; }
  bool operator==(const NcPolynomial&) const = default;
};

NcPolynomial zero_poly(std::vector<std::size_t> xdims, std::vector<std::size_t> zdims);

/// Checks slot counts and 1-based letter ranges of every monomial.
void validate_poly(const NcPolynomial& p);

/// Sorts terms (total x-degree, then the flattened letter sequence
/// w_0, v_1, w_1, ..., v_k, w_k lexicographically), merges equal keys,
/// and drops zero coefficients. Idempotent.
NcPolynomial canonicalize(NcPolynomial p);

/// Both summands must share xdims and zdims.
NcPolynomial add(const NcPolynomial& a, const NcPolynomial& b);

NcPolynomial scale(const Scalar& c, NcPolynomial p);

/// Evaluates at points (one square tuple per slot, sizes n_0..n_k) and
/// directions (n_{j-1} x n_j tuples). Result is n_0 x n_k.
ScalarMatrix eval_poly(const NcPolynomial& p, const std::vector<PointMatrix>& points,
                       const std::vector<PointMatrix>& dirs);

/// True before-or-equal ordering used by canonicalize; exposed for tests.
bool monomial_key_less(const Monomial& a, const Monomial& b);

}  // namespace ncad
