#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ncad/oracle.hpp"
#include "ncad/poly.hpp"
#include "ncad/rng.hpp"

namespace ncad {

/// Canonical random polynomial: term_count draws of monomials with total
/// x-degree at most max_degree, nonzero coefficients. Cancellation during
/// canonicalization may leave fewer terms.
NcPolynomial random_poly(std::vector<std::size_t> xdims, std::vector<std::size_t> zdims,
                         std::size_t max_degree, std::size_t term_count, Rng& rng);

/// Exercises the defining axioms of an order-k function slot by slot on
/// random data, all exactly: direct sums (with split directions), similarity
/// by a random invertible, and the one-sided intertwining along the column
/// injection into a block upper extension. Every function built from
/// polynomial evaluation passes; the report carries a witness otherwise.
CheckReport check_respects_structure(const NcOracle& f, std::size_t rounds, Rng& rng);

/// Entrywise square of the point, summed over components. Respects direct
/// sums but not similarities: the canonical non-example for
/// check_respects_structure.
NcOracle entrywise_square_oracle(std::size_t dim);

struct SelftestRow {
  std::string name;
  CheckReport report;
};

/// Deterministic cross-module property suite; every row must come back ok.
std::vector<SelftestRow> run_selftest(std::uint64_t seed);

}  // namespace ncad
