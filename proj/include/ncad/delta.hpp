#pragma once

#include "ncad/oracle.hpp"

namespace ncad {

/// Symbolic difference-differential at slot j: every monomial splits its
/// slot-j word at each position, the split letter becomes a new direction
/// letter between slots j and j+1. Raises the order by one; the new
/// direction slot has the same alphabet as x slot j.
NcPolynomial delta_sym(const NcPolynomial& q, std::size_t j);

/// Numeric difference-differential of a black-box function. points holds
/// k+2 square tuples (slot j appears twice, sizes n and m); dirs holds the
/// k original directions; d is the inserted n x m direction. Computed from
/// one evaluation of f at the slot-j upper block point, with the adjacent
/// direction blocks zero-padded so the output block is the split term alone.
ScalarMatrix delta_num(const NcOracle& f, std::size_t j, const std::vector<PointMatrix>& points,
                       const std::vector<PointMatrix>& dirs, const PointMatrix& d);

/// delta_num along the single component alpha (1-based): the inserted
/// direction is a at component alpha, zero elsewhere.
ScalarMatrix delta_directional(const NcOracle& f, std::size_t j, std::size_t alpha,
                               const std::vector<PointMatrix>& points,
                               const std::vector<PointMatrix>& dirs, const ScalarMatrix& a);

/// Wraps delta_num as an order k+1 oracle; its direction list carries the
/// inserted direction at index j.
NcOracle delta_oracle(const NcOracle& f, std::size_t j);

/// Verifies the exact symbolic identity: applying slot i then slot j+1
/// equals applying slot j then slot i, for 0 <= i <= j <= order(g).
CheckReport check_delta_commutation(const NcPolynomial& g, std::size_t i, std::size_t j);

}  // namespace ncad
