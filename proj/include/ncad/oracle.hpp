#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "ncad/poly.hpp"

namespace ncad {

/// Black-box higher order function: evaluable at matrix points of every size
/// but otherwise opaque. Shapes follow eval_poly: order k means k+1 square
/// point tuples (lengths xdims) and k rectangular direction tuples (zdims).
struct NcOracle {
  std::size_t order = 0;
  std::vector<std::size_t> xdims;
  std::vector<std::size_t> zdims;
  std::function<ScalarMatrix(const std::vector<PointMatrix>&, const std::vector<PointMatrix>&)>
      evaluator;

  ScalarMatrix operator()(const std::vector<PointMatrix>& points,
                          const std::vector<PointMatrix>& dirs) const {
    return evaluator(points, dirs);
  }
};

inline NcOracle oracle_from_poly(NcPolynomial p) {
  validate_poly(p);
  NcOracle o{p.order(), p.xdims, p.zdims, {}};
  o.evaluator = [poly = std::move(p)](const std::vector<PointMatrix>& points,
                                      const std::vector<PointMatrix>& dirs) {
    return eval_poly(poly, points, dirs);
  };
  return o;
}

}  // namespace ncad
