#pragma once

#include <utility>

#include "ncad/multilinear.hpp"
#include "ncad/oracle.hpp"

namespace ncad {

/// Complete s x s grid of values on matrix units, D(E_il) at entry (i, l).
template <typename V>
struct BasisTable {
  std::size_t s = 0;
  std::vector<V> values;  // row-major, (i-1)*s + (l-1)

  const V& at(std::size_t i, std::size_t l) const {
    if (i == 0 || i > s || l == 0 || l > s)
      fail(ErrorKind::IndexOutOfRange, "table index out of range");
    return values[(i - 1) * s + (l - 1)];
  }
  V& at(std::size_t i, std::size_t l) {
    return const_cast<V&>(std::as_const(*this).at(i, l));
  }
  bool operator==(const BasisTable&) const = default;
};

using DerivationTable = BasisTable<ScalarMatrix>;
using MapTable = BasisTable<MultiLinearMap>;

/// D(E_il) = F(Y,Y)(E_il Y - Y E_il) for a first order source F at a square
/// base point Y.
DerivationTable derivation_table_order0(const NcOracle& f, const PointMatrix& y);

/// Verifies the four-case structure equations of the commutator defect
/// E_rt D(E_uv) - D(E_uv) E_rt + D(E_rt) E_uv - E_uv D(E_rt) on all index
/// quadruples. Every table coming from a first order nc function passes.
CheckReport check_leibniz(const DerivationTable& d);
/// Same equations with products taken in the slot-j module actions.
CheckReport check_leibniz(const MapTable& d, std::size_t j);

/// Solves D(S) = SN - NS for N, normalized by adding c*I. Requires vanishing
/// diagonal entries of the diagonal values (NotInner otherwise) and verifies
/// the defining identity on the whole basis before returning.
ScalarMatrix inner_solve(const DerivationTable& d, const Scalar& c = Scalar(0));

/// Table of the maps (Z^1..Z^k) -> F_j(Y^0,..,Y^j,Y^j,..,Y^k)(Z^1..Z^j,
/// E_il Y^j - Y^j E_il, Z^{j+1}..Z^k), materialized densely. F_j has order
/// k+1; ys holds the k+1 base points.
MapTable jD_table(const NcOracle& fj, const std::vector<PointMatrix>& ys, std::size_t j);

/// g_j = -sum_i table(i,1) . E_1i (slot-j right action). Postcondition
/// [S, g_j] = table(S) on the basis; failure means the source is not a
/// slot-j difference at this base point.
MultiLinearMap gj_assemble(const MapTable& table, std::size_t j);

/// Combines per-slot solutions g_0..g_k into one g satisfying all k+1
/// bracket identities [R_j, g] = jD(R_j), which are verified against the
/// given tables on every basis matrix before returning.
MultiLinearMap g_combine(const std::vector<MultiLinearMap>& gs,
                         const std::vector<MapTable>& tables);

/// Checks A F(Y,Y)(BY - YB) C = 0, valid whenever AB = lambda A and
/// BC = lambda C (validated first; A and C may be rectangular).
CheckReport check_makingzero(const NcOracle& f, const PointMatrix& y, const ScalarMatrix& a,
                             const ScalarMatrix& b, const ScalarMatrix& c, const Scalar& lambda);

}  // namespace ncad
