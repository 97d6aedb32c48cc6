#include "ncad/derivation.hpp"

#include <string>
#include <utility>

namespace ncad {

namespace {

std::string quad(std::size_t r, std::size_t t, std::size_t u, std::size_t v) {
  return "(" + std::to_string(r) + "," + std::to_string(t) + "," + std::to_string(u) + "," +
         std::to_string(v) + ")";
}

// Four-case commutator defect check, generic over the bracket.
template <typename V, typename Bracket>
CheckReport leibniz_core(const BasisTable<V>& d, Bracket&& bracket) {
  CheckReport rep;
  for (std::size_t r = 1; r <= d.s; ++r)
    for (std::size_t t = 1; t <= d.s; ++t)
      for (std::size_t u = 1; u <= d.s; ++u)
        for (std::size_t v = 1; v <= d.s; ++v) {
          ++rep.checked;
          V lhs = bracket(r, t, d.at(u, v)) - bracket(u, v, d.at(r, t));
          bool ok;
          if (r != v && t != u)
            ok = lhs.is_zero();
          else if (r != v)
            ok = lhs == d.at(r, v);
          else if (t != u)
            ok = lhs == -d.at(u, t);
          else
            ok = lhs == d.at(r, v) - d.at(u, t);
          if (!ok) {
            rep.ok = false;
            rep.detail = "structure equation fails at (r,s,u,v)=" + quad(r, t, u, v);
            return rep;
          }
        }
  return rep;
}

std::size_t orig_slot(std::size_t i, std::size_t j) { return i <= j ? i : i - 1; }

}  // namespace

DerivationTable derivation_table_order0(const NcOracle& f, const PointMatrix& y) {
  if (f.order != 1) fail(ErrorKind::ShapeMismatch, "source must have order one");
  if (!y.is_square()) fail(ErrorKind::ShapeMismatch, "base point must be square");
  if (f.xdims[0] != y.dim() || f.xdims[1] != y.dim() || f.zdims[0] != y.dim())
    fail(ErrorKind::DimMismatch, "source slots must match the base point tuple length");
  const std::size_t s = y.rows();
  DerivationTable table{s, {}};
  table.values.reserve(s * s);
  for (std::size_t i = 1; i <= s; ++i)
    for (std::size_t l = 1; l <= s; ++l)
      table.values.push_back(f({y, y}, {comm(matrix_unit(s, i, l), y)}));
  return table;
}

CheckReport check_leibniz(const DerivationTable& d) {
  return leibniz_core(d, [&](std::size_t i, std::size_t l, const ScalarMatrix& m) {
    ScalarMatrix e = matrix_unit(d.s, i, l);
    return e * m - m * e;
  });
}

CheckReport check_leibniz(const MapTable& d, std::size_t j) {
  return leibniz_core(d, [&](std::size_t i, std::size_t l, const MultiLinearMap& m) {
    return slot_bracket(matrix_unit(d.s, i, l), m, j);
  });
}

ScalarMatrix inner_solve(const DerivationTable& d, const Scalar& c) {
  const std::size_t s = d.s;
  for (std::size_t i = 1; i <= s; ++i) {
    const ScalarMatrix& dii = d.at(i, i);
    if (dii.rows() != s || dii.cols() != s)
      fail(ErrorKind::ShapeMismatch, "table values must be square of the base size");
    for (std::size_t k = 0; k < s; ++k)
      if (!is_zero(dii.at(k, k)))
        fail(ErrorKind::NotInner, "diagonal obstruction at value (" + std::to_string(i) + "," +
                                      std::to_string(i) + "), entry " + std::to_string(k + 1));
  }
  ScalarMatrix n(s, s);
  for (std::size_t i = 1; i <= s; ++i) {
    n = n + matrix_unit(s, i, i) * d.at(i, i) +
        matrix_unit(s, i, 1) * d.at(1, i) * matrix_unit(s, i, i);
  }
  n = n + c * ScalarMatrix::identity(s);
  for (std::size_t r = 1; r <= s; ++r)
    for (std::size_t t = 1; t <= s; ++t) {
      ScalarMatrix e = matrix_unit(s, r, t);
      if (d.at(r, t) != e * n - n * e)
        fail(ErrorKind::PostconditionFailure,
             "solution does not reproduce the table at (" + std::to_string(r) + "," +
                 std::to_string(t) + ")");
    }
  return n;
}

MapTable jD_table(const NcOracle& fj, const std::vector<PointMatrix>& ys, std::size_t j) {
  if (fj.order == 0) fail(ErrorKind::ShapeMismatch, "source must have order at least one");
  const std::size_t k = fj.order - 1;
  if (j > k) fail(ErrorKind::SlotOutOfRange, "slot exceeds source order");
  if (ys.size() != k + 1)
    fail(ErrorKind::ShapeMismatch, "expected " + std::to_string(k + 1) + " base points");
  for (std::size_t i = 0; i < ys.size(); ++i)
    if (!ys[i].is_square())
      fail(ErrorKind::ShapeMismatch, "base point " + std::to_string(i) + " must be square");
  for (std::size_t i = 0; i <= k + 1; ++i)
    if (fj.xdims[i] != ys[orig_slot(i, j)].dim())
      fail(ErrorKind::DimMismatch, "source x slot " + std::to_string(i) +
                                       " does not match the base point tuple length");
  if (fj.zdims[j] != ys[j].dim())
    fail(ErrorKind::DimMismatch, "split direction slot must match base point tuple length");

  std::vector<ArgShape> shapes;
  for (std::size_t t = 0; t < k; ++t) {
    std::size_t zdim = fj.zdims[t < j ? t : t + 1];
    shapes.push_back({ys[t].rows(), ys[t + 1].rows(), zdim});
  }
  std::vector<PointMatrix> pts;
  for (std::size_t i = 0; i <= k + 1; ++i) pts.push_back(ys[orig_slot(i, j)]);

  const std::size_t sj = ys[j].rows();
  MapTable table{sj, {}};
  table.values.reserve(sj * sj);
  for (std::size_t i = 1; i <= sj; ++i)
    for (std::size_t l = 1; l <= sj; ++l) {
      PointMatrix split = comm(matrix_unit(sj, i, l), ys[j]);
      table.values.push_back(MultiLinearMap::materialize(
          shapes, ys[0].rows(), ys[k].rows(), [&](const std::vector<PointMatrix>& args) {
            std::vector<PointMatrix> dirs = args;
            dirs.insert(dirs.begin() + static_cast<std::ptrdiff_t>(j), split);
            return fj(pts, dirs);
          }));
    }
  return table;
}

MultiLinearMap gj_assemble(const MapTable& table, std::size_t j) {
  const std::size_t s = table.s;
  MultiLinearMap g = -slot_right(table.at(1, 1), matrix_unit(s, 1, 1), j);
  for (std::size_t i = 2; i <= s; ++i)
    g = g - slot_right(table.at(i, 1), matrix_unit(s, 1, i), j);
  for (std::size_t r = 1; r <= s; ++r)
    for (std::size_t t = 1; t <= s; ++t)
      if (slot_bracket(matrix_unit(s, r, t), g, j) != table.at(r, t))
        fail(ErrorKind::PostconditionFailure,
             "assembled solution misses the table at (" + std::to_string(r) + "," +
                 std::to_string(t) + "); the source is not a slot difference here");
  return g;
}

MultiLinearMap g_combine(const std::vector<MultiLinearMap>& gs,
                         const std::vector<MapTable>& tables) {
  if (gs.empty() || gs.size() != tables.size())
    fail(ErrorKind::ShapeMismatch, "need one per-slot solution and table per slot");
  const std::size_t k = gs.size() - 1;
  std::vector<std::size_t> sizes;
  for (const MapTable& t : tables) sizes.push_back(t.s);

  MultiLinearMap g = gs[0];
  for (std::size_t l = 1; l <= k; ++l) {
    // Multi-index (i_0..i_{l-1}), each i_m running over 1..sizes[m].
    std::vector<std::size_t> idx(l, 1);
    bool more = true;
    while (more) {
      MultiLinearMap h = gs[l];
      for (std::size_t m = 1; m < l; ++m) {
        h = arg_premul(h, m - 1, matrix_unit(sizes[m - 1], 1, idx[m - 1]));
        h = arg_postmul(h, m - 1, matrix_unit(sizes[m], idx[m], 1));
      }
      h = arg_premul(h, l - 1, matrix_unit(sizes[l - 1], 1, idx[l - 1]));
      h = out_premul(matrix_unit(sizes[0], idx[0], 1), h);
      g = g + h;

      more = false;
      for (std::size_t m = l; m-- > 0;) {
        if (idx[m] < sizes[m]) {
          ++idx[m];
          more = true;
          break;
        }
        idx[m] = 1;
      }
    }
  }

  for (std::size_t j = 0; j <= k; ++j)
    for (std::size_t r = 1; r <= sizes[j]; ++r)
      for (std::size_t t = 1; t <= sizes[j]; ++t)
        if (slot_bracket(matrix_unit(sizes[j], r, t), g, j) != tables[j].at(r, t))
          fail(ErrorKind::PostconditionFailure,
               "combined solution misses slot " + std::to_string(j) + " at (" +
                   std::to_string(r) + "," + std::to_string(t) +
                   "); cross slot compatibility fails at the base points");
  return g;
}

CheckReport check_makingzero(const NcOracle& f, const PointMatrix& y, const ScalarMatrix& a,
                             const ScalarMatrix& b, const ScalarMatrix& c,
                             const Scalar& lambda) {
  if (f.order != 1) fail(ErrorKind::ShapeMismatch, "source must have order one");
  if (!y.is_square() || !b.is_square() || b.rows() != y.rows())
    fail(ErrorKind::ShapeMismatch, "middle factor must be square of the base size");
  if (a * b != lambda * a)
    fail(ErrorKind::PreconditionFailure, "left factor does not satisfy AB = lambda A");
  if (b * c != lambda * c)
    fail(ErrorKind::PreconditionFailure, "right factor does not satisfy BC = lambda C");
  ScalarMatrix value = a * f({y, y}, {comm(b, y)}) * c;
  CheckReport rep;
  rep.checked = 1;
  if (!value.is_zero()) {
    rep.ok = false;
    rep.detail = "sandwiched difference value does not vanish";
  }
  return rep;
}

}  // namespace ncad
