#include "ncad/delta.hpp"

#include <string>
#include <utility>

namespace ncad {

namespace {

void require_slot(std::size_t j, std::size_t k) {
  if (j > k)
    fail(ErrorKind::SlotOutOfRange,
         "slot " + std::to_string(j) + " exceeds order " + std::to_string(k));
}

// Position i of the split argument list (k+2 points) back to the original
// slot; positions j and j+1 both come from slot j.
std::size_t orig_slot(std::size_t i, std::size_t j) { return i <= j ? i : i - 1; }

void validate_split_args(const NcOracle& f, std::size_t j, const std::vector<PointMatrix>& points,
                         const std::vector<PointMatrix>& dirs, const PointMatrix& d) {
  const std::size_t k = f.order;
  if (points.size() != k + 2)
    fail(ErrorKind::ShapeMismatch, "expected " + std::to_string(k + 2) + " points, got " +
                                       std::to_string(points.size()));
  if (dirs.size() != k)
    fail(ErrorKind::ShapeMismatch,
         "expected " + std::to_string(k) + " directions, got " + std::to_string(dirs.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!points[i].is_square())
      fail(ErrorKind::ShapeMismatch, "point " + std::to_string(i) + " must be square");
    if (points[i].dim() != f.xdims[orig_slot(i, j)])
      fail(ErrorKind::DimMismatch, "point " + std::to_string(i) + " has wrong tuple length");
  }
  if (d.dim() != f.xdims[j])
    fail(ErrorKind::DimMismatch, "split direction has wrong tuple length");
  if (d.rows() != points[j].rows() || d.cols() != points[j + 1].rows())
    fail(ErrorKind::ShapeMismatch, "split direction must be " + std::to_string(points[j].rows()) +
                                       "x" + std::to_string(points[j + 1].rows()));
  for (std::size_t t = 0; t < dirs.size(); ++t) {
    // In the extended list the original direction t+1 sits between split
    // positions u and u+1.
    std::size_t u = t < j ? t : t + 1;
    if (dirs[t].dim() != f.zdims[t])
      fail(ErrorKind::DimMismatch, "direction " + std::to_string(t + 1) + " has wrong tuple length");
    if (dirs[t].rows() != points[u].rows() || dirs[t].cols() != points[u + 1].rows())
      fail(ErrorKind::ShapeMismatch, "direction " + std::to_string(t + 1) + " must be " +
                                         std::to_string(points[u].rows()) + "x" +
                                         std::to_string(points[u + 1].rows()));
  }
}

}  // namespace

NcPolynomial delta_sym(const NcPolynomial& q, std::size_t j) {
  validate_poly(q);
  require_slot(j, q.order());
  NcPolynomial out;
  out.xdims = q.xdims;
  out.xdims.insert(out.xdims.begin() + static_cast<std::ptrdiff_t>(j), q.xdims[j]);
  out.zdims = q.zdims;
  out.zdims.insert(out.zdims.begin() + static_cast<std::ptrdiff_t>(j), q.xdims[j]);
  for (const Monomial& m : q.terms) {
    const Word& w = m.xwords[j];
    for (std::size_t i = 0; i < w.size(); ++i) {
      Monomial t;
      t.coeff = m.coeff;
      t.xwords = m.xwords;
      t.xwords[j] = Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
      t.xwords.insert(t.xwords.begin() + static_cast<std::ptrdiff_t>(j) + 1,
                      Word(w.begin() + static_cast<std::ptrdiff_t>(i) + 1, w.end()));
      t.zletters = m.zletters;
      t.zletters.insert(t.zletters.begin() + static_cast<std::ptrdiff_t>(j), w[i]);
      out.terms.push_back(std::move(t));
    }
  }
  return canonicalize(std::move(out));
}

ScalarMatrix delta_num(const NcOracle& f, std::size_t j, const std::vector<PointMatrix>& points,
                       const std::vector<PointMatrix>& dirs, const PointMatrix& d) {
  const std::size_t k = f.order;
  require_slot(j, k);
  validate_split_args(f, j, points, dirs, d);

  std::vector<PointMatrix> call_points;
  call_points.reserve(k + 1);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i == j)
      call_points.push_back(block_upper(points[j], d, points[j + 1]));
    else if (i != j + 1)
      call_points.push_back(points[i]);
  }

  // Zero padding keeps only the split term in the sliced output block.
  std::vector<PointMatrix> call_dirs = dirs;
  if (j > 0)
    call_dirs[j - 1] = hstack(
        dirs[j - 1], PointMatrix::zero(dirs[j - 1].rows(), points[j + 1].rows(), dirs[j - 1].dim()));
  if (j < k)
    call_dirs[j] =
        vstack(PointMatrix::zero(points[j].rows(), dirs[j].cols(), dirs[j].dim()), dirs[j]);

  ScalarMatrix out = f(call_points, call_dirs);
  std::size_t r0 = 0, nr = out.rows(), c0 = 0, nc = out.cols();
  if (j == 0) nr = points[0].rows();
  if (j == k) {
    c0 = points[j].rows();
    nc = points[j + 1].rows();
  }
  return submatrix(out, r0, c0, nr, nc);
}

ScalarMatrix delta_directional(const NcOracle& f, std::size_t j, std::size_t alpha,
                               const std::vector<PointMatrix>& points,
                               const std::vector<PointMatrix>& dirs, const ScalarMatrix& a) {
  require_slot(j, f.order);
  if (alpha == 0 || alpha > f.xdims[j])
    fail(ErrorKind::ComponentOutOfRange, "component " + std::to_string(alpha) +
                                             " out of range for tuple length " +
                                             std::to_string(f.xdims[j]));
  PointMatrix d = PointMatrix::zero(a.rows(), a.cols(), f.xdims[j]);
  d.component(alpha - 1) = a;
  return delta_num(f, j, points, dirs, d);
}

NcOracle delta_oracle(const NcOracle& f, std::size_t j) {
  require_slot(j, f.order);
  NcOracle out;
  out.order = f.order + 1;
  out.xdims = f.xdims;
  out.xdims.insert(out.xdims.begin() + static_cast<std::ptrdiff_t>(j), f.xdims[j]);
  out.zdims = f.zdims;
  out.zdims.insert(out.zdims.begin() + static_cast<std::ptrdiff_t>(j), f.xdims[j]);
  out.evaluator = [f, j](const std::vector<PointMatrix>& points,
                         const std::vector<PointMatrix>& dirs) {
    if (dirs.size() != f.order + 1)
      fail(ErrorKind::ShapeMismatch,
           "expected " + std::to_string(f.order + 1) + " directions, got " +
               std::to_string(dirs.size()));
    std::vector<PointMatrix> rest;
    rest.reserve(f.order);
    for (std::size_t t = 0; t < dirs.size(); ++t)
      if (t != j) rest.push_back(dirs[t]);
    return delta_num(f, j, points, rest, dirs[j]);
  };
  return out;
}

CheckReport check_delta_commutation(const NcPolynomial& g, std::size_t i, std::size_t j) {
  const std::size_t k = g.order();
  if (i > j) fail(ErrorKind::SlotOutOfRange, "need i <= j");
  require_slot(j, k);
  NcPolynomial lhs = delta_sym(delta_sym(g, i), j + 1);
  NcPolynomial rhs = delta_sym(delta_sym(g, j), i);
  CheckReport report;
  report.checked = 1;
  if (lhs != rhs) {
    report.ok = false;
    report.detail = "difference-differentials at slots " + std::to_string(i) + " and " +
                    std::to_string(j) + " do not commute";
  }
  return report;
}

}  // namespace ncad
