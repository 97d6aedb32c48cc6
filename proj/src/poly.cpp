#include "ncad/poly.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace ncad {

namespace {

std::size_t total_degree(const Monomial& m) {
  std::size_t deg = 0;
  for (const Word& w : m.xwords) deg += w.size();
  return deg;
}

bool same_key(const Monomial& a, const Monomial& b) {
  return a.xwords == b.xwords && a.zletters == b.zletters;
}

ScalarMatrix word_eval(const PointMatrix& x, const Word& w) {
  ScalarMatrix acc = ScalarMatrix::identity(x.rows());
  for (std::size_t letter : w) acc = acc * x.component(letter - 1);
  return acc;
}

}  // namespace

bool monomial_key_less(const Monomial& a, const Monomial& b) {
  std::size_t da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  for (std::size_t j = 0; j < a.xwords.size(); ++j) {
    if (j > 0) {
      if (a.zletters[j - 1] != b.zletters[j - 1]) return a.zletters[j - 1] < b.zletters[j - 1];
    }
    if (a.xwords[j] != b.xwords[j]) return a.xwords[j] < b.xwords[j];
  }
  return false;
}

NcPolynomial zero_poly(std::vector<std::size_t> xdims, std::vector<std::size_t> zdims) {
  NcPolynomial p{std::move(xdims), std::move(zdims), {}};
  validate_poly(p);
  return p;
}

void validate_poly(const NcPolynomial& p) {
  if (p.xdims.empty()) fail(ErrorKind::ShapeMismatch, "polynomial needs at least one x slot");
  if (p.zdims.size() + 1 != p.xdims.size())
    fail(ErrorKind::ShapeMismatch, "expected one direction slot less than x slots");
  for (std::size_t d : p.xdims)
    if (d == 0) fail(ErrorKind::DimMismatch, "x slot dimension must be positive");
  for (std::size_t d : p.zdims)
    if (d == 0) fail(ErrorKind::DimMismatch, "direction slot dimension must be positive");
  for (const Monomial& m : p.terms) {
    if (m.xwords.size() != p.xdims.size())
      fail(ErrorKind::ShapeMismatch, "monomial has wrong number of x words");
    if (m.zletters.size() != p.zdims.size())
      fail(ErrorKind::ShapeMismatch, "monomial has wrong number of direction letters");
    for (std::size_t j = 0; j < m.xwords.size(); ++j)
      for (std::size_t letter : m.xwords[j])
        if (letter == 0 || letter > p.xdims[j])
          fail(ErrorKind::DimMismatch,
               "x letter " + std::to_string(letter) + " out of range for slot " + std::to_string(j));
    for (std::size_t j = 0; j < m.zletters.size(); ++j)
      if (m.zletters[j] == 0 || m.zletters[j] > p.zdims[j])
        fail(ErrorKind::DimMismatch, "direction letter " + std::to_string(m.zletters[j]) +
                                         " out of range for slot " + std::to_string(j + 1));
  }
}

NcPolynomial canonicalize(NcPolynomial p) {
  validate_poly(p);
  std::sort(p.terms.begin(), p.terms.end(), monomial_key_less);
  std::vector<Monomial> merged;
  for (Monomial& term : p.terms) {
    if (!merged.empty() && same_key(merged.back(), term))
      merged.back().coeff += term.coeff;
    else
      merged.push_back(std::move(term));
  }
  std::erase_if(merged, [](const Monomial& m) { return is_zero(m.coeff); });
  p.terms = std::move(merged);
  return p;
}

NcPolynomial add(const NcPolynomial& a, const NcPolynomial& b) {
  if (a.xdims != b.xdims || a.zdims != b.zdims)
    fail(ErrorKind::OrderMismatch, "cannot add polynomials with different slot dimensions");
  NcPolynomial sum = a;
  sum.terms.insert(sum.terms.end(), b.terms.begin(), b.terms.end());
  return canonicalize(std::move(sum));
}

NcPolynomial scale(const Scalar& c, NcPolynomial p) {
  for (Monomial& m : p.terms) m.coeff *= c;
  return canonicalize(std::move(p));
}

ScalarMatrix eval_poly(const NcPolynomial& p, const std::vector<PointMatrix>& points,
                       const std::vector<PointMatrix>& dirs) {
  validate_poly(p);
  const std::size_t k = p.order();
  if (points.size() != k + 1)
    fail(ErrorKind::ShapeMismatch, "expected " + std::to_string(k + 1) + " points");
  if (dirs.size() != k) fail(ErrorKind::ShapeMismatch, "expected " + std::to_string(k) + " directions");
  for (std::size_t j = 0; j <= k; ++j) {
    if (!points[j].is_square())
      fail(ErrorKind::ShapeMismatch, "point " + std::to_string(j) + " must be square");
    if (points[j].dim() != p.xdims[j])
      fail(ErrorKind::DimMismatch, "point " + std::to_string(j) + " has tuple length " +
                                       std::to_string(points[j].dim()) + ", expected " +
                                       std::to_string(p.xdims[j]));
  }
  for (std::size_t j = 0; j < k; ++j) {
    if (dirs[j].dim() != p.zdims[j])
      fail(ErrorKind::DimMismatch, "direction " + std::to_string(j + 1) + " has tuple length " +
                                       std::to_string(dirs[j].dim()) + ", expected " +
                                       std::to_string(p.zdims[j]));
    if (dirs[j].rows() != points[j].rows() || dirs[j].cols() != points[j + 1].rows())
      fail(ErrorKind::ShapeMismatch, "direction " + std::to_string(j + 1) + " must be " +
                                         std::to_string(points[j].rows()) + "x" +
                                         std::to_string(points[j + 1].rows()));
  }

  ScalarMatrix result(points[0].rows(), points[k].rows());
  for (const Monomial& m : p.terms) {
    ScalarMatrix acc = word_eval(points[0], m.xwords[0]);
    for (std::size_t j = 0; j < k; ++j) {
      acc = acc * dirs[j].component(m.zletters[j] - 1);
      acc = acc * word_eval(points[j + 1], m.xwords[j + 1]);
    }
    result = result + m.coeff * acc;
  }
  return result;
}

}  // namespace ncad
