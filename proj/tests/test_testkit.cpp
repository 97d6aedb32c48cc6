#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncad/testkit.hpp"

using namespace ncad;

namespace {

NcOracle trace_oracle() {
  // tr(X) * I spreads mass across both summands of a direct sum, so it is
  // not a function of the calculus despite being similarity invariant.
  NcOracle o{0, {1}, {}, {}};
  o.evaluator = [](const std::vector<PointMatrix>& points, const std::vector<PointMatrix>&) {
    const ScalarMatrix& x = points.at(0).component(0);
    Scalar trace = 0;
    for (std::size_t i = 0; i < x.rows(); ++i) trace += x.at(i, i);
    return scalar_matrix(trace, x.rows());
  };
  return o;
}

}  // namespace

TEST_CASE("polynomial evaluation passes the structure check at every order") {
  Rng rng(101);
  const std::vector<std::size_t> orders{0, 1, 2};
  for (std::size_t order : orders) {
    std::vector<std::size_t> xdims;
    std::vector<std::size_t> zdims;
    for (std::size_t j = 0; j <= order; ++j) xdims.push_back(1 + (j % 2));
    for (std::size_t j = 1; j <= order; ++j) zdims.push_back(2 - (j % 2));
    NcPolynomial q = random_poly(xdims, zdims, 3, 5, rng);
    CheckReport report = check_respects_structure(oracle_from_poly(q), 3, rng);
    CHECK(report.ok);
    // Three axioms per slot per round.
    CHECK(report.checked == 3 * (order + 1) * 3);
  }
}

TEST_CASE("zero oracle passes the structure check") {
  Rng rng(102);
  CheckReport report = check_respects_structure(oracle_from_poly(zero_poly({1, 2}, {2})), 2, rng);
  CHECK(report.ok);
}

TEST_CASE("entrywise square respects sums but not similarities") {
  NcOracle f = entrywise_square_oracle(1);

  SUBCASE("direct sums hold by hand") {
    ScalarMatrix a(1, 1);
    a.at(0, 0) = 2;
    ScalarMatrix b(2, 2);
    b.at(0, 1) = 3;
    PointMatrix sum = direct_sum(PointMatrix(std::vector<ScalarMatrix>{a}),
                                 PointMatrix(std::vector<ScalarMatrix>{b}));
    ScalarMatrix expected(3, 3);
    expected.at(0, 0) = 4;
    expected.at(1, 2) = 9;
    CHECK(f({sum}, {}) == expected);
  }

  SUBCASE("a shear similarity is a witness") {
    ScalarMatrix x(2, 2);
    x.at(0, 0) = 1;
    ScalarMatrix s = ScalarMatrix::identity(2);
    s.at(0, 1) = 1;
    ScalarMatrix s_inv = ScalarMatrix::identity(2);
    s_inv.at(0, 1) = -1;
    PointMatrix moved(std::vector<ScalarMatrix>{s * x * s_inv});
    ScalarMatrix lhs = f({moved}, {});
    ScalarMatrix rhs = s * f({PointMatrix(std::vector<ScalarMatrix>{x})}, {}) * s_inv;
    CHECK_FALSE(lhs == rhs);
  }

  SUBCASE("the checker reports the similarity axiom") {
    Rng rng(103);
    CheckReport report = check_respects_structure(f, 4, rng);
    CHECK_FALSE(report.ok);
    CHECK(report.detail.find("similarity") != std::string::npos);
  }
}

TEST_CASE("trace oracle is caught by the direct sum axiom") {
  Rng rng(104);
  CheckReport report = check_respects_structure(trace_oracle(), 4, rng);
  CHECK_FALSE(report.ok);
  CHECK(report.detail.find("direct sum") != std::string::npos);
}

TEST_CASE("selftest suite is green and deterministic") {
  std::vector<SelftestRow> rows = run_selftest(7);
  REQUIRE(rows.size() >= 8);
  for (const SelftestRow& row : rows) {
    INFO(row.name, ": ", row.report.detail);
    CHECK(row.report.ok);
    CHECK_FALSE(row.name.empty());
  }

  std::vector<SelftestRow> again = run_selftest(7);
  REQUIRE(again.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(again[i].name == rows[i].name);
    CHECK(again[i].report.ok == rows[i].report.ok);
    CHECK(again[i].report.checked == rows[i].report.checked);
    CHECK(again[i].report.detail == rows[i].report.detail);
  }

  std::vector<SelftestRow> other = run_selftest(8);
  REQUIRE(other.size() == rows.size());
  for (const SelftestRow& row : other) CHECK(row.report.ok);
}
