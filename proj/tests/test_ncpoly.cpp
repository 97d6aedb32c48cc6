#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncad/oracle.hpp"
#include "ncad/poly.hpp"
#include "ncad/testkit.hpp"

using namespace ncad;

namespace {

Monomial mono(const char* coeff, std::vector<Word> xwords, std::vector<std::size_t> zletters) {
  return Monomial{scalar_from_string(coeff), std::move(xwords), std::move(zletters)};
}

PointMatrix point1(long a, long b, long c, long d) {
  ScalarMatrix m(2, 2);
  m.at(0, 0) = a;
  m.at(0, 1) = b;
  m.at(1, 0) = c;
  m.at(1, 1) = d;
  return PointMatrix(std::vector<ScalarMatrix>{m});
}

PointMatrix scalar_point(long a) {
  ScalarMatrix m(1, 1);
  m.at(0, 0) = a;
  return PointMatrix(std::vector<ScalarMatrix>{m});
}

// x^2 in one variable, order 0.
NcPolynomial square_poly() {
  NcPolynomial p = zero_poly({1}, {});
  p.terms.push_back(mono("1", {{1, 1}}, {}));
  return p;
}

}  // namespace

TEST_CASE("validation rejects malformed polynomials") {
  CHECK_THROWS_AS(zero_poly({}, {}), NcadError);
  CHECK_THROWS_AS(zero_poly({1, 1}, {}), NcadError);
  CHECK_THROWS_AS(zero_poly({1}, {1}), NcadError);
  CHECK_THROWS_AS(zero_poly({0}, {}), NcadError);

  NcPolynomial bad_letter = zero_poly({1}, {});
  bad_letter.terms.push_back(mono("1", {{2}}, {}));
  CHECK_THROWS_AS(validate_poly(bad_letter), NcadError);

  NcPolynomial bad_slots = zero_poly({1, 1}, {1});
  bad_slots.terms.push_back(mono("1", {{1}}, {}));
  CHECK_THROWS_AS(validate_poly(bad_slots), NcadError);
}

TEST_CASE("canonicalize merges, cancels and orders deterministically") {
  NcPolynomial p = zero_poly({2}, {});
  p.terms.push_back(mono("1", {{2, 1}}, {}));
  p.terms.push_back(mono("3", {{1}}, {}));
  p.terms.push_back(mono("2", {{2, 1}}, {}));
  p.terms.push_back(mono("-3", {{1}}, {}));
  p.terms.push_back(mono("1/2", {{}}, {}));
  NcPolynomial c = canonicalize(p);
  REQUIRE(c.terms.size() == 2);
  CHECK(c.terms[0] == mono("1/2", {{}}, {}));  // lowest degree first
  CHECK(c.terms[1] == mono("3", {{2, 1}}, {}));
  CHECK(canonicalize(c) == c);

  NcPolynomial exact_cancel = zero_poly({1}, {});
  exact_cancel.terms.push_back(mono("2/3", {{1}}, {}));
  exact_cancel.terms.push_back(mono("-2/3", {{1}}, {}));
  CHECK(canonicalize(exact_cancel).terms.empty());
}

TEST_CASE("term order sorts by degree then letter sequence") {
  Monomial low = mono("1", {{1}, {}}, {1});
  Monomial high = mono("1", {{1}, {1}}, {1});
  CHECK(monomial_key_less(low, high));
  CHECK_FALSE(monomial_key_less(high, low));

  // Same degree: direction letter decides before the following x word.
  Monomial za = mono("1", {{}, {1}}, {1});
  Monomial zb = mono("1", {{1}, {}}, {2});
  CHECK(monomial_key_less(za, zb));
}

TEST_CASE("square evaluates exactly on an upper triangular point") {
  ScalarMatrix x(2, 2);
  x.at(0, 0) = 2;
  x.at(0, 1) = 1;
  x.at(1, 1) = 3;
  ScalarMatrix value =
      eval_poly(square_poly(), {PointMatrix(std::vector<ScalarMatrix>{x})}, {});
  ScalarMatrix expected(2, 2);
  expected.at(0, 0) = 4;
  expected.at(0, 1) = 5;
  expected.at(1, 1) = 9;
  CHECK(value == expected);
}

TEST_CASE("constants evaluate to scalar multiples of the identity") {
  NcPolynomial c = zero_poly({1}, {});
  c.terms.push_back(mono("5/2", {{}}, {}));
  Rng rng(3);
  PointMatrix x = rng.point(3, 3, 1);
  CHECK(eval_poly(c, {x}, {}) == scalar_from_string("5/2") * ScalarMatrix::identity(3));
}

TEST_CASE("two-variable product keeps factor order") {
  NcPolynomial p = zero_poly({2}, {});
  p.terms.push_back(mono("1", {{1, 2}}, {}));
  ScalarMatrix a = matrix_unit(2, 1, 2), b = matrix_unit(2, 2, 1);
  PointMatrix x(std::vector<ScalarMatrix>{a, b});
  CHECK(eval_poly(p, {x}, {}) == a * b);
  CHECK(eval_poly(p, {x}, {}) != b * a);
}

TEST_CASE("order one monomial chains through the direction") {
  NcPolynomial p = zero_poly({1, 1}, {1});
  p.terms.push_back(mono("1", {{1}, {1}}, {1}));
  ScalarMatrix value =
      eval_poly(p, {scalar_point(2), scalar_point(3)}, {scalar_point(5)});
  CHECK(value.at(0, 0) == 30);

  SUBCASE("rectangular directions produce rectangular values") {
    Rng rng(5);
    PointMatrix x0 = rng.point(2, 2, 1), x1 = rng.point(3, 3, 1), z = rng.point(2, 3, 1);
    ScalarMatrix v = eval_poly(p, {x0, x1}, {z});
    CHECK(v.rows() == 2);
    CHECK(v.cols() == 3);
    CHECK(v == x0.component(0) * z.component(0) * x1.component(0));
  }

  SUBCASE("direction shape mismatches are rejected") {
    Rng rng(6);
    CHECK_THROWS_AS(eval_poly(p, {scalar_point(2), scalar_point(3)}, {rng.point(2, 1, 1)}),
                    NcadError);
    CHECK_THROWS_AS(eval_poly(p, {scalar_point(2), scalar_point(3)}, {rng.point(1, 1, 2)}),
                    NcadError);
  }
}

TEST_CASE("add and scale agree with pointwise arithmetic") {
  Rng rng(21);
  NcPolynomial p = random_poly({2, 2}, {2}, 3, 4, rng);
  NcPolynomial q = random_poly({2, 2}, {2}, 3, 4, rng);
  PointMatrix x0 = rng.point(2, 2, 2), x1 = rng.point(2, 2, 2), z = rng.point(2, 2, 2);
  CHECK(eval_poly(add(p, q), {x0, x1}, {z}) ==
        eval_poly(p, {x0, x1}, {z}) + eval_poly(q, {x0, x1}, {z}));
  Scalar c = scalar_from_string("-3/7");
  CHECK(eval_poly(scale(c, p), {x0, x1}, {z}) == c * eval_poly(p, {x0, x1}, {z}));

  CHECK_THROWS_AS(add(p, random_poly({2}, {}, 3, 3, rng)), NcadError);
  CHECK_THROWS_AS(add(p, random_poly({2, 1}, {2}, 3, 3, rng)), NcadError);
}

TEST_CASE("evaluation is linear in every direction slot") {
  Rng rng(22);
  NcPolynomial p = random_poly({1, 2, 1}, {2, 1}, 3, 5, rng);
  PointMatrix x0 = rng.point(2, 2, 1), x1 = rng.point(2, 2, 2), x2 = rng.point(2, 2, 1);
  for (std::size_t slot = 0; slot < 2; ++slot) {
    std::vector<PointMatrix> dirs = {rng.point(2, 2, 2), rng.point(2, 2, 1)};
    PointMatrix a = rng.point(2, 2, dirs[slot].dim());
    PointMatrix b = rng.point(2, 2, dirs[slot].dim());
    Scalar s = rng.scalar(), t = rng.scalar();
    std::vector<PointMatrix> da = dirs, db = dirs, dab = dirs;
    da[slot] = a;
    db[slot] = b;
    dab[slot] = s * a + t * b;
    CHECK(eval_poly(p, {x0, x1, x2}, dab) ==
          s * eval_poly(p, {x0, x1, x2}, da) + t * eval_poly(p, {x0, x1, x2}, db));
  }
}

TEST_CASE("values respect direct sums in every slot") {
  Rng rng(23);
  SUBCASE("order zero") {
    NcPolynomial p = random_poly({2}, {}, 4, 5, rng);
    PointMatrix a = rng.point(2, 2, 2), b = rng.point(3, 3, 2);
    ScalarMatrix whole = eval_poly(p, {direct_sum(a, b)}, {});
    CHECK(submatrix(whole, 0, 0, 2, 2) == eval_poly(p, {a}, {}));
    CHECK(submatrix(whole, 2, 2, 3, 3) == eval_poly(p, {b}, {}));
    CHECK(submatrix(whole, 0, 2, 2, 3).is_zero());
    CHECK(submatrix(whole, 2, 0, 3, 2).is_zero());
  }
  SUBCASE("order one") {
    NcPolynomial p = random_poly({1, 1}, {2}, 3, 5, rng);
    PointMatrix a0 = rng.point(2, 2, 1), b0 = rng.point(1, 1, 1);
    PointMatrix a1 = rng.point(1, 1, 1), b1 = rng.point(2, 2, 1);
    PointMatrix za = rng.point(2, 1, 2), zb = rng.point(1, 2, 2);
    ScalarMatrix whole =
        eval_poly(p, {direct_sum(a0, b0), direct_sum(a1, b1)}, {direct_sum(za, zb)});
    CHECK(submatrix(whole, 0, 0, 2, 1) == eval_poly(p, {a0, a1}, {za}));
    CHECK(submatrix(whole, 2, 1, 1, 2) == eval_poly(p, {b0, b1}, {zb}));
    CHECK(submatrix(whole, 0, 1, 2, 2).is_zero());
    CHECK(submatrix(whole, 2, 0, 1, 1).is_zero());
  }
}

TEST_CASE("order zero values respect similarities") {
  Rng rng(24);
  NcPolynomial p = random_poly({2}, {}, 4, 5, rng);
  PointMatrix x = rng.point(3, 3, 2);
  auto [s, s_inv] = random_invertible(3, rng);
  PointMatrix conj = s * x * s_inv;
  CHECK(eval_poly(p, {conj}, {}) == s * eval_poly(p, {x}, {}) * s_inv);
}

TEST_CASE("oracle wrapper matches direct evaluation") {
  Rng rng(25);
  NcPolynomial p = random_poly({1, 1}, {1}, 3, 4, rng);
  NcOracle o = oracle_from_poly(p);
  CHECK(o.order == 1);
  PointMatrix x0 = rng.point(2, 2, 1), x1 = rng.point(2, 2, 1), z = rng.point(2, 2, 1);
  CHECK(o({x0, x1}, {z}) == eval_poly(p, {x0, x1}, {z}));
}

TEST_CASE("random polynomials are deterministic per seed and in range") {
  Rng r1(99), r2(99);
  NcPolynomial p1 = random_poly({2, 2}, {2}, 4, 6, r1);
  NcPolynomial p2 = random_poly({2, 2}, {2}, 4, 6, r2);
  CHECK(p1 == p2);
  validate_poly(p1);
  CHECK(p1 == canonicalize(p1));
  Rng r3(100);
  CHECK(random_poly({2, 2}, {2}, 4, 6, r3) != p1);
}
