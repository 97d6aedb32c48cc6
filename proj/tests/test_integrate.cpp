#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncad/integrate.hpp"
#include "ncad/rng.hpp"
#include "ncad/testkit.hpp"

using namespace ncad;

namespace {

Monomial mono(const char* coeff, std::vector<Word> xwords, std::vector<std::size_t> zletters) {
  return Monomial{scalar_from_string(coeff), std::move(xwords), std::move(zletters)};
}

NcPolynomial poly(std::vector<std::size_t> xdims, std::vector<std::size_t> zdims,
                  std::vector<Monomial> terms) {
  NcPolynomial p = zero_poly(std::move(xdims), std::move(zdims));
  p.terms = std::move(terms);
  return canonicalize(p);
}

NcPolynomial square_poly() { return poly({1}, {}, {mono("1", {{1, 1}}, {})}); }

/// x^0 z x^1, the smallest genuinely multi-slot integrand.
NcPolynomial sandwich_poly() { return poly({1, 1}, {1}, {mono("1", {{1}, {1}}, {1})}); }

PointMatrix diag_point(long a, long b) {
  ScalarMatrix m(2, 2);
  m.at(0, 0) = a;
  m.at(1, 1) = b;
  return PointMatrix(std::vector<ScalarMatrix>{m});
}

PointMatrix scalar_point(long v) {
  ScalarMatrix m(1, 1);
  m.at(0, 0) = v;
  return PointMatrix(std::vector<ScalarMatrix>{m});
}

std::vector<NcOracle> split_sources(const NcPolynomial& q) {
  std::vector<NcOracle> out;
  for (std::size_t j = 0; j <= q.order(); ++j)
    out.push_back(oracle_from_poly(delta_sym(q, j)));
  return out;
}

ScalarMatrix eval0(const Antiderivative& f, const PointMatrix& x) { return f.eval({x}, {}); }

}  // namespace

TEST_CASE("order one integrability accepts split differences") {
  NcOracle f = oracle_from_poly(delta_sym(square_poly(), 0));
  PointMatrix y = diag_point(1, 2);
  auto samples = order1_integrability_samples(f, y, 11);
  REQUIRE(samples.size() >= 4);
  CheckReport report = check_integrability_order1(f, samples);
  CHECK(report.ok);
  CHECK(report.checked == samples.size());
  CHECK(report.detail.find("sampled") != std::string::npos);
}

TEST_CASE("order one integrability rejects x times z") {
  // 1 * x z has slot-0 split Z^1 Z^2 but slot-1 split zero.
  NcOracle f = oracle_from_poly(poly({1, 1}, {1}, {mono("1", {{1}, {}}, {1})}));

  SUBCASE("hand-built witness sample") {
    PointMatrix one = scalar_point(1);
    DeltaSample smp{{one, one, one},
                    {PointMatrix(std::vector<ScalarMatrix>{ScalarMatrix::identity(1)}),
                     PointMatrix(std::vector<ScalarMatrix>{ScalarMatrix::identity(1)})}};
    CheckReport report = check_integrability_order1(f, {smp});
    CHECK_FALSE(report.ok);
    CHECK(report.detail.find("sample 0") != std::string::npos);
  }

  SUBCASE("generated samples find the defect") {
    auto samples = order1_integrability_samples(f, scalar_point(2), 11);
    CHECK_FALSE(check_integrability_order1(f, samples).ok);
  }
}

TEST_CASE("higher integrability accepts a common integrand and rejects a mismatch") {
  NcPolynomial q = sandwich_poly();
  std::vector<PointMatrix> ys{scalar_point(1), scalar_point(2)};

  SUBCASE("splits of one polynomial are compatible") {
    auto fs = split_sources(q);
    auto samples = higher_integrability_samples(fs, ys, 7);
    REQUIRE(samples.size() == 3);  // pairs (0,0), (0,1), (1,1)
    CheckReport report = check_integrability_higher(fs, samples);
    CHECK(report.ok);
    CHECK(report.checked > 0);
    CHECK(report.detail.find("sampled") != std::string::npos);
  }

  SUBCASE("sources from different integrands fail the cross pair") {
    NcPolynomial other = poly({1, 1}, {1}, {mono("1", {{1, 1}, {1}}, {1})});  // (x^0)^2 z x^1
    std::vector<NcOracle> fs{oracle_from_poly(delta_sym(q, 0)),
                             oracle_from_poly(delta_sym(other, 1))};
    auto samples = higher_integrability_samples(fs, ys, 7);
    CheckReport report = check_integrability_higher(fs, samples);
    CHECK_FALSE(report.ok);
    CHECK(report.detail.find("source") != std::string::npos);
  }

  SUBCASE("scaled source is also incompatible") {
    std::vector<NcOracle> fs{oracle_from_poly(delta_sym(q, 0)),
                             oracle_from_poly(scale(Scalar(2), delta_sym(q, 1)))};
    CHECK_FALSE(check_integrability_higher(fs, higher_integrability_samples(fs, ys, 7)).ok);
  }
}

TEST_CASE("order zero reconstruction of the square") {
  NcOracle f_src = oracle_from_poly(delta_sym(square_poly(), 0));
  PointMatrix y = diag_point(1, 2);
  Antiderivative f = integrate_order1(f_src, y);
  REQUIRE(f.order == 0);

  SUBCASE("base value is the square shifted to vanish at the flip point") {
    ScalarMatrix expected(2, 2);
    expected.at(1, 1) = 3;  // Y^2 - I
    CHECK(f.base_value() == expected);

    ScalarMatrix flip(2, 2);
    flip.at(0, 1) = 1;
    flip.at(1, 0) = 1;
    CHECK(eval0(f, PointMatrix(std::vector<ScalarMatrix>{flip})).is_zero());
  }

  SUBCASE("evaluator is the square minus the identity at every multiple size") {
    Rng rng(31);
    for (std::size_t m : {1, 2, 3}) {
      PointMatrix x = rng.point(2 * m, 2 * m, 1);
      ScalarMatrix xm = x.component(0);
      CHECK(eval0(f, x) == xm * xm - ScalarMatrix::identity(2 * m));
    }
  }

  SUBCASE("odd sizes are rejected") {
    Rng rng(32);
    try {
      eval0(f, rng.point(3, 3, 1));
      FAIL("expected a size failure");
    } catch (const NcadError& e) {
      CHECK(e.kind() == ErrorKind::SizeNotMultiple);
    }
  }

  SUBCASE("slot split recovers the source") {
    auto samples = antiderivative_samples(f, 5);
    REQUIRE(samples.size() == 1);
    NcOracle split = delta_oracle(f.as_oracle(), 0);
    for (const DeltaSample& smp : samples[0].samples)
      CHECK(split(smp.points, smp.dirs) == f_src(smp.points, smp.dirs));
  }

  SUBCASE("commutator with the base value realizes the base derivation") {
    DerivationTable d = derivation_table_order0(f_src, y);
    ScalarMatrix f0 = f.base_value();
    for (std::size_t i = 1; i <= 2; ++i)
      for (std::size_t l = 1; l <= 2; ++l) {
        ScalarMatrix t = matrix_unit(2, i, l);
        CHECK(t * f0 - f0 * t == d.at(i, l));
      }
  }

  SUBCASE("full verification passes") {
    CheckReport report = verify_antiderivative(f, {f_src}, antiderivative_samples(f, 5));
    CHECK(report.ok);
    CHECK(report.detail.find("sampled") != std::string::npos);
  }
}

TEST_CASE("order zero reconstruction of the coordinate and of zero") {
  PointMatrix y = diag_point(1, 2);

  SUBCASE("coordinate integrates to x minus its lowest base eigenvalue") {
    NcPolynomial coordinate = poly({1}, {}, {mono("1", {{1}}, {})});
    NcOracle f_src = oracle_from_poly(delta_sym(coordinate, 0));
    Antiderivative f = integrate_order1(f_src, y);
    Rng rng(41);
    PointMatrix x = rng.point(4, 4, 1);
    CHECK(eval0(f, x) == x.component(0) - ScalarMatrix::identity(4));
  }

  SUBCASE("zero source with a normalization constant gives a constant") {
    NcOracle zero_src = oracle_from_poly(zero_poly({1, 1}, {1}));
    Antiderivative f = integrate_order1(zero_src, y, Scalar(5));
    CHECK(f.base_value() == scalar_matrix(Scalar(5), 2));
    Rng rng(42);
    PointMatrix x = rng.point(6, 6, 1);
    CHECK(eval0(f, x) == scalar_matrix(Scalar(5), 6));
    CHECK(verify_antiderivative(f, {zero_src}, antiderivative_samples(f, 6)).ok);
  }

  SUBCASE("non-integrable source is refused up front") {
    NcOracle bad = oracle_from_poly(poly({1, 1}, {1}, {mono("1", {{1}, {}}, {1})}));
    try {
      integrate_order1(bad, scalar_point(2));
      FAIL("expected an integrability failure");
    } catch (const NcadError& e) {
      CHECK(e.kind() == ErrorKind::NotIntegrable);
    }
  }
}

TEST_CASE("verification catches a corrupted base value") {
  NcOracle f_src = oracle_from_poly(delta_sym(square_poly(), 0));
  PointMatrix y = diag_point(1, 2);
  Antiderivative f = integrate_order1(f_src, y, Scalar(7));

  // The normalization constant moves the whole antiderivative by 7 I, which
  // verification must still accept.
  CHECK(verify_antiderivative(f, {f_src}, antiderivative_samples(f, 5)).ok);

  // An off-diagonal corruption of f_0 keeps every slot split intact but is no
  // longer one scalar away from an independent rebuild.
  f.base.coeff_flat(0).at(0, 1) = 1;
  CheckReport report = verify_antiderivative(f, {f_src}, antiderivative_samples(f, 5));
  CHECK_FALSE(report.ok);
  CHECK(report.detail.find("identity") != std::string::npos);
}

TEST_CASE("order one reconstruction at scalar base points") {
  NcPolynomial q = sandwich_poly();
  auto fs = split_sources(q);
  std::vector<PointMatrix> ys{scalar_point(1), scalar_point(1)};
  Antiderivative f = integrate_higher(fs, ys);
  REQUIRE(f.order == 1);

  SUBCASE("combined base map vanishes at these base points") {
    CHECK(f.base.is_zero());
  }

  SUBCASE("closed form is the integrand minus the direction") {
    Rng rng(53);
    const std::pair<std::size_t, std::size_t> sizes[] = {{1, 1}, {2, 3}, {3, 2}};
    for (auto [n0, n1] : sizes) {
      PointMatrix x0 = rng.point(n0, n0, 1);
      PointMatrix x1 = rng.point(n1, n1, 1);
      PointMatrix z = rng.point(n0, n1, 1);
      ScalarMatrix direct = eval_poly(q, {x0, x1}, {z});
      CHECK(f.eval({x0, x1}, {z}) == direct - z.component(0));
    }
  }

  SUBCASE("difference to the integrand is the block form with kernel -1") {
    std::vector<ArgShape> shapes{ArgShape{2, 2, 1}};
    Rng rng(54);
    PointMatrix x0 = rng.point(2, 2, 1);
    PointMatrix x1 = rng.point(2, 2, 1);
    MultiLinearMap h = MultiLinearMap::materialize(
        shapes, 2, 2, [&](const std::vector<PointMatrix>& args) {
          return f.eval({x0, x1}, args) - eval_poly(q, {x0, x1}, args);
        });
    auto kernel = extract_blockform(h);
    REQUIRE(kernel.has_value());
    REQUIRE(kernel->zdims == std::vector<std::size_t>{1});
    CHECK(kernel->at({0}) == Scalar(-1));
    CHECK(blockform_map(*kernel, shapes) == h);
  }

  SUBCASE("full verification passes") {
    CheckReport report = verify_antiderivative(f, fs, antiderivative_samples(f, 8));
    CHECK(report.ok);
    CHECK(report.detail.find("block-form") != std::string::npos);
  }
}

TEST_CASE("order one reconstruction with unequal base sizes") {
  NcPolynomial q = sandwich_poly();
  auto fs = split_sources(q);
  std::vector<PointMatrix> ys{diag_point(1, 2), scalar_point(3)};
  Antiderivative f = integrate_higher(fs, ys);

  SUBCASE("slot splits recover both sources") {
    auto samples = antiderivative_samples(f, 9);
    REQUIRE(samples.size() == 2);
    for (const SlotSamples& ss : samples) {
      NcOracle split = delta_oracle(f.as_oracle(), ss.slot);
      for (const DeltaSample& smp : ss.samples)
        CHECK(split(smp.points, smp.dirs) == fs[ss.slot](smp.points, smp.dirs));
    }
  }

  SUBCASE("first slot only accepts multiples of its base size") {
    Rng rng(61);
    try {
      f.eval({rng.point(3, 3, 1), rng.point(1, 1, 1)}, {rng.point(3, 1, 1)});
      FAIL("expected a size failure");
    } catch (const NcadError& e) {
      CHECK(e.kind() == ErrorKind::SizeNotMultiple);
    }
  }

  SUBCASE("full verification passes") {
    CHECK(verify_antiderivative(f, fs, antiderivative_samples(f, 9)).ok);
  }
}

TEST_CASE("order two reconstruction") {
  // x^0 z x^1 z x^2 needs the full path sum in the base amplification.
  NcPolynomial q = poly({1, 1, 1}, {1, 1}, {mono("1", {{1}, {1}, {1}}, {1, 1})});
  auto fs = split_sources(q);
  std::vector<PointMatrix> ys{scalar_point(1), scalar_point(2), scalar_point(1)};
  Antiderivative f = integrate_higher(fs, ys);
  REQUIRE(f.order == 2);
  CheckReport report = verify_antiderivative(f, fs, antiderivative_samples(f, 10));
  CHECK(report.ok);
  CHECK(report.detail.find("block-form") != std::string::npos);
}

TEST_CASE("non-compatible sources are refused up front") {
  NcPolynomial q = sandwich_poly();
  NcPolynomial other = poly({1, 1}, {1}, {mono("1", {{1, 1}, {1}}, {1})});
  std::vector<NcOracle> fs{oracle_from_poly(delta_sym(q, 0)),
                           oracle_from_poly(delta_sym(other, 1))};
  try {
    integrate_higher(fs, {scalar_point(1), scalar_point(2)});
    FAIL("expected an integrability failure");
  } catch (const NcadError& e) {
    CHECK(e.kind() == ErrorKind::NotIntegrable);
  }
}

TEST_CASE("symbolic integration inverts the slot split") {
  SUBCASE("z y + x z merges to the square") {
    NcPolynomial p = poly({1, 1}, {1},
                          {mono("1", {{}, {1}}, {1}), mono("1", {{1}, {}}, {1})});
    NcPolynomial q = integrate_poly(p, 0);
    CHECK(q == square_poly());
    CHECK(canonicalize(delta_sym(q, 0)) == canonicalize(p));
  }

  SUBCASE("x z alone misses a split position") {
    NcPolynomial p = poly({1, 1}, {1}, {mono("1", {{1}, {}}, {1})});
    try {
      integrate_poly(p, 0);
      FAIL("expected a merge failure");
    } catch (const NcadError& e) {
      CHECK(e.kind() == ErrorKind::NotIntegrablePoly);
      CHECK(e.detail().find("missing positions 0") != std::string::npos);
    }
  }

  SUBCASE("2 z y + 3 x z has unequal split coefficients") {
    NcPolynomial p = poly({1, 1}, {1},
                          {mono("2", {{}, {1}}, {1}), mono("3", {{1}, {}}, {1})});
    try {
      integrate_poly(p, 0);
      FAIL("expected a merge failure");
    } catch (const NcadError& e) {
      CHECK(e.kind() == ErrorKind::NotIntegrablePoly);
      CHECK(e.detail().find("unequal") != std::string::npos);
    }
  }

  SUBCASE("slot and dim validation") {
    try {
      integrate_poly(square_poly(), 0);
      FAIL("expected a slot failure");
    } catch (const NcadError& e) {
      CHECK(e.kind() == ErrorKind::SlotOutOfRange);
    }
    NcPolynomial wide = zero_poly({1, 1}, {2});
    try {
      integrate_poly(wide, 0);
      FAIL("expected a dim failure");
    } catch (const NcadError& e) {
      CHECK(e.kind() == ErrorKind::DimMismatch);
    }
  }
}

TEST_CASE("symbolic round trips drop exactly the split kernel") {
  Rng rng(77);
  for (std::size_t round = 0; round < 12; ++round) {
    const std::size_t order = 1 + rng.uniform(0, 1);
    std::vector<std::size_t> xdims;
    std::vector<std::size_t> zdims;
    for (std::size_t j = 0; j <= order; ++j) xdims.push_back(rng.uniform(1, 2));
    for (std::size_t j = 1; j <= order; ++j) zdims.push_back(rng.uniform(1, 2));
    NcPolynomial q = random_poly(xdims, zdims, 3, 4, rng);
    for (std::size_t j = 0; j <= order; ++j) {
      NcPolynomial recovered = integrate_poly(delta_sym(q, j), j);
      NcPolynomial expected = q;
      std::erase_if(expected.terms, [&](const Monomial& t) { return t.xwords[j].empty(); });
      expected = canonicalize(expected);
      CHECK(recovered == expected);
    }
  }
}

TEST_CASE("numeric and symbolic antiderivatives differ by a block form") {
  NcPolynomial q = sandwich_poly();
  NcPolynomial p0 = delta_sym(q, 0);
  NcPolynomial q_sym = integrate_poly(p0, 0);
  CHECK(q_sym == q);

  auto fs = split_sources(q);
  std::vector<PointMatrix> ys{diag_point(1, 2), scalar_point(2)};
  Antiderivative f_num = integrate_higher(fs, ys);

  std::vector<ArgShape> shapes{ArgShape{2, 2, 1}};
  Rng rng(91);
  PointMatrix x0 = rng.point(2, 2, 1);
  PointMatrix x1 = rng.point(2, 2, 1);
  MultiLinearMap h = MultiLinearMap::materialize(
      shapes, 2, 2, [&](const std::vector<PointMatrix>& args) {
        return f_num.eval({x0, x1}, args) - eval_poly(q_sym, {x0, x1}, args);
      });
  auto kernel = extract_blockform(h);
  REQUIRE(kernel.has_value());

  // The same kernel predicts the gap at other points and sizes.
  PointMatrix w0 = rng.point(4, 4, 1);
  PointMatrix w1 = rng.point(4, 4, 1);
  PointMatrix z = rng.point(4, 4, 1);
  MultiLinearMap wide = blockform_map(*kernel, {ArgShape{4, 4, 1}});
  CHECK(f_num.eval({w0, w1}, {z}) - eval_poly(q_sym, {w0, w1}, {z}) == wide.eval({z}));
}

TEST_CASE("block form extraction recognizes structure and rejects noise") {
  SUBCASE("arity zero") {
    MultiLinearMap c({}, 3, 3);
    c.coeff_flat(0) = scalar_matrix(Scalar(4), 3);
    auto kernel = extract_blockform(c);
    REQUIRE(kernel.has_value());
    CHECK(kernel->at({}) == Scalar(4));

    c.coeff_flat(0).at(0, 2) = 1;
    CHECK_FALSE(extract_blockform(c).has_value());
  }

  SUBCASE("value off the matching output entry") {
    MultiLinearMap h({ArgShape{2, 2, 1}}, 2, 2);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) h.coeff({{r, c, 0}}).at(r, c) = 1;
    REQUIRE(extract_blockform(h).has_value());
    h.coeff({{0, 1, 0}}).at(1, 1) = 1;  // stray value away from entry (0, 1)
    CHECK_FALSE(extract_blockform(h).has_value());
  }

  SUBCASE("unchained support") {
    MultiLinearMap h({ArgShape{2, 2, 1}, ArgShape{2, 2, 1}}, 2, 2);
    h.coeff({{0, 1, 0}, {0, 1, 0}}).at(0, 1) = 1;  // cols 1 then rows 0 never chain
    CHECK_FALSE(extract_blockform(h).has_value());
  }

  SUBCASE("kernel value must not depend on the entry positions") {
    MultiLinearMap h({ArgShape{2, 2, 1}}, 2, 2);
    h.coeff({{0, 0, 0}}).at(0, 0) = 1;
    h.coeff({{0, 1, 0}}).at(0, 1) = 1;
    h.coeff({{1, 0, 0}}).at(1, 0) = 1;
    h.coeff({{1, 1, 0}}).at(1, 1) = 2;
    CHECK_FALSE(extract_blockform(h).has_value());
    h.coeff({{1, 1, 0}}).at(1, 1) = 1;
    auto kernel = extract_blockform(h);
    REQUIRE(kernel.has_value());
    CHECK(kernel->at({0}) == Scalar(1));
  }
}
