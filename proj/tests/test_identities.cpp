#include <catch2/catch_amalgamated.hpp>

#include <ctident/ct_engine.hpp>
#include <ctident/identities.hpp>

using namespace ctident;

TEST_CASE("build_dyson small cases") {
  CHECK(build_dyson(DysonParams{{0, 0}}) == LaurentPolynomial::constant(2, 1));

  LaurentPolynomial expect(2);  // 2 - x0/x1 - x1/x0
  expect.add_term(ExponentVector{0, 0}, 2);
  expect.add_term(ExponentVector{1, -1}, -1);
  expect.add_term(ExponentVector{-1, 1}, -1);
  CHECK(build_dyson(DysonParams{{1, 1}}) == expect);

  CHECK(constant_term(build_dyson(DysonParams{{1, 1, 1}})) == 6);

  CHECK_THROWS_AS(build_dyson(DysonParams{{1, -1}}), usage_error);
}

TEST_CASE("dyson_rhs multinomials") {
  CHECK(dyson_rhs(DysonParams{{0, 0, 0}}) == 1);
  CHECK(dyson_rhs(DysonParams{{1, 2}}) == 3);
  CHECK(dyson_rhs(DysonParams{{1, 1, 1}}) == 6);
  CHECK(dyson_rhs(DysonParams{{1, 2, 3}}) == 60);
}

TEST_CASE("build_morris small cases") {
  // n=1, a=b=1: (1 - x1/x0)(1 - x0/x1), constant term 2
  const LaurentPolynomial h = build_morris(MorrisParams{1, 1, 1, 0});
  CHECK(constant_term(h) == 2);
  CHECK(h.term_count() == 3);

  // n=2, a=b=0, k=1: the pure cross product, constant term 2
  CHECK(constant_term(build_morris(MorrisParams{2, 0, 0, 1})) == 2);

  CHECK(build_morris(MorrisParams{2, 0, 0, 0}) == LaurentPolynomial::constant(3, 1));

  CHECK_THROWS_AS(build_morris(MorrisParams{2, -1, 1, 1}), usage_error);
  CHECK_THROWS_AS(build_morris(MorrisParams{0, 1, 1, 1}), usage_error);
}

TEST_CASE("morris_rhs values and roots") {
  CHECK(morris_rhs(MorrisParams{2, 0, 0, 1}) == Rat(2));
  CHECK(morris_rhs(MorrisParams{2, 1, 1, 1}) == Rat(6));
  CHECK(morris_rhs(MorrisParams{2, -1, 1, 1}) == Rat(0));
  // factorial form for nonnegative a: M_2(2,1,1) = l=0: 3!*1!/(2!*1!*1!)=3,
  // l=1: 4!*2!/(3!*2!*1!)=4 -> 12
  CHECK(morris_rhs(MorrisParams{2, 2, 1, 1}) == Rat(12));
  // polynomial form matches the evaluator at sampled integers
  const UnivariatePolynomial p = morris_rhs_polynomial(2, 1, 1);
  CHECK(p.to_string() == "2 + 3*a + 1*a^2");
  for (long a = -4; a <= 4; ++a)
    CHECK(p(Rat(a)) == morris_rhs(MorrisParams{2, a, 1, 1}));
}

TEST_CASE("build_aomoto structure") {
  // m=0 is exactly the Morris product
  CHECK(build_aomoto(AomotoParams{2, 0, 1, 1, 1}) ==
        build_morris(MorrisParams{2, 1, 1, 1}));

  // m=n equals Morris with a+1, term by term
  CHECK(build_aomoto(AomotoParams{2, 2, 1, 1, 1}) ==
        build_morris(MorrisParams{2, 2, 1, 1}));

  // n=2, m=1, a=b=0, k=1: constant term equals the closed form
  const AomotoParams p{2, 1, 0, 0, 1};
  CHECK(Rat(constant_term(build_aomoto(p))) == aomoto_rhs(p));

  CHECK_THROWS_AS(build_aomoto(AomotoParams{2, 3, 1, 1, 1}), usage_error);
}

TEST_CASE("aomoto_rhs values") {
  // m=n reduces to Morris at a+1
  for (long a = -3; a <= 3; ++a)
    CHECK(aomoto_rhs(AomotoParams{2, 2, a, 1, 2}) ==
          morris_rhs(MorrisParams{2, a + 1, 1, 2}));
  // m=0 is Morris itself
  for (long a = -3; a <= 3; ++a)
    CHECK(aomoto_rhs(AomotoParams{3, 0, a, 2, 1}) ==
          morris_rhs(MorrisParams{3, a, 2, 1}));
  // root from the shifted block
  CHECK(aomoto_rhs(AomotoParams{2, 1, -1, 1, 2}) == Rat(0));
  CHECK(aomoto_rhs(AomotoParams{2, 1, -4, 1, 2}) == Rat(0));
}

TEST_CASE("build_forrester structure") {
  // n1 <= 1 leaves the Morris product untouched
  CHECK(build_forrester(ForresterParams{2, 1, 1, 1, 1}) ==
        build_morris(MorrisParams{3, 1, 1, 1}));

  // n0 = 0 turns the extra factor into a full cross product: k -> k+1
  CHECK(build_forrester(ForresterParams{0, 2, 1, 1, 1}) ==
        build_morris(MorrisParams{2, 1, 1, 2}));

  // n0=1, n1=1, a=b=0, k=1: constant term 2
  const ForresterParams p{1, 1, 0, 0, 1};
  CHECK(constant_term(build_forrester(p)) == 2);
  CHECK(forrester_rhs(p) == Rat(2));
}

TEST_CASE("forrester_rhs values") {
  CHECK(forrester_rhs(ForresterParams{1, 1, 0, 0, 1}) == Rat(2));
  // root -(n0 k + 1) = -3 for n0=1, n1=2, b=1, k=2
  CHECK(forrester_rhs(ForresterParams{1, 2, -3, 1, 2}) == Rat(0));
  // n1 = 0 reduces to Morris
  for (long a = -2; a <= 2; ++a)
    CHECK(forrester_rhs(ForresterParams{3, 0, a, 1, 2}) ==
          morris_rhs(MorrisParams{3, a, 1, 2}));
  // n0 = 0 reduces to Morris with k+1 (same product, so same constant term;
  // the closed forms must agree on nonnegative a where both theorems apply)
  for (long a = 0; a <= 3; ++a)
    CHECK(forrester_rhs(ForresterParams{0, 2, a, 1, 1}) ==
          morris_rhs(MorrisParams{2, a, 1, 2}));
}

TEST_CASE("rhs polynomials agree with the evaluators") {
  const UnivariatePolynomial a23 = aomoto_rhs_polynomial(3, 1, 1, 2);
  for (long a = -8; a <= 4; ++a)
    CHECK(a23(Rat(a)) == aomoto_rhs(AomotoParams{3, 1, a, 1, 2}));

  const UnivariatePolynomial f12 = forrester_rhs_polynomial(1, 2, 1, 2);
  for (long a = -8; a <= 4; ++a)
    CHECK(f12(Rat(a)) == forrester_rhs(ForresterParams{1, 2, a, 1, 2}));

  const UnivariatePolynomial d = dyson_rhs_polynomial(std::vector<long>{2, 1});
  for (long a = -4; a <= 4; ++a) {
    Rat expect = Rat((a + 1) * (a + 2) * (a + 3), 2);
    CHECK(d(Rat(a)) == expect);
  }
}

TEST_CASE("builders produce homogeneous degree-0 products") {
  for (const LaurentPolynomial& p :
       {build_dyson(DysonParams{{1, 2, 1}}), build_morris(MorrisParams{2, 1, 2, 1}),
        build_aomoto(AomotoParams{2, 1, 1, 1, 1}),
        build_forrester(ForresterParams{1, 1, 1, 1, 1})}) {
    for (const auto& [e, c] : p.terms()) REQUIRE(e.sum() == 0);
  }
}

TEST_CASE("substitute_one preserves the constant term of the Morris product") {
  const LaurentPolynomial h = build_morris(MorrisParams{2, 1, 1, 1});
  CHECK(constant_term(substitute_one(h, 0)) == constant_term(h));
}

TEST_CASE("morris rhs degree and leading coefficient as polynomial in a") {
  // degree bn with leading coefficient prod (k(l+1))!/((b+kl)! k!)
  const UnivariatePolynomial p = morris_rhs_polynomial(3, 2, 2);
  CHECK(p.degree() == 6);
  Rat lead(1);
  for (long l = 0; l < 3; ++l)
    lead *= Rat(factorial(2 * (l + 1)), factorial(2 + 2 * l) * factorial(2));
  CHECK(p.leading_coefficient() == lead);
}
