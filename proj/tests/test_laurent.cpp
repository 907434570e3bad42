#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <ctident/laurent.hpp>

using namespace ctident;

namespace {

LaurentPolynomial var(int arity, int slot, int e = 1) {
  return LaurentPolynomial::monomial(ExponentVector(arity).set(slot, e), 1);
}

/// Uniform random Laurent polynomial: up to `max_terms` terms, exponents in
/// [-3, 3], coefficients in [-9, 9].
LaurentPolynomial random_poly(std::mt19937_64& rng, int arity, int max_terms) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> expo(-3, 3);
  std::uniform_int_distribution<int> coef(-9, 9);
  LaurentPolynomial p(arity);
  const int t = nterms(rng);
  for (int i = 0; i < t; ++i) {
    ExponentVector e(arity);
    for (int v = 0; v < arity; ++v) e.set(v, expo(rng));
    p.add_term(e, coef(rng));
  }
  return p;
}

}  // namespace

TEST_CASE("addition examples") {
  // (x1 - x2) + (x2 - x1) = 0
  LaurentPolynomial p = sub(var(2, 0), var(2, 1));
  LaurentPolynomial q = sub(var(2, 1), var(2, 0));
  CHECK(add(p, q).is_zero());

  // 1 + (-1) gives an empty term map
  CHECK(add(LaurentPolynomial::constant(1, 1), LaurentPolynomial::constant(1, -1))
            .term_count() == 0);

  // (1 - x1/x0) + (x1/x0) = 1
  LaurentPolynomial ratio =
      LaurentPolynomial::monomial(ExponentVector{-1, 1}, 1);
  LaurentPolynomial one_minus = sub(LaurentPolynomial::constant(2, 1), ratio);
  CHECK(add(one_minus, ratio) == LaurentPolynomial::constant(2, 1));

  CHECK_THROWS_AS(add(LaurentPolynomial(1), LaurentPolynomial(2)), usage_error);
}

TEST_CASE("multiplication examples") {
  // (1 - x1)(1 + x1) = 1 - x1^2
  LaurentPolynomial l = sub(LaurentPolynomial::constant(1, 1), var(1, 0));
  LaurentPolynomial r = add(LaurentPolynomial::constant(1, 1), var(1, 0));
  LaurentPolynomial expect(1);
  expect.add_term(ExponentVector{0}, 1);
  expect.add_term(ExponentVector{2}, -1);
  CHECK(mul(l, r) == expect);

  // (1 - x1/x2)(1 - x2/x1) = 2 - x1/x2 - x2/x1, the n = 1 Dyson product
  // at a = (1, 1)
  LaurentPolynomial f1 = sub(LaurentPolynomial::constant(2, 1),
                             LaurentPolynomial::monomial(ExponentVector{1, -1}, 1));
  LaurentPolynomial f2 = sub(LaurentPolynomial::constant(2, 1),
                             LaurentPolynomial::monomial(ExponentVector{-1, 1}, 1));
  LaurentPolynomial prod = mul(f1, f2);
  CHECK(prod.to_string() ==
        "-1 * x0^-1 x1^1 + 2 * x0^0 x1^0 + -1 * x0^1 x1^-1");

  CHECK(mul(prod, LaurentPolynomial(2)).is_zero());
}

TEST_CASE("pow examples") {
  LaurentPolynomial base = sub(LaurentPolynomial::constant(1, 1), var(1, 0));
  LaurentPolynomial sq(1);
  sq.add_term(ExponentVector{0}, 1);
  sq.add_term(ExponentVector{1}, -2);
  sq.add_term(ExponentVector{2}, 1);
  CHECK(pow(base, 2) == sq);
  CHECK(pow(base, 1) == base);
  CHECK(pow(base, 0) == LaurentPolynomial::constant(1, 1));

  LaurentPolynomial diff = sub(var(2, 0), var(2, 1));
  LaurentPolynomial dsq(2);
  dsq.add_term(ExponentVector{2, 0}, 1);
  dsq.add_term(ExponentVector{1, 1}, -2);
  dsq.add_term(ExponentVector{0, 2}, 1);
  CHECK(pow(diff, 2) == dsq);

  CHECK_THROWS_AS(pow(base, -1), usage_error);
}

TEST_CASE("coefficient and constant term") {
  LaurentPolynomial p(2);  // 2 - x0/x1 - x1/x0
  p.add_term(ExponentVector{0, 0}, 2);
  p.add_term(ExponentVector{1, -1}, -1);
  p.add_term(ExponentVector{-1, 1}, -1);
  CHECK(coefficient(p, ExponentVector{0, 0}) == 2);
  CHECK(constant_term(p) == 2);

  LaurentPolynomial q(1);  // 1 - x1^2
  q.add_term(ExponentVector{0}, 1);
  q.add_term(ExponentVector{2}, -1);
  CHECK(coefficient(q, ExponentVector{1}) == 0);

  // coefficient of x0 x1 in (x0 + x1)^2
  LaurentPolynomial s = pow(add(var(2, 0), var(2, 1)), 2);
  CHECK(coefficient(s, ExponentVector{1, 1}) == 2);

  CHECK(constant_term(LaurentPolynomial(3)) == 0);
  CHECK(constant_term(LaurentPolynomial::monomial(ExponentVector{1, -1}, 1)) == 0);
}

TEST_CASE("substitute_one") {
  // 1 - x1/x0 with slot 0 set to 1 -> 1 - x1
  LaurentPolynomial p = sub(LaurentPolynomial::constant(2, 1),
                            LaurentPolynomial::monomial(ExponentVector{-1, 1}, 1));
  LaurentPolynomial expect = sub(LaurentPolynomial::constant(1, 1), var(1, 0));
  CHECK(substitute_one(p, 0) == expect);

  // x0 x1 - x0 -> x1 - 1
  LaurentPolynomial q(2);
  q.add_term(ExponentVector{1, 1}, 1);
  q.add_term(ExponentVector{1, 0}, -1);
  CHECK(substitute_one(q, 0) == sub(var(1, 0), LaurentPolynomial::constant(1, 1)));

  CHECK_THROWS_AS(substitute_one(q, 2), usage_error);
}

TEST_CASE("series_one_minus_pow") {
  TruncationOrder t3 = TruncationOrder::uniform(1, 3);
  LaurentPolynomial geo(1);
  for (int j = 0; j <= 3; ++j) geo.add_term(ExponentVector{j}, 1);
  CHECK(series_one_minus_pow(0, -1, t3) == geo);

  CHECK(series_one_minus_pow(0, 0, t3) == LaurentPolynomial::constant(1, 1));

  TruncationOrder t2 = TruncationOrder::uniform(1, 2);
  LaurentPolynomial sq(1);
  sq.add_term(ExponentVector{0}, 1);
  sq.add_term(ExponentVector{1}, 2);
  sq.add_term(ExponentVector{2}, 3);
  CHECK(series_one_minus_pow(0, -2, t2) == sq);

  // nonnegative exponents expand to the exact binomial, still truncated
  LaurentPolynomial cube_cut(1);
  cube_cut.add_term(ExponentVector{0}, 1);
  cube_cut.add_term(ExponentVector{1}, -3);
  cube_cut.add_term(ExponentVector{2}, 3);
  CHECK(series_one_minus_pow(0, 3, t2) == cube_cut);
}

TEST_CASE("truncate") {
  LaurentPolynomial p(1);
  p.add_term(ExponentVector{0}, 1);
  p.add_term(ExponentVector{1}, 1);
  p.add_term(ExponentVector{4}, 1);
  LaurentPolynomial cut(1);
  cut.add_term(ExponentVector{0}, 1);
  cut.add_term(ExponentVector{1}, 1);
  CHECK(truncate(p, TruncationOrder::uniform(1, 2)) == cut);
  CHECK(truncate(p, TruncationOrder::uniform(1, 4)) == p);
  CHECK(truncate(LaurentPolynomial(1), TruncationOrder::uniform(1, 2)).is_zero());
}

TEST_CASE("term cap raises resource_error") {
  // (1 + x0)(1 + x1)... growth past a tiny cap
  LaurentPolynomial p = add(LaurentPolynomial::constant(2, 1), var(2, 0));
  LaurentPolynomial q = add(LaurentPolynomial::constant(2, 1), var(2, 1));
  CHECK_THROWS_AS(mul(p, q, 2), resource_error);
}

TEST_CASE("ring laws on random triples") {
  std::mt19937_64 rng(20240811);
  for (int iter = 0; iter < 1200; ++iter) {
    const int arity = 1 + static_cast<int>(rng() % 3);
    LaurentPolynomial p = random_poly(rng, arity, 5);
    LaurentPolynomial q = random_poly(rng, arity, 5);
    LaurentPolynomial r = random_poly(rng, arity, 5);
    REQUIRE(add(add(p, q), r) == add(p, add(q, r)));
    REQUIRE(mul(p, add(q, r)) == add(mul(p, q), mul(p, r)));
    REQUIRE(mul(p, q) == mul(q, p));
  }
}

TEST_CASE("truncation soundness for negative powers") {
  std::mt19937_64 rng(987654321);
  for (int iter = 0; iter < 1000; ++iter) {
    const int arity = 1 + static_cast<int>(rng() % 2);
    const int slot = static_cast<int>(rng() % static_cast<unsigned>(arity));
    const long e = -1 - static_cast<long>(rng() % 6);
    const int bound = static_cast<int>(rng() % 7);
    TruncationOrder trunc = TruncationOrder::uniform(arity, bound);
    LaurentPolynomial series = series_one_minus_pow(slot, e, trunc);
    LaurentPolynomial inverse =
        pow(sub(LaurentPolynomial::constant(arity, 1), var(arity, slot)), -e);
    LaurentPolynomial prod = truncate(mul(series, inverse), trunc);
    REQUIRE(prod == LaurentPolynomial::constant(arity, 1));
  }
}

TEST_CASE("product coefficients match direct convolution") {
  std::mt19937_64 rng(5550123);
  for (int iter = 0; iter < 1000; ++iter) {
    const int arity = 1 + static_cast<int>(rng() % 2);
    LaurentPolynomial p = random_poly(rng, arity, 4);
    LaurentPolynomial q = random_poly(rng, arity, 4);
    LaurentPolynomial prod = mul(p, q);
    ExponentVector m(arity);
    for (int v = 0; v < arity; ++v)
      m.set(v, static_cast<int>(rng() % 9) - 4);
    Int direct = 0;
    for (const auto& [pe, pc] : p.terms())
      for (const auto& [qe, qc] : q.terms())
        if (pe.plus(qe) == m) direct += pc * qc;
    REQUIRE(coefficient(prod, m) == direct);
  }
}

TEST_CASE("exponent vector ordering is total and lexicographic") {
  CHECK(ExponentVector{-1, 1} < ExponentVector{0, 0});
  CHECK(ExponentVector{0, 0} < ExponentVector{0, 1});
  CHECK(ExponentVector{0, 1} < ExponentVector{1, -1});
  CHECK(ExponentVector{2, 3} == ExponentVector{2, 3});
}
