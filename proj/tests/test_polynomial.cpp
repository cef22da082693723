#include <doctest.h>

#include <random>

#include "colevel/error.hpp"
#include "colevel/examples.hpp"
#include "colevel/polynomial.hpp"

using namespace colevel;

namespace {

const std::vector<std::string> kVars = {"x1", "x2", "x3", "x4"};

MultiPoly random_poly(std::mt19937_64& rng, std::size_t nvars, int max_terms, unsigned max_exp) {
  std::uniform_int_distribution<int> coef(-20, 20), count(0, max_terms);
  std::uniform_int_distribution<unsigned> exp(0, max_exp);
  std::vector<Term> terms;
  for (int t = count(rng); t > 0; --t) {
    Exponents e(nvars);
    for (auto& x : e) x = exp(rng);
    terms.push_back(Term{e, coef(rng)});
  }
  return MultiPoly(nvars, std::move(terms));
}

std::vector<Element> random_point(std::mt19937_64& rng, const Field& field, std::size_t n) {
  std::uniform_int_distribution<std::uint64_t> pick(0, field.order().get_ui() - 1);
  std::vector<Element> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(field.element_at(pick(rng)));
  return out;
}

}  // namespace

TEST_CASE("parsing") {
  const MultiPoly cone = parse_polynomial("x1*x2 - x3*x4", kVars);
  CHECK(cone.terms().size() == 2);
  CHECK(cone.total_degree() == 2);

  CHECK(parse_polynomial("(x+1)^2 - x^2 - 2*x - 1", {"x"}).is_zero());

  const MultiPoly cubic = parse_polynomial("x^3 + 5", {"x"});
  REQUIRE(cubic.terms().size() == 2);
  CHECK(cubic.terms()[0].exponents == Exponents{3});
  CHECK(cubic.terms()[0].coef == 1);
  CHECK(cubic.terms()[1].exponents == Exponents{0});
  CHECK(cubic.terms()[1].coef == 5);

  CHECK(parse_polynomial("-(x1 - 2)*3", kVars) == parse_polynomial("6 - 3*x1", kVars));
  CHECK(parse_polynomial("2^10", kVars) == MultiPoly::constant(4, 1024));

  CHECK_THROWS_AS(parse_polynomial("x1 +", kVars), InputError);
  CHECK_THROWS_AS(parse_polynomial("y", kVars), InputError);
  CHECK_THROWS_AS(parse_polynomial("x1^x2", kVars), InputError);
  CHECK_THROWS_AS(parse_polynomial("(x1", kVars), InputError);
}

TEST_CASE("degrees and homogeneity") {
  CHECK(MultiPoly(3).is_zero());
  CHECK(MultiPoly(3).total_degree() == 0);
  CHECK(parse_polynomial("x1*x2 - x3*x4", kVars).is_homogeneous());
  CHECK_FALSE(parse_polynomial("x^2 + x", {"x"}).is_homogeneous());

  std::vector<Int> all{0, 1, 2, 3};
  const MultiPoly det = examples::symbolic_minor(4, all);
  CHECK(det.total_degree() == 4);
  CHECK(det.terms().size() == 24);
  CHECK(det.is_homogeneous());
  for (Int i = 0; i < 4; ++i) {
    std::vector<Int> keep;
    for (Int k = 0; k < 4; ++k)
      if (k != i) keep.push_back(k);
    const MultiPoly minor = examples::symbolic_minor(4, keep);
    CHECK(minor.is_homogeneous());
    CHECK(minor.total_degree() == 3);
  }
}

TEST_CASE("evaluation examples") {
  const Field gf2(2, 1), gf7(7, 1);
  const MultiPoly cone = parse_polynomial("x1*x2 - x3*x4", kVars);
  const std::vector<Element> ones(4, gf2.one());
  CHECK(evaluate(cone, ones, gf2).is_zero());
  const MultiPoly cubic = parse_polynomial("x^3 + 5", {"x"});
  const std::vector<Element> two{gf7.from_integer(2)};
  CHECK(evaluate(cubic, two, gf7) == gf7.from_integer(6));
  CHECK(evaluate(MultiPoly(1), two, gf7).is_zero());
  CHECK_THROWS_AS(evaluate(cubic, ones, gf2), InputError);
}

TEST_CASE("print and parse round trip") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 300; ++k) {
    const MultiPoly f = random_poly(rng, 4, 6, 4);
    REQUIRE(parse_polynomial(to_string(f, kVars), kVars) == f);
    REQUIRE(poly_from_json(to_json(f, kVars), kVars) == f);
    REQUIRE(poly_from_json(nlohmann::json(to_string(f, kVars)), kVars) == f);
  }
}

TEST_CASE("evaluation is a ring homomorphism") {
  std::mt19937_64 rng(11);
  for (const auto& [p, s] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 1}, {2, 3}, {3, 2}, {7, 1}, {5, 3}}) {
    const Field field(p, s);
    for (int k = 0; k < 60; ++k) {
      const MultiPoly f = random_poly(rng, 3, 5, 3), g = random_poly(rng, 3, 5, 3);
      const auto pt = random_point(rng, field, 3);
      const Element ef = evaluate(f, pt, field), eg = evaluate(g, pt, field);
      REQUIRE(evaluate(f + g, pt, field) == field.add(ef, eg));
      REQUIRE(evaluate(f - g, pt, field) == field.sub(ef, eg));
      REQUIRE(evaluate(f * g, pt, field) == field.mul(ef, eg));
      REQUIRE(evaluate(f.pow(3), pt, field) == field.pow(ef, 3));
      REQUIRE(evaluate(reduce_mod(f, p), pt, field) == ef);
    }
  }
}

TEST_CASE("reduction mod p") {
  const MultiPoly f = parse_polynomial("4*x1^2 + 2*x1 - 3", kVars);
  const ReducedPoly r = reduce_mod(f, 2);
  REQUIRE(r.terms.size() == 1);
  CHECK(r.terms[0].coef == 1);
  CHECK(reduce_mod(parse_polynomial("6*x1 - 6", kVars), 3).is_zero());
  const ReducedPoly neg = reduce_mod(parse_polynomial("-x1", kVars), 5);
  CHECK(neg.terms[0].coef == 4);
}
