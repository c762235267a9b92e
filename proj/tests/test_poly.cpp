#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "conwaykit/poly.hpp"

using namespace ck;

static const std::vector<VarSpec> XY{{"x", 1}, {"y", 1}};
static const std::vector<VarSpec> T2{{"t", 2}};

static LaurentPoly rnd_poly(std::mt19937& rng, const std::vector<VarSpec>& vars) {
  std::uniform_int_distribution<int> nterms(0, 6), expo(-5, 5), coef(-9, 9);
  LaurentPoly p(vars);
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    Exps e(vars.size());
    for (auto& x : e) x = expo(rng);
    p += LaurentPoly::monomial(vars, e, coef(rng));
  }
  return p;
}

TEST_CASE("ring identities") {
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    LaurentPoly a = rnd_poly(rng, XY), b = rnd_poly(rng, XY), c = rnd_poly(rng, XY);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a - a == LaurentPoly::zero(XY));
    CHECK(a * LaurentPoly::constant(XY, 1) == a);
    CHECK((a * LaurentPoly::zero(XY)).is_zero());
  }
}

TEST_CASE("no zero coefficients are stored") {
  LaurentPoly a = LaurentPoly::parse("x + y", XY);
  LaurentPoly b = LaurentPoly::parse("x - y", XY);
  LaurentPoly s = a + b - a - b + a * b - a * b;
  CHECK(s.terms().empty());
  LaurentPoly t = a - LaurentPoly::parse("y", XY);
  CHECK(t.terms().size() == 1);
}

TEST_CASE("monomial and power helpers") {
  LaurentPoly x = LaurentPoly::single(XY, "x");
  LaurentPoly y = LaurentPoly::single(XY, "y");
  CHECK((x + y).pow(2) == x * x + 2 * (x * y) + y * y);
  CHECK(x.pow(0).is_one());
  LaurentPoly m = LaurentPoly::monomial(XY, {-2, 3}, -4);
  CHECK(m.mul_monomial({2, -3}, -1) == LaurentPoly::constant(XY, 4));
}

TEST_CASE("canonical text is graded lexicographic and parses back") {
  LaurentPoly p = LaurentPoly::parse("y^2 - 2*x^-1*y + x^-2 + 3", XY);
  CHECK(p.str() == "x^-2 - 2*x^-1*y + 3 + y^2");
  CHECK(LaurentPoly::parse(p.str(), XY) == p);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(LaurentPoly::parse("", XY), PolyError);
  CHECK_THROWS_AS(LaurentPoly::parse("x + ", XY), PolyError);
  CHECK_THROWS_AS(LaurentPoly::parse("q", XY), PolyError);
  CHECK_THROWS_AS(LaurentPoly::parse("x^1/3", XY), PolyError);  // off the integer grid
  CHECK_THROWS_AS(LaurentPoly::parse("2 3", XY), PolyError);
}

TEST_CASE("half-grid exponents render as reduced fractions") {
  LaurentPoly v = LaurentPoly::parse("-t^-5/2 - t^-1/2", T2);
  CHECK(v.str() == "-t^-5/2 - t^-1/2");
  CHECK(v.min_exp("t") == -5);
  CHECK(v.max_exp("t") == -1);
  CHECK(v.span("t") == 4);
  CHECK(LaurentPoly::parse("t^2/4", {{"t", 4}}) == LaurentPoly::single({{"t", 4}}, "t", 2));
}

TEST_CASE("print/parse roundtrip on random polynomials") {
  std::mt19937 rng(11);
  for (int i = 0; i < 200; ++i) {
    LaurentPoly p = rnd_poly(rng, XY);
    CHECK(LaurentPoly::parse(p.str(), XY) == p);
  }
  for (int i = 0; i < 100; ++i) {
    LaurentPoly p = rnd_poly(rng, T2);
    CHECK(LaurentPoly::parse(p.str(), T2) == p);
  }
}

TEST_CASE("json roundtrip keeps arbitrary precision coefficients") {
  LaurentPoly p = LaurentPoly::parse("x", XY);
  for (int i = 0; i < 7; ++i) p = p * p;  // x^128
  p = p * LaurentPoly::constant(XY, Int("123456789012345678901234567890"));
  p += LaurentPoly::parse("-y^-3", XY);
  CHECK(LaurentPoly::from_json(p.json()) == p);
  std::mt19937 rng(13);
  for (int i = 0; i < 50; ++i) {
    LaurentPoly q = rnd_poly(rng, XY);
    CHECK(LaurentPoly::from_json(q.json()) == q);
  }
}

TEST_CASE("substitute with unit monomial images handles negative powers") {
  // x -> t^3, y -> -t^-1 on the half grid target
  LaurentPoly p = LaurentPoly::parse("x^-1*y + x*y^-2", XY);
  std::map<std::string, LaurentPoly> images{
      {"x", LaurentPoly::single(T2, "t", 6)},
      {"y", LaurentPoly::single(T2, "t", -2, -1)},
  };
  LaurentPoly got = p.substitute(T2, images);
  CHECK(got == LaurentPoly::parse("-t^-4 + t^5", T2));
}

TEST_CASE("substitute general image requires nonnegative powers") {
  LaurentPoly p = LaurentPoly::parse("x^2 + x*y", XY);
  std::map<std::string, LaurentPoly> images{
      {"x", LaurentPoly::parse("x + y", XY)},
      {"y", LaurentPoly::single(XY, "y")},
  };
  CHECK(p.substitute(XY, images) ==
        LaurentPoly::parse("x^2 + 3*x*y + 2*y^2", XY));
  LaurentPoly bad = LaurentPoly::parse("x^-1", XY);
  CHECK_THROWS_AS(bad.substitute(XY, images), PolyError);
}

TEST_CASE("substitute fractional monomial powers stay on the target grid") {
  // a -> t^3/4 with a appearing to the -4th power
  std::vector<VarSpec> A{{"a", 1}};
  std::vector<VarSpec> T4{{"t", 4}};
  LaurentPoly p = LaurentPoly::parse("a^-4 + a^4", A);
  std::map<std::string, LaurentPoly> images{{"a", LaurentPoly::single(T4, "t", 3)}};
  CHECK(p.substitute(T4, images) == LaurentPoly::parse("t^-3 + t^3", T4));
}

TEST_CASE("exact division by a binomial with monomial top slice") {
  LaurentPoly d = LaurentPoly::parse("x + y - 1", XY);
  std::mt19937 rng(17);
  for (int i = 0; i < 60; ++i) {
    LaurentPoly q = rnd_poly(rng, XY);
    LaurentPoly p = d * q;
    CHECK(p.div_exact(d, "x") == q);
  }
  CHECK_THROWS_AS(LaurentPoly::parse("x + 1", XY).div_exact(d, "x"), PolyError);
  // Laurent case: divisor (t^1/2 + t^-1/2), quotient with negative exponents
  LaurentPoly bin = LaurentPoly::parse("t^1/2 + t^-1/2", T2);
  LaurentPoly quo = LaurentPoly::parse("t^-2 - 3*t^1/2", T2);
  CHECK((bin * quo).div_exact(bin, "t") == quo);
}

TEST_CASE("regrid and slice") {
  LaurentPoly v = LaurentPoly::parse("-t^-5/2 + t^3", T2);
  LaurentPoly v4 = v.regrid({{"t", 4}});
  CHECK(v4.min_exp("t") == -10);
  CHECK(v4.max_exp("t") == 12);
  CHECK(v4.str() == v.str());
  std::vector<VarSpec> ATZ{{"a", 1}, {"t", 1}, {"z", 1}};
  LaurentPoly j = LaurentPoly::parse("-a^-4 - 2*a^-2 + t^2*a^-2 + z*a^-3 + z*a^-5 + z*t*a^-4", ATZ);
  CHECK(j.slice("z", 1) == LaurentPoly::parse("a^-5 + a^-3 + a^-4*t", ATZ));
  CHECK(j.slice("z", 0) == LaurentPoly::parse("-a^-4 - 2*a^-2 + a^-2*t^2", ATZ));
}

TEST_CASE("complex evaluation") {
  LaurentPoly p = LaurentPoly::parse("x^2 + y^-1", XY);
  auto val = p.eval({{"x", {0.0, 1.0}}, {"y", {2.0, 0.0}}});
  CHECK(std::abs(val - std::complex<double>(-0.5, 0.0)) < 1e-12);
  LaurentPoly h = LaurentPoly::parse("t^1/2", T2);
  auto hv = h.eval({{"t", {4.0, 0.0}}});
  CHECK(std::abs(hv - std::complex<double>(2.0, 0.0)) < 1e-12);
}
