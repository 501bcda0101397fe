#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "suppvar/groebner.hpp"

using namespace suppvar;

namespace {

RatPoly P(const std::string& s) { return parsePoly(s); }
Ideal I(const std::string& s) { return Ideal(parsePolyList(s)); }

// S-polynomial built with plain RatPoly arithmetic.
RatPoly sPoly(const RatPoly& f, const RatPoly& g) {
  Exponent l = f.leading().exp.lcm(g.leading().exp);
  RatPoly left = RatPoly::monomial(l / f.leading().exp, 1 / f.leading().coeff) * f;
  RatPoly right = RatPoly::monomial(l / g.leading().exp, 1 / g.leading().coeff) * g;
  return left - right;
}

RatPoly randomPoly(std::mt19937_64& rng, int nvars, int terms, int maxDeg) {
  RatPoly p;
  for (int t = 0; t < terms; ++t) {
    Exponent e;
    int budget = 1 + static_cast<int>(rng() % maxDeg);
    for (int k = 0; k < budget; ++k) e = e * Exponent::variable(static_cast<int>(rng() % nvars));
    p += RatPoly::monomial(e, mpq_class(static_cast<long>(rng() % 5) - 2));
  }
  return p;
}

}  // namespace

TEST_CASE("ideal normalization") {
  Ideal ideal({P("2*a1"), P("a1"), RatPoly(), P("-a2")});
  REQUIRE(ideal.generators().size() == 2);
  CHECK(ideal.toString() == "(a1, a2)");
  CHECK(Ideal({P("3")}).hasUnitGenerator());
}

TEST_CASE("Groebner basis examples") {
  auto gb = groebnerBasis({P("a1"), P("a1*a2")});
  REQUIRE(gb.size() == 1);
  CHECK(gb[0] == P("a1"));

  auto principal = groebnerBasis({P("a1*a3*a5+a2*a4*a6")});
  REQUIRE(principal.size() == 1);
  CHECK(principal[0] == P("a1*a3*a5+a2*a4*a6"));

  Ideal twisted = I("a1^2-a2, a2^2-a1");
  CHECK(idealMember(P("a1^4-a1"), twisted));
  CHECK_FALSE(idealMember(P("a1^3-a1"), twisted));

  auto unit = groebnerBasis({P("a1*a2-1"), P("a1")});
  REQUIRE(unit.size() == 1);
  CHECK(unit[0] == RatPoly(1L));
}

TEST_CASE("Groebner bases are closed under S-polynomials") {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<RatPoly> gens;
    for (int k = 0; k < 3; ++k) {
      RatPoly p = randomPoly(rng, 3, 3, 3);
      if (!p.isZero()) gens.push_back(p);
    }
    std::vector<RatPoly> gb;
    try {
      gb = groebnerBasis(gens);
    } catch (const GroebnerCapExceeded&) {
      continue;
    }
    ++checked;
    for (std::size_t i = 0; i < gb.size(); ++i)
      for (std::size_t j = i + 1; j < gb.size(); ++j) CHECK(normalForm(sPoly(gb[i], gb[j]), gb).isZero());
    for (const RatPoly& g : gens) CHECK(normalForm(g, gb).isZero());
    // Reduced: no basis term is divisible by another leading term.
    for (std::size_t i = 0; i < gb.size(); ++i)
      for (std::size_t j = 0; j < gb.size(); ++j)
        if (i != j)
          for (const auto& t : gb[i].terms()) CHECK_FALSE(gb[j].leading().exp.divides(t.exp));
  }
  CHECK(checked >= 30);
}

TEST_CASE("elimination order basis") {
  // t*(a1) - 1 eliminated against a1^2: unit ideal.
  auto gb = groebnerBasis({P("a1^2"), RatPoly(1L) - RatPoly::variable(kMaxVars - 1) * P("a1")},
                          MonomialOrder::eliminating(kMaxVars - 1));
  REQUIRE(gb.size() == 1);
  CHECK(gb[0].isConstant());
}

TEST_CASE("radical membership") {
  CHECK(radicalMember(P("a1"), I("a1^2")).member);
  CHECK(radicalMember(P("a1"), I("a1^2")).certainty == Certainty::Certified);
  CHECK_FALSE(radicalMember(P("a2"), I("a1")).member);
  CHECK(radicalMember(P("a1+a2"), I("a1^3, a2^2")).member);
  CHECK_FALSE(radicalMember(P("a1"), I("a1*a2")).member);
  CHECK(radicalMember(P("a1*a2"), I("a1^2*a2, a1*a2^2, a1^3, a2^3")).member);
}

TEST_CASE("radical membership is monotone in the ideal") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    RatPoly p = randomPoly(rng, 3, 2, 2);
    if (p.isZero()) continue;
    std::vector<RatPoly> gens{randomPoly(rng, 3, 2, 2), p * randomPoly(rng, 3, 2, 1)};
    gens.erase(std::remove_if(gens.begin(), gens.end(), [](const RatPoly& g) { return g.isZero(); }),
               gens.end());
    bool before = radicalMember(p, Ideal(gens)).member;
    gens.push_back(randomPoly(rng, 3, 2, 2));
    gens.erase(std::remove_if(gens.begin(), gens.end(), [](const RatPoly& g) { return g.isZero(); }),
               gens.end());
    bool after = radicalMember(p, Ideal(gens)).member;
    if (before) CHECK(after);
  }
}

TEST_CASE("gcd and squarefree part") {
  CHECK(polyGcd(P("a1^2-a2^2"), P("a1^2+2*a1*a2+a2^2")) == P("a1+a2"));
  CHECK(polyGcd(P("a1"), P("a2")) == RatPoly(1L));
  CHECK(squarefreePart(P("a1^3*a2")) == P("a1*a2"));
  CHECK(squarefreePart(P("(a1+a2)^2*(a1*a3*a5+a2*a4*a6)")) ==
        P("(a1+a2)*(a1*a3*a5+a2*a4*a6)").primitive());
  CHECK(squarefreePart(P("a1*a3*a5+a2*a4*a6")) == P("a1*a3*a5+a2*a4*a6"));
}

TEST_CASE("variety sampling") {
  std::mt19937_64 rng(9);
  PrimeField F(largePrimes()[0]);
  auto gens = parsePolyList("a1*a3*a5+a2*a4*a6");
  for (int i = 0; i < 50; ++i) {
    auto pt = sampleVarietyPoint(gens, 6, F, rng);
    REQUIRE(pt);
    CHECK(gens[0].evaluateMod(F, *pt) == 0);
  }
  auto coords = parsePolyList("a1, a2*a3");
  for (int i = 0; i < 20; ++i) {
    auto pt = sampleVarietyPoint(coords, 4, F, rng);
    REQUIRE(pt);
    CHECK((*pt)[0] == 0);
    CHECK(F.mul((*pt)[1], (*pt)[2]) == 0);
  }
}

TEST_CASE("variety comparison") {
  auto same = varietiesEqual(I("a1"), I("a1^3"), 2);
  CHECK(same.kind == VarietyVerdict::Kind::EqualCertified);
  auto diff = varietiesEqual(I("a1*a2"), I("a1"), 2);
  REQUIRE(diff.kind == VarietyVerdict::Kind::Different);
  REQUIRE(diff.witness);
  CHECK((*diff.witness)[0] != 0);
  CHECK((*diff.witness)[1] == 0);
  CHECK(varietiesEqual(I("a1*a3*a5+a2*a4*a6"), I("(a1*a3*a5+a2*a4*a6)^2"), 6).kind ==
        VarietyVerdict::Kind::EqualCertified);
  CHECK(varietiesEqual(I("a1, a2"), I("a1^2, a1*a2, a2^3"), 2).kind ==
        VarietyVerdict::Kind::EqualCertified);
}
