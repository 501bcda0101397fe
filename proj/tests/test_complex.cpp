#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "suppvar/complex.hpp"
#include "suppvar/linalg.hpp"
#include "oracles.hpp"

using namespace suppvar;

namespace {

using oracle::product;
using oracle::squaresToZero;

std::vector<std::vector<int>> denseOf(const SparseMatrix& m) { return m.constantDense(); }

std::uint64_t evalEntry(const EntryCoeff& e, const std::vector<std::uint64_t>& pt,
                        const PrimeField& F) {
  std::uint64_t v = e.isConstant() ? 1 : pt[e.param];
  return e.sign > 0 ? v : F.neg(v);
}

int rankAt(const SparseMatrix& m, const std::vector<std::uint64_t>& pt, const PrimeField& F) {
  DenseModMatrix d(m.rows, std::vector<std::uint64_t>(m.cols, 0));
  for (const MatrixEntry& e : m.entries) d[e.row][e.col] = evalEntry(e.coeff, pt, F);
  return rankModP(d, F);
}

// Homology of the 2-periodic complex is nonzero iff ranks fall short.
bool periodicHomologyAt(const PeriodicComplex& c, const std::vector<std::uint64_t>& pt,
                    const PrimeField& F) {
  int r1 = rankAt(c.evenToOdd, pt, F), r2 = rankAt(c.oddToEven, pt, F);
  return r1 + r2 < static_cast<int>(c.even.size()) || r1 + r2 < static_cast<int>(c.odd.size());
}

bool totalHomologyAt(const TotalComplex& c, const std::vector<std::uint64_t>& pt,
                     const PrimeField& F) {
  for (const auto& [deg, basis] : c.pieces) {
    int out = c.diffs.contains(deg) ? rankAt(c.diffs.at(deg), pt, F) : 0;
    int in = c.diffs.contains(deg + 1) ? rankAt(c.diffs.at(deg + 1), pt, F) : 0;
    if (out + in < static_cast<int>(basis.size())) return true;
  }
  return false;
}

std::vector<MonomialSeq> corpus() {
  return {parseIdeal("x1^2,x2^2"),
          pathEdgeIdeal(4),
          cycleEdgeIdeal(4),
          cycleEdgeIdeal(5),
          cycleEdgeIdeal(6),
          parseIdeal("x1*x2,x1*x3,x2*x3"),
          parseIdeal("x1^2*x2,x2^2*x3,x3^2*x1"),
          parseIdeal("x1*x2,x3*x4,x5*x6,x1*x3*x5,x2*x4*x6"),
          parseIdeal("x1*x2*x3,x3*x4,x4*x5*x6,x1*x6"),
          parseIdeal("x1^2,x1*x2,x2^2")};
}

}  // namespace

TEST_CASE("Taylor differential on the 7-cycle class of {1,3,5}") {
  TaylorData data(cycleEdgeIdeal(7));
  TotalComplex t = taylorKbar(data);
  Subset top = Subset::fromLabels({1, 2, 3, 4, 5});
  std::vector<Subset> middle = {Subset::fromLabels({1, 3, 4, 5}), Subset::fromLabels({1, 2, 4, 5}),
                                Subset::fromLabels({1, 2, 3, 5})};
  Subset bottom = Subset::fromLabels({1, 3, 5});
  std::vector<int> column, row;
  for (Subset K : middle) {
    column.push_back(t.diffs.at(5).at(K, top).value_or(EntryCoeff::constant(0)).sign);
    row.push_back(t.diffs.at(4).at(bottom, K).value_or(EntryCoeff::constant(0)).sign);
  }
  CHECK(column == std::vector<int>{-1, 1, -1});
  CHECK(row == std::vector<int>{1, 0, -1});

  // Same maps in the ksgn-twisted basis.
  TotalComplex c = taylorSubcomplexC(data, bottom);
  CHECK(c.totalDimension() == 5);
  column.clear();
  row.clear();
  for (Subset K : middle) {
    column.push_back(c.diffs.at(5).at(K, top).value_or(EntryCoeff::constant(0)).sign);
    row.push_back(c.diffs.at(4).at(bottom, K).value_or(EntryCoeff::constant(0)).sign);
  }
  CHECK(column == std::vector<int>{1, 1, 1});
  CHECK(row == std::vector<int>{-1, 0, 1});
}

TEST_CASE("regular sequence has zero differential over the residue field") {
  // Every lcm is distinct, so each Koszul face map carries a factor f_j and
  // vanishes after reduction.
  TaylorData data(parseIdeal("x1^2,x2^2,x3^3"));
  TotalComplex t = taylorKbar(data);
  CHECK(t.totalDimension() == 8);
  for (const auto& [deg, m] : t.diffs) CHECK(m.entries.empty());
}

TEST_CASE("differentials square to zero") {
  for (const MonomialSeq& f : corpus()) {
    CAPTURE(f.toString());
    TaylorData data(f);
    TotalComplex t = taylorKbar(data);
    CHECK(t.totalDimension() == (1 << f.size()));
    CHECK(squaresToZero(t));
    PeriodicComplex periodicPart = periodicComplex(data);
    CHECK(product(periodicPart.oddToEven, periodicPart.evenToOdd).empty());
    CHECK(product(periodicPart.evenToOdd, periodicPart.oddToEven).empty());
    SubcomplexDiagram diag = subcomplexDiagram(data);
    GradingResult g = weakGrading(diag);
    if (auto* sigma = std::get_if<WeakGrading>(&g)) {
      TotalComplex total = totalization(data, diag, *sigma);
      CHECK(total.totalDimension() == (1 << f.size()));
      CHECK(squaresToZero(total));
      for (const auto& [deg, m] : total.diffs) {
        CHECK(m.cols == total.dimension(deg));
        CHECK(m.rows == total.dimension(deg - 1));
      }
    }
  }
}

TEST_CASE("exterior action") {
  TaylorData data(cycleEdgeIdeal(6));
  CHECK_FALSE(eAction(data, 0, Subset::fromLabels({1})));
  auto act = eAction(data, 2, Subset::fromLabels({1}));
  REQUIRE(act);
  CHECK(act->coeff == -1);
  CHECK(act->target == Subset::fromLabels({1, 3}));
  CHECK_FALSE(eAction(data, 1, Subset::fromLabels({1})));

  std::mt19937 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    Subset J(rng() & 63);
    int j = static_cast<int>(rng() % 6);
    auto b = eAction(data, j, J);
    auto c = eActionC(data, j, J);
    REQUIRE(b.has_value() == c.has_value());
    if (b) CHECK(c->coeff == b->coeff * data.ksgn(J) * data.ksgn(J.with(j)));
  }
}

TEST_CASE("Periodic oracle at explicit points") {
  PrimeField F(largePrimes()[0]);
  PeriodicComplex two = periodicComplex(TaylorData(parseIdeal("x1^2,x2^2")));
  CHECK(two.evenToOdd.rows == 2);
  CHECK(two.evenToOdd.cols == 2);
  CHECK(rankAt(two.evenToOdd, {1, 1}, F) == 1);
  CHECK(rankAt(two.evenToOdd, {1, 1}, F) + rankAt(two.oddToEven, {1, 1}, F) == 2);
  CHECK_FALSE(periodicHomologyAt(two, {1, 1}, F));
  CHECK(periodicHomologyAt(two, {0, 0}, F));

  PeriodicComplex six = periodicComplex(TaylorData(cycleEdgeIdeal(6)));
  CHECK_FALSE(periodicHomologyAt(six, {1, 1, 1, 1, 1, 1}, F));
  CHECK(periodicHomologyAt(six, {1, 1, 1, 1, 1, F.neg(1)}, F));
}

TEST_CASE("subcomplex diagram of the 4-edge path") {
  TaylorData data(pathEdgeIdeal(4));
  SubcomplexDiagram diag = subcomplexDiagram(data);
  std::set<std::pair<std::string, std::string>> edges;
  for (const DiagramEdge& e : diag.edges)
    edges.emplace(diag.classes[e.source].M.compact(), diag.classes[e.target].M.compact());
  std::set<std::pair<std::string, std::string>> expected = {
      {"∅", "1"},   {"∅", "2"},   {"∅", "3"},   {"∅", "4"},     {"1", "123"},
      {"1", "14"},  {"2", "234"}, {"3", "123"}, {"4", "14"},    {"4", "234"},
      {"12", "1234"}, {"34", "1234"}};
  CHECK(edges == expected);
  CHECK(diag.classes.size() == 12);
}

TEST_CASE("regular sequence diagram is the full cube") {
  TaylorData data(parseIdeal("x1^2,x2^2,x3^2"));
  SubcomplexDiagram diag = subcomplexDiagram(data);
  CHECK(diag.classes.size() == 8);
  CHECK(diag.edges.size() == 12);
  GradingResult g = weakGrading(diag);
  REQUIRE(std::holds_alternative<WeakGrading>(g));
  for (const DiagramClass& c : diag.classes) CHECK(std::get<WeakGrading>(g).at(c.M) == c.M.size());
  CHECK(components(diag).size() == 1);
}

TEST_CASE("6-cycle classes and components") {
  TaylorData data(cycleEdgeIdeal(6));
  SubcomplexDiagram diag = subcomplexDiagram(data);
  CHECK(diag.classes.size() == 29);
  std::map<int, int> bySize;
  for (const DiagramClass& c : diag.classes) ++bySize[c.M.size()];
  CHECK(bySize == std::map<int, int>{{0, 1}, {1, 6}, {2, 9}, {3, 6}, {4, 6}, {6, 1}});
  CHECK(diag.indexOf(Subset::fromLabels({1, 4})) >= 0);
  CHECK(diag.indexOf(Subset::fromLabels({1, 3})) < 0);
  // Odd-degree classes form two rotation-equivalent components, so the
  // rotation quotient has two components: one per lcm-degree parity.
  auto comps = components(diag);
  CHECK(comps.size() == 3);
  std::map<int, int> perParity;
  for (const auto& comp : comps) {
    std::set<int> parities;
    for (Subset M : comp) parities.insert(data.degree(M) % 2);
    CHECK(parities.size() == 1);
    ++perParity[*parities.begin()];
  }
  CHECK(perParity == std::map<int, int>{{0, 1}, {1, 2}});

  WeakGrading sigma = homogeneousSigma(data);
  CHECK(sigma.at(Subset()) == 0);
  CHECK(sigma.at(Subset::fromLabels({1})) == 1);
  CHECK(sigma.at(Subset::fromLabels({1, 4})) == 2);
  CHECK(sigma.at(Subset::fromLabels({1, 2, 3})) == 2);
  CHECK(sigma.at(Subset::full(6)) == 3);
  CHECK(isWeakGrading(diag, sigma));
}

TEST_CASE("10-cycle components split by parity") {
  TaylorData data(cycleEdgeIdeal(10));
  std::set<int> parities;
  for (const auto& comp : components(subcomplexDiagram(data))) {
    std::set<int> inside;
    for (Subset M : comp) inside.insert(data.degree(M) % 2);
    CHECK(inside.size() == 1);
    parities.insert(*inside.begin());
  }
  CHECK(parities == std::set<int>{0, 1});
}

TEST_CASE("weak grading of the 4-edge path") {
  TaylorData data(pathEdgeIdeal(4));
  SubcomplexDiagram diag = subcomplexDiagram(data);
  GradingResult g = weakGrading(diag);
  REQUIRE(std::holds_alternative<WeakGrading>(g));
  const WeakGrading& w = std::get<WeakGrading>(g);
  CHECK(isWeakGrading(diag, w));
  WeakGrading homogeneous = homogeneousSigma(data);
  CHECK(homogeneous.at(Subset::fromLabels({1, 2, 3, 4})) == 2);
  CHECK(isWeakGrading(diag, homogeneous));

  // The displayed weights, keyed by class name.
  std::map<std::string, int> displayed = {{"∅", 0}, {"1", 1},   {"2", 1},   {"3", 1},
                                          {"4", 1}, {"123", 2}, {"14", 2},  {"234", 2},
                                          {"12", 3}, {"34", 3}, {"1234", 4}, {"23", 5}};
  WeakGrading shown;
  for (const DiagramClass& c : diag.classes) shown.weights[c.M] = displayed.at(c.M.compact());
  CHECK(isWeakGrading(diag, shown));

  // All three agree up to a shift on each component.
  for (const auto& comp : components(diag)) {
    std::set<int> shiftHomogeneous, shiftShown;
    for (Subset M : comp) {
      shiftHomogeneous.insert(homogeneous.at(M) - w.at(M));
      shiftShown.insert(shown.at(M) - w.at(M));
      CHECK(w.at(M) >= 0);
    }
    CHECK(shiftHomogeneous.size() == 1);
    CHECK(shiftShown.size() == 1);
    int minimum = 1 << 20;
    for (Subset M : comp) minimum = std::min(minimum, w.at(M));
    CHECK(minimum == 0);
  }
}

TEST_CASE("non-gradable diagram yields a witness") {
  TaylorData data(parseIdeal("x1*x2,x3*x4,x5*x6,x1*x3*x5,x2*x4*x6"));
  SubcomplexDiagram diag = subcomplexDiagram(data);
  GradingResult g = weakGrading(diag);
  REQUIRE(std::holds_alternative<GradingObstruction>(g));
  const auto& walk = std::get<GradingObstruction>(g).witness;
  std::set<Subset> involved(walk.begin(), walk.end());
  std::set<Subset> expected = {Subset(), Subset::fromLabels({1}), Subset::fromLabels({1, 2}),
                               Subset::fromLabels({4}), Subset::fromLabels({1, 2, 3, 4, 5})};
  CHECK(involved == expected);
  CHECK(walk.front() == walk.back());
  // Consecutive classes are joined by a diagram edge in one direction or the other.
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
    int a = diag.indexOf(walk[i]), b = diag.indexOf(walk[i + 1]);
    bool joined = false;
    for (const DiagramEdge& e : diag.edges)
      joined = joined || (e.source == a && e.target == b) || (e.source == b && e.target == a);
    CHECK(joined);
  }
  CHECK(std::get<GradingObstruction>(g).describe().find("T_12345") != std::string::npos);
  WeakGrading bogus;
  for (const DiagramClass& c : diag.classes) bogus.weights[c.M] = c.M.size();
  CHECK_THROWS_AS(totalization(data, diag, bogus), std::invalid_argument);
}

TEST_CASE("gradability matches the coprime-subset criterion") {
  // Gradable iff no S, T with pairwise coprime members, f_S = f_T, |S| != |T|.
  std::mt19937 rng(77);
  int gradable = 0, obstructed = 0;
  for (int trial = 0; trial < 400; ++trial) {
    int n = 2 + static_cast<int>(rng() % 3);
    std::vector<Monomial> gens;
    while (static_cast<int>(gens.size()) < n) {
      std::vector<std::pair<int, int>> e;
      for (int v = 0; v < 5; ++v) e.emplace_back(v, static_cast<int>(rng() % 3 == 0));
      Monomial m(e);
      if (!m.isOne()) gens.push_back(m);
    }
    MonomialSeq f(gens, 5);
    TaylorData data(f);
    auto pairwiseCoprime = [&](Subset S) {
      for (int a : S.indices())
        for (int b : S.indices())
          if (a < b && !f[a].coprimeWith(f[b])) return false;
      return true;
    };
    bool witness = false;
    for (std::uint32_t s = 0; s < data.subsetCount(); ++s)
      for (std::uint32_t t = 0; t < data.subsetCount(); ++t)
        if (pairwiseCoprime(Subset(s)) && pairwiseCoprime(Subset(t)) &&
            data.lcm(Subset(s)) == data.lcm(Subset(t)) &&
            Subset(s).size() != Subset(t).size())
          witness = true;
    bool ok = std::holds_alternative<WeakGrading>(weakGrading(subcomplexDiagram(data)));
    CHECK(ok == !witness);
    (ok ? gradable : obstructed)++;
  }
  CHECK(gradable > 0);
  CHECK(obstructed > 0);
}

TEST_CASE("simplicial complexes of classes") {
  TaylorData c7(cycleEdgeIdeal(7));
  SimplicialComplexT d = deltaComplex(c7, Subset::fromLabels({1, 3, 5}));
  std::vector<Subset> faces = {Subset(), Subset::fromLabels({2}), Subset::fromLabels({3}),
                               Subset::fromLabels({4}), Subset::fromLabels({2, 4})};
  CHECK(d.faces == faces);
  CHECK(d.isClosed());

  CochainComplex cc = reducedCochain(d);
  CHECK(denseOf(cc.delta(-1)) == std::vector<std::vector<int>>{{1}, {1}, {1}});
  // Sign convention (-1)^{#{w in σ : w < v}} gives (-1, 0, 1); the opposite
  // convention gives the negated row (1, 0, -1).
  CHECK(denseOf(cc.delta(0)) == std::vector<std::vector<int>>{{-1, 0, 1}});

  TaylorData p3(pathEdgeIdeal(2));
  SimplicialComplexT trivial = deltaComplex(p3, Subset::fromLabels({1, 2}));
  CHECK(trivial.faces == std::vector<Subset>{Subset()});
  CHECK(cohomologyRanks(trivial, 0) == std::map<int, int>{{-1, 1}});

  TaylorData c6(cycleEdgeIdeal(6));
  SimplicialComplexT full = deltaComplex(c6, Subset::full(6));
  CHECK(full.isClosed());
  std::map<int, int> bySize;
  for (Subset face : full.faces) ++bySize[face.size()];
  // All subsets of the six generators without cyclically adjacent pairs.
  CHECK(bySize == std::map<int, int>{{0, 1}, {1, 6}, {2, 9}, {3, 2}});
  CHECK(cohomologyRanks(full, 0) == std::map<int, int>{{-1, 0}, {0, 0}, {1, 2}, {2, 0}});
  CHECK(cohomologyRanks(full, 7) == std::map<int, int>{{-1, 0}, {0, 0}, {1, 2}, {2, 0}});

  // One vertex: a single augmentation map (1).
  SimplicialComplexT point{Subset::single(0), {Subset(), Subset::single(0)}};
  CochainComplex pc = reducedCochain(point);
  CHECK(denseOf(pc.delta(-1)) == std::vector<std::vector<int>>{{1}});
}

TEST_CASE("Taylor subcomplexes equal reduced cochain complexes") {
  for (const MonomialSeq& f : corpus()) {
    CAPTURE(f.toString());
    TaylorData data(f);
    for (const DiagramClass& cls : subcomplexDiagram(data).classes) {
      SimplicialComplexT delta = deltaComplex(data, cls.M);
      CHECK(delta.isClosed());
      CHECK(delta.faces.size() == cls.members.size());
      CochainComplex cochain = reducedCochain(delta);
      TotalComplex sub = taylorSubcomplexC(data, cls.M);
      const int top = cls.M.size();
      for (const auto& [deg, m] : sub.diffs) {
        // Taylor degree i pairs with cochain degree |M| - i - 1 via K -> M∖K.
        const SparseMatrix& dual = cochain.delta(top - deg - 1);
        REQUIRE(dual.rows == m.rows);
        REQUIRE(dual.cols == m.cols);
        for (int r = 0; r < m.rows; ++r)
          for (int c = 0; c < m.cols; ++c) {
            auto a = m.at(m.rowBasis[r], m.colBasis[c]);
            auto b = dual.at(cls.M - m.rowBasis[r], cls.M - m.colBasis[c]);
            CHECK(a.has_value() == b.has_value());
            if (a && b) CHECK(a->sign == b->sign);
          }
      }
    }
  }
}

TEST_CASE("totalization agrees with the Periodic oracle") {
  PrimeField F(largePrimes()[0]);
  std::mt19937_64 rng(5);
  for (const MonomialSeq& f : corpus()) {
    TaylorData data(f);
    SubcomplexDiagram diag = subcomplexDiagram(data);
    GradingResult g = weakGrading(diag);
    if (!std::holds_alternative<WeakGrading>(g)) continue;
    CAPTURE(f.toString());
    TotalComplex total = totalization(data, diag, std::get<WeakGrading>(g));
    PeriodicComplex periodicPart = periodicComplex(data);
    int agree = 0;
    for (int k = 0; k < 100; ++k) {
      std::vector<std::uint64_t> pt(f.size());
      for (auto& v : pt) v = rng() % F.p();
      // Mix in points on coordinate subspaces, where homology often appears.
      if (k % 3 == 0) pt[rng() % pt.size()] = 0;
      if (k % 5 == 0) pt[rng() % pt.size()] = 0;
      agree += totalHomologyAt(total, pt, F) == periodicHomologyAt(periodicPart, pt, F);
    }
    CHECK(agree == 100);
  }
}

TEST_CASE("restricting the totalization to components") {
  TaylorData data(cycleEdgeIdeal(6));
  SubcomplexDiagram diag = subcomplexDiagram(data);
  WeakGrading sigma = std::get<WeakGrading>(weakGrading(diag));
  int total = 0;
  for (const auto& comp : components(diag)) {
    TotalComplex part = totalization(data, diag, sigma, &comp);
    CHECK(squaresToZero(part));
    total += part.totalDimension();
  }
  CHECK(total == 64);
  std::vector<Subset> partial = {Subset()};
  CHECK_THROWS_AS(totalization(data, diag, sigma, &partial), std::invalid_argument);
}

TEST_CASE("path subcomplex cohomology") {
  // Δ of the class of the first i edges of a long cycle is the independence
  // complex of a path; 3 | i gives trivial reduced cohomology, otherwise a
  // single class in degree floor(i/3 - 1).
  for (int n = 4; n <= 10; ++n) {
    TaylorData data(cycleEdgeIdeal(n));
    for (int i = 1; i < n - 1; ++i) {
      CAPTURE(n);
      CAPTURE(i);
      std::map<int, int> ranks = cohomologyRanks(deltaComplex(data, Subset::full(i)), 0);
      int sum = 0;
      for (const auto& [deg, r] : ranks) sum += r;
      if (i % 3 == 0) {
        CHECK(sum == 0);
      } else {
        CHECK(sum == 1);
        CHECK(ranks[i / 3 - 1] == 1);
      }
    }
  }
}
