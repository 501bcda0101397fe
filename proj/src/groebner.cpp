#include "suppvar/groebner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace suppvar {

// Ideal ------------------------------------------------------------------------

Ideal::Ideal(std::vector<RatPoly> gens) {
  for (RatPoly& g : gens)
    if (!g.isZero()) gens_.push_back(g.primitive());
  std::sort(gens_.begin(), gens_.end(), [](const RatPoly& a, const RatPoly& b) {
    return a.toString() < b.toString();
  });
  gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
}

bool Ideal::hasUnitGenerator() const {
  return std::any_of(gens_.begin(), gens_.end(), [](const RatPoly& g) { return g.isConstant(); });
}

int Ideal::span() const {
  int s = 0;
  for (const RatPoly& g : gens_) s = std::max(s, g.span());
  return s;
}

std::string Ideal::toString() const {
  std::string out = "(";
  for (std::size_t i = 0; i < gens_.size(); ++i) out += (i ? ", " : "") + gens_[i].toString();
  return out + ")";
}

// Integer polynomials in a chosen order ----------------------------------------------

namespace {

struct ITerm {
  Exponent exp;
  mpz_class c;
};
using IPoly = std::vector<ITerm>;  // strictly descending in the active order

IPoly toInt(const RatPoly& p, const MonomialOrder& order) {
  RatPoly prim = p.primitive();
  IPoly out;
  out.reserve(prim.terms().size());
  for (const auto& t : prim.terms()) out.push_back({t.exp, t.coeff.get_num()});
  std::sort(out.begin(), out.end(),
            [&](const ITerm& a, const ITerm& b) { return order.greater(a.exp, b.exp); });
  return out;
}

RatPoly toRat(const IPoly& p) {
  std::vector<RatPoly::Term> terms;
  terms.reserve(p.size());
  for (const ITerm& t : p) terms.push_back({t.exp, mpq_class(t.c)});
  return RatPoly::fromTerms(std::move(terms));
}

void makePrimitive(IPoly& p) {
  if (p.empty()) return;
  mpz_class g = 0;
  for (const ITerm& t : p) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
    if (g == 1) break;
  }
  if (sgn(p.front().c) < 0) g = -g;
  if (g != 1)
    for (ITerm& t : p) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
}

/// a*x - b*m*y, skipping the leading terms which are known to cancel when
/// dropLead is set.
IPoly combine(const mpz_class& a, const IPoly& x, const mpz_class& b, const Exponent& m,
              const IPoly& y, const MonomialOrder& order, bool dropLead) {
  IPoly out;
  out.reserve(x.size() + y.size());
  auto i = x.begin() + (dropLead ? 1 : 0);
  auto j = y.begin() + (dropLead ? 1 : 0);
  while (i != x.end() || j != y.end()) {
    if (j == y.end()) {
      out.push_back({i->exp, a * i->c});
      ++i;
      continue;
    }
    Exponent shifted = j->exp * m;
    if (i == x.end() || order.greater(shifted, i->exp)) {
      out.push_back({shifted, -b * j->c});
      ++j;
    } else if (order.greater(i->exp, shifted)) {
      out.push_back({i->exp, a * i->c});
      ++i;
    } else {
      mpz_class c = a * i->c - b * j->c;
      if (sgn(c) != 0) out.push_back({i->exp, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

const IPoly* findReducer(const Exponent& e, const std::vector<IPoly>& basis,
                         const std::vector<bool>* active) {
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (active && !(*active)[k]) continue;
    if (!basis[k].empty() && basis[k].front().exp.divides(e)) return &basis[k];
  }
  return nullptr;
}

IPoly reduceFully(IPoly h, const std::vector<IPoly>& basis, const MonomialOrder& order,
                  const std::vector<bool>* active, std::size_t maxTerms) {
  IPoly rem;
  int steps = 0;
  while (!h.empty()) {
    const IPoly* g = findReducer(h.front().exp, basis, active);
    if (g == nullptr) {
      rem.push_back(std::move(h.front()));
      h.erase(h.begin());
      continue;
    }
    mpz_class a = g->front().c, b = h.front().c, d;
    mpz_gcd(d.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    a /= d;
    b /= d;
    Exponent m = h.front().exp / g->front().exp;
    h = combine(a, h, b, m, *g, order, true);
    if (a != 1 && a != -1)
      for (ITerm& t : rem) t.c *= a;
    if (h.size() + rem.size() > maxTerms) throw GroebnerCapExceeded("term count cap exceeded");
    if (++steps % 16 == 0) {
      // Strip the common content of h and rem together.
      mpz_class content = 0;
      for (const ITerm& t : h) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), t.c.get_mpz_t());
      for (const ITerm& t : rem) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), t.c.get_mpz_t());
      if (content > 1) {
        for (ITerm& t : h) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), content.get_mpz_t());
        for (ITerm& t : rem) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), content.get_mpz_t());
      }
    }
  }
  makePrimitive(rem);
  return rem;
}

struct Pair {
  int i = 0;
  int j = 0;
  Exponent lcm;
  int sugar = 0;
};

int polyDegree(const IPoly& p) {
  int d = 0;
  for (const ITerm& t : p) d = std::max(d, t.exp.degree());
  return d;
}

std::vector<IPoly> buchberger(std::vector<IPoly> input, const MonomialOrder& order,
                              const GroebnerLimits& limits) {
  std::vector<IPoly> basis;
  std::vector<int> sugar;
  std::vector<bool> active;
  std::vector<Pair> pairs;
  std::set<std::pair<int, int>> pending;

  auto addPolynomial = [&](IPoly p, int s) {
    const int k = static_cast<int>(basis.size());
    if (static_cast<std::size_t>(k) >= limits.maxBasis)
      throw GroebnerCapExceeded("basis size cap exceeded");
    for (int i = 0; i < k; ++i) {
      Exponent l = basis[i].front().exp.lcm(p.front().exp);
      int si = sugar[i] + (l / basis[i].front().exp).degree();
      int sk = s + (l / p.front().exp).degree();
      pairs.push_back({i, k, l, std::max(si, sk)});
      pending.insert({i, k});
    }
    // Earlier elements whose leading term is now redundant stop acting as
    // reducers but keep their pairs.
    for (int i = 0; i < k; ++i)
      if (active[i] && p.front().exp.divides(basis[i].front().exp)) active[i] = false;
    basis.push_back(std::move(p));
    sugar.push_back(s);
    active.push_back(true);
  };

  std::sort(input.begin(), input.end(), [&](const IPoly& a, const IPoly& b) {
    return order.greater(b.front().exp, a.front().exp);
  });
  for (IPoly& p : input) {
    IPoly r = reduceFully(std::move(p), basis, order, &active, limits.maxTerms);
    if (r.empty()) continue;
    if (r.front().exp.isZero()) return {IPoly{ITerm{Exponent(), 1}}};
    int s = polyDegree(r);
    addPolynomial(std::move(r), s);
  }

  std::size_t processed = 0;
  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      if (a.sugar != b.sugar) return a.sugar < b.sugar;
      return order.greater(b.lcm, a.lcm);
    });
    Pair pair = *best;
    *best = pairs.back();
    pairs.pop_back();
    pending.erase({pair.i, pair.j});
    if (++processed > limits.maxPairs) throw GroebnerCapExceeded("pair count cap exceeded");

    const IPoly& f = basis[pair.i];
    const IPoly& g = basis[pair.j];
    if (f.front().exp.coprimeWith(g.front().exp)) continue;
    bool chain = false;
    for (int k = 0; k < static_cast<int>(basis.size()) && !chain; ++k) {
      if (k == pair.i || k == pair.j) continue;
      if (!basis[k].front().exp.divides(pair.lcm)) continue;
      auto key = [](int x, int y) { return std::make_pair(std::min(x, y), std::max(x, y)); };
      if (!pending.contains(key(pair.i, k)) && !pending.contains(key(pair.j, k))) chain = true;
    }
    if (chain) continue;

    mpz_class a = g.front().c, b = f.front().c, d;
    mpz_gcd(d.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    a /= d;
    b /= d;
    // S = a * (lcm/lt f) f - b * (lcm/lt g) g
    Exponent mf = pair.lcm / f.front().exp;
    Exponent mg = pair.lcm / g.front().exp;
    IPoly left;
    left.reserve(f.size());
    for (const ITerm& t : f) left.push_back({t.exp * mf, t.c});
    IPoly s = combine(a, left, b, mg, g, order, true);
    IPoly r = reduceFully(std::move(s), basis, order, &active, limits.maxTerms);
    if (r.empty()) continue;
    if (r.front().exp.isZero()) return {IPoly{ITerm{Exponent(), 1}}};
    addPolynomial(std::move(r), pair.sugar);
  }

  // Minimal, then reduced.
  std::vector<IPoly> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t k = 0; k < basis.size() && !redundant; ++k) {
      if (k == i) continue;
      const Exponent& lk = basis[k].front().exp;
      const Exponent& li = basis[i].front().exp;
      if (lk.divides(li) && (lk != li || k < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  std::vector<IPoly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<IPoly> others;
    for (std::size_t k = 0; k < minimal.size(); ++k)
      if (k != i) others.push_back(minimal[k]);
    reduced.push_back(reduceFully(minimal[i], others, order, nullptr, limits.maxTerms));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const IPoly& x, const IPoly& y) {
    return order.greater(y.front().exp, x.front().exp);
  });
  return reduced;
}

}  // namespace

std::vector<RatPoly> groebnerBasis(const std::vector<RatPoly>& gens, MonomialOrder order,
                                   const GroebnerLimits& limits) {
  std::vector<IPoly> input;
  for (const RatPoly& g : gens)
    if (!g.isZero()) input.push_back(toInt(g, order));
  std::vector<RatPoly> out;
  for (const IPoly& p : buchberger(std::move(input), order, limits)) out.push_back(toRat(p));
  return out;
}

RatPoly normalForm(const RatPoly& p, const std::vector<RatPoly>& basis, MonomialOrder order) {
  if (p.isZero()) return p;
  std::vector<IPoly> ib;
  for (const RatPoly& b : basis) ib.push_back(toInt(b, order));
  return toRat(reduceFully(toInt(p, order), ib, order, nullptr,
                           std::numeric_limits<std::size_t>::max()));
}

bool idealMember(const RatPoly& p, const Ideal& ideal, const GroebnerLimits& limits) {
  if (p.isZero()) return true;
  std::vector<RatPoly> gb = groebnerBasis(ideal.generators(), MonomialOrder::degrevlex(), limits);
  return normalForm(p, gb).isZero();
}

// Sampling -------------------------------------------------------------------------

std::optional<std::vector<std::uint64_t>> sampleVarietyPoint(const std::vector<RatPoly>& gens,
                                                             int nvars, const PrimeField& field,
                                                             std::mt19937_64& rng) {
  std::vector<std::optional<std::uint64_t>> value(nvars);
  auto uniform = [&] { return rng() % field.p(); };
  std::vector<std::size_t> order(gens.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);

  for (std::size_t idx : order) {
    const RatPoly& g = gens[idx];
    std::vector<bool> factor(nvars, false);
    bool vanishes = false;
    for (int v = 0; v < nvars; ++v) {
      factor[v] = g.degreeIn(v) > 0 && g.substitute(v, RatPoly(0L)).isZero();
      if (factor[v] && value[v] == 0u) vanishes = true;
    }
    if (vanishes) continue;
    std::vector<int> candidates;
    for (int v = 0; v < nvars; ++v)
      if (!value[v] && (g.degreeIn(v) == 1 || factor[v])) candidates.push_back(v);
    if (candidates.empty()) {
      for (int v = 0; v < nvars; ++v)
        if (!value[v] && g.degreeIn(v) > 0) value[v] = uniform();
      std::vector<std::uint64_t> pt(nvars);
      for (int v = 0; v < nvars; ++v) pt[v] = value[v].value_or(0);
      if (g.evaluateMod(field, pt) != 0) return std::nullopt;
      continue;
    }
    int solve = candidates[rng() % candidates.size()];
    if (factor[solve]) {
      value[solve] = 0;
      continue;
    }
    for (int v = 0; v < nvars; ++v)
      if (v != solve && !value[v] && g.degreeIn(v) > 0) value[v] = uniform();
    // g = c * a_solve + r with c, r free of a_solve.
    std::vector<std::uint64_t> pt(nvars);
    for (int v = 0; v < nvars; ++v) pt[v] = value[v].value_or(0);
    pt[solve] = 0;
    std::uint64_t r = g.evaluateMod(field, pt);
    pt[solve] = 1;
    std::uint64_t c = field.sub(g.evaluateMod(field, pt), r);
    if (c == 0) {
      if (r != 0) return std::nullopt;
      value[solve] = uniform();
    } else {
      value[solve] = field.mul(field.neg(r), field.inv(c));
    }
  }
  std::vector<std::uint64_t> pt(nvars);
  for (int v = 0; v < nvars; ++v) pt[v] = value[v] ? *value[v] : uniform();
  for (const RatPoly& g : gens)
    if (g.evaluateMod(field, pt) != 0) return std::nullopt;
  return pt;
}

// Radical membership -------------------------------------------------------------

RadicalVerdict radicalMember(const RatPoly& p, const Ideal& ideal, const RadicalOptions& options) {
  if (p.isZero()) return {true, Certainty::Certified, -std::numeric_limits<double>::infinity()};
  if (ideal.hasUnitGenerator())
    return {true, Certainty::Certified, -std::numeric_limits<double>::infinity()};
  const int t = kMaxVars - 1;
  if (std::max(p.span(), ideal.span()) > t)
    throw std::invalid_argument("too many variables for the auxiliary-variable test");
  try {
    if (idealMember(p, ideal, options.limits))
      return {true, Certainty::Certified, -std::numeric_limits<double>::infinity()};
    std::vector<RatPoly> gens = ideal.generators();
    gens.push_back(RatPoly(1L) - RatPoly::variable(t) * p);
    std::vector<RatPoly> gb = groebnerBasis(gens, MonomialOrder::eliminating(t), options.limits);
    bool unit = gb.size() == 1 && gb[0].isConstant();
    return {unit, Certainty::Certified, -std::numeric_limits<double>::infinity()};
  } catch (const GroebnerCapExceeded&) {
  }
  // Randomized fallback on points of V(I).
  const int nvars = std::max(p.span(), ideal.span());
  std::mt19937_64 rng(options.seed);
  PrimeField field(largePrimes()[0]);
  int checked = 0;
  for (int attempt = 0; attempt < options.fallbackSamples * 8 && checked < options.fallbackSamples;
       ++attempt) {
    auto pt = sampleVarietyPoint(ideal.generators(), nvars, field, rng);
    if (!pt) continue;
    ++checked;
    if (p.evaluateMod(field, *pt) != 0) return {false, Certainty::Randomized, 0};
  }
  double perSample = std::log2(static_cast<double>(std::max(1, p.degree()))) -
                     std::log2(static_cast<double>(field.p()));
  return {true, Certainty::Randomized, checked * perSample};
}

// gcd ---------------------------------------------------------------------------------

RatPoly polyGcd(const RatPoly& f, const RatPoly& g, const GroebnerLimits& limits) {
  if (f.isZero()) return g.primitive();
  if (g.isZero()) return f.primitive();
  if (f.isConstant() || g.isConstant()) return RatPoly(1L);
  const int t = kMaxVars - 1;
  RatPoly tvar = RatPoly::variable(t);
  // (f) ∩ (g) = (tf, (1-t)g) ∩ Q[a], generated by lcm(f, g).
  std::vector<RatPoly> gb =
      groebnerBasis({tvar * f, (RatPoly(1L) - tvar) * g}, MonomialOrder::eliminating(t), limits);
  for (const RatPoly& b : gb)
    if (b.degreeIn(t) == 0) return (f * g).divideExact(b).primitive();
  throw std::logic_error("elimination produced no lcm");
}

RatPoly squarefreePart(const RatPoly& g, const GroebnerLimits& limits) {
  if (g.isConstant()) return g.isZero() ? g : RatPoly(1L);
  RatPoly common = g;
  for (int v = 0; v < g.span() && !common.isConstant(); ++v)
    if (g.degreeIn(v) > 0) common = polyGcd(common, g.derivative(v), limits);
  return g.divideExact(common).primitive();
}

// Variety comparison ------------------------------------------------------------------

std::string VarietyVerdict::kindName() const {
  switch (kind) {
    case Kind::EqualCertified: return "EqualCertified";
    case Kind::EqualRandomized: return "EqualRandomized";
    case Kind::Different: return "Different";
  }
  return "";
}

namespace {

// A point of V(on) where some generator of off is nonzero.
std::optional<std::vector<std::uint64_t>> separatingPoint(const Ideal& on, const Ideal& off,
                                                          int nvars, std::mt19937_64& rng,
                                                          const PrimeField& field) {
  for (int attempt = 0; attempt < 400; ++attempt) {
    auto pt = sampleVarietyPoint(on.generators(), nvars, field, rng);
    if (!pt) continue;
    for (const RatPoly& g : off.generators())
      if (g.evaluateMod(field, *pt) != 0) return pt;
  }
  return std::nullopt;
}

}  // namespace

VarietyVerdict varietiesEqual(const Ideal& a, const Ideal& b, int nvars,
                              const RadicalOptions& options) {
  VarietyVerdict verdict;
  verdict.log2Failure = -std::numeric_limits<double>::infinity();
  auto contained = [&](const Ideal& small, const Ideal& big) {
    // V(big) ⊆ V(small) iff each generator of small vanishes on V(big).
    for (const RatPoly& g : small.generators()) {
      RadicalVerdict r = radicalMember(g, big, options);
      if (r.certainty == Certainty::Randomized) {
        verdict.kind = VarietyVerdict::Kind::EqualRandomized;
        verdict.log2Failure = std::max(verdict.log2Failure, r.log2Failure);
      }
      if (!r.member) return false;
    }
    return true;
  };
  bool aInB = contained(b, a);  // V(a) ⊆ V(b)
  bool bInA = aInB && contained(a, b);
  if (aInB && bInA) return verdict;

  verdict.kind = VarietyVerdict::Kind::Different;
  std::mt19937_64 rng(options.seed);
  PrimeField field(largePrimes()[0]);
  verdict.witness = aInB ? separatingPoint(b, a, nvars, rng, field)
                         : separatingPoint(a, b, nvars, rng, field);
  if (verdict.witness) verdict.witnessPrime = field.p();
  return verdict;
}

}  // namespace suppvar
