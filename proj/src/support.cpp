#include "suppvar/support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace suppvar {

// Oracles -------------------------------------------------------------------------

DiffModule buildModule(const TaylorData& data, Engine engine) {
  if (engine == Engine::Periodic) return DiffModule::fromPeriodic(periodicComplex(data));
  SubcomplexDiagram diag = subcomplexDiagram(data);
  GradingResult grading = weakGrading(diag);
  if (auto* obstruction = std::get_if<GradingObstruction>(&grading)) throw NonGradableError(*obstruction);
  return DiffModule::fromTotal(totalization(data, diag, std::get<WeakGrading>(grading)));
}

bool membershipOracle(const MonomialSeq& f, const FieldPoint& point, Engine engine) {
  if (static_cast<int>(point.coords.size()) != f.size())
    throw std::invalid_argument("point dimension does not match the number of generators");
  if (point.isZero()) return true;
  TaylorData data(f);
  return homologyNonzeroAt(buildModule(data, engine), point);
}

SupportOracle::SupportOracle(const MonomialSeq& f, Engine engine) : nvars_(f.size()) {
  TaylorData data(f);
  module_ = reduceUnitPivots(buildModule(data, engine));
}

bool SupportOracle::memberMod(const PrimeField& field, const std::vector<std::uint64_t>& point) const {
  if (std::all_of(point.begin(), point.end(), [&](std::uint64_t v) { return v % field.p() == 0; })) return true;
  auto it = compiled_.find(field.p());
  if (it == compiled_.end())
    it = compiled_.emplace(field.p(), std::make_shared<ModularModule>(module_, field)).first;
  return it->second->homologyNonzero(point);
}

bool SupportOracle::member(const FieldPoint& point) const {
  if (point.isZero()) return true;
  if (point.prime == 0) return homologyNonzeroAt(module_, point);
  PrimeField field(point.prime);
  return memberMod(field, point.modCoords(field));
}

// Variety descriptions -----------------------------------------------------------------

std::string VarietyDescription::kindName() const {
  switch (kind) {
    case Kind::FullSpace: return "FullSpace";
    case Kind::OriginOnly: return "OriginOnly";
    case Kind::Union: return "Union";
  }
  return "";
}

bool VarietyDescription::contains(const PrimeField& field, const std::vector<std::uint64_t>& point) const {
  if (kind == Kind::FullSpace) return true;
  if (std::all_of(point.begin(), point.end(), [](std::uint64_t v) { return v == 0; })) return true;
  for (const Ideal& c : components)
    if (std::all_of(c.generators().begin(), c.generators().end(),
                    [&](const RatPoly& g) { return g.evaluateMod(field, point) == 0; }))
      return true;
  return false;
}

std::string VarietyDescription::toString() const {
  if (kind != Kind::Union) return kindName();
  std::string out;
  for (std::size_t i = 0; i < components.size(); ++i) out += (i ? " u V" : "V") + components[i].toString();
  return out;
}

// Simplification ----------------------------------------------------------------------

namespace {

Ideal normalizeIdeal(const Ideal& ideal, const RadicalOptions& options) {
  std::vector<RatPoly> gens;
  for (const RatPoly& g : ideal.generators()) {
    try {
      gens.push_back(squarefreePart(g, options.limits));
    } catch (const GroebnerCapExceeded&) {
      gens.push_back(g);
    }
  }
  try {
    return Ideal(groebnerBasis(gens, MonomialOrder::degrevlex(), options.limits));
  } catch (const GroebnerCapExceeded&) {
    return Ideal(gens);
  }
}

/// A variable dividing every term of g, or -1.
int commonVariable(const RatPoly& g) {
  for (int v = 0; v < kMaxVars; ++v)
    if (std::all_of(g.terms().begin(), g.terms().end(), [&](const auto& t) { return t.exp[v] > 0; }))
      return v;
  return -1;
}

bool varietyContained(const Ideal& small, const Ideal& big, const RadicalOptions& options, bool& certified) {
  // V(small) ⊆ V(big) iff every generator of big vanishes on V(small).
  for (const RatPoly& g : big.generators()) {
    RadicalVerdict r = radicalMember(g, small, options);
    if (r.certainty == Certainty::Randomized) certified = false;
    if (!r.member) return false;
  }
  return true;
}

}  // namespace

std::vector<Ideal> simplifyUnion(const std::vector<Ideal>& ideals, int n, const RadicalOptions& options,
                                 bool* certified) {
  bool ok = true;
  std::vector<std::pair<Ideal, int>> queue;
  for (const Ideal& i : ideals) queue.emplace_back(i, 0);
  std::vector<Ideal> pieces;
  while (!queue.empty()) {
    auto [ideal, depth] = queue.back();
    queue.pop_back();
    Ideal normal = normalizeIdeal(ideal, options);
    if (normal.hasUnitGenerator()) continue;
    if (normal.isZero()) {
      pieces.push_back(normal);
      continue;
    }
    bool split = false;
    if (depth < 16) {
      for (std::size_t k = 0; k < normal.generators().size() && !split; ++k) {
        const RatPoly& g = normal.generators()[k];
        int v = commonVariable(g);
        if (v < 0 || (g.terms().size() == 1 && g.degree() == 1)) continue;
        std::vector<RatPoly> rest = normal.generators();
        rest.erase(rest.begin() + static_cast<long>(k));
        std::vector<RatPoly> withVar = rest, withCofactor = rest;
        withVar.push_back(RatPoly::variable(v));
        withCofactor.push_back(g.divideExact(RatPoly::variable(v)));
        queue.emplace_back(Ideal(withVar), depth + 1);
        queue.emplace_back(Ideal(withCofactor), depth + 1);
        split = true;
      }
    }
    if (!split) pieces.push_back(normal);
  }

  // Origin-only pieces add nothing to a cone that already contains 0.
  std::vector<Ideal> kept;
  for (const Ideal& p : pieces) {
    bool originOnly = !p.isZero();
    for (int v = 0; v < n && originOnly; ++v) {
      RadicalVerdict r = radicalMember(RatPoly::variable(v), p, options);
      if (r.certainty == Certainty::Randomized) ok = false;
      originOnly = r.member;
    }
    if (!originOnly) kept.push_back(p);
  }
  std::sort(kept.begin(), kept.end(), [](const Ideal& a, const Ideal& b) {
    if (a.generators().size() != b.generators().size()) return a.generators().size() < b.generators().size();
    return a.toString() < b.toString();
  });
  std::vector<bool> alive(kept.size(), true);
  for (std::size_t i = 0; i < kept.size(); ++i)
    for (std::size_t j = 0; j < kept.size() && alive[i]; ++j) {
      if (i == j || !alive[j]) continue;
      if (!varietyContained(kept[i], kept[j], options, ok)) continue;
      // Equal varieties keep the earlier representative.
      if (j < i || !varietyContained(kept[j], kept[i], options, ok)) alive[i] = false;
    }
  std::vector<Ideal> out;
  for (std::size_t i = 0; i < kept.size(); ++i)
    if (alive[i]) out.push_back(kept[i]);
  std::sort(out.begin(), out.end(), [](const Ideal& a, const Ideal& b) { return a.toString() < b.toString(); });
  if (certified) *certified = *certified && ok;
  return out;
}

// Symbolic support -------------------------------------------------------------------

SupportReport supportSymbolic(const MonomialSeq& f, const SupportOptions& options) {
  TaylorData data(f);
  const int n = data.n();
  SubcomplexDiagram diag = subcomplexDiagram(data);
  GradingResult grading = weakGrading(diag);

  SupportReport report;
  report.variety.n = n;
  std::vector<std::pair<std::vector<Subset>, DiffModule>> parts;
  auto* sigma = std::get_if<WeakGrading>(&grading);
  if (sigma && !options.periodicOnly) {
    report.engine = Engine::Totalization;
    for (const std::vector<Subset>& comp : components(diag))
      parts.emplace_back(comp, DiffModule::fromTotal(totalization(data, diag, *sigma, &comp)));
  } else if (options.periodicFallback || options.periodicOnly) {
    report.engine = Engine::Periodic;
    parts.emplace_back(std::vector<Subset>{}, DiffModule::fromPeriodic(periodicComplex(data)));
  } else {
    throw NonGradableError(std::get<GradingObstruction>(grading));
  }

  std::mt19937_64 rng(options.seed);
  bool certified = true;
  bool fullSpace = false;
  double rankFailure = -std::numeric_limits<double>::infinity();
  std::vector<Ideal> loci;
  for (auto& [classes, module] : parts) {
    ComponentReport cr;
    cr.classes = classes;
    DiffModule reduced = reduceUnitPivots(module);
    cr.reducedSize = reduced.size();
    std::map<int, PolyMatrix> blocks;
    for (int d : reduced.degrees()) {
      cr.dims[d] = static_cast<int>(reduced.basisOf(d).size());
      blocks[d] = reduced.block(d);
      GenericRank g = genericRank(blocks[d], n, rng);
      cr.genericRanks[d] = g.rank;
      if (!g.certified) {
        double dim = std::max(blocks[d].rows(), blocks[d].cols());
        double perTrial = std::log2(std::max(1.0, dim * std::max(1, blocks[d].maxEntryDegree()))) - 31.0;
        rankFailure = std::max(rankFailure, 3 * perTrial);
      }
    }
    for (const auto& [d, dim] : cr.dims) {
      int incomingDegree = reduced.periodic ? 1 - d : d + 1;
      int incoming = cr.genericRanks.contains(incomingDegree) ? cr.genericRanks.at(incomingDegree) : 0;
      if (cr.genericRanks.at(d) + incoming < dim) cr.genericallyExact = false;
    }
    if (!cr.genericallyExact) {
      fullSpace = true;
    } else {
      for (const auto& [d, block] : blocks) {
        int r = cr.genericRanks.at(d);
        if (r == 0) continue;
        MinorsOptions mo = options.minors;
        mo.seed = options.seed + static_cast<std::uint64_t>(d + 1000);
        mo.radical = options.radical;
        MinorsResult minors = minorsIdeal(block, r, mo);
        if (!minors.exhaustive) certified = false;
        if (minors.ideal.hasUnitGenerator()) continue;
        cr.degeneracy[d] = minors.ideal;
        loci.push_back(minors.ideal);
      }
    }
    report.perComponent.push_back(std::move(cr));
  }

  if (fullSpace) {
    report.variety.kind = VarietyDescription::Kind::FullSpace;
  } else {
    report.variety.components = simplifyUnion(loci, n, options.radical, &certified);
    report.variety.kind = report.variety.components.empty() ? VarietyDescription::Kind::OriginOnly
                                                            : VarietyDescription::Kind::Union;
    for (const Ideal& c : report.variety.components)
      if (c.isZero()) report.variety = {VarietyDescription::Kind::FullSpace, n, {}};
  }
  report.certification = certified ? Certainty::Certified : Certainty::Randomized;
  report.log2Failure = rankFailure;
  return report;
}

// Verification ------------------------------------------------------------------------

int VerifyReport::totalSamples() const {
  int total = 0;
  for (const PrimeStats& s : perPrime) total += s.onVariety + s.uniform;
  return total;
}

VerifyReport supportVerify(const MonomialSeq& f, const Ideal& candidate, const VerifyOptions& options) {
  const int n = f.size();
  if (candidate.span() > n) throw std::invalid_argument("candidate uses more parameters than generators");
  SupportOracle oracle(f, options.engine);
  std::vector<std::uint64_t> primes = options.primes;
  if (primes.empty()) primes.push_back(largePrimes()[0]);

  VerifyReport report;
  report.log2Failure = 0;
  std::mt19937_64 rng(options.seed);
  auto vanishes = [&](const PrimeField& field, const std::vector<std::uint64_t>& pt) {
    if (candidate.isZero()) return true;
    for (const RatPoly& g : candidate.generators())
      if (g.evaluateMod(field, pt) != 0) return false;
    return true;
  };
  auto record = [&](const PrimeField& field, const std::vector<std::uint64_t>& pt, bool expected,
                    VerifyReport::PrimeStats& stats) {
    bool inSupport = oracle.memberMod(field, pt);
    if (inSupport == expected) {
      ++stats.agreements;
      return true;
    }
    report.agree = false;
    report.witness = FieldPoint::modular(field.p(), pt);
    report.witnessInSupport = inSupport;
    return false;
  };

  for (std::uint64_t p : primes) {
    PrimeField field(p);
    VerifyReport::PrimeStats stats;
    stats.prime = p;
    for (int k = 0; k < options.samples && report.agree; ++k) {
      std::optional<std::vector<std::uint64_t>> pt;
      if (!candidate.isZero()) pt = sampleVarietyPoint(candidate.generators(), n, field, rng);
      for (int attempt = 0; !pt && attempt < 1000; ++attempt) {
        std::vector<std::uint64_t> u(n);
        for (auto& x : u) x = rng() % p;
        if (vanishes(field, u)) pt = u;
      }
      if (!pt) {
        ++stats.rejectionFallbacks;
        continue;
      }
      pt->resize(n);
      ++stats.onVariety;
      record(field, *pt, true, stats);
    }
    for (int k = 0; k < options.samples && report.agree; ++k) {
      std::vector<std::uint64_t> pt(n);
      for (auto& x : pt) x = rng() % p;
      ++stats.uniform;
      record(field, pt, vanishes(field, pt), stats);
    }
    // A nonzero polynomial of degree at most 2^n vanishes at a uniform point
    // with probability at most 2^n / p; each direction uses its own samples.
    double perSample = std::min(0.0, n - std::log2(static_cast<double>(p)));
    report.log2Failure += std::min(stats.onVariety, stats.uniform) * perSample;
    report.perPrime.push_back(stats);
  }
  if (!report.agree) report.log2Failure = 0;
  return report;
}

// Classification ----------------------------------------------------------------------

std::string Classification::name() const {
  switch (kind) {
    case Kind::LinearSubspace: return "LinearSubspace";
    case Kind::UnionTwoHyperplanes: return "UnionTwoHyperplanes";
    case Kind::Sextic135246: return "Sextic135246";
    case Kind::FullSpace: return "FullSpace";
    case Kind::OriginOnly: return "OriginOnly";
    case Kind::Other: return "Other";
  }
  return "";
}

namespace {

std::optional<mpq_class> rationalSqrt(const mpq_class& q) {
  if (sgn(q) < 0) return std::nullopt;
  mpz_class num = q.get_num(), den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return mpq_class(rn, rd);
}

mpq_class coefficientOf(const RatPoly& p, const Exponent& e) {
  for (const auto& t : p.terms())
    if (t.exp == e) return t.coeff;
  return 0;
}

/// l with l^2 = form for a quadratic form, when one exists over Q.
std::optional<RatPoly> linearSqrt(const RatPoly& form) {
  if (form.isZero()) return RatPoly();
  std::vector<mpq_class> coeff(kMaxVars);
  int first = -1;
  for (int v = 0; v < kMaxVars; ++v) {
    auto root = rationalSqrt(coefficientOf(form, Exponent::variable(v, 2)));
    if (!root) return std::nullopt;
    coeff[v] = *root;
    if (first < 0 && sgn(*root) != 0) first = v;
  }
  if (first < 0) return std::nullopt;
  RatPoly l;
  for (int v = 0; v < kMaxVars; ++v) {
    if (sgn(coeff[v]) == 0) continue;
    mpq_class c = coeff[v];
    if (v != first) {
      mpq_class cross = coefficientOf(form, Exponent::variable(first) * Exponent::variable(v));
      if (sgn(cross) < 0) c = -c;
    }
    l += RatPoly::monomial(Exponent::variable(v), c);
  }
  if (!(l * l == form)) return std::nullopt;
  return l;
}

bool isLinearForm(const RatPoly& g) {
  return g.degree() == 1 && g.isHomogeneous();
}

bool isSextic(const RatPoly& g, int n) {
  static const RatPoly target = parsePoly("a1*a3*a5+a2*a4*a6");
  if (g.terms().size() != 2 || g.degree() != 3 || g.span() > 6 || n > 6) return false;
  RatPoly normal = g.primitive();
  std::vector<int> perm{0, 1, 2, 3, 4, 5};
  do {
    if (target.permuted(perm) == normal) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

std::optional<std::pair<RatPoly, RatPoly>> linearFactors(const RatPoly& q) {
  if (q.isZero() || q.degree() != 2 || !q.isHomogeneous()) return std::nullopt;
  int square = -1, present = -1;
  for (int v = 0; v < kMaxVars; ++v) {
    if (q.degreeIn(v) == 2 && square < 0) square = v;
    if (q.degreeIn(v) > 0 && present < 0) present = v;
  }
  const int v = square >= 0 ? square : present;
  RatPoly x = RatPoly::variable(v);
  RatPoly a, b, c;
  for (const auto& t : q.terms()) {
    RatPoly rest = RatPoly::monomial(t.exp.withPower(v, 0), t.coeff);
    if (t.exp[v] == 2) a += rest;
    if (t.exp[v] == 1) b += rest;
    if (t.exp[v] == 0) c += rest;
  }
  if (a.isZero()) {
    // q = x*b + c with b linear; factors iff b divides c.
    try {
      RatPoly l = c.divideExact(b);
      return std::make_pair(b.primitive(), (x + l).primitive());
    } catch (const std::domain_error&) {
      return std::nullopt;
    }
  }
  mpq_class lead = a.constantValue();
  auto root = linearSqrt(b * b - c.scaled(4 * lead));
  if (!root) return std::nullopt;
  mpq_class half = mpq_class(1) / (2 * lead);
  RatPoly f1 = x + (b - *root).scaled(half);
  RatPoly f2 = x + (b + *root).scaled(half);
  return std::make_pair(f1.primitive(), f2.primitive());
}

Classification classify(const VarietyDescription& variety, const RadicalOptions& options) {
  using Kind = Classification::Kind;
  Classification out;
  out.description = variety.toString();
  if (variety.kind == VarietyDescription::Kind::FullSpace) {
    out.kind = Kind::FullSpace;
    return out;
  }
  if (variety.kind == VarietyDescription::Kind::OriginOnly) {
    out.kind = Kind::OriginOnly;
    return out;
  }
  // Recover the simplified form in case the caller built the description by hand.
  std::vector<Ideal> comps = simplifyUnion(variety.components, variety.n, options);
  if (comps.empty()) {
    out.kind = Kind::OriginOnly;
    return out;
  }
  auto allLinear = [](const Ideal& i) {
    return std::all_of(i.generators().begin(), i.generators().end(), isLinearForm);
  };
  if (comps.size() == 1) {
    const Ideal& only = comps[0];
    if (only.isZero()) {
      out.kind = Kind::FullSpace;
    } else if (allLinear(only)) {
      out.kind = Kind::LinearSubspace;
    } else if (only.generators().size() == 1) {
      const RatPoly& g = only.generators()[0];
      auto factors = linearFactors(g);
      if (factors && !(factors->first == factors->second))
        out.kind = Kind::UnionTwoHyperplanes;
      else if (isSextic(g, variety.n))
        out.kind = Kind::Sextic135246;
    }
  } else if (comps.size() == 2) {
    auto hyperplane = [&](const Ideal& i) { return i.generators().size() == 1 && allLinear(i); };
    if (hyperplane(comps[0]) && hyperplane(comps[1])) out.kind = Kind::UnionTwoHyperplanes;
  }
  return out;
}

// JSON --------------------------------------------------------------------------------

std::string engineName(Engine engine) { return engine == Engine::Periodic ? "periodic" : "totalization"; }

nlohmann::json toJson(const SupportReport& report) {
  nlohmann::json j;
  j["n"] = report.variety.n;
  j["kind"] = report.variety.kindName();
  j["components"] = nlohmann::json::array();
  for (const Ideal& c : report.variety.components) {
    nlohmann::json gens = nlohmann::json::array();
    for (const RatPoly& g : c.generators()) gens.push_back(g.toString());
    j["components"].push_back({{"generators", gens}});
  }
  j["certification"] = report.certification == Certainty::Certified ? "Certified" : "Randomized";
  if (std::isfinite(report.log2Failure)) j["log2_rank_failure"] = report.log2Failure;
  j["engine"] = engineName(report.engine);
  j["generic_ranks"] = nlohmann::json::array();
  for (const ComponentReport& cr : report.perComponent) {
    nlohmann::json c;
    c["classes"] = nlohmann::json::array();
    for (Subset s : cr.classes) c["classes"].push_back(s.toString());
    for (const auto& [d, dim] : cr.dims) c["dims"][std::to_string(d)] = dim;
    for (const auto& [d, r] : cr.genericRanks) c["ranks"][std::to_string(d)] = r;
    c["generically_exact"] = cr.genericallyExact;
    c["reduced_size"] = cr.reducedSize;
    for (const auto& [d, ideal] : cr.degeneracy) {
      nlohmann::json gens = nlohmann::json::array();
      for (const RatPoly& g : ideal.generators()) gens.push_back(g.toString());
      c["degeneracy"][std::to_string(d)] = gens;
    }
    j["generic_ranks"].push_back(c);
  }
  return j;
}

nlohmann::json toJson(const VerifyReport& report) {
  nlohmann::json j;
  j["agree"] = report.agree;
  j["samples"] = report.totalSamples();
  j["log2_failure_bound"] = report.log2Failure;
  j["primes"] = nlohmann::json::array();
  for (const auto& s : report.perPrime)
    j["primes"].push_back({{"prime", s.prime},
                           {"on_variety", s.onVariety},
                           {"uniform", s.uniform},
                           {"agreements", s.agreements},
                           {"rejection_fallbacks", s.rejectionFallbacks}});
  if (report.witness) {
    nlohmann::json w = nlohmann::json::array();
    for (const mpq_class& c : report.witness->coords) w.push_back(c.get_str());
    j["witness"] = {{"prime", report.witness->prime}, {"point", w}, {"in_support", report.witnessInSupport}};
  }
  return j;
}

}  // namespace suppvar
