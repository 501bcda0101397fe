#include "suppvar/enumerate6.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace suppvar {

namespace {

constexpr std::uint16_t kAllPairs = (1u << kGraphPairs) - 1;

struct PairTable {
  std::array<GraphEdge, kGraphPairs> pairs{};
  std::array<std::array<int, kGraphVertices>, kGraphVertices> index{};
  PairTable() {
    int k = 0;
    for (int u = 0; u < kGraphVertices; ++u)
      for (int v = u + 1; v < kGraphVertices; ++v) {
        pairs[k] = {u, v};
        index[u][v] = index[v][u] = k;
        ++k;
      }
    for (int u = 0; u < kGraphVertices; ++u) index[u][u] = -1;
  }
};

const PairTable& pairTable() {
  static const PairTable table;
  return table;
}

// For each permutation, where each pair bit goes.
const std::vector<std::array<int, kGraphPairs>>& pairPermutations() {
  static const std::vector<std::array<int, kGraphPairs>> perms = [] {
    std::vector<std::array<int, kGraphPairs>> out;
    Permutation6 p{0, 1, 2, 3, 4, 5};
    const PairTable& t = pairTable();
    do {
      std::array<int, kGraphPairs> m{};
      for (int k = 0; k < kGraphPairs; ++k) m[k] = t.index[p[t.pairs[k].first]][p[t.pairs[k].second]];
      out.push_back(m);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
  }();
  return perms;
}

// Bit k of the pair mask is the k-th character of the string, so reversing
// the bit order makes numeric order agree with string order.
std::uint16_t lexKey(std::uint16_t bits) {
  std::uint16_t key = 0;
  for (int k = 0; k < kGraphPairs; ++k)
    if ((bits >> k) & 1u) key |= static_cast<std::uint16_t>(1u << (kGraphPairs - 1 - k));
  return key;
}

std::uint16_t applyPairPermutation(std::uint16_t bits, const std::array<int, kGraphPairs>& m) {
  std::uint16_t out = 0;
  for (int k = 0; k < kGraphPairs; ++k)
    if ((bits >> k) & 1u) out |= static_cast<std::uint16_t>(1u << m[k]);
  return out;
}

long long gcdAll(const IntVector& v) {
  long long g = 0;
  for (long long x : v) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

long long checkedCombine(long long a, long long x, long long b, long long y) {
  __int128 r = static_cast<__int128>(a) * x + static_cast<__int128>(b) * y;
  if (r > INT64_MAX || r < INT64_MIN) throw std::overflow_error("extreme ray entry overflow");
  return static_cast<long long>(r);
}

long long dot(const IntVector& a, const IntVector& x) {
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = checkedCombine(1, s, a[i], x[i]);
  return s;
}

using ZeroSet = std::vector<std::uint64_t>;

ZeroSet zeroSet(const IntVector& r) {
  ZeroSet z((r.size() + 63) / 64, 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i] == 0) z[i / 64] |= 1ull << (i % 64);
  return z;
}

bool containsAll(const ZeroSet& big, const ZeroSet& small) {
  for (std::size_t w = 0; w < big.size(); ++w)
    if ((small[w] & ~big[w]) != 0) return false;
  return true;
}

Subset parseLabelSet(const std::string& text) {
  std::vector<int> labels;
  std::string digits;
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
    } else if (!digits.empty()) {
      labels.push_back(std::stoi(digits));
      digits.clear();
    }
  }
  if (!digits.empty()) labels.push_back(std::stoi(digits));
  return Subset::fromLabels(labels);
}

// Which generators are coprime to which lcms and which divide them. The
// support depends on nothing else.
std::string combinatorialKey(const MonomialSeq& f) {
  TaylorData data(f);
  const int n = data.n();
  std::string key;
  key.reserve(static_cast<std::size_t>(n) << n);
  for (int i = 0; i < n; ++i)
    for (std::uint32_t m = 0; m < data.subsetCount(); ++m) {
      Subset J(m);
      if (J.contains(i)) continue;
      key += static_cast<char>('0' + (data.coprime(i, J) ? 1 : 0) + (data.closure(J).contains(i) ? 2 : 0));
    }
  return key;
}

Classification::Kind kindFromName(const std::string& name) {
  using Kind = Classification::Kind;
  for (Kind k : {Kind::LinearSubspace, Kind::UnionTwoHyperplanes, Kind::Sextic135246, Kind::FullSpace,
                 Kind::OriginOnly, Kind::Other}) {
    Classification c;
    c.kind = k;
    if (c.name() == name) return k;
  }
  throw std::invalid_argument("unknown classification '" + name + "'");
}

std::string kindName(Classification::Kind k) {
  Classification c;
  c.kind = k;
  return c.name();
}

}  // namespace

// GcdGraph ------------------------------------------------------------------

int pairIndex(int u, int v) {
  if (u == v || u < 0 || v < 0 || u >= kGraphVertices || v >= kGraphVertices)
    throw std::invalid_argument("bad vertex pair");
  return pairTable().index[u][v];
}

GcdGraph GcdGraph::fromPairBits(std::uint16_t bits) { return GcdGraph(static_cast<std::uint16_t>(bits & kAllPairs)); }

GcdGraph GcdGraph::fromEdges(std::initializer_list<std::pair<int, int>> edges) {
  std::uint16_t bits = 0;
  for (auto [u, v] : edges) bits |= static_cast<std::uint16_t>(1u << pairIndex(u - 1, v - 1));
  return GcdGraph(bits);
}

GcdGraph GcdGraph::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.size() != kGraphPairs) throw std::invalid_argument("adjacency string must have 15 characters");
  std::uint16_t bits = 0;
  for (int k = 0; k < kGraphPairs; ++k) {
    if (s[k] == '1') bits |= static_cast<std::uint16_t>(1u << k);
    else if (s[k] != '0') throw std::invalid_argument("adjacency string must contain only 0 and 1");
  }
  return GcdGraph(bits);
}

GcdGraph GcdGraph::cycle() { return fromEdges({{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 1}}); }

GcdGraph GcdGraph::complete() { return GcdGraph(kAllPairs); }

bool GcdGraph::adjacent(int u, int v) const {
  if (u == v) return false;
  return (bits_ >> pairIndex(u, v)) & 1u;
}

int GcdGraph::edgeCount() const { return std::popcount(bits_); }

std::vector<GraphEdge> GcdGraph::edges() const {
  std::vector<GraphEdge> out;
  for (int k = 0; k < kGraphPairs; ++k)
    if ((bits_ >> k) & 1u) out.push_back(pairTable().pairs[k]);
  return out;
}

Subset GcdGraph::neighbours(int v) const {
  Subset s;
  for (int u = 0; u < kGraphVertices; ++u)
    if (adjacent(u, v)) s = s.with(u);
  return s;
}

bool GcdGraph::isClique(Subset vertices) const {
  auto idx = vertices.indices();
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b)
      if (!adjacent(idx[a], idx[b])) return false;
  return true;
}

GcdGraph GcdGraph::permuted(const Permutation6& perm) const {
  std::uint16_t out = 0;
  for (auto [u, v] : edges()) out |= static_cast<std::uint16_t>(1u << pairIndex(perm[u], perm[v]));
  return GcdGraph(out);
}

GcdGraph GcdGraph::canonical() const {
  std::uint16_t best = bits_;
  std::uint16_t bestKey = lexKey(bits_);
  for (const auto& m : pairPermutations()) {
    std::uint16_t b = applyPairPermutation(bits_, m);
    std::uint16_t k = lexKey(b);
    if (k < bestKey) {
      bestKey = k;
      best = b;
    }
  }
  return GcdGraph(best);
}

std::string GcdGraph::toString() const {
  std::string s(kGraphPairs, '0');
  for (int k = 0; k < kGraphPairs; ++k)
    if ((bits_ >> k) & 1u) s[k] = '1';
  return s;
}

GcdGraph gcdGraphOf(const MonomialSeq& f) {
  if (f.size() != kGraphVertices) throw std::invalid_argument("GCD graphs here have six vertices");
  std::uint16_t bits = 0;
  for (int u = 0; u < kGraphVertices; ++u)
    for (int v = u + 1; v < kGraphVertices; ++v)
      if (!f[u].coprimeWith(f[v])) bits |= static_cast<std::uint16_t>(1u << pairIndex(u, v));
  return GcdGraph::fromPairBits(bits);
}

std::vector<GcdGraph> allGraphClasses() {
  std::vector<std::uint16_t> canon(1u << kGraphPairs, 0);
  std::vector<bool> seen(1u << kGraphPairs, false);
  std::vector<GcdGraph> out;
  for (std::uint32_t bits = 0; bits <= kAllPairs; ++bits) {
    if (seen[bits]) continue;
    GcdGraph c = GcdGraph::fromPairBits(static_cast<std::uint16_t>(bits)).canonical();
    // Mark the whole orbit.
    for (const auto& m : pairPermutations()) seen[applyPairPermutation(static_cast<std::uint16_t>(bits), m)] = true;
    out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool forcesFullSupport(const GcdGraph& g) {
  const Subset all = Subset::full(kGraphVertices);
  for (int v = 0; v < kGraphVertices; ++v)
    if (g.neighbours(v) == all.without(v)) return true;
  for (auto [u, v] : g.edges()) {
    bool exact = true;
    for (int w = 0; w < kGraphVertices && exact; ++w) {
      if (w == u || w == v) continue;
      exact = g.adjacent(w, u) != g.adjacent(w, v);
    }
    if (exact) return true;
  }
  return false;
}

std::vector<GcdGraph> enumerateGraphs() {
  std::vector<GcdGraph> out;
  for (const GcdGraph& g : allGraphClasses())
    if (!forcesFullSupport(g)) out.push_back(g);
  return out;
}

std::vector<GraphEdge> denseEdges(const GcdGraph& g) {
  std::vector<GraphEdge> out;
  for (auto [u, v] : g.edges()) {
    bool dense = true;
    for (int w = 0; w < kGraphVertices && dense; ++w)
      if (w != u && w != v) dense = g.adjacent(w, u) || g.adjacent(w, v);
    if (dense) out.emplace_back(u, v);
  }
  return out;
}

std::vector<Subset> cliques(const GcdGraph& g) {
  std::vector<Subset> out;
  for (std::uint32_t m = 1; m < (1u << kGraphVertices); ++m)
    if (g.isClique(Subset(m))) out.push_back(Subset(m));
  std::sort(out.begin(), out.end(), [](Subset a, Subset b) {
    return a.size() != b.size() ? a.size() < b.size() : a.mask() < b.mask();
  });
  return out;
}

bool forbiddenSupport(const GcdGraph& g, const std::vector<Subset>& active) {
  const auto dense = denseEdges(g);
  for (auto [u, v] : dense) {
    const Subset edge = Subset::single(u).with(v);
    const Subset common = g.neighbours(u) & g.neighbours(v);
    Subset covered;
    for (Subset c : active)
      if ((c & edge).empty()) covered = covered | c;
    if (common.isSubsetOf(covered)) return true;
  }
  for (std::size_t a = 0; a < dense.size(); ++a)
    for (std::size_t b = a + 1; b < dense.size(); ++b) {
      auto [u1, v1] = dense[a];
      auto [u2, v2] = dense[b];
      int shared = -1, x = -1, y = -1;
      if (u1 == u2) shared = u1, x = v1, y = v2;
      else if (u1 == v2) shared = u1, x = v1, y = u2;
      else if (v1 == u2) shared = v1, x = u1, y = v2;
      else if (v1 == v2) shared = v1, x = u1, y = u2;
      if (shared < 0 || g.adjacent(x, y)) continue;
      const Subset touched = Subset::single(shared).with(x).with(y);
      for (Subset c : active)
        if (c.size() >= 2 && (c & touched).empty()) return true;
    }
  return false;
}

std::vector<Subset> admissibleCliques(const GcdGraph& g) {
  std::vector<Subset> out;
  for (Subset c : cliques(g))
    if (!forbiddenSupport(g, {c})) out.push_back(c);
  return out;
}

CliqueCone buildCone(const std::vector<Subset>& cliqueList) {
  CliqueCone cone;
  cone.cliques = cliqueList;
  for (int i = 1; i < kGraphVertices; ++i) {
    IntVector row(cliqueList.size(), 0);
    for (std::size_t c = 0; c < cliqueList.size(); ++c)
      row[c] = (cliqueList[c].contains(0) ? 1 : 0) - (cliqueList[c].contains(i) ? 1 : 0);
    cone.equalities.push_back(std::move(row));
  }
  return cone;
}

std::vector<IntVector> extremeRays(const std::vector<IntVector>& equalities, int dim) {
  std::vector<IntVector> rays;
  for (int i = 0; i < dim; ++i) {
    IntVector e(dim, 0);
    e[i] = 1;
    rays.push_back(std::move(e));
  }
  for (const IntVector& a : equalities) {
    if (static_cast<int>(a.size()) != dim) throw std::invalid_argument("equality has wrong length");
    std::vector<long long> vals;
    vals.reserve(rays.size());
    for (const auto& r : rays) vals.push_back(dot(a, r));
    std::vector<ZeroSet> zeros;
    zeros.reserve(rays.size());
    for (const auto& r : rays) zeros.push_back(zeroSet(r));

    std::vector<IntVector> next;
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (vals[i] == 0) next.push_back(rays[i]);
    for (std::size_t p = 0; p < rays.size(); ++p) {
      if (vals[p] <= 0) continue;
      for (std::size_t q = 0; q < rays.size(); ++q) {
        if (vals[q] >= 0) continue;
        ZeroSet common(zeros[p].size());
        for (std::size_t w = 0; w < common.size(); ++w) common[w] = zeros[p][w] & zeros[q][w];
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
          if (r != p && r != q && containsAll(zeros[r], common)) adjacent = false;
        if (!adjacent) continue;
        IntVector c(dim);
        for (int i = 0; i < dim; ++i) c[i] = checkedCombine(vals[p], rays[q][i], -vals[q], rays[p][i]);
        long long g = gcdAll(c);
        for (auto& x : c) x /= g;
        next.push_back(std::move(c));
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    rays = std::move(next);
  }
  std::sort(rays.begin(), rays.end());
  return rays;
}

// Support summaries -----------------------------------------------------------

namespace {

std::uint64_t minimalSets(std::uint64_t sets) {
  std::uint64_t out = sets;
  for (int s = 1; s < 64; ++s) {
    if (!((sets >> s) & 1u)) continue;
    for (int t = (s - 1) & s; t > 0; t = (t - 1) & s)
      if ((sets >> t) & 1u) {
        out &= ~(1ull << s);
        break;
      }
  }
  return out;
}

}  // namespace

SupportSummary SupportSummary::of(const std::vector<Subset>& active) {
  SupportSummary out;
  for (Subset c : active) {
    auto idx = c.indices();
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = a + 1; b < idx.size(); ++b)
        out.edges |= static_cast<std::uint16_t>(1u << pairIndex(idx[a], idx[b]));
    for (int w : idx) {
      if (c.size() == 1) out.singletons |= static_cast<std::uint8_t>(1u << w);
      else out.minimal[w] |= 1ull << c.without(w).mask();
    }
  }
  for (auto& m : out.minimal) m = minimalSets(m);
  return out;
}

SupportSummary SupportSummary::merged(const SupportSummary& other) const {
  SupportSummary out;
  out.singletons = singletons | other.singletons;
  out.edges = edges | other.edges;
  for (int w = 0; w < kGraphVertices; ++w) out.minimal[w] = minimalSets(minimal[w] | other.minimal[w]);
  return out;
}

std::vector<Subset> SupportSummary::representative() const {
  std::set<Subset> out;
  for (int w = 0; w < kGraphVertices; ++w) {
    if ((singletons >> w) & 1u) out.insert(Subset::single(w));
    for (int s = 1; s < 64; ++s)
      if ((minimal[w] >> s) & 1u) out.insert(Subset(static_cast<std::uint32_t>(s)).with(w));
  }
  return {out.begin(), out.end()};
}

// Clique vectors --------------------------------------------------------------

std::vector<Subset> CliqueVector::active() const {
  std::vector<Subset> out;
  for (std::size_t i = 0; i < cliques.size(); ++i)
    if (weights[i] > 0) out.push_back(cliques[i]);
  return out;
}

long long CliqueVector::degreeAt(int v) const {
  long long d = 0;
  for (std::size_t i = 0; i < cliques.size(); ++i)
    if (cliques[i].contains(v)) d += weights[i];
  return d;
}

std::vector<CliqueVector> rayClosure(const GcdGraph& g, const std::vector<Subset>& cliqueList,
                                     const std::vector<IntVector>& rays, std::size_t cap) {
  std::map<SupportSummary, IntVector> reached;
  reached.emplace(SupportSummary{}, IntVector(cliqueList.size(), 0));
  for (const IntVector& ray : rays) {
    std::vector<Subset> raySupport;
    for (std::size_t i = 0; i < ray.size(); ++i)
      if (ray[i] != 0) raySupport.push_back(cliqueList[i]);
    const SupportSummary rs = SupportSummary::of(raySupport);
    std::map<SupportSummary, IntVector> added;
    for (const auto& [summary, sum] : reached) {
      SupportSummary next = summary.merged(rs);
      if (reached.count(next) || added.count(next)) continue;
      if (forbiddenSupport(g, next.representative())) continue;
      IntVector v = sum;
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += ray[i];
      added.emplace(next, std::move(v));
    }
    reached.merge(added);
    if (reached.size() > cap)
      throw ClosureCapExceeded("ray closure for graph " + g.toString() + " exceeded " + std::to_string(cap) +
                               " support classes");
  }
  std::vector<CliqueVector> out;
  for (auto& [summary, sum] : reached)
    if (summary.edges == g.pairBits() && summary != SupportSummary{}) out.push_back(CliqueVector{g, cliqueList, sum});
  return out;
}

std::variant<MonomialSeq, NonMinimal> idealFromVector(const CliqueVector& cv) {
  const auto active = cv.active();
  for (int i = 0; i < kGraphVertices; ++i)
    for (int j = 0; j < kGraphVertices; ++j) {
      if (i == j) continue;
      bool divides = true;
      for (Subset c : active)
        if (c.contains(i) && !c.contains(j)) divides = false;
      if (divides) return NonMinimal{i, j};
    }
  bool linear = true;
  for (int v = 0; v < kGraphVertices; ++v) linear = linear && cv.degreeAt(v) == 1;
  const int scale = linear ? 2 : 1;
  std::vector<std::vector<std::pair<int, int>>> exps(kGraphVertices);
  int var = 0;
  for (std::size_t c = 0; c < cv.cliques.size(); ++c) {
    if (cv.weights[c] <= 0) continue;
    for (int v : cv.cliques[c].indices()) exps[v].emplace_back(var, static_cast<int>(cv.weights[c]) * scale);
    ++var;
  }
  std::vector<Monomial> gens;
  for (auto& e : exps) gens.emplace_back(std::move(e));
  return MonomialSeq(std::move(gens), var);
}

// Pipeline ------------------------------------------------------------------

nlohmann::json GraphResult::toJson() const {
  nlohmann::json j;
  j["canonical_adjacency"] = graph.toString();
  j["cliques"] = nlohmann::json::array();
  for (Subset c : cliques) j["cliques"].push_back(c.toString());
  j["rays"] = rays;
  j["candidates"] = nlohmann::json::array();
  j["classifications"] = nlohmann::json::array();
  for (const auto& c : candidates) {
    nlohmann::json cand{{"weights", c.weights}, {"ideal", c.ideal}};
    if (c.rejected) cand["non_minimal"] = {c.rejected->divisor + 1, c.rejected->multiple + 1};
    j["candidates"].push_back(cand);
    if (c.rejected) j["classifications"].push_back(nullptr);
    else
      j["classifications"].push_back({{"kind", kindName(c.kind)}, {"variety", c.variety}, {"engine", c.engine}});
  }
  return j;
}

GraphResult GraphResult::fromJson(const nlohmann::json& j) {
  GraphResult r;
  r.graph = GcdGraph::parse(j.at("canonical_adjacency").get<std::string>());
  for (const auto& c : j.at("cliques")) r.cliques.push_back(parseLabelSet(c.get<std::string>()));
  r.rays = j.at("rays").get<std::vector<IntVector>>();
  const auto& cands = j.at("candidates");
  const auto& classes = j.at("classifications");
  if (cands.size() != classes.size()) throw std::invalid_argument("checkpoint candidate count mismatch");
  for (std::size_t i = 0; i < cands.size(); ++i) {
    CandidateResult c;
    c.weights = cands[i].at("weights").get<IntVector>();
    c.ideal = cands[i].at("ideal").get<std::string>();
    if (cands[i].contains("non_minimal")) {
      auto pair = cands[i]["non_minimal"].get<std::vector<int>>();
      c.rejected = NonMinimal{pair.at(0) - 1, pair.at(1) - 1};
    } else {
      c.kind = kindFromName(classes[i].at("kind").get<std::string>());
      c.variety = classes[i].at("variety").get<std::string>();
      c.engine = classes[i].at("engine").get<std::string>();
    }
    r.candidates.push_back(std::move(c));
  }
  return r;
}

GraphResult processGraph(const GcdGraph& g, const SupportOptions& support, std::size_t closureCap) {
  GraphResult result;
  result.graph = g;
  result.cliques = admissibleCliques(g);
  CliqueCone cone = buildCone(result.cliques);
  result.rays = extremeRays(cone.equalities, cone.dimension());

  SupportOptions options = support;
  options.periodicFallback = true;
  std::map<std::string, CandidateResult> cache;
  for (const CliqueVector& cv : rayClosure(g, result.cliques, result.rays, closureCap)) {
    CandidateResult c;
    c.weights = cv.weights;
    auto ideal = idealFromVector(cv);
    if (auto* bad = std::get_if<NonMinimal>(&ideal)) {
      c.rejected = *bad;
      result.candidates.push_back(std::move(c));
      continue;
    }
    const MonomialSeq& f = std::get<MonomialSeq>(ideal);
    c.ideal = f.toString();
    const std::string key = combinatorialKey(f);
    auto hit = cache.find(key);
    if (hit == cache.end()) {
      SupportReport report = supportSymbolic(f, options);
      Classification cls = classify(report.variety, options.radical);
      CandidateResult computed;
      computed.kind = cls.kind;
      computed.variety = report.variety.toString();
      computed.engine = engineName(report.engine);
      hit = cache.emplace(key, computed).first;
    }
    c.kind = hit->second.kind;
    c.variety = hit->second.variety;
    c.engine = hit->second.engine;
    result.candidates.push_back(std::move(c));
  }
  return result;
}

nlohmann::json PipelineTable::toJson() const {
  nlohmann::json j;
  j["graphs"] = graphs.size();
  j["resumed"] = resumed;
  j["candidates"] = 0;
  for (const auto& g : graphs) j["candidates"] = j["candidates"].get<int>() + static_cast<int>(g.candidates.size());
  j["non_minimal"] = nonMinimal;
  j["tally"] = tally;
  j["capped"] = nlohmann::json::array();
  for (const auto& [graph, why] : capped) j["capped"].push_back({{"canonical_adjacency", graph}, {"reason", why}});
  j["per_graph"] = nlohmann::json::array();
  for (const auto& g : graphs) {
    std::map<std::string, int> local;
    for (const auto& c : g.candidates)
      if (!c.rejected) ++local[kindName(c.kind)];
    j["per_graph"].push_back({{"canonical_adjacency", g.graph.toString()},
                              {"rays", g.rays.size()},
                              {"candidates", g.candidates.size()},
                              {"tally", local}});
  }
  return j;
}

std::string PipelineTable::summary() const {
  std::ostringstream os;
  int total = 0;
  for (const auto& g : graphs) total += static_cast<int>(g.candidates.size());
  os << "graphs: " << graphs.size() << " (" << resumed << " from checkpoint)\n";
  os << "candidates: " << total << " (" << nonMinimal << " non-minimal)\n";
  for (const auto& [name, count] : tally) os << "  " << name << ": " << count << "\n";
  for (const auto& [graph, why] : capped) os << "capped " << graph << ": " << why << "\n";
  return os.str();
}

PipelineTable runPipeline(const PipelineOptions& options) {
  std::vector<GcdGraph> graphs;
  if (options.graphs.empty()) {
    graphs = enumerateGraphs();
  } else {
    for (const GcdGraph& g : options.graphs) graphs.push_back(g.canonical());
    std::sort(graphs.begin(), graphs.end());
    graphs.erase(std::unique(graphs.begin(), graphs.end()), graphs.end());
  }

  std::map<std::string, GraphResult> done;
  if (!options.checkpoint.empty()) {
    std::ifstream in(options.checkpoint);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      // A torn final line from an interrupted write is recomputed.
      auto parsed = nlohmann::json::parse(line, nullptr, false);
      if (parsed.is_discarded()) continue;
      GraphResult r = GraphResult::fromJson(parsed);
      done[r.graph.toString()] = std::move(r);
    }
  }

  PipelineTable table;
  std::vector<std::optional<GraphResult>> slots(graphs.size());
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    auto it = done.find(graphs[i].toString());
    if (it != done.end()) {
      slots[i] = it->second;
      ++table.resumed;
    } else {
      todo.push_back(i);
    }
  }

  std::ofstream out;
  if (!options.checkpoint.empty()) {
    bool needsNewline = false;
    if (std::ifstream tail(options.checkpoint, std::ios::ate); tail && tail.tellg() > 0) {
      tail.seekg(-1, std::ios::end);
      needsNewline = tail.get() != '\n';
    }
    out.open(options.checkpoint, std::ios::app);
    if (needsNewline) out << '\n';
  }
  std::mutex writeLock;
  std::atomic<std::size_t> nextTask{0};
  std::exception_ptr failure;
  std::map<std::size_t, std::string> cappedAt;
  auto worker = [&] {
    while (true) {
      std::size_t t = nextTask++;
      if (t >= todo.size()) return;
      {
        std::lock_guard lock(writeLock);
        if (failure) return;
      }
      try {
        GraphResult r = processGraph(graphs[todo[t]], options.support, options.closureCap);
        std::lock_guard lock(writeLock);
        if (out.is_open()) out << r.toJson().dump() << '\n' << std::flush;
        if (options.onGraph) options.onGraph(r);
        slots[todo[t]] = std::move(r);
      } catch (const ClosureCapExceeded& e) {
        std::lock_guard lock(writeLock);
        cappedAt[todo[t]] = e.what();
      } catch (const GroebnerCapExceeded& e) {
        std::lock_guard lock(writeLock);
        cappedAt[todo[t]] = e.what();
      } catch (...) {
        std::lock_guard lock(writeLock);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, options.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<std::string> offending;
  for (const auto& [i, why] : cappedAt) table.capped.emplace_back(graphs[i].toString(), why);
  for (auto& slot : slots) {
    if (!slot) continue;
    for (const auto& c : slot->candidates) {
      if (c.rejected) {
        ++table.nonMinimal;
        continue;
      }
      ++table.tally[kindName(c.kind)];
      if (c.kind == Classification::Kind::Other)
        offending.push_back(slot->graph.toString() + ": " + c.ideal + " -> " + c.variety);
    }
    table.graphs.push_back(std::move(*slot));
  }
  if (!offending.empty()) {
    std::string msg = "unexpected support varieties:";
    for (const auto& o : offending) msg += "\n  " + o;
    throw ClassificationFailure(msg, std::move(table));
  }
  return table;
}

std::vector<GcdGraph> ciGraphs() {
  std::vector<GcdGraph> out{
      GcdGraph::cycle(),
      GcdGraph(),
      GcdGraph::fromEdges({{1, 2}, {3, 4}, {5, 6}}),
      GcdGraph::fromEdges({{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}}),
      GcdGraph::fromEdges({{1, 2}, {2, 3}, {3, 1}, {4, 5}, {5, 6}, {6, 4}}),
      GcdGraph::fromEdges({{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}}),
      GcdGraph::fromEdges({{1, 2}, {2, 3}, {3, 4}, {4, 1}, {5, 6}}),
      GcdGraph::fromEdges({{1, 2}, {2, 3}, {4, 5}, {5, 6}}),
      GcdGraph::fromEdges({{1, 4}, {1, 5}, {1, 6}, {2, 3}, {2, 5}, {2, 6}, {3, 5}, {3, 6}, {4, 5}, {4, 6}}),
      GcdGraph::fromEdges({{1, 5}, {1, 6}, {2, 4}, {2, 5}, {2, 6}, {3, 4}, {3, 5}, {3, 6}, {5, 6}}),
  };
  for (auto& g : out) g = g.canonical();
  return out;
}

}  // namespace suppvar
