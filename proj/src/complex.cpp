#include "suppvar/complex.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

#include "suppvar/linalg.hpp"

namespace suppvar {

// SparseMatrix ---------------------------------------------------------------

std::optional<EntryCoeff> SparseMatrix::at(int row, int col) const {
  for (const MatrixEntry& e : entries)
    if (e.row == row && e.col == col) return e.coeff;
  return std::nullopt;
}

std::optional<EntryCoeff> SparseMatrix::at(Subset rowLabel, Subset colLabel) const {
  auto r = std::find(rowBasis.begin(), rowBasis.end(), rowLabel);
  auto c = std::find(colBasis.begin(), colBasis.end(), colLabel);
  if (r == rowBasis.end() || c == colBasis.end()) return std::nullopt;
  return at(static_cast<int>(r - rowBasis.begin()), static_cast<int>(c - colBasis.begin()));
}

std::vector<std::vector<int>> SparseMatrix::constantDense() const {
  std::vector<std::vector<int>> out(rows, std::vector<int>(cols, 0));
  for (const MatrixEntry& e : entries) {
    if (!e.coeff.isConstant()) throw std::logic_error("matrix has parameter entries");
    out[e.row][e.col] = e.coeff.sign;
  }
  return out;
}

int TotalComplex::totalDimension() const {
  int total = 0;
  for (const auto& [deg, basis] : pieces) total += static_cast<int>(basis.size());
  return total;
}

int TotalComplex::dimension(int degree) const {
  auto it = pieces.find(degree);
  return it == pieces.end() ? 0 : static_cast<int>(it->second.size());
}

namespace {

std::vector<Subset> sortedByMask(std::vector<Subset> v) {
  std::sort(v.begin(), v.end());
  return v;
}

int indexIn(const std::vector<Subset>& basis, Subset s) {
  auto it = std::lower_bound(basis.begin(), basis.end(), s);
  return (it != basis.end() && *it == s) ? static_cast<int>(it - basis.begin()) : -1;
}

SparseMatrix emptyMatrix(std::vector<Subset> rowBasis, std::vector<Subset> colBasis) {
  SparseMatrix m;
  m.rows = static_cast<int>(rowBasis.size());
  m.cols = static_cast<int>(colBasis.size());
  m.rowBasis = std::move(rowBasis);
  m.colBasis = std::move(colBasis);
  return m;
}

void sortEntries(SparseMatrix& m) {
  std::sort(m.entries.begin(), m.entries.end(), [](const MatrixEntry& a, const MatrixEntry& b) {
    return std::tie(a.col, a.row) < std::tie(b.col, b.row);
  });
}

/// Face maps b_J -> b_{J∖j_i} that survive over k̄, as (target, (-1)^{i-1}).
template <class Fn>
void forEachTaylorFace(const TaylorData& data, Subset J, Fn fn) {
  int position = 0;
  for (int j : J.indices()) {
    ++position;
    Subset face = J.without(j);
    if (data.lcm(face) == data.lcm(J)) fn(face, (position % 2 == 1) ? 1 : -1);
  }
}

/// Builds a graded complex (degree of J = |J| + shift(J)) from a basis, an
/// intra coefficient rule and an optional inter rule.
TotalComplex assemble(int n, const std::map<int, std::vector<Subset>>& pieces,
                      const std::vector<std::pair<Subset, int>>& degreeOf,
                      const TaylorData& data, bool cBasis, bool withParams) {
  TotalComplex out;
  out.n = n;
  out.pieces = pieces;
  std::map<Subset, int> degree(degreeOf.begin(), degreeOf.end());
  for (const auto& [deg, basis] : pieces) {
    auto lower = pieces.find(deg - 1);
    if (lower == pieces.end()) continue;
    SparseMatrix m = emptyMatrix(lower->second, basis);
    for (int col = 0; col < m.cols; ++col) {
      Subset J = basis[col];
      forEachTaylorFace(data, J, [&](Subset face, int sign) {
        int row = indexIn(m.rowBasis, face);
        if (row < 0) return;
        int s = cBasis ? sign * data.ksgn(J) * data.ksgn(face) : sign;
        m.entries.push_back({row, col, EntryCoeff::constant(s)});
      });
      if (!withParams) continue;
      for (int j = 0; j < n; ++j) {
        auto act = cBasis ? eActionC(data, j, J) : eAction(data, j, J);
        if (!act) continue;
        auto target = degree.find(act->target);
        if (target == degree.end()) continue;
        if (target->second != deg - 1)
          throw std::invalid_argument("grading is inconsistent with the edge from " +
                                      data.closure(J).toString() + " along generator " +
                                      std::to_string(j + 1));
        int row = indexIn(m.rowBasis, act->target);
        m.entries.push_back({row, col, EntryCoeff::parameter(act->coeff, j)});
      }
    }
    sortEntries(m);
    out.diffs.emplace(deg, std::move(m));
  }
  return out;
}

}  // namespace

TotalComplex taylorKbar(const TaylorData& data) {
  std::map<int, std::vector<Subset>> pieces;
  std::vector<std::pair<Subset, int>> degreeOf;
  for (std::uint32_t mask = 0; mask < data.subsetCount(); ++mask) {
    Subset J(mask);
    pieces[J.size()].push_back(J);
    degreeOf.emplace_back(J, J.size());
  }
  return assemble(data.n(), pieces, degreeOf, data, false, false);
}

std::optional<EAction> eAction(const TaylorData& data, int j, Subset J) {
  if (J.contains(j) || !data.coprime(j, J)) return std::nullopt;
  return EAction{sgnPrepend(j, J), J.with(j)};
}

std::optional<EAction> eActionC(const TaylorData& data, int j, Subset J) {
  auto act = eAction(data, j, J);
  if (act) act->coeff *= data.ksgnPair(j, J);
  return act;
}

PeriodicComplex periodicComplex(const TaylorData& data) {
  PeriodicComplex out;
  out.n = data.n();
  for (std::uint32_t mask = 0; mask < data.subsetCount(); ++mask) {
    Subset J(mask);
    (J.size() % 2 == 0 ? out.even : out.odd).push_back(J);
  }
  auto build = [&](const std::vector<Subset>& source, const std::vector<Subset>& target) {
    SparseMatrix m = emptyMatrix(target, source);
    for (int col = 0; col < m.cols; ++col) {
      Subset J = source[col];
      forEachTaylorFace(data, J, [&](Subset face, int sign) {
        m.entries.push_back({indexIn(target, face), col, EntryCoeff::constant(sign)});
      });
      for (int j = 0; j < data.n(); ++j)
        if (auto act = eAction(data, j, J))
          m.entries.push_back(
              {indexIn(target, act->target), col, EntryCoeff::parameter(act->coeff, j)});
    }
    sortEntries(m);
    return m;
  };
  out.evenToOdd = build(out.even, out.odd);
  out.oddToEven = build(out.odd, out.even);
  return out;
}

// Subcomplex diagram -----------------------------------------------------------

int SubcomplexDiagram::indexOf(Subset M) const {
  auto it = std::lower_bound(classes.begin(), classes.end(), M,
                             [](const DiagramClass& c, Subset m) { return c.M < m; });
  return (it != classes.end() && it->M == M) ? static_cast<int>(it - classes.begin()) : -1;
}

std::vector<std::pair<int, int>> SubcomplexDiagram::outEdges(int cls) const {
  std::vector<std::pair<int, int>> out;
  for (const DiagramEdge& e : edges)
    if (e.source == cls) out.emplace_back(e.target, e.generator);
  return out;
}

SubcomplexDiagram subcomplexDiagram(const TaylorData& data) {
  SubcomplexDiagram diag;
  diag.n = data.n();
  std::vector<Subset> closures;
  for (std::uint32_t mask = 0; mask < data.subsetCount(); ++mask)
    closures.push_back(data.closure(Subset(mask)));
  std::sort(closures.begin(), closures.end());
  closures.erase(std::unique(closures.begin(), closures.end()), closures.end());
  for (Subset M : closures) diag.classes.push_back({M, data.sClass(M)});
  for (int c = 0; c < static_cast<int>(diag.classes.size()); ++c) {
    Subset M = diag.classes[c].M;
    for (int j = 0; j < data.n(); ++j) {
      if (M.contains(j) || !data.coprime(j, M)) continue;
      diag.edges.push_back({c, diag.indexOf(data.closure(M.with(j))), j});
    }
  }
  return diag;
}

std::string GradingObstruction::describe() const {
  std::string out = "no weak grading; contradictory walk:";
  for (std::size_t i = 0; i < witness.size(); ++i)
    out += (i == 0 ? " T_" : " -> T_") + witness[i].compact();
  return out;
}

namespace {

struct Adjacency {
  // (neighbor, +1 for an out-edge, -1 for an in-edge), out-edges first.
  std::vector<std::vector<std::pair<int, int>>> links;
};

Adjacency adjacency(const SubcomplexDiagram& diag) {
  Adjacency adj;
  adj.links.resize(diag.classes.size());
  for (const DiagramEdge& e : diag.edges) adj.links[e.source].emplace_back(e.target, +1);
  for (const DiagramEdge& e : diag.edges) adj.links[e.target].emplace_back(e.source, -1);
  return adj;
}

}  // namespace

GradingResult weakGrading(const SubcomplexDiagram& diag) {
  const int count = static_cast<int>(diag.classes.size());
  const Adjacency adj = adjacency(diag);
  std::vector<std::optional<int>> weight(count);
  std::vector<int> parent(count, -1);
  std::vector<int> componentOf(count, -1);

  auto pathToRoot = [&](int v) {
    std::vector<Subset> path;
    for (; v >= 0; v = parent[v]) path.push_back(diag.classes[v].M);
    return path;
  };

  int components = 0;
  for (int root = 0; root < count; ++root) {
    if (weight[root]) continue;
    weight[root] = 0;
    componentOf[root] = components;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (const auto& [v, dir] : adj.links[u]) {
        int want = *weight[u] + dir;
        if (!weight[v]) {
          weight[v] = want;
          parent[v] = u;
          componentOf[v] = components;
          queue.push_back(v);
        } else if (*weight[v] != want) {
          // root -> u, the offending edge, then v -> root.
          std::vector<Subset> walk = pathToRoot(u);
          std::reverse(walk.begin(), walk.end());
          std::vector<Subset> back = pathToRoot(v);
          walk.insert(walk.end(), back.begin(), back.end());
          return GradingObstruction{std::move(walk)};
        }
      }
    }
    ++components;
  }

  std::vector<int> minimum(components, 0);
  std::vector<bool> seen(components, false);
  for (int c = 0; c < count; ++c) {
    int k = componentOf[c];
    if (!seen[k] || *weight[c] < minimum[k]) minimum[k] = *weight[c];
    seen[k] = true;
  }
  WeakGrading grading;
  for (int c = 0; c < count; ++c)
    grading.weights[diag.classes[c].M] = *weight[c] - minimum[componentOf[c]];
  return grading;
}

WeakGrading homogeneousSigma(const TaylorData& data) {
  if (!data.seq().isHomogeneous())
    throw std::invalid_argument("generators do not share a total degree");
  const int base = data.seq()[0].degree();
  WeakGrading sigma;
  for (std::uint32_t mask = 0; mask < data.subsetCount(); ++mask) {
    Subset M = data.closure(Subset(mask));
    sigma.weights[M] = data.degree(M) / base;
  }
  return sigma;
}

bool isWeakGrading(const SubcomplexDiagram& diag, const WeakGrading& sigma) {
  for (const DiagramClass& c : diag.classes)
    if (!sigma.weights.contains(c.M)) return false;
  for (const DiagramEdge& e : diag.edges)
    if (sigma.at(diag.classes[e.target].M) != sigma.at(diag.classes[e.source].M) + 1)
      return false;
  return true;
}

std::vector<std::vector<Subset>> components(const SubcomplexDiagram& diag) {
  const int count = static_cast<int>(diag.classes.size());
  std::vector<int> root(count);
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](int x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  for (const DiagramEdge& e : diag.edges) root[find(e.source)] = find(e.target);
  std::map<int, std::vector<Subset>> groups;
  for (int c = 0; c < count; ++c) groups[find(c)].push_back(diag.classes[c].M);
  std::vector<std::vector<Subset>> out;
  for (auto& [r, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

TotalComplex totalization(const TaylorData& data, const SubcomplexDiagram& diag,
                          const WeakGrading& sigma, const std::vector<Subset>* only) {
  if (!isWeakGrading(diag, sigma))
    throw std::invalid_argument("sigma is not a weak grading of the subcomplex diagram");
  std::vector<Subset> chosen;
  if (only) {
    chosen = *only;
    for (Subset M : chosen)
      for (const auto& [target, j] : diag.outEdges(diag.indexOf(M)))
        if (std::find(chosen.begin(), chosen.end(), diag.classes[target].M) == chosen.end())
          throw std::invalid_argument("class selection is not a union of components");
  } else {
    for (const DiagramClass& c : diag.classes) chosen.push_back(c.M);
  }
  std::map<int, std::vector<Subset>> pieces;
  std::vector<std::pair<Subset, int>> degreeOf;
  for (Subset M : chosen) {
    const int shift = 2 * sigma.at(M);
    for (Subset J : diag.classes.at(diag.indexOf(M)).members) {
      pieces[J.size() - shift].push_back(J);
      degreeOf.emplace_back(J, J.size() - shift);
    }
  }
  for (auto& [deg, basis] : pieces) basis = sortedByMask(std::move(basis));
  return assemble(data.n(), pieces, degreeOf, data, true, true);
}

// Monomial subcomplexes ----------------------------------------------------------

bool SimplicialComplexT::contains(Subset face) const {
  return std::find(faces.begin(), faces.end(), face) != faces.end();
}

bool SimplicialComplexT::isClosed() const {
  for (Subset face : faces)
    for (int v : face.indices())
      if (!contains(face.without(v))) return false;
  return true;
}

int SimplicialComplexT::dimension() const {
  int dim = -1;
  for (Subset face : faces) dim = std::max(dim, face.size() - 1);
  return dim;
}

SimplicialComplexT deltaComplex(const TaylorData& data, Subset J) {
  SimplicialComplexT delta;
  delta.vertices = data.closure(J);
  for (Subset K : data.sClass(J)) delta.faces.push_back(delta.vertices - K);
  std::sort(delta.faces.begin(), delta.faces.end(), [](Subset a, Subset b) {
    return std::make_pair(a.size(), a.mask()) < std::make_pair(b.size(), b.mask());
  });
  return delta;
}

CochainComplex reducedCochain(const SimplicialComplexT& delta) {
  CochainComplex out;
  const int top = delta.dimension();
  out.bases.resize(top + 2);
  for (Subset face : delta.faces) out.bases[face.size()].push_back(face);
  for (auto& basis : out.bases) basis = sortedByMask(std::move(basis));
  for (int k = 0; k < static_cast<int>(out.bases.size()); ++k) {
    const std::vector<Subset> next =
        k + 1 < static_cast<int>(out.bases.size()) ? out.bases[k + 1] : std::vector<Subset>{};
    SparseMatrix m = emptyMatrix(next, out.bases[k]);
    for (int col = 0; col < m.cols; ++col) {
      Subset sigma = out.bases[k][col];
      for (int v = 0; v < kMaxGenerators; ++v) {
        if (sigma.contains(v)) continue;
        int row = indexIn(next, sigma.with(v));
        if (row < 0) continue;
        int below = std::popcount(sigma.mask() & ((1u << v) - 1u));
        m.entries.push_back({row, col, EntryCoeff::constant(below % 2 == 0 ? 1 : -1)});
      }
    }
    sortEntries(m);
    out.coboundary.push_back(std::move(m));
  }
  return out;
}

std::map<int, int> cohomologyRanks(const SimplicialComplexT& delta,
                                   unsigned long long fieldChar) {
  const CochainComplex cochain = reducedCochain(delta);
  auto rankOf = [&](const SparseMatrix& m) {
    if (m.rows == 0 || m.cols == 0) return 0;
    if (fieldChar == 0) {
      SparseRatMatrix q{m.rows, m.cols, std::vector<std::vector<std::pair<int, mpq_class>>>(m.rows)};
      for (const MatrixEntry& e : m.entries) q.data[e.row].emplace_back(e.col, e.coeff.sign);
      for (auto& row : q.data) std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) {
          return a.first < b.first;
        });
      return sparseRankRational(std::move(q));
    }
    PrimeField field(fieldChar);
    SparseModMatrix s{m.rows, m.cols, std::vector<std::vector<std::pair<int, std::uint64_t>>>(m.rows)};
    for (const MatrixEntry& e : m.entries) s.data[e.row].emplace_back(e.col, field.fromInt(e.coeff.sign));
    for (auto& row : s.data) std::sort(row.begin(), row.end());
    return sparseRankModP(std::move(s), field);
  };
  std::vector<int> ranks;
  for (const SparseMatrix& m : cochain.coboundary) ranks.push_back(rankOf(m));
  std::map<int, int> out;
  for (int k = 0; k < static_cast<int>(cochain.bases.size()); ++k) {
    int dim = static_cast<int>(cochain.bases[k].size());
    int incoming = k > 0 ? ranks[k - 1] : 0;
    out[k - 1] = dim - ranks[k] - incoming;
  }
  return out;
}

TotalComplex taylorSubcomplexC(const TaylorData& data, Subset J) {
  std::map<int, std::vector<Subset>> pieces;
  std::vector<std::pair<Subset, int>> degreeOf;
  for (Subset K : data.sClass(J)) {
    pieces[K.size()].push_back(K);
    degreeOf.emplace_back(K, K.size());
  }
  return assemble(data.n(), pieces, degreeOf, data, true, false);
}

}  // namespace suppvar
