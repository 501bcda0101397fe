#include "suppvar/polymatrix.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <tuple>

namespace suppvar {

// FieldPoint -------------------------------------------------------------------------

bool FieldPoint::isZero() const {
  return std::all_of(coords.begin(), coords.end(), [](const mpq_class& c) { return sgn(c) == 0; });
}

std::vector<std::uint64_t> FieldPoint::modCoords(const PrimeField& field) const {
  std::vector<std::uint64_t> out;
  out.reserve(coords.size());
  for (const mpq_class& c : coords) out.push_back(field.fromRational(c));
  return out;
}

FieldPoint FieldPoint::modular(std::uint64_t prime, const std::vector<std::uint64_t>& values) {
  FieldPoint pt;
  pt.prime = prime;
  for (std::uint64_t v : values) pt.coords.emplace_back(mpz_class(std::to_string(v)));
  return pt;
}

// PolyMatrix --------------------------------------------------------------------------

namespace {

RatPoly fromCoeff(EntryCoeff c) {
  if (c.isConstant()) return RatPoly(static_cast<long>(c.sign));
  return RatPoly::variable(c.param).scaled(mpq_class(c.sign));
}

int rankOfModMatrix(const DenseModMatrix& m, const PrimeField& field) {
  if (m.empty() || m[0].empty()) return 0;
  std::size_t cells = m.size() * m[0].size();
  if (cells <= 40000) return rankModP(m, field);
  SparseModMatrix s;
  s.rows = static_cast<int>(m.size());
  s.cols = static_cast<int>(m[0].size());
  s.data.resize(s.rows);
  for (int r = 0; r < s.rows; ++r)
    for (int c = 0; c < s.cols; ++c)
      if (m[r][c] != 0) s.data[r].emplace_back(c, m[r][c]);
  return sparseRankModP(std::move(s), field);
}

}  // namespace

PolyMatrix PolyMatrix::fromSparse(const SparseMatrix& m) {
  PolyMatrix out(m.rows, m.cols);
  for (const MatrixEntry& e : m.entries) out.set(e.row, e.col, out.at(e.row, e.col) + fromCoeff(e.coeff));
  return out;
}

PolyMatrix PolyMatrix::fromDense(const std::vector<std::vector<RatPoly>>& m) {
  PolyMatrix out(static_cast<int>(m.size()), m.empty() ? 0 : static_cast<int>(m[0].size()));
  for (int r = 0; r < out.rows_; ++r)
    for (int c = 0; c < out.cols_; ++c) out.set(r, c, m[r][c]);
  return out;
}

RatPoly PolyMatrix::at(int row, int col) const {
  auto it = data_.at(row).find(col);
  return it == data_[row].end() ? RatPoly() : it->second;
}

void PolyMatrix::set(int row, int col, RatPoly value) {
  if (col < 0 || col >= cols_) throw std::out_of_range("PolyMatrix column");
  if (value.isZero())
    data_.at(row).erase(col);
  else
    data_.at(row)[col] = std::move(value);
}

std::size_t PolyMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

int PolyMatrix::maxEntryDegree() const {
  int d = 0;
  for (const auto& r : data_)
    for (const auto& [c, p] : r) d = std::max(d, p.degree());
  return d;
}

PolyMatrix PolyMatrix::submatrix(const std::vector<int>& rowIdx, const std::vector<int>& colIdx) const {
  PolyMatrix out(static_cast<int>(rowIdx.size()), static_cast<int>(colIdx.size()));
  for (std::size_t i = 0; i < rowIdx.size(); ++i)
    for (std::size_t j = 0; j < colIdx.size(); ++j) {
      auto it = data_[rowIdx[i]].find(colIdx[j]);
      if (it != data_[rowIdx[i]].end()) out.data_[i][static_cast<int>(j)] = it->second;
    }
  return out;
}

std::vector<std::vector<mpq_class>> PolyMatrix::evaluate(const std::vector<mpq_class>& point) const {
  std::vector<std::vector<mpq_class>> out(rows_, std::vector<mpq_class>(cols_));
  for (int r = 0; r < rows_; ++r)
    for (const auto& [c, p] : data_[r]) out[r][c] = p.evaluate(point);
  return out;
}

DenseModMatrix PolyMatrix::evaluateMod(const PrimeField& field, const std::vector<std::uint64_t>& point) const {
  DenseModMatrix out(rows_, std::vector<std::uint64_t>(cols_, 0));
  for (int r = 0; r < rows_; ++r)
    for (const auto& [c, p] : data_[r]) out[r][c] = p.evaluateMod(field, point);
  return out;
}

int PolyMatrix::rankAt(const FieldPoint& point) const {
  if (point.prime == 0) {
    SparseRatMatrix s;
    s.rows = rows_;
    s.cols = cols_;
    s.data.resize(rows_);
    for (int r = 0; r < rows_; ++r)
      for (const auto& [c, p] : data_[r]) {
        mpq_class v = p.evaluate(point.coords);
        if (sgn(v) != 0) s.data[r].emplace_back(c, v);
      }
    return sparseRankRational(std::move(s));
  }
  PrimeField field(point.prime);
  return rankOfModMatrix(evaluateMod(field, point.modCoords(field)), field);
}

// ModPoly -----------------------------------------------------------------------------

ModPoly::ModPoly(const RatPoly& p, const PrimeField& field) {
  for (const auto& t : p.terms()) {
    Term term{field.fromRational(t.coeff), {}};
    if (term.coeff == 0) continue;
    for (int v = 0; v < kMaxVars; ++v)
      if (t.exp[v] != 0) {
        term.factors.emplace_back(static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(t.exp[v]));
        maxExponent_ = std::max(maxExponent_, t.exp[v]);
      }
    terms_.push_back(std::move(term));
  }
}

std::uint64_t ModPoly::evaluate(const PrimeField& field,
                                const std::vector<std::vector<std::uint64_t>>& powers) const {
  std::uint64_t sum = 0;
  for (const Term& t : terms_) {
    std::uint64_t v = t.coeff;
    for (auto [var, e] : t.factors) v = field.mul(v, powers[var][e]);
    sum = field.add(sum, v);
  }
  return sum;
}

// Ranks -------------------------------------------------------------------------------

namespace {

using DenseRat = std::vector<std::vector<RatPoly>>;

DenseRat toDense(const PolyMatrix& m) {
  DenseRat out(m.rows(), std::vector<RatPoly>(m.cols()));
  for (int r = 0; r < m.rows(); ++r)
    for (const auto& [c, p] : m.row(r)) out[r][c] = p;
  return out;
}

/// Fraction-free elimination; returns the rank and leaves the last pivot in
/// `lastPivot` with the swap parity in `sign`.
int bareiss(DenseRat& a, RatPoly* lastPivot, int* sign) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
  RatPoly prev(1L);
  int rank = 0;
  int parity = 1;
  for (int k = 0; k < cols && rank < rows; ++k) {
    int pivot = -1;
    std::size_t bestTerms = 0;
    for (int i = rank; i < rows; ++i)
      if (!a[i][k].isZero() && (pivot < 0 || a[i][k].terms().size() < bestTerms)) {
        pivot = i;
        bestTerms = a[i][k].terms().size();
      }
    if (pivot < 0) continue;
    if (pivot != rank) {
      std::swap(a[pivot], a[rank]);
      parity = -parity;
    }
    for (int i = rank + 1; i < rows; ++i) {
      for (int j = k + 1; j < cols; ++j)
        a[i][j] = (a[rank][k] * a[i][j] - a[i][k] * a[rank][j]).divideExact(prev);
      a[i][k] = RatPoly();
    }
    prev = a[rank][k];
    ++rank;
  }
  if (lastPivot) *lastPivot = prev;
  if (sign) *sign = parity;
  return rank;
}

}  // namespace

int symbolicRank(const PolyMatrix& m) {
  DenseRat a = toDense(m);
  return bareiss(a, nullptr, nullptr);
}

RatPoly determinant(const PolyMatrix& square) {
  if (square.rows() != square.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (square.rows() == 0) return RatPoly(1L);
  DenseRat a = toDense(square);
  RatPoly last;
  int sign = 1;
  int rank = bareiss(a, &last, &sign);
  if (rank < square.rows()) return RatPoly();
  return sign > 0 ? last : -last;
}

GenericRank genericRank(const PolyMatrix& m, int nvars, std::mt19937_64& rng, int trials,
                        int certifyBelow) {
  GenericRank out;
  if (m.rows() == 0 || m.cols() == 0 || m.nonzeros() == 0) {
    out.certified = true;
    return out;
  }
  const auto& primes = largePrimes();
  for (int t = 0; t < std::max(trials, 1); ++t) {
    PrimeField field(primes[t % primes.size()]);
    std::vector<std::uint64_t> pt(std::max(nvars, kMaxVars), 0);
    for (int v = 0; v < nvars; ++v) pt[v] = rng() % field.p();
    out.rank = std::max(out.rank, rankOfModMatrix(m.evaluateMod(field, pt), field));
  }
  if (m.rows() <= certifyBelow && m.cols() <= certifyBelow) {
    int exact = symbolicRank(m);
    if (exact != out.rank) throw std::logic_error("randomized rank exceeds the symbolic rank");
    out.certified = true;
  }
  return out;
}

// Minors ------------------------------------------------------------------------------

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// All nonzero minors on a fixed row set, indexed by column mask.
std::map<std::uint64_t, RatPoly> minorsOnRows(const PolyMatrix& m, const std::vector<int>& rows) {
  std::map<std::uint64_t, RatPoly> cur{{0, RatPoly(1L)}};
  for (int row : rows) {
    std::map<std::uint64_t, RatPoly> next;
    for (const auto& [mask, det] : cur)
      for (const auto& [c, v] : m.row(row)) {
        std::uint64_t bit = std::uint64_t{1} << c;
        if (mask & bit) continue;
        int above = std::popcount(mask >> (c + 1));
        RatPoly term = det * v;
        if (above % 2) term = -term;
        RatPoly& slot = next[mask | bit];
        slot += term;
      }
    cur.clear();
    for (auto& [mask, det] : next)
      if (!det.isZero()) cur.emplace(mask, std::move(det));
  }
  return cur;
}

void checkMinorBounds(const RatPoly& minor, int bound) {
  for (const auto& t : minor.terms())
    if (t.coeff.get_den() != 1) throw std::logic_error("minor with a non-integer coefficient");
  if (minor.degree() > bound) throw std::logic_error("minor exceeds the degree bound");
}

bool nextCombination(std::vector<int>& idx, int n) {
  int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

int matrixSpan(const PolyMatrix& m) {
  int span = 0;
  for (int r = 0; r < m.rows(); ++r)
    for (const auto& [c, p] : m.row(r)) span = std::max(span, p.span());
  return span;
}

// Rows and columns of an r x r submatrix that is invertible at the point.
std::optional<std::pair<std::vector<int>, std::vector<int>>> nonsingularMinorAt(DenseModMatrix a,
                                                                                const PrimeField& field, int r) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  std::vector<int> rowOf(rows);
  for (int i = 0; i < rows; ++i) rowOf[i] = i;
  std::vector<int> pivotRows, pivotCols;
  int top = 0;
  for (int c = 0; c < cols && top < rows && static_cast<int>(pivotCols.size()) < r; ++c) {
    int p = top;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[top]);
    std::swap(rowOf[p], rowOf[top]);
    const std::uint64_t inv = field.inv(a[top][c]);
    for (int i = top + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      const std::uint64_t factor = field.mul(a[i][c], inv);
      for (int k = c; k < cols; ++k) a[i][k] = field.sub(a[i][k], field.mul(factor, a[top][k]));
    }
    pivotRows.push_back(rowOf[top]);
    pivotCols.push_back(c);
    ++top;
  }
  if (static_cast<int>(pivotCols.size()) < r) return std::nullopt;
  std::sort(pivotRows.begin(), pivotRows.end());
  return std::make_pair(pivotRows, pivotCols);
}

std::vector<int> randomSubset(int n, int k, std::mt19937_64& rng) {
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(k);
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace

MinorsResult minorsIdeal(const PolyMatrix& m, int r, const MinorsOptions& options) {
  if (r < 0 || r > std::min(m.rows(), m.cols()))
    throw std::invalid_argument("minor size exceeds the matrix dimensions");
  MinorsResult result;
  if (r == 0) {
    result.ideal = Ideal({RatPoly(1L)});
    return result;
  }
  const int bound = r * std::max(1, m.maxEntryDegree());
  const double total = binomial(m.rows(), r) * binomial(m.cols(), r);
  std::vector<RatPoly> gens;

  if (total <= static_cast<double>(options.budget) && m.cols() <= 63) {
    std::vector<int> rows(r);
    for (int i = 0; i < r; ++i) rows[i] = i;
    do {
      for (auto& [mask, minor] : minorsOnRows(m, rows)) {
        if (std::popcount(mask) != r) continue;
        checkMinorBounds(minor, bound);
        ++result.computed;
        if (minor.isConstant()) {
          result.ideal = Ideal({RatPoly(1L)});
          return result;
        }
        gens.push_back(minor);
      }
    } while (nextCombination(rows, m.rows()));
    result.ideal = Ideal(std::move(gens));
    return result;
  }

  result.exhaustive = false;
  std::mt19937_64 rng(options.seed);
  Ideal current;
  int streak = 0;
  const bool wholeRows = m.cols() <= 63 && binomial(m.cols(), r) <= 256;
  const std::size_t maxAttempts = std::max<std::size_t>(options.budget, 256);
  for (std::size_t attempt = 0; attempt < maxAttempts && streak < options.window; ++attempt) {
    std::vector<int> rows = randomSubset(m.rows(), r, rng);
    std::vector<RatPoly> fresh;
    if (wholeRows) {
      for (auto& [mask, minor] : minorsOnRows(m, rows))
        if (std::popcount(mask) == r) fresh.push_back(std::move(minor));
    } else {
      fresh.push_back(determinant(m.submatrix(rows, randomSubset(m.cols(), r, rng))));
    }
    for (RatPoly& minor : fresh) {
      if (minor.isZero()) continue;
      ++result.computed;
      checkMinorBounds(minor, bound);
      if (minor.isConstant()) {
        result.ideal = Ideal({RatPoly(1L)});
        return result;
      }
      if (!current.isZero() && radicalMember(minor, current, options.radical).member) {
        ++streak;
        continue;
      }
      streak = 0;
      gens.push_back(std::move(minor));
      current = Ideal(gens);
    }
  }
  // Sampling alone can stop early. Look for points of the current variety
  // where the matrix still has rank r and add a minor that is nonzero there.
  const int nvars = std::max(1, matrixSpan(m));
  const PrimeField field(largePrimes()[0]);
  int confirmed = 0;
  for (std::size_t round = 0; round < maxAttempts && confirmed < options.window; ++round) {
    auto pt = sampleVarietyPoint(current.generators(), nvars, field, rng);
    if (!pt) continue;
    auto pick = nonsingularMinorAt(m.evaluateMod(field, *pt), field, r);
    if (!pick) {
      ++confirmed;
      continue;
    }
    confirmed = 0;
    RatPoly minor = determinant(m.submatrix(pick->first, pick->second));
    ++result.computed;
    checkMinorBounds(minor, bound);
    if (minor.isConstant()) {
      result.ideal = Ideal({RatPoly(1L)});
      return result;
    }
    gens.push_back(std::move(minor));
    current = Ideal(gens);
  }
  result.ideal = current;
  return result;
}

// Differential modules ----------------------------------------------------------------

DiffModule DiffModule::fromTotal(const TotalComplex& complex) {
  DiffModule m;
  m.nvars = complex.n;
  std::map<int, int> offset;
  for (const auto& [deg, basis] : complex.pieces) {
    offset[deg] = static_cast<int>(m.degree.size());
    for (Subset s : basis) {
      m.degree.push_back(deg);
      m.label.push_back(s);
    }
  }
  m.out.resize(m.degree.size());
  for (const auto& [deg, mat] : complex.diffs) {
    if (mat.entries.empty()) continue;
    int src = offset.at(deg), dst = offset.at(deg - 1);
    for (const MatrixEntry& e : mat.entries) {
      RatPoly& slot = m.out[src + e.col][dst + e.row];
      slot += fromCoeff(e.coeff);
    }
  }
  for (auto& o : m.out) std::erase_if(o, [](const auto& kv) { return kv.second.isZero(); });
  return m;
}

DiffModule DiffModule::fromPeriodic(const PeriodicComplex& complex) {
  DiffModule m;
  m.nvars = complex.n;
  m.periodic = true;
  const int nEven = static_cast<int>(complex.even.size());
  for (Subset s : complex.even) {
    m.degree.push_back(0);
    m.label.push_back(s);
  }
  for (Subset s : complex.odd) {
    m.degree.push_back(1);
    m.label.push_back(s);
  }
  m.out.resize(m.degree.size());
  for (const MatrixEntry& e : complex.evenToOdd.entries) m.out[e.col][nEven + e.row] += fromCoeff(e.coeff);
  for (const MatrixEntry& e : complex.oddToEven.entries) m.out[nEven + e.col][e.row] += fromCoeff(e.coeff);
  for (auto& o : m.out) std::erase_if(o, [](const auto& kv) { return kv.second.isZero(); });
  return m;
}

std::vector<int> DiffModule::degrees() const {
  std::set<int> s(degree.begin(), degree.end());
  if (periodic) s.insert({0, 1});
  return {s.begin(), s.end()};
}

std::vector<int> DiffModule::basisOf(int deg) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < degree.size(); ++i)
    if (degree[i] == deg) out.push_back(static_cast<int>(i));
  return out;
}

PolyMatrix DiffModule::block(int deg) const {
  std::vector<int> src = basisOf(deg), dst = basisOf(targetDegree(deg));
  std::map<int, int> rowOf;
  for (std::size_t i = 0; i < dst.size(); ++i) rowOf[dst[i]] = static_cast<int>(i);
  PolyMatrix m(static_cast<int>(dst.size()), static_cast<int>(src.size()));
  for (std::size_t j = 0; j < src.size(); ++j)
    for (const auto& [t, p] : out[src[j]]) m.set(rowOf.at(t), static_cast<int>(j), p);
  return m;
}

namespace {

bool isUnit(const RatPoly& p) {
  return p.isConstant() && !p.isZero() && (p.constantValue() == 1 || p.constantValue() == -1);
}

}  // namespace

DiffModule reduceUnitPivots(const DiffModule& module, ReductionStats* stats) {
  const int n = static_cast<int>(module.size());
  std::vector<std::map<int, RatPoly>> out = module.out;
  std::vector<std::set<int>> in(n);
  std::vector<bool> alive(n, true);
  for (int b = 0; b < n; ++b)
    for (const auto& [a, p] : out[b]) in[a].insert(b);

  using Candidate = std::tuple<std::size_t, int, int>;  // cost, source, target
  std::priority_queue<Candidate, std::vector<Candidate>, std::greater<>> queue;
  auto cost = [&](int b, int a) { return (out[b].size() - 1) * (in[a].size() - 1); };
  for (int b = 0; b < n; ++b)
    for (const auto& [a, p] : out[b])
      if (isUnit(p)) queue.emplace(cost(b, a), b, a);

  std::size_t pivots = 0;
  while (!queue.empty()) {
    auto [c, b, a] = queue.top();
    queue.pop();
    if (!alive[b] || !alive[a]) continue;
    auto it = out[b].find(a);
    if (it == out[b].end() || !isUnit(it->second)) continue;
    std::size_t now = cost(b, a);
    if (now > c) {
      queue.emplace(now, b, a);
      continue;
    }
    const RatPoly unit = it->second;  // its own inverse
    std::vector<std::pair<int, RatPoly>> row(out[b].begin(), out[b].end());
    std::vector<int> sources(in[a].begin(), in[a].end());
    for (int s : sources) {
      if (s == b) continue;
      RatPoly factor = out[s].at(a) * unit;
      for (const auto& [t, v] : row) {
        if (t == a) continue;
        RatPoly updated = out[s].count(t) ? out[s][t] - factor * v : -(factor * v);
        if (updated.isZero()) {
          out[s].erase(t);
          in[t].erase(s);
        } else {
          bool unitNow = isUnit(updated);
          out[s][t] = std::move(updated);
          in[t].insert(s);
          if (unitNow) queue.emplace(cost(s, t), s, t);
        }
      }
    }
    for (int x : {a, b}) {
      for (int s : in[x]) out[s].erase(x);
      for (const auto& [t, v] : out[x]) in[t].erase(x);
      in[x].clear();
      out[x].clear();
      alive[x] = false;
    }
    ++pivots;
  }

  DiffModule reduced;
  reduced.nvars = module.nvars;
  reduced.periodic = module.periodic;
  std::vector<int> newId(n, -1);
  for (int i = 0; i < n; ++i)
    if (alive[i]) {
      newId[i] = static_cast<int>(reduced.degree.size());
      reduced.degree.push_back(module.degree[i]);
      reduced.label.push_back(module.label[i]);
    }
  reduced.out.resize(reduced.degree.size());
  for (int i = 0; i < n; ++i)
    if (alive[i])
      for (auto& [t, p] : out[i]) reduced.out[newId[i]].emplace(newId[t], std::move(p));
  if (stats) *stats = {module.size(), reduced.size(), pivots};
  return reduced;
}

// Modular evaluation ------------------------------------------------------------------

ModularModule::ModularModule(const DiffModule& module, const PrimeField& field)
    : field_(field), nvars_(module.nvars), periodic_(module.periodic) {
  for (int d : module.degrees()) dims_[d] = static_cast<int>(module.basisOf(d).size());
  for (int d : module.degrees()) {
    std::vector<int> src = module.basisOf(d), dst = module.basisOf(module.targetDegree(d));
    if (src.empty() || dst.empty()) continue;
    std::map<int, int> rowOf;
    for (std::size_t i = 0; i < dst.size(); ++i) rowOf[dst[i]] = static_cast<int>(i);
    Block block;
    block.sourceDegree = d;
    block.rows = static_cast<int>(dst.size());
    block.cols = static_cast<int>(src.size());
    for (std::size_t j = 0; j < src.size(); ++j)
      for (const auto& [t, p] : module.out[src[j]]) {
        ModPoly mp(p, field_);
        maxExponent_ = std::max(maxExponent_, mp.maxExponent());
        block.entries.emplace_back(rowOf.at(t), static_cast<int>(j), std::move(mp));
      }
    if (!block.entries.empty()) blocks_.push_back(std::move(block));
  }
}

std::map<int, int> ModularModule::ranksAt(const std::vector<std::uint64_t>& point) const {
  std::vector<std::vector<std::uint64_t>> powers(nvars_, std::vector<std::uint64_t>(maxExponent_ + 1, 1));
  for (int v = 0; v < nvars_; ++v)
    for (int e = 1; e <= maxExponent_; ++e) powers[v][e] = field_.mul(powers[v][e - 1], point.at(v) % field_.p());
  std::map<int, int> ranks;
  for (const Block& b : blocks_) {
    SparseModMatrix m;
    m.rows = b.rows;
    m.cols = b.cols;
    m.data.resize(b.rows);
    for (const auto& [r, c, p] : b.entries) {
      std::uint64_t v = p.evaluate(field_, powers);
      if (v != 0) m.data[r].emplace_back(c, v);
    }
    for (auto& row : m.data) std::sort(row.begin(), row.end());
    ranks[b.sourceDegree] = sparseRankModP(std::move(m), field_);
  }
  return ranks;
}

bool ModularModule::homologyNonzero(const std::vector<std::uint64_t>& point) const {
  std::map<int, int> ranks = ranksAt(point);
  for (const auto& [d, dim] : dims_) {
    if (dim == 0) continue;
    int outgoing = ranks.contains(d) ? ranks.at(d) : 0;
    int incomingDegree = periodic_ ? 1 - d : d + 1;
    int incoming = ranks.contains(incomingDegree) ? ranks.at(incomingDegree) : 0;
    if (outgoing + incoming < dim) return true;
  }
  return false;
}

bool homologyNonzeroAt(const DiffModule& module, const FieldPoint& point) {
  if (point.prime != 0) {
    PrimeField field(point.prime);
    ModularModule compiled(module, field);
    std::vector<std::uint64_t> coords = point.modCoords(field);
    coords.resize(std::max<std::size_t>(coords.size(), module.nvars), 0);
    return compiled.homologyNonzero(coords);
  }
  std::map<int, int> ranks;
  std::vector<mpq_class> coords = point.coords;
  coords.resize(std::max<std::size_t>(coords.size(), kMaxVars));
  for (int d : module.degrees()) ranks[d] = module.block(d).rankAt({0, coords});
  for (int d : module.degrees()) {
    int dim = static_cast<int>(module.basisOf(d).size());
    if (dim == 0) continue;
    int incomingDegree = module.periodic ? 1 - d : d + 1;
    int incoming = ranks.contains(incomingDegree) ? ranks.at(incomingDegree) : 0;
    if (ranks.at(d) + incoming < dim) return true;
  }
  return false;
}

}  // namespace suppvar
