#include "suppvar/monomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace suppvar {

// Subset -------------------------------------------------------------------

Subset Subset::fromLabels(std::initializer_list<int> labels) {
  return fromLabels(std::vector<int>(labels));
}

Subset Subset::fromLabels(const std::vector<int>& labels) {
  std::uint32_t mask = 0;
  for (int label : labels) {
    if (label < 1 || label > kMaxGenerators)
      throw std::invalid_argument("subset label out of range: " + std::to_string(label));
    mask |= 1u << (label - 1);
  }
  return Subset(mask);
}

std::vector<int> Subset::indices() const {
  std::vector<int> out;
  for (std::uint32_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

std::vector<int> Subset::labels() const {
  std::vector<int> out = indices();
  for (int& v : out) ++v;
  return out;
}

std::string Subset::toString() const {
  std::string out = "{";
  bool first = true;
  for (int label : labels()) {
    if (!first) out += ",";
    out += std::to_string(label);
    first = false;
  }
  return out + "}";
}

std::string Subset::compact() const {
  if (empty()) return "∅";
  static constexpr char kDigits[] = "0123456789ABCDEFG";
  std::string out;
  for (int label : labels()) out += kDigits[label];
  return out;
}

// Monomial -------------------------------------------------------------------

Monomial::Monomial(std::vector<std::pair<int, int>> exps) {
  std::sort(exps.begin(), exps.end());
  for (const auto& [var, exp] : exps) {
    if (var < 0 || exp < 0) throw std::invalid_argument("negative variable or exponent");
    if (exp == 0) continue;
    if (!exps_.empty() && exps_.back().first == var)
      exps_.back().second += exp;
    else
      exps_.emplace_back(var, exp);
  }
}

Monomial Monomial::variable(int var, int exp) { return Monomial({{var, exp}}); }

int Monomial::exponentOf(int var) const {
  auto it = std::lower_bound(exps_.begin(), exps_.end(), std::make_pair(var, 0));
  return (it != exps_.end() && it->first == var) ? it->second : 0;
}

int Monomial::degree() const {
  int d = 0;
  for (const auto& [var, exp] : exps_) d += exp;
  return d;
}

bool Monomial::divides(const Monomial& other) const {
  auto it = other.exps_.begin();
  for (const auto& [var, exp] : exps_) {
    while (it != other.exps_.end() && it->first < var) ++it;
    if (it == other.exps_.end() || it->first != var || it->second < exp) return false;
  }
  return true;
}

bool Monomial::coprimeWith(const Monomial& other) const {
  auto a = exps_.begin();
  auto b = other.exps_.begin();
  while (a != exps_.end() && b != other.exps_.end()) {
    if (a->first == b->first) return false;
    if (a->first < b->first)
      ++a;
    else
      ++b;
  }
  return true;
}

namespace {

template <class Combine>
Monomial mergeWith(const std::vector<std::pair<int, int>>& x,
                   const std::vector<std::pair<int, int>>& y, Combine combine) {
  std::vector<std::pair<int, int>> out;
  out.reserve(x.size() + y.size());
  auto a = x.begin();
  auto b = y.begin();
  while (a != x.end() || b != y.end()) {
    if (b == y.end() || (a != x.end() && a->first < b->first)) {
      out.emplace_back(a->first, combine(a->second, 0));
      ++a;
    } else if (a == x.end() || b->first < a->first) {
      out.emplace_back(b->first, combine(0, b->second));
      ++b;
    } else {
      out.emplace_back(a->first, combine(a->second, b->second));
      ++a;
      ++b;
    }
  }
  return Monomial(std::move(out));
}

}  // namespace

Monomial Monomial::lcm(const Monomial& other) const {
  return mergeWith(exps_, other.exps_, [](int p, int q) { return std::max(p, q); });
}

Monomial Monomial::gcd(const Monomial& other) const {
  return mergeWith(exps_, other.exps_, [](int p, int q) { return std::min(p, q); });
}

Monomial Monomial::operator*(const Monomial& other) const {
  return mergeWith(exps_, other.exps_, [](int p, int q) { return p + q; });
}

std::string Monomial::toString() const {
  if (exps_.empty()) return "1";
  std::string out;
  for (const auto& [var, exp] : exps_) {
    if (!out.empty()) out += "*";
    out += "x" + std::to_string(var + 1);
    if (exp != 1) out += "^" + std::to_string(exp);
  }
  return out;
}

// MonomialSeq ----------------------------------------------------------------

MonomialSeq::MonomialSeq(std::vector<Monomial> gens, int d) : gens_(std::move(gens)), d_(d) {
  if (gens_.empty() || static_cast<int>(gens_.size()) > kMaxGenerators)
    throw std::invalid_argument("generator count must be in 1.." +
                                std::to_string(kMaxGenerators));
  for (const Monomial& g : gens_) {
    if (g.isOne()) throw std::invalid_argument("generators must be non-units");
    if (g.span() > d_) throw std::invalid_argument("variable index exceeds ambient count");
  }
}

MonomialSeq::MonomialSeq(std::vector<Monomial> gens)
    : MonomialSeq(gens, [&] {
        int d = 0;
        for (const Monomial& g : gens) d = std::max(d, g.span());
        return d;
      }()) {}

bool MonomialSeq::isHomogeneous() const {
  for (const Monomial& g : gens_)
    if (g.degree() != gens_.front().degree()) return false;
  return true;
}

bool MonomialSeq::isMinimal() const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    for (std::size_t j = 0; j < gens_.size(); ++j)
      if (i != j && gens_[i].divides(gens_[j])) return false;
  return true;
}

std::string MonomialSeq::toString() const {
  std::string out;
  for (const Monomial& g : gens_) {
    if (!out.empty()) out += ",";
    out += g.toString();
  }
  return out;
}

namespace {

class IdealParser {
 public:
  explicit IdealParser(const std::string& text) : text_(text) {}

  MonomialSeq parse() {
    std::vector<Monomial> gens;
    gens.push_back(monomial());
    while (peek() == ',') {
      ++pos_;
      gens.push_back(monomial());
    }
    if (peek() != '\0') fail("unexpected character");
    return MonomialSeq(std::move(gens));
  }

 private:
  char peek() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("ideal parse error at position " + std::to_string(pos_) +
                                ": " + what);
  }

  int integer() {
    peek();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    if (pos_ - start > 6) fail("integer too large");
    return std::stoi(text_.substr(start, pos_ - start));
  }

  std::pair<int, int> factor() {
    if (peek() != 'x') fail("expected 'x'");
    ++pos_;
    int var = integer();
    if (var < 1) fail("variable indices start at 1");
    int exp = 1;
    if (peek() == '^') {
      ++pos_;
      exp = integer();
    }
    return {var - 1, exp};
  }

  Monomial monomial() {
    std::vector<std::pair<int, int>> exps{factor()};
    while (peek() == '*') {
      ++pos_;
      exps.push_back(factor());
    }
    Monomial m(std::move(exps));
    if (m.isOne()) fail("generator is a unit");
    return m;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

MonomialSeq parseIdeal(const std::string& text) { return IdealParser(text).parse(); }

MonomialSeq cycleEdgeIdeal(int d) {
  if (d < 3) throw std::invalid_argument("cycle length must be at least 3");
  std::vector<Monomial> gens;
  for (int i = 0; i < d; ++i) gens.push_back(Monomial({{i, 1}, {(i + 1) % d, 1}}));
  return MonomialSeq(std::move(gens), d);
}

MonomialSeq pathEdgeIdeal(int m) {
  if (m < 1) throw std::invalid_argument("path needs at least one edge");
  std::vector<Monomial> gens;
  for (int i = 0; i < m; ++i) gens.push_back(Monomial({{i, 1}, {i + 1, 1}}));
  return MonomialSeq(std::move(gens), m + 1);
}

// Subset combinatorics -------------------------------------------------------

Monomial lcmSubset(const MonomialSeq& f, Subset J) {
  Monomial out;
  for (int j : J.indices()) out = out.lcm(f[j]);
  return out;
}

Subset mClosure(const MonomialSeq& f, Subset J) {
  Monomial fJ = lcmSubset(f, J);
  Subset out;
  for (int j = 0; j < f.size(); ++j)
    if (f[j].divides(fJ)) out = out.with(j);
  // J = ∅ gives f_∅ = 1, which no non-unit divides.
  return out;
}

std::vector<Subset> sClass(const MonomialSeq& f, Subset J) {
  const Monomial fJ = lcmSubset(f, J);
  const std::uint32_t M = mClosure(f, J).mask();
  std::vector<Subset> out;
  // Increasing enumeration of the submasks of M.
  std::uint32_t sub = 0;
  while (true) {
    if (lcmSubset(f, Subset(sub)) == fJ) out.push_back(Subset(sub));
    if (sub == M) break;
    sub = (sub - M) & M;
  }
  return out;
}

// Signs ------------------------------------------------------------------------

int sgnPerm(const std::vector<int>& seq) {
  // Count transpositions of a selection sort on a copy.
  std::vector<int> work = seq;
  int swaps = 0;
  for (std::size_t i = 0; i < work.size(); ++i) {
    std::size_t best = i;
    for (std::size_t k = i + 1; k < work.size(); ++k)
      if (work[k] < work[best]) best = k;
    if (best != i) {
      std::swap(work[i], work[best]);
      ++swaps;
    }
  }
  return (swaps % 2 == 0) ? 1 : -1;
}

int sgnPrepend(int j, Subset J) {
  int below = std::popcount(J.mask() & ((1u << j) - 1u));
  return (below % 2 == 0) ? 1 : -1;
}

int ksgnIn(Subset J, Subset M) {
  int position = 0;
  int evenHits = 0;
  for (int m : M.indices()) {
    ++position;
    if (position % 2 == 0 && J.contains(m)) ++evenHits;
  }
  return (evenHits % 2 == 0) ? 1 : -1;
}

int ksgn(const MonomialSeq& f, Subset J) { return ksgnIn(J, mClosure(f, J)); }

int ksgnPair(const MonomialSeq& f, int j, Subset J) {
  return ksgn(f, J) * ksgn(f, J.with(j));
}

// TaylorData -------------------------------------------------------------------

TaylorData::TaylorData(const MonomialSeq& f) : f_(f) {
  const std::uint32_t count = 1u << f.size();
  lcm_.resize(count);
  degree_.resize(count);
  closure_.resize(count);
  ksgn_.resize(count);
  for (std::uint32_t mask = 1; mask < count; ++mask) {
    int low = std::countr_zero(mask);
    lcm_[mask] = lcm_[mask & (mask - 1)].lcm(f[low]);
  }
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    degree_[mask] = lcm_[mask].degree();
    Subset M;
    for (int j = 0; j < f.size(); ++j)
      if (f[j].divides(lcm_[mask])) M = M.with(j);
    closure_[mask] = M;
    ksgn_[mask] = static_cast<signed char>(ksgnIn(Subset(mask), M));
  }
}

bool TaylorData::coprime(int j, Subset J) const { return f_[j].coprimeWith(lcm_[J.mask()]); }

std::vector<Subset> TaylorData::sClass(Subset J) const {
  const std::uint32_t M = closure_[J.mask()].mask();
  const Monomial& fJ = lcm_[J.mask()];
  std::vector<Subset> out;
  std::uint32_t sub = 0;
  while (true) {
    if (lcm_[sub] == fJ) out.push_back(Subset(sub));
    if (sub == M) break;
    sub = (sub - M) & M;
  }
  return out;
}

}  // namespace suppvar
