#ifndef SUPPVAR_MONOMIAL_HPP
#define SUPPVAR_MONOMIAL_HPP

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace suppvar {

/// Hard cap on the number of generators; subsets are stored as bitmasks.
inline constexpr int kMaxGenerators = 16;

/// A subset of the generator indices, stored as a bitmask. Bit i is the
/// generator with zero-based index i (printed one-based as i+1).
class Subset {
 public:
  constexpr Subset() = default;
  constexpr explicit Subset(std::uint32_t mask) : mask_(mask) {}

  /// Builds a subset from one-based generator labels, e.g. {1,3,5}.
  static Subset fromLabels(std::initializer_list<int> labels);
  static Subset fromLabels(const std::vector<int>& labels);
  static constexpr Subset full(int n) {
    return Subset(n >= 32 ? ~0u : ((1u << n) - 1u));
  }
  static constexpr Subset single(int index) { return Subset(1u << index); }

  constexpr std::uint32_t mask() const { return mask_; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool contains(int index) const { return (mask_ >> index) & 1u; }
  constexpr bool isSubsetOf(Subset other) const {
    return (mask_ & ~other.mask_) == 0;
  }
  constexpr Subset with(int index) const { return Subset(mask_ | (1u << index)); }
  constexpr Subset without(int index) const {
    return Subset(mask_ & ~(1u << index));
  }

  /// Zero-based indices in increasing order.
  std::vector<int> indices() const;
  /// One-based labels in increasing order.
  std::vector<int> labels() const;
  /// "{1,3,5}" style, one-based.
  std::string toString() const;
  /// Compact "135" style used for class names; labels above 9 use hex digits.
  std::string compact() const;

  friend constexpr Subset operator|(Subset a, Subset b) {
    return Subset(a.mask_ | b.mask_);
  }
  friend constexpr Subset operator&(Subset a, Subset b) {
    return Subset(a.mask_ & b.mask_);
  }
  /// Set difference.
  friend constexpr Subset operator-(Subset a, Subset b) {
    return Subset(a.mask_ & ~b.mask_);
  }
  friend constexpr bool operator==(Subset, Subset) = default;
  friend constexpr auto operator<=>(Subset a, Subset b) {
    return a.mask_ <=> b.mask_;
  }

 private:
  std::uint32_t mask_ = 0;
};

/// x_1^{e_1} ... x_d^{e_d} in sparse form: (variable index, exponent) pairs,
/// sorted by variable, no zero exponents. Variable indices are zero-based.
class Monomial {
 public:
  Monomial() = default;
  /// Accepts unsorted pairs; merges repeated variables and drops zeros.
  explicit Monomial(std::vector<std::pair<int, int>> exps);
  static Monomial variable(int var, int exp = 1);

  const std::vector<std::pair<int, int>>& exponents() const { return exps_; }
  int exponentOf(int var) const;
  int degree() const;
  bool isOne() const { return exps_.empty(); }
  /// Largest variable index used plus one.
  int span() const { return exps_.empty() ? 0 : exps_.back().first + 1; }

  bool divides(const Monomial& other) const;
  bool coprimeWith(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;
  Monomial gcd(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;

  /// "x1*x2^2" with one-based variable names; "1" for the unit.
  std::string toString() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::vector<std::pair<int, int>> exps_;
};

/// The ordered generating sequence f = (f_1, ..., f_n) over d variables.
class MonomialSeq {
 public:
  MonomialSeq() = default;
  /// Throws std::invalid_argument when n is out of range, a generator is a
  /// unit, or a variable index reaches d.
  MonomialSeq(std::vector<Monomial> gens, int d);
  /// Infers d from the largest variable index used.
  explicit MonomialSeq(std::vector<Monomial> gens);

  int size() const { return static_cast<int>(gens_.size()); }
  int variables() const { return d_; }
  const Monomial& operator[](int i) const { return gens_[i]; }
  const std::vector<Monomial>& generators() const { return gens_; }

  /// True when every generator has the same total degree.
  bool isHomogeneous() const;
  /// True when no generator divides another.
  bool isMinimal() const;

  /// Comma-separated generators, the inverse of parseIdeal.
  std::string toString() const;

  friend bool operator==(const MonomialSeq&, const MonomialSeq&) = default;

 private:
  std::vector<Monomial> gens_;
  int d_ = 0;
};

/// Parses "x1*x2, x2^3*x3" into a generating sequence. Throws
/// std::invalid_argument with a position-bearing message on bad input.
MonomialSeq parseIdeal(const std::string& text);

/// The edge ideal x1x2, x2x3, ..., x_d x1 of a d-cycle. Requires d >= 3.
MonomialSeq cycleEdgeIdeal(int d);
/// The edge ideal x1x2, ..., x_{m} x_{m+1} of a path with m edges.
MonomialSeq pathEdgeIdeal(int m);

// Subset combinatorics ------------------------------------------------------

/// f_J, the lcm of the generators indexed by J; f_∅ = 1.
Monomial lcmSubset(const MonomialSeq& f, Subset J);
/// M_J = { j : f_j divides f_J }.
Subset mClosure(const MonomialSeq& f, Subset J);
/// S_J = { K : f_K = f_J }, in increasing bitmask order.
std::vector<Subset> sClass(const MonomialSeq& f, Subset J);

// Signs ---------------------------------------------------------------------

/// Sign of the permutation sorting the (distinct) entries ascending.
int sgnPerm(const std::vector<int>& seq);
/// sgn({j}J): the sign picked up moving j into sorted position in J.
int sgnPrepend(int j, Subset J);
/// (-1)^(number of elements of J at even one-based positions of sort(M)).
int ksgnIn(Subset J, Subset M);
/// ksgn(J) computed against M_J.
int ksgn(const MonomialSeq& f, Subset J);
/// ksgn(j, J) = ksgn(J) ksgn({j} ∪ J), each against its own closure.
int ksgnPair(const MonomialSeq& f, int j, Subset J);

/// Per-subset cache over all 2^n subsets: lcm, degree, closure, and ksgn.
/// Immutable after construction and safe to share between threads.
class TaylorData {
 public:
  explicit TaylorData(const MonomialSeq& f);

  const MonomialSeq& seq() const { return f_; }
  int n() const { return f_.size(); }
  std::uint32_t subsetCount() const { return 1u << f_.size(); }

  const Monomial& lcm(Subset J) const { return lcm_[J.mask()]; }
  int degree(Subset J) const { return degree_[J.mask()]; }
  Subset closure(Subset J) const { return closure_[J.mask()]; }
  int ksgn(Subset J) const { return ksgn_[J.mask()]; }
  int ksgnPair(int j, Subset J) const {
    return ksgn_[J.mask()] * ksgn_[J.with(j).mask()];
  }
  /// gcd(f_j, f_J) = 1.
  bool coprime(int j, Subset J) const;
  /// S_J from the cache.
  std::vector<Subset> sClass(Subset J) const;

 private:
  MonomialSeq f_;
  std::vector<Monomial> lcm_;
  std::vector<int> degree_;
  std::vector<Subset> closure_;
  std::vector<signed char> ksgn_;
};

}  // namespace suppvar

#endif  // SUPPVAR_MONOMIAL_HPP
