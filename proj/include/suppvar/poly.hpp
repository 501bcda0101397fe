#ifndef SUPPVAR_POLY_HPP
#define SUPPVAR_POLY_HPP

#include <gmpxx.h>

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "suppvar/linalg.hpp"

namespace suppvar {

/// Parameters a_1..a_16 plus room for auxiliary variables.
inline constexpr int kMaxVars = 18;

/// Exponent vector over the parameter variables (zero-based).
class Exponent {
 public:
  constexpr Exponent() = default;
  static Exponent variable(int var, int power = 1);

  int operator[](int var) const { return e_[var]; }
  int degree() const { return degree_; }
  bool isZero() const { return degree_ == 0; }
  /// One past the largest variable with a nonzero exponent.
  int span() const;

  bool divides(const Exponent& other) const;
  bool coprimeWith(const Exponent& other) const;
  Exponent operator*(const Exponent& other) const;
  /// Requires divisor.divides(*this).
  Exponent operator/(const Exponent& divisor) const;
  Exponent lcm(const Exponent& other) const;
  Exponent withPower(int var, int power) const;

  friend bool operator==(const Exponent&, const Exponent&) = default;
  /// Lexicographic on the raw vector; only for containers.
  friend auto operator<=>(const Exponent& a, const Exponent& b) { return a.e_ <=> b.e_; }

 private:
  std::array<std::uint8_t, kMaxVars> e_{};
  std::uint16_t degree_ = 0;
};

/// degrevlex, optionally refined into a block order that first compares the
/// exponent of one eliminated variable.
struct MonomialOrder {
  int eliminate = -1;

  static MonomialOrder degrevlex() { return {}; }
  static MonomialOrder eliminating(int var) { return {var}; }

  std::strong_ordering compare(const Exponent& a, const Exponent& b) const;
  bool greater(const Exponent& a, const Exponent& b) const { return compare(a, b) > 0; }
};

/// Sparse polynomial over Q in the parameters a_1..a_k. Terms are kept in
/// strictly descending degrevlex order with no zero coefficients.
class RatPoly {
 public:
  struct Term {
    Exponent exp;
    mpq_class coeff;
  };

  RatPoly() = default;
  RatPoly(long value);  // NOLINT: constants convert implicitly
  explicit RatPoly(const mpq_class& value);
  static RatPoly variable(int var);
  static RatPoly monomial(const Exponent& exp, const mpq_class& coeff);
  /// Sorts and merges arbitrary terms.
  static RatPoly fromTerms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  bool isConstant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exp.isZero()); }
  mpq_class constantValue() const;
  int degree() const;
  int degreeIn(int var) const;
  /// One past the largest variable used.
  int span() const;
  bool isHomogeneous() const;
  const Term& leading() const { return terms_.front(); }

  RatPoly operator-() const;
  RatPoly operator+(const RatPoly& other) const;
  RatPoly operator-(const RatPoly& other) const;
  RatPoly operator*(const RatPoly& other) const;
  RatPoly& operator+=(const RatPoly& other) { return *this = *this + other; }
  RatPoly& operator-=(const RatPoly& other) { return *this = *this - other; }
  RatPoly& operator*=(const RatPoly& other) { return *this = *this * other; }
  RatPoly scaled(const mpq_class& factor) const;
  RatPoly pow(int power) const;
  RatPoly derivative(int var) const;
  /// Replaces a variable by a polynomial.
  RatPoly substitute(int var, const RatPoly& value) const;
  /// Renames variables: var i becomes perm[i].
  RatPoly permuted(const std::vector<int>& perm) const;

  /// Integer primitive form with a positive leading coefficient.
  RatPoly primitive() const;
  /// Exact division; throws std::domain_error when the divisor does not divide.
  RatPoly divideExact(const RatPoly& divisor) const;

  mpq_class evaluate(const std::vector<mpq_class>& point) const;
  std::uint64_t evaluateMod(const PrimeField& field, const std::vector<std::uint64_t>& point) const;

  /// "a1*a3*a5+a2*a4*a6" with sorted variables and terms.
  std::string toString() const;

  friend bool operator==(const RatPoly& a, const RatPoly& b);

 private:
  std::vector<Term> terms_;
};

/// Parses sums of products of a<i>, integers, rationals, powers and
/// parentheses. Throws std::invalid_argument with a position on bad input.
RatPoly parsePoly(const std::string& text);
/// Comma-separated list of polynomials.
std::vector<RatPoly> parsePolyList(const std::string& text);

}  // namespace suppvar

#endif  // SUPPVAR_POLY_HPP
