#include "suppvar/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

namespace suppvar {

// Exponent ---------------------------------------------------------------------

Exponent Exponent::variable(int var, int power) { return Exponent().withPower(var, power); }

int Exponent::span() const {
  for (int v = kMaxVars - 1; v >= 0; --v)
    if (e_[v] != 0) return v + 1;
  return 0;
}

bool Exponent::divides(const Exponent& other) const {
  if (degree_ > other.degree_) return false;
  for (int v = 0; v < kMaxVars; ++v)
    if (e_[v] > other.e_[v]) return false;
  return true;
}

bool Exponent::coprimeWith(const Exponent& other) const {
  for (int v = 0; v < kMaxVars; ++v)
    if (e_[v] != 0 && other.e_[v] != 0) return false;
  return true;
}

namespace {

std::uint8_t checkedExponent(int value) {
  if (value < 0 || value > 255) throw std::overflow_error("exponent out of range");
  return static_cast<std::uint8_t>(value);
}

}  // namespace

Exponent Exponent::operator*(const Exponent& other) const {
  Exponent out;
  for (int v = 0; v < kMaxVars; ++v) out.e_[v] = checkedExponent(e_[v] + other.e_[v]);
  out.degree_ = static_cast<std::uint16_t>(degree_ + other.degree_);
  return out;
}

Exponent Exponent::operator/(const Exponent& divisor) const {
  Exponent out;
  for (int v = 0; v < kMaxVars; ++v) out.e_[v] = checkedExponent(e_[v] - divisor.e_[v]);
  out.degree_ = static_cast<std::uint16_t>(degree_ - divisor.degree_);
  return out;
}

Exponent Exponent::lcm(const Exponent& other) const {
  Exponent out;
  int deg = 0;
  for (int v = 0; v < kMaxVars; ++v) {
    out.e_[v] = std::max(e_[v], other.e_[v]);
    deg += out.e_[v];
  }
  out.degree_ = static_cast<std::uint16_t>(deg);
  return out;
}

Exponent Exponent::withPower(int var, int power) const {
  if (var < 0 || var >= kMaxVars) throw std::out_of_range("variable index out of range");
  Exponent out = *this;
  out.degree_ = static_cast<std::uint16_t>(degree_ - e_[var] + power);
  out.e_[var] = checkedExponent(power);
  return out;
}

std::strong_ordering MonomialOrder::compare(const Exponent& a, const Exponent& b) const {
  if (eliminate >= 0 && a[eliminate] != b[eliminate]) return a[eliminate] <=> b[eliminate];
  if (a.degree() != b.degree()) return a.degree() <=> b.degree();
  for (int v = kMaxVars - 1; v >= 0; --v)
    if (a[v] != b[v]) return b[v] <=> a[v];
  return std::strong_ordering::equal;
}

// RatPoly ------------------------------------------------------------------------

namespace {

const MonomialOrder kDegRevLex{};

struct Descending {
  bool operator()(const Exponent& a, const Exponent& b) const { return kDegRevLex.greater(a, b); }
};

}  // namespace

RatPoly::RatPoly(long value) : RatPoly(mpq_class(value)) {}

RatPoly::RatPoly(const mpq_class& value) {
  if (sgn(value) != 0) terms_.push_back({Exponent(), value});
}

RatPoly RatPoly::variable(int var) { return monomial(Exponent::variable(var), 1); }

RatPoly RatPoly::monomial(const Exponent& exp, const mpq_class& coeff) {
  RatPoly p;
  if (sgn(coeff) != 0) p.terms_.push_back({exp, coeff});
  return p;
}

RatPoly RatPoly::fromTerms(std::vector<Term> terms) {
  std::map<Exponent, mpq_class, Descending> acc;
  for (Term& t : terms) acc[t.exp] += t.coeff;
  RatPoly p;
  for (auto& [exp, coeff] : acc)
    if (sgn(coeff) != 0) p.terms_.push_back({exp, std::move(coeff)});
  return p;
}

mpq_class RatPoly::constantValue() const {
  if (!isConstant()) throw std::logic_error("polynomial is not constant");
  return terms_.empty() ? mpq_class(0) : terms_[0].coeff;
}

int RatPoly::degree() const {
  int d = -1;
  for (const Term& t : terms_) d = std::max(d, t.exp.degree());
  return d;
}

int RatPoly::degreeIn(int var) const {
  int d = 0;
  for (const Term& t : terms_) d = std::max(d, t.exp[var]);
  return d;
}

int RatPoly::span() const {
  int s = 0;
  for (const Term& t : terms_) s = std::max(s, t.exp.span());
  return s;
}

bool RatPoly::isHomogeneous() const {
  for (const Term& t : terms_)
    if (t.exp.degree() != terms_.front().exp.degree()) return false;
  return true;
}

RatPoly RatPoly::operator-() const {
  RatPoly p = *this;
  for (Term& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

namespace {

template <class Sign>
std::vector<RatPoly::Term> mergeTerms(const std::vector<RatPoly::Term>& x,
                                      const std::vector<RatPoly::Term>& y, Sign sign) {
  std::vector<RatPoly::Term> out;
  out.reserve(x.size() + y.size());
  auto a = x.begin();
  auto b = y.begin();
  while (a != x.end() || b != y.end()) {
    if (b == y.end() || (a != x.end() && kDegRevLex.greater(a->exp, b->exp))) {
      out.push_back(*a++);
    } else if (a == x.end() || kDegRevLex.greater(b->exp, a->exp)) {
      out.push_back({b->exp, sign(b->coeff)});
      ++b;
    } else {
      mpq_class c = a->coeff + sign(b->coeff);
      if (sgn(c) != 0) out.push_back({a->exp, std::move(c)});
      ++a;
      ++b;
    }
  }
  return out;
}

}  // namespace

RatPoly RatPoly::operator+(const RatPoly& other) const {
  RatPoly p;
  p.terms_ = mergeTerms(terms_, other.terms_, [](const mpq_class& c) { return c; });
  return p;
}

RatPoly RatPoly::operator-(const RatPoly& other) const {
  RatPoly p;
  p.terms_ = mergeTerms(terms_, other.terms_, [](const mpq_class& c) { return mpq_class(-c); });
  return p;
}

RatPoly RatPoly::operator*(const RatPoly& other) const {
  if (isZero() || other.isZero()) return RatPoly();
  if (other.isConstant()) return scaled(other.terms_[0].coeff);
  if (isConstant()) return other.scaled(terms_[0].coeff);
  std::vector<Term> all;
  all.reserve(terms_.size() * other.terms_.size());
  for (const Term& a : terms_)
    for (const Term& b : other.terms_) all.push_back({a.exp * b.exp, a.coeff * b.coeff});
  return fromTerms(std::move(all));
}

RatPoly RatPoly::scaled(const mpq_class& factor) const {
  if (sgn(factor) == 0) return RatPoly();
  RatPoly p = *this;
  for (Term& t : p.terms_) t.coeff *= factor;
  return p;
}

RatPoly RatPoly::pow(int power) const {
  RatPoly result(1L);
  RatPoly base = *this;
  while (power > 0) {
    if (power & 1) result *= base;
    power >>= 1;
    if (power > 0) base *= base;
  }
  return result;
}

RatPoly RatPoly::derivative(int var) const {
  std::vector<Term> out;
  for (const Term& t : terms_) {
    int e = t.exp[var];
    if (e == 0) continue;
    out.push_back({t.exp.withPower(var, e - 1), t.coeff * e});
  }
  return fromTerms(std::move(out));
}

RatPoly RatPoly::substitute(int var, const RatPoly& value) const {
  RatPoly out;
  std::vector<RatPoly> powers{RatPoly(1L)};
  for (const Term& t : terms_) {
    int e = t.exp[var];
    while (static_cast<int>(powers.size()) <= e) powers.push_back(powers.back() * value);
    out += monomial(t.exp.withPower(var, 0), t.coeff) * powers[e];
  }
  return out;
}

RatPoly RatPoly::permuted(const std::vector<int>& perm) const {
  std::vector<Term> out;
  for (const Term& t : terms_) {
    Exponent e;
    for (int v = 0; v < static_cast<int>(perm.size()); ++v)
      if (t.exp[v] != 0) e = e.withPower(perm[v], t.exp[v]);
    out.push_back({e, t.coeff});
  }
  return fromTerms(std::move(out));
}

RatPoly RatPoly::primitive() const {
  if (isZero()) return *this;
  mpz_class den = 1, content = 0;
  for (const Term& t : terms_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
  for (const Term& t : terms_) {
    mpz_class scaledNum = t.coeff.get_num() * (den / t.coeff.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), scaledNum.get_mpz_t());
  }
  mpq_class factor(den, content);
  factor.canonicalize();
  if (sgn(terms_.front().coeff) < 0) factor = -factor;
  return scaled(factor);
}

RatPoly RatPoly::divideExact(const RatPoly& divisor) const {
  if (divisor.isZero()) throw std::domain_error("division by zero polynomial");
  RatPoly remainder = *this;
  std::vector<Term> quotient;
  const Term& lead = divisor.terms_.front();
  while (!remainder.isZero()) {
    const Term& top = remainder.terms_.front();
    if (!lead.exp.divides(top.exp)) throw std::domain_error("polynomial division is not exact");
    RatPoly step = monomial(top.exp / lead.exp, top.coeff / lead.coeff);
    quotient.push_back(step.terms_.front());
    remainder -= step * divisor;
  }
  return fromTerms(std::move(quotient));
}

mpq_class RatPoly::evaluate(const std::vector<mpq_class>& point) const {
  mpq_class sum = 0;
  for (const Term& t : terms_) {
    mpq_class value = t.coeff;
    for (int v = 0; v < kMaxVars && value != 0; ++v)
      for (int k = 0; k < t.exp[v]; ++k) value *= point.at(v);
    sum += value;
  }
  return sum;
}

std::uint64_t RatPoly::evaluateMod(const PrimeField& field,
                                   const std::vector<std::uint64_t>& point) const {
  std::uint64_t sum = 0;
  for (const Term& t : terms_) {
    std::uint64_t value = field.fromRational(t.coeff);
    for (int v = 0; v < kMaxVars; ++v)
      if (t.exp[v] != 0) value = field.mul(value, field.pow(point.at(v), t.exp[v]));
    sum = field.add(sum, value);
  }
  return sum;
}

std::string RatPoly::toString() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const Term& t : terms_) {
    mpq_class c = t.coeff;
    bool negative = sgn(c) < 0;
    if (negative) c = -c;
    out += negative ? "-" : (out.empty() ? "" : "+");
    std::string monomial;
    for (int v = 0; v < kMaxVars; ++v) {
      if (t.exp[v] == 0) continue;
      if (!monomial.empty()) monomial += "*";
      monomial += "a" + std::to_string(v + 1);
      if (t.exp[v] != 1) monomial += "^" + std::to_string(t.exp[v]);
    }
    if (monomial.empty()) {
      out += c.get_str();
    } else {
      if (c != 1) out += c.get_str() + "*";
      out += monomial;
    }
  }
  return out;
}

bool operator==(const RatPoly& a, const RatPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].exp != b.terms_[i].exp || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

// Parsing --------------------------------------------------------------------------

namespace {

class PolyParser {
 public:
  explicit PolyParser(const std::string& text) : text_(text) {}

  std::vector<RatPoly> list() {
    std::vector<RatPoly> out{sum()};
    while (peek() == ',') {
      ++pos_;
      out.push_back(sum());
    }
    if (peek() != '\0') fail("unexpected character");
    return out;
  }

  RatPoly single() {
    RatPoly p = sum();
    if (peek() != '\0') fail("unexpected character");
    return p;
  }

 private:
  char peek() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("polynomial parse error at position " + std::to_string(pos_) +
                                ": " + what);
  }

  mpz_class integer() {
    peek();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return mpz_class(text_.substr(start, pos_ - start));
  }

  int smallInteger() {
    mpz_class v = integer();
    if (v > 255) fail("integer too large");
    return static_cast<int>(v.get_si());
  }

  RatPoly sum() {
    RatPoly out;
    bool negate = false;
    if (peek() == '+' || peek() == '-') negate = text_[pos_++] == '-';
    out = negate ? -product() : product();
    while (peek() == '+' || peek() == '-') {
      bool minus = text_[pos_++] == '-';
      out = minus ? out - product() : out + product();
    }
    return out;
  }

  RatPoly product() {
    RatPoly out = power();
    while (peek() == '*') {
      ++pos_;
      out *= power();
    }
    return out;
  }

  RatPoly power() {
    RatPoly base = atom();
    if (peek() == '^') {
      ++pos_;
      base = base.pow(smallInteger());
    }
    return base;
  }

  RatPoly atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      RatPoly inner = sum();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == 'a') {
      ++pos_;
      int var = smallInteger();
      if (var < 1 || var > kMaxVars) fail("variable index out of range");
      return RatPoly::variable(var - 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = integer();
      mpz_class den = 1;
      if (peek() == '/') {
        ++pos_;
        den = integer();
        if (den == 0) fail("zero denominator");
      }
      mpq_class value(num, den);
      value.canonicalize();
      return RatPoly(value);
    }
    fail("expected a term");
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

RatPoly parsePoly(const std::string& text) { return PolyParser(text).single(); }

std::vector<RatPoly> parsePolyList(const std::string& text) { return PolyParser(text).list(); }

}  // namespace suppvar
