#ifndef SUPPVAR_GROEBNER_HPP
#define SUPPVAR_GROEBNER_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "suppvar/poly.hpp"

namespace suppvar {

/// Generator list with normalized, distinct, nonzero members (integer
/// primitive, positive leading coefficient, sorted).
class Ideal {
 public:
  Ideal() = default;
  explicit Ideal(std::vector<RatPoly> gens);

  const std::vector<RatPoly>& generators() const { return gens_; }
  bool isZero() const { return gens_.empty(); }
  /// True when some generator is a nonzero constant.
  bool hasUnitGenerator() const;
  int span() const;
  std::string toString() const;

  friend bool operator==(const Ideal&, const Ideal&) = default;

 private:
  std::vector<RatPoly> gens_;
};

struct GroebnerLimits {
  std::size_t maxPairs = 20000;
  std::size_t maxBasis = 1500;
  std::size_t maxTerms = 100000;
};

class GroebnerCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reduced Gröbner basis (Buchberger, sugar selection, product and chain
/// criteria). Output is primitive integer and sorted by increasing leading
/// term. Throws GroebnerCapExceeded.
std::vector<RatPoly> groebnerBasis(const std::vector<RatPoly>& gens,
                                   MonomialOrder order = MonomialOrder::degrevlex(),
                                   const GroebnerLimits& limits = {});

/// Full reduction modulo a Gröbner basis in the same order. The result is
/// defined up to a nonzero rational factor.
RatPoly normalForm(const RatPoly& p, const std::vector<RatPoly>& basis,
                   MonomialOrder order = MonomialOrder::degrevlex());

bool idealMember(const RatPoly& p, const Ideal& ideal, const GroebnerLimits& limits = {});

enum class Certainty { Certified, Randomized };

struct RadicalVerdict {
  bool member = false;
  Certainty certainty = Certainty::Certified;
  /// log2 of the failure probability estimate; -inf when certified.
  double log2Failure = 0;
};

struct RadicalOptions {
  GroebnerLimits limits;
  int fallbackSamples = 64;
  std::uint64_t seed = 1;
};

/// p vanishes on V(I) iff 1 lies in I + (1 - t p). Falls back to sampling
/// points of V(I) over a large prime when the Gröbner computation is capped.
RadicalVerdict radicalMember(const RatPoly& p, const Ideal& ideal, const RadicalOptions& options = {});

/// gcd and squarefree part over Q (elimination-based; primitive output).
RatPoly polyGcd(const RatPoly& f, const RatPoly& g, const GroebnerLimits& limits = {});
RatPoly squarefreePart(const RatPoly& g, const GroebnerLimits& limits = {});

/// Random F_p points of V(gens). Each generator is made to vanish in turn by
/// solving for a variable that occurs to degree one; the remaining variables
/// are uniform. Returns nullopt when no solvable variable is found.
std::optional<std::vector<std::uint64_t>> sampleVarietyPoint(const std::vector<RatPoly>& gens,
                                                             int nvars, const PrimeField& field,
                                                             std::mt19937_64& rng);

struct VarietyVerdict {
  enum class Kind { EqualCertified, EqualRandomized, Different };
  Kind kind = Kind::EqualCertified;
  double log2Failure = 0;
  /// A point over F_{witnessPrime} lying on exactly one of the varieties.
  std::optional<std::vector<std::uint64_t>> witness;
  std::uint64_t witnessPrime = 0;

  std::string kindName() const;
};

/// Compares V(a) and V(b) by mutual radical membership of generators.
VarietyVerdict varietiesEqual(const Ideal& a, const Ideal& b, int nvars,
                              const RadicalOptions& options = {});

}  // namespace suppvar

#endif  // SUPPVAR_GROEBNER_HPP
