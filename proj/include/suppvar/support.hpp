#ifndef SUPPVAR_SUPPORT_HPP
#define SUPPVAR_SUPPORT_HPP

#include <json.hpp>

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "suppvar/complex.hpp"
#include "suppvar/groebner.hpp"
#include "suppvar/polymatrix.hpp"

namespace suppvar {

enum class Engine { Periodic, Totalization };

class NonGradableError : public std::runtime_error {
 public:
  explicit NonGradableError(GradingObstruction obstruction)
      : std::runtime_error(obstruction.describe()), obstruction_(std::move(obstruction)) {}
  const GradingObstruction& obstruction() const { return obstruction_; }

 private:
  GradingObstruction obstruction_;
};

/// Builds the parameter complex for an engine. Totalization throws
/// NonGradableError when the diagram admits no weak grading.
DiffModule buildModule(const TaylorData& data, Engine engine);

/// Pointwise test of nonvanishing homology on the unreduced complex. The
/// origin always belongs to the support.
bool membershipOracle(const MonomialSeq& f, const FieldPoint& point, Engine engine);

/// Reusable oracle on the reduced complex with per-prime compiled matrices.
class SupportOracle {
 public:
  SupportOracle(const MonomialSeq& f, Engine engine = Engine::Periodic);
  int nvars() const { return nvars_; }
  const DiffModule& module() const { return module_; }
  bool member(const FieldPoint& point) const;
  bool memberMod(const PrimeField& field, const std::vector<std::uint64_t>& point) const;

 private:
  int nvars_ = 0;
  DiffModule module_;
  mutable std::map<std::uint64_t, std::shared_ptr<ModularModule>> compiled_;
};

struct VarietyDescription {
  enum class Kind { FullSpace, OriginOnly, Union };
  Kind kind = Kind::OriginOnly;
  int n = 0;
  std::vector<Ideal> components;

  std::string kindName() const;
  /// Membership of an F_p point (the origin is always included).
  bool contains(const PrimeField& field, const std::vector<std::uint64_t>& point) const;
  std::string toString() const;
};

struct ComponentReport {
  std::vector<Subset> classes;  // diagram classes (empty for the periodic engine)
  std::map<int, int> dims;
  std::map<int, int> genericRanks;  // by source degree
  bool genericallyExact = true;
  std::map<int, Ideal> degeneracy;  // minors ideal per source degree
  std::size_t reducedSize = 0;
};

struct SupportReport {
  VarietyDescription variety;
  std::vector<ComponentReport> perComponent;
  Engine engine = Engine::Totalization;
  Certainty certification = Certainty::Certified;
  double log2Failure = 0;
};

struct SupportOptions {
  MinorsOptions minors;
  RadicalOptions radical;
  std::uint64_t seed = 1;
  /// Use the periodic complex when the diagram is not gradable instead of
  /// throwing NonGradableError.
  bool periodicFallback = false;
  /// Always use the periodic complex.
  bool periodicOnly = false;
};

SupportReport supportSymbolic(const MonomialSeq& f, const SupportOptions& options = {});

/// Replaces each ideal by a simpler one with the same variety, splits off
/// coordinate hyperplanes, and drops empty, origin-only and redundant
/// members. Sets `certified` to false if any comparison was randomized.
std::vector<Ideal> simplifyUnion(const std::vector<Ideal>& ideals, int n, const RadicalOptions& options,
                                 bool* certified = nullptr);

struct VerifyOptions {
  std::vector<std::uint64_t> primes;  // defaults to the first large prime
  int samples = 200;
  std::uint64_t seed = 1;
  Engine engine = Engine::Periodic;
};

struct VerifyReport {
  struct PrimeStats {
    std::uint64_t prime = 0;
    int onVariety = 0;
    int uniform = 0;
    int agreements = 0;
    int rejectionFallbacks = 0;
  };
  std::vector<PrimeStats> perPrime;
  bool agree = true;
  /// A point where the oracle and the candidate disagree.
  std::optional<FieldPoint> witness;
  bool witnessInSupport = false;
  /// Upper bound (log2) on the chance that every sample agrees although the
  /// hypersurface test would disagree on a dense set.
  double log2Failure = 0;

  int totalSamples() const;
};

/// Two-sided randomized comparison of the support with V(candidate).
VerifyReport supportVerify(const MonomialSeq& f, const Ideal& candidate, const VerifyOptions& options = {});

struct Classification {
  enum class Kind { LinearSubspace, UnionTwoHyperplanes, Sextic135246, FullSpace, OriginOnly, Other };
  Kind kind = Kind::Other;
  std::string description;

  std::string name() const;
};

Classification classify(const VarietyDescription& variety, const RadicalOptions& options = {});

/// Factors a homogeneous quadratic into two linear forms over Q when possible.
std::optional<std::pair<RatPoly, RatPoly>> linearFactors(const RatPoly& quadratic);

std::string engineName(Engine engine);
nlohmann::json toJson(const SupportReport& report);
nlohmann::json toJson(const VerifyReport& report);

}  // namespace suppvar

#endif  // SUPPVAR_SUPPORT_HPP
