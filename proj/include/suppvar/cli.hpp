#ifndef SUPPVAR_CLI_HPP
#define SUPPVAR_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "suppvar/support.hpp"

namespace suppvar {

namespace exit_code {
inline constexpr int kSuccess = 0;
inline constexpr int kDisagree = 1;
inline constexpr int kParse = 2;
inline constexpr int kNonGradable = 3;
inline constexpr int kResourceCap = 4;
inline constexpr int kClassification = 5;
}  // namespace exit_code

/// Shared numeric settings for all commands.
struct RunConfig {
  /// Primes for randomized checks; empty means the first three large primes.
  std::vector<std::uint64_t> primes;
  std::uint64_t seed = 1;
  std::size_t minorBudget = 20000;
  std::size_t groebnerCap = 20000;
  int samples = 200;
  int threads = 1;

  /// Throws std::invalid_argument unless every setting is positive and every
  /// prime is prime.
  void validate() const;
  std::vector<std::uint64_t> effectivePrimes() const;
  SupportOptions supportOptions() const;
};

/// Parses "1,3,5", "{1,3,5}" or "" into a subset of 1..n.
Subset parseSubsetLabels(const std::string& text, int n);

/// "x1*x2,x2*x3,...,x_n*x1" with each edge in cycle order.
std::string edgeCycleText(int n);

/// Runs one command line. Returns the process exit code.
int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace suppvar

#endif  // SUPPVAR_CLI_HPP
