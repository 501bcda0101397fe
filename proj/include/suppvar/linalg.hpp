#ifndef SUPPVAR_LINALG_HPP
#define SUPPVAR_LINALG_HPP

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace suppvar {

/// Arithmetic in Z/p for p < 2^32 (products fit in 64 bits).
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p);

  std::uint64_t p() const { return p_; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p_; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  /// Throws std::domain_error on zero.
  std::uint64_t inv(std::uint64_t a) const;
  std::uint64_t fromInt(long long v) const;
  std::uint64_t fromMpz(const mpz_class& v) const;
  /// Throws std::domain_error when p divides the denominator.
  std::uint64_t fromRational(const mpq_class& v) const;

 private:
  std::uint64_t p_;
};

/// Deterministic Miller-Rabin for 64-bit inputs.
bool isPrime(std::uint64_t n);

/// Primes just above 2^31 used for randomized identity testing.
const std::vector<std::uint64_t>& largePrimes();

using DenseModMatrix = std::vector<std::vector<std::uint64_t>>;

/// Rank over F_p by row reduction.
int rankModP(DenseModMatrix m, const PrimeField& field);

/// Row-major sparse matrix over F_p; rows hold (column, nonzero value) pairs
/// sorted by column.
struct SparseModMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<std::pair<int, std::uint64_t>>> data;
};

/// Rank over F_p by sparse elimination with Markowitz-style pivoting.
int sparseRankModP(SparseModMatrix m, const PrimeField& field);

/// Sparse matrix over Q in the same layout.
struct SparseRatMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<std::pair<int, mpq_class>>> data;
};

/// Exact rank over Q by the same sparse elimination.
int sparseRankRational(SparseRatMatrix m);

/// Exact rank over Q by fraction-free (Bareiss) elimination. Rows are scaled
/// to clear denominators first.
int rankRational(const std::vector<std::vector<mpq_class>>& m);
int rankInteger(std::vector<std::vector<mpz_class>> m);

}  // namespace suppvar

#endif  // SUPPVAR_LINALG_HPP
