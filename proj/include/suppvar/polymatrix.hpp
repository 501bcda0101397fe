#ifndef SUPPVAR_POLYMATRIX_HPP
#define SUPPVAR_POLYMATRIX_HPP

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "suppvar/complex.hpp"
#include "suppvar/groebner.hpp"
#include "suppvar/poly.hpp"

namespace suppvar {

/// A point of affine n-space over Q (prime == 0) or F_p.
struct FieldPoint {
  std::uint64_t prime = 0;
  std::vector<mpq_class> coords;

  bool isZero() const;
  /// Coordinates reduced mod the point's prime.
  std::vector<std::uint64_t> modCoords(const PrimeField& field) const;
  static FieldPoint modular(std::uint64_t prime, const std::vector<std::uint64_t>& values);
};

/// Sparse row-major matrix of polynomials in the parameters.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {}
  static PolyMatrix fromSparse(const SparseMatrix& m);
  static PolyMatrix fromDense(const std::vector<std::vector<RatPoly>>& m);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  /// Zero polynomial when the entry is absent.
  RatPoly at(int row, int col) const;
  void set(int row, int col, RatPoly value);
  const std::map<int, RatPoly>& row(int r) const { return data_[r]; }
  std::size_t nonzeros() const;
  int maxEntryDegree() const;

  PolyMatrix submatrix(const std::vector<int>& rowIdx, const std::vector<int>& colIdx) const;
  std::vector<std::vector<mpq_class>> evaluate(const std::vector<mpq_class>& point) const;
  DenseModMatrix evaluateMod(const PrimeField& field, const std::vector<std::uint64_t>& point) const;
  /// Exact rank at a point over the point's field.
  int rankAt(const FieldPoint& point) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::map<int, RatPoly>> data_;
};

/// A polynomial precompiled for repeated evaluation over one prime field.
class ModPoly {
 public:
  ModPoly() = default;
  ModPoly(const RatPoly& p, const PrimeField& field);
  /// powers[v][e] = point_v^e.
  std::uint64_t evaluate(const PrimeField& field,
                         const std::vector<std::vector<std::uint64_t>>& powers) const;
  int maxExponent() const { return maxExponent_; }

 private:
  struct Term {
    std::uint64_t coeff;
    std::vector<std::pair<std::uint8_t, std::uint8_t>> factors;  // (variable, exponent)
  };
  std::vector<Term> terms_;
  int maxExponent_ = 0;
};

/// Rank over Q(a_1..a_n): the maximum of ranks at `trials` random points over
/// distinct large primes. When both dimensions are at most `certifyBelow`,
/// the value is confirmed by fraction-free symbolic elimination.
struct GenericRank {
  int rank = 0;
  bool certified = false;
};
GenericRank genericRank(const PolyMatrix& m, int nvars, std::mt19937_64& rng, int trials = 3,
                        int certifyBelow = 12);
/// Fraction-free elimination over Q[a]; exact and slow.
int symbolicRank(const PolyMatrix& m);

/// Determinant by fraction-free elimination over Q[a].
RatPoly determinant(const PolyMatrix& square);

struct MinorsOptions {
  std::size_t budget = 20000;
  int window = 32;
  std::uint64_t seed = 1;
  RadicalOptions radical;
};

struct MinorsResult {
  Ideal ideal;
  bool exhaustive = true;
  std::size_t computed = 0;
};

/// The ideal of r x r minors. Exhaustive when C(rows,r) C(cols,r) fits the
/// budget, otherwise grown from random row/column choices until `window`
/// consecutive fresh minors are radical members of the ideal so far.
MinorsResult minorsIdeal(const PolyMatrix& m, int r, const MinorsOptions& options = {});

// Differential modules ---------------------------------------------------------------

/// A free differential module with labelled basis elements. Graded modules
/// map degree d to d - 1; periodic ones alternate between degrees 0 and 1.
struct DiffModule {
  int nvars = 0;
  bool periodic = false;
  std::vector<int> degree;
  std::vector<Subset> label;
  std::vector<std::map<int, RatPoly>> out;  // d(e_b) = sum over a of out[b][a] e_a

  static DiffModule fromTotal(const TotalComplex& complex);
  static DiffModule fromPeriodic(const PeriodicComplex& complex);

  std::size_t size() const { return degree.size(); }
  std::vector<int> degrees() const;
  std::vector<int> basisOf(int deg) const;
  int targetDegree(int deg) const { return periodic ? 1 - deg : deg - 1; }
  /// Matrix of d restricted to the given source degree.
  PolyMatrix block(int deg) const;
};

struct ReductionStats {
  std::size_t before = 0;
  std::size_t after = 0;
  std::size_t pivots = 0;
};

/// Cancels basis pairs joined by a constant ±1 coefficient (Gaussian
/// elimination for chain complexes), choosing pivots by Markowitz cost.
/// Homology at every point and in every characteristic is unchanged.
DiffModule reduceUnitPivots(const DiffModule& module, ReductionStats* stats = nullptr);

/// A differential module compiled for evaluation over one prime.
class ModularModule {
 public:
  ModularModule(const DiffModule& module, const PrimeField& field);
  const PrimeField& field() const { return field_; }
  /// True when homology at the point is nonzero.
  bool homologyNonzero(const std::vector<std::uint64_t>& point) const;
  /// Rank of each block at the point, keyed by source degree.
  std::map<int, int> ranksAt(const std::vector<std::uint64_t>& point) const;

 private:
  struct Block {
    int sourceDegree = 0;
    int rows = 0;
    int cols = 0;
    std::vector<std::tuple<int, int, ModPoly>> entries;
  };
  PrimeField field_;
  int nvars_ = 0;
  int maxExponent_ = 1;
  bool periodic_ = false;
  std::map<int, int> dims_;
  std::vector<Block> blocks_;
};

/// Homology test at a point (any characteristic) for an uncompiled module.
bool homologyNonzeroAt(const DiffModule& module, const FieldPoint& point);

}  // namespace suppvar

#endif  // SUPPVAR_POLYMATRIX_HPP
